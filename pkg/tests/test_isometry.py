from fractions import Fraction as F
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import fixed_point_exists, qmul
from seifert_lens.isometry import (ANTIDIAG, ANTIDIAG_CONJ, DIAG, DIAG_CONJ, IDENTITY,
                                   PhaseMap, Quaternion, a_minus, a_plus, a_plus_matrix,
                                   a_qtilde, a_qtilde_matrix, a_standard, a_standard_matrix,
                                   antidiagc, compose, conjugate_by_reflection, diag,
                                   has_fixed_point, is_free_action, is_special_orthogonal,
                                   left_mult, matrix_order, matrix_to_json, order_of,
                                   parse_phase_map, phase_matrix, phi_matrix, power,
                                   quotient_lens, reflection_matrix, right_mult, trace_scan,
                                   verify_action, verify_conjugation)
from seifert_lens.seifert import LensSpace, normalize_lens

KINDS = [DIAG, ANTIDIAG_CONJ, ANTIDIAG, DIAG_CONJ]
angles = st.fractions(min_value=-4, max_value=4, max_denominator=24)
phase_maps = st.builds(PhaseMap, st.sampled_from(KINDS), angles, angles)
RNG = np.random.default_rng(20261019)


def random_unit_points(k=100):
    v = RNG.normal(size=(k, 4))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def apply_complex(f, v):
    z1, z2 = complex(v[0], v[1]), complex(v[2], v[3])
    w1, w2 = f(z1, z2)
    return np.array([w1.real, w1.imag, w2.real, w2.imag])


def test_angles_reduced_mod_2():
    f = diag(F(5, 2), F(-1, 3))
    assert (f.alpha, f.beta) == (F(1, 2), F(5, 3))


def test_compose_examples():
    assert compose(a_plus(3), a_plus(3)) == diag(F(1, 3), F(-1, 3))
    f = antidiagc(F(1, 5), F(2, 7))
    assert compose(IDENTITY, f) == f
    a, b, c, d = F(1, 3), F(1, 4), F(2, 5), F(5, 7)
    assert compose(antidiagc(a, b), antidiagc(c, d)) == diag(a - d, b - c)


@given(phase_maps, phase_maps)
def test_compose_matches_numeric_route(f, g):
    fg = compose(f, g)
    for v in random_unit_points(5):
        np.testing.assert_allclose(apply_complex(fg, v), apply_complex(f, apply_complex(g, v)),
                                   atol=1e-12)


@given(phase_maps, phase_maps, phase_maps)
def test_compose_associative(f, g, h):
    assert compose(f, compose(g, h)) == compose(compose(f, g), h)


@pytest.mark.parametrize("n", range(1, 21))
def test_a_plus_square(n):
    assert power(a_plus(n), 2) == diag(F(1, n), F(-1, n))


def test_order_examples():
    assert order_of(a_plus(2)) == 8
    assert order_of(diag(F(1, 2), F(1, 2))) == 4
    assert order_of(a_minus(3)) == 12
    assert order_of(diag(F(1, 7), 0), max_order=10) is None


def test_freeness_examples():
    for n in range(1, 11):
        assert is_free_action(a_plus(n), 4 * n).free
    assert is_free_action(diag(F(1, 2), 1), 4) == (False, 2)
    assert is_free_action(diag(F(1, 4), F(3, 4)), 8).free


small_angles = st.fractions(min_value=-4, max_value=4, max_denominator=8)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(KINDS), small_angles, small_angles)
def test_fixed_point_criterion_matches_grid_oracle(kind, a, b):
    f = PhaseMap(kind, a, b)
    assert has_fixed_point(f) == fixed_point_exists(f.swap, f.conj, f.alpha, f.beta)


@pytest.mark.parametrize("n", range(1, 21))
def test_a_plus_free_by_oracle(n):
    f = a_plus(n)
    assert order_of(f) == 4 * n
    assert is_free_action(f, 4 * n).free
    for k in range(1, 4 * n):
        g = power(f, k)
        assert not fixed_point_exists(g.swap, g.conj, g.alpha, g.beta)


def test_reflection_closed_form_matches_numeric():
    r = reflection_matrix()
    for kind in KINDS:
        f = PhaseMap(kind, F(1, 6), F(-3, 10))
        numeric = r @ phase_matrix(f) @ r
        np.testing.assert_allclose(phase_matrix(conjugate_by_reflection(f)), numeric, atol=1e-12)


def test_a_minus_form():
    f = a_minus(3)
    assert f.kind == ANTIDIAG and (f.alpha, f.beta) == (F(1, 6), F(1, 6))


def test_quotient_examples():
    assert quotient_lens(a_standard(2)) == LensSpace(8, 3)
    assert quotient_lens(diag(F(2, 5), F(4, 5))) == LensSpace(5, 2)
    assert quotient_lens(conjugate_by_reflection(a_standard(2))) == LensSpace(8, 5)
    with pytest.raises(ValueError):
        quotient_lens(a_plus(2))
    with pytest.raises(ValueError):
        quotient_lens(diag(F(1, 2), 1))


@pytest.mark.parametrize("p", [3, 5, 7, 8, 12])
def test_quotient_of_textbook_actions(p):
    for q in range(1, p):
        if gcd(p, q) == 1:
            assert quotient_lens(diag(F(2, p), F(2 * q, p))) == normalize_lens(p, q)


@pytest.mark.parametrize("n", range(1, 21))
def test_conjugation_transport(n):
    assert quotient_lens(a_standard(n)) == normalize_lens(4 * n, 2 * n - 1)
    assert quotient_lens(conjugate_by_reflection(a_standard(n))) == LensSpace(4 * n, 2 * n + 1)
    assert order_of(a_minus(n)) == 4 * n and is_free_action(a_minus(n), 4 * n).free


@pytest.mark.parametrize("n", [1, 2, 3, 7])
def test_reflected_conjugator(n):
    # R Phi R carries A- to R A_{2n-1} R, the diagonal map whose quotient is L(4n, 2n+1)
    r, phi = reflection_matrix(), phi_matrix()
    psi = r @ phi @ r
    assert is_special_orthogonal(psi)
    lhs = psi @ phase_matrix(a_minus(n))
    rhs = phase_matrix(conjugate_by_reflection(a_standard(n))) @ psi
    assert np.abs(lhs - rhs).max() < 1e-9


def test_quaternion_product_matches_hamilton_table():
    for _ in range(20):
        x, y = RNG.normal(size=4), RNG.normal(size=4)
        np.testing.assert_allclose(Quaternion(*x) * Quaternion(*y), qmul(x, y), atol=1e-12)
    i, j, k = Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1)
    assert i * j == k and j * k == i and k * i == j


def test_phi_properties():
    phi = phi_matrix()
    assert is_special_orthogonal(phi)
    np.testing.assert_allclose(np.linalg.norm(phi, axis=0), 1.0)
    assert matrix_order(phi) == 6
    u = (0.5, 0.5, -0.5, -0.5)
    acc = (1.0, 0.0, 0.0, 0.0)
    for _ in range(6):
        acc = qmul(u, acc)
    np.testing.assert_allclose(acc, (1, 0, 0, 0), atol=1e-12)


def test_multiplication_matrices_match_oracle():
    q = tuple(RNG.normal(size=4))
    for v in random_unit_points(10):
        np.testing.assert_allclose(left_mult(Quaternion(*q)) @ v, qmul(q, v), atol=1e-12)
        np.testing.assert_allclose(right_mult(Quaternion(*q)) @ v, qmul(v, q), atol=1e-12)


def test_a_plus_matrix_image_of_one():
    # A+(1) = -sin(pi/4) k + cos(pi/4) k i, and k i = j
    s = c = np.sqrt(0.5)
    expected = -s * np.array(qmul((0, 0, 0, 1), (1, 0, 0, 0))) \
        + c * np.array(qmul(qmul((0, 0, 0, 1), (1, 0, 0, 0)), (0, 1, 0, 0)))
    np.testing.assert_allclose(a_plus_matrix(2)[:, 0], expected, atol=1e-12)
    np.testing.assert_allclose(expected, [0, 0, c, -s], atol=1e-12)


@pytest.mark.parametrize("n", range(1, 11))
def test_matrix_forms(n):
    ap = a_plus_matrix(n)
    assert is_special_orthogonal(ap) and is_special_orthogonal(a_standard_matrix(n))
    assert np.abs(np.linalg.matrix_power(ap, 4 * n) - np.eye(4)).max() < 1e-9
    assert matrix_order(ap) == 4 * n
    # quaternionic and complex-coordinate forms agree
    assert np.abs(ap - phase_matrix(a_plus(n))).max() < 1e-12
    assert np.abs(a_standard_matrix(n) - a_qtilde_matrix(n, 2 * n - 1)).max() < 1e-12


@settings(deadline=None)
@given(phase_maps)
def test_phase_matrices_agree_on_random_points(f):
    m = phase_matrix(f)
    assert is_special_orthogonal(m)
    for v in random_unit_points(100):
        assert np.abs(m @ v - apply_complex(f, v)).max() < 1e-9


@pytest.mark.parametrize("n", [1, 2, 50] + list(range(3, 21)))
def test_verify_conjugation(n):
    assert verify_conjugation(n) < 1e-9


def test_trace_scan_examples():
    assert trace_scan(2) == [3, 5]
    assert trace_scan(1) == [1, 3]
    assert trace_scan(6) == [11, 13]
    with pytest.raises(ValueError):
        a_qtilde_matrix(3, 4)


@pytest.mark.parametrize("n", range(1, 51))
def test_trace_scan_matches_exact_congruence(n):
    # cos(pi q/2n) = -cos(pi/2n) = cos(pi - pi/2n) iff q = +-(2n - 1) mod 4n
    exact = [q for q in range(1, 4 * n) if gcd(q, 4 * n) == 1
             and ((q - (2 * n - 1)) % (4 * n) == 0 or (q + (2 * n - 1)) % (4 * n) == 0)]
    assert trace_scan(n) == exact == [2 * n - 1, 2 * n + 1]
    assert abs(np.trace(a_plus_matrix(n))) < 1e-12


def test_serialization():
    f = parse_phase_map("antidiagc(1/4, -1/4)")
    assert f == a_plus(2)
    assert parse_phase_map(str(f)) == f
    assert parse_phase_map("diag(2/5, 4/5)") == diag(F(2, 5), F(4, 5))
    assert matrix_to_json(np.eye(4)).startswith("[[1.0, 0.0")


def test_verify_action_report():
    r = verify_action(3)
    assert r.ok and r.order == 12 and r.trace_scan == (5, 7)
    assert r.quotient == LensSpace(12, 5) and r.reflected_quotient == LensSpace(12, 7)


def test_a_qtilde_form():
    assert a_qtilde(2, 3) == a_standard(2) == diag(F(1, 4), F(3, 4))

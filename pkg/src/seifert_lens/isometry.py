"""Isometries of S^3 in complex coordinates ``(z1, z2)`` and as 4x4 matrices.

A :class:`PhaseMap` is a monomial map

    (z1, z2) -> (e^{i pi alpha} w1, e^{i pi beta} w2)

where ``(w1, w2)`` is ``(z1, z2)`` or ``(z2, z1)``, each coordinate
optionally conjugated. Angles are exact rationals in units of pi, reduced
into ``[0, 2)``. These maps form a group, so orders, fixed points and lens
quotients are decided with exact arithmetic.

Matrices act on column vectors in the real basis ``(1, i, j, k)`` of the
quaternions, with ``z1 + z2 j = a0 + a1 i + a2 j + a3 k``.
"""

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional

import numpy as np

from ._text import ParseError
from .seifert import LensSpace, normalize_lens

MATRIX_TOL = 1e-9

DIAG = "diag"
ANTIDIAG_CONJ = "antidiagc"
ANTIDIAG = "antidiag"
DIAG_CONJ = "diagc"

_KINDS = {  # kind -> (swap, conj)
    DIAG: (False, False),
    ANTIDIAG_CONJ: (True, True),
    ANTIDIAG: (True, False),
    DIAG_CONJ: (False, True),
}
_KIND_OF = {v: k for k, v in _KINDS.items()}


def _mod2(x):
    x = Fraction(x)
    return x - 2 * (x.numerator // (2 * x.denominator))


@dataclass(frozen=True)
class PhaseMap:
    kind: str
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown phase map kind {self.kind!r}")
        object.__setattr__(self, "alpha", _mod2(self.alpha))
        object.__setattr__(self, "beta", _mod2(self.beta))

    @property
    def swap(self):
        return _KINDS[self.kind][0]

    @property
    def conj(self):
        return _KINDS[self.kind][1]

    def is_identity(self):
        return self.kind == DIAG and self.alpha == 0 and self.beta == 0

    def __call__(self, z1, z2):
        w1, w2 = (z2, z1) if self.swap else (z1, z2)
        if self.conj:
            w1, w2 = np.conj(w1), np.conj(w2)
        return (np.exp(1j * np.pi * float(self.alpha)) * w1,
                np.exp(1j * np.pi * float(self.beta)) * w2)

    def __matmul__(self, other):
        return compose(self, other)

    def __str__(self):
        return f"{self.kind}({self.alpha}, {self.beta})"


IDENTITY = PhaseMap(DIAG, Fraction(0), Fraction(0))


def diag(alpha, beta):
    return PhaseMap(DIAG, Fraction(alpha), Fraction(beta))


def antidiagc(alpha, beta):
    return PhaseMap(ANTIDIAG_CONJ, Fraction(alpha), Fraction(beta))


def compose(f: PhaseMap, g: PhaseMap) -> PhaseMap:
    """``f o g`` (apply ``g`` first)."""
    g_angles = (g.alpha, g.beta)
    sign = -1 if f.conj else 1
    if f.swap:
        g_angles = g_angles[::-1]
    alpha = f.alpha + sign * g_angles[0]
    beta = f.beta + sign * g_angles[1]
    kind = _KIND_OF[(f.swap != g.swap, f.conj != g.conj)]
    return PhaseMap(kind, alpha, beta)


def power(f: PhaseMap, k: int) -> PhaseMap:
    if k < 0:
        raise ValueError("negative powers are not needed here")
    out, base = IDENTITY, f
    while k:
        if k & 1:
            out = compose(out, base)
        base = compose(base, base)
        k >>= 1
    return out


def conjugate_by_reflection(f: PhaseMap) -> PhaseMap:
    """``R o f o R`` for the orientation-reversing ``R(z1, z2) = (z1, conj(z2))``.

    Negates the second angle; maps that swap coordinates also toggle
    conjugation, so an antidiagonal-conjugate map becomes a plain swap.
    """
    conj = not f.conj if f.swap else f.conj
    return PhaseMap(_KIND_OF[(f.swap, conj)], f.alpha, -f.beta)


def a_plus(n: int) -> PhaseMap:
    """``(z1, z2) -> (e^{pi i/2n} conj z2, e^{-pi i/2n} conj z1)``."""
    return antidiagc(Fraction(1, 2 * n), Fraction(-1, 2 * n))


def a_minus(n: int) -> PhaseMap:
    return conjugate_by_reflection(a_plus(n))


def a_qtilde(n: int, qtilde: int) -> PhaseMap:
    """``(z1, z2) -> (e^{pi i/2n} z1, e^{pi i qtilde/2n} z2)``."""
    return diag(Fraction(1, 2 * n), Fraction(qtilde, 2 * n))


def a_standard(n: int) -> PhaseMap:
    """The diagonal conjugate of ``A+`` whose quotient is ``L(4n, 2n-1)``."""
    return a_qtilde(n, 2 * n - 1)


def order_of(f: PhaseMap, max_order: int = 10**6) -> Optional[int]:
    """Least ``k >= 1`` with ``f^k`` the identity, or ``None`` past ``max_order``."""
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    g = f
    for k in range(1, max_order + 1):
        if g.is_identity():
            return k
        g = compose(g, f)
    return None


def has_fixed_point(f: PhaseMap) -> bool:
    """Whether ``f`` fixes some point of S^3.

    diag: a coordinate axis is fixed iff one phase is trivial.
    antidiagc: ``z1 = e^a conj z2``, ``z2 = e^b conj z1`` forces ``a = b``.
    antidiag: ``z1 = e^a z2``, ``z2 = e^b z1`` forces ``a + b = 0``.
    diagc: always, e.g. ``(e^{i pi a/2}, 0)``.
    """
    if f.kind == DIAG:
        return f.alpha == 0 or f.beta == 0
    if f.kind == ANTIDIAG_CONJ:
        return f.alpha == f.beta
    if f.kind == ANTIDIAG:
        return _mod2(f.alpha + f.beta) == 0
    return True


class Freeness(NamedTuple):
    free: bool
    offending_power: Optional[int]


def is_free_action(f: PhaseMap, order: int) -> Freeness:
    """Check that no power ``f^k``, ``1 <= k < order``, has a fixed point."""
    g = f
    for k in range(1, order):
        if has_fixed_point(g):
            return Freeness(False, k)
        g = compose(g, f)
    return Freeness(True, None)


def quotient_lens(f: PhaseMap) -> LensSpace:
    """Lens space ``S^3 / <f>`` for a free diagonal ``f``.

    With ``f = diag(2a/p, 2b/p)`` of order ``p`` the quotient is
    ``L(p, b a^-1)``, canonicalized.
    """
    if f.kind != DIAG:
        raise ValueError(f"quotient_lens needs a diagonal map, got {f}")
    p = order_of(f)
    if p is None or not is_free_action(f, p).free:
        raise ValueError(f"{f} does not generate a free action")
    a = f.alpha * p / 2
    b = f.beta * p / 2
    assert a.denominator == 1 and b.denominator == 1
    a, b = int(a), int(b)
    if gcd(a, p) != 1:
        raise ValueError(f"{f} does not generate a free action")
    return normalize_lens(p, b * pow(a, -1, p))


_PHASE_RE = re.compile(
    r"\s*(diagc|diag|antidiagc|antidiag)\s*\(\s*([+\-]?\d+(?:\s*/\s*\d+)?)\s*,"
    r"\s*([+\-]?\d+(?:\s*/\s*\d+)?)\s*\)\s*$"
)


def parse_phase_map(text: str) -> PhaseMap:
    """Parse ``diag(a/b, c/d)`` or ``antidiagc(a/b, c/d)`` (angles in units of pi)."""
    m = _PHASE_RE.match(text)
    if m is None:
        raise ParseError("malformed phase map", text, 0, ["diag(a/b, c/d)", "antidiagc(a/b, c/d)"])
    kind, a, b = m.groups()
    return PhaseMap(kind, Fraction(a.replace(" ", "")), Fraction(b.replace(" ", "")))


# ----- quaternions and SO(4) -------------------------------------------------


class Quaternion(NamedTuple):
    a0: float
    a1: float
    a2: float
    a3: float

    def __mul__(self, other):
        a0, a1, a2, a3 = self
        b0, b1, b2, b3 = other
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def norm(self):
        return float(np.sqrt(sum(x * x for x in self)))

    @classmethod
    def from_complex(cls, z1, z2):
        return cls(z1.real, z1.imag, z2.real, z2.imag)

    def to_complex(self):
        return complex(self.a0, self.a1), complex(self.a2, self.a3)


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
QI = Quaternion(0.0, 1.0, 0.0, 0.0)
QJ = Quaternion(0.0, 0.0, 1.0, 0.0)
QK = Quaternion(0.0, 0.0, 0.0, 1.0)
_BASIS = (ONE, QI, QJ, QK)


def left_mult(q: Quaternion) -> np.ndarray:
    return np.column_stack([q * e for e in _BASIS])


def right_mult(q: Quaternion) -> np.ndarray:
    return np.column_stack([e * q for e in _BASIS])


def phase_matrix(f: PhaseMap) -> np.ndarray:
    """Real 4x4 matrix of a phase map (it is real-linear)."""
    cols = []
    for e in _BASIS:
        z1, z2 = e.to_complex()
        cols.append(Quaternion.from_complex(*f(z1, z2)))
    return np.column_stack(cols)


def phi_matrix() -> np.ndarray:
    """Left multiplication by ``(1 + i - j - k) / 2``."""
    return left_mult(Quaternion(0.5, 0.5, -0.5, -0.5))


def a_plus_matrix(n: int) -> np.ndarray:
    """``a -> -sin(pi/2n) k a + cos(pi/2n) k a i``."""
    s, c = np.sin(np.pi / (2 * n)), np.cos(np.pi / (2 * n))
    return -s * left_mult(QK) + c * left_mult(QK) @ right_mult(QI)


def a_standard_matrix(n: int) -> np.ndarray:
    """``a -> sin(pi/2n) i a - cos(pi/2n) i a i``, the quaternionic form of ``A_{2n-1}``."""
    s, c = np.sin(np.pi / (2 * n)), np.cos(np.pi / (2 * n))
    return s * left_mult(QI) - c * left_mult(QI) @ right_mult(QI)


def a_qtilde_matrix(n: int, qtilde: int) -> np.ndarray:
    if qtilde % 2 == 0:
        raise ValueError("qtilde must be odd")
    return phase_matrix(a_qtilde(n, qtilde))


def reflection_matrix() -> np.ndarray:
    """``(z1, z2) -> (z1, conj z2)``, orientation reversing."""
    return np.diag([1.0, 1.0, 1.0, -1.0])


def is_special_orthogonal(m, tol=MATRIX_TOL):
    m = np.asarray(m)
    return (np.abs(m.T @ m - np.eye(4)).max() < tol
            and abs(np.linalg.det(m) - 1.0) < tol)


def verify_conjugation(n: int) -> float:
    """Max entry of ``Phi A+ - A_{2n-1} Phi``."""
    phi = phi_matrix()
    return float(np.abs(phi @ a_plus_matrix(n) - a_standard_matrix(n) @ phi).max())


def matrix_order(m, max_order=10**4, tol=MATRIX_TOL) -> Optional[int]:
    acc = np.eye(4)
    for k in range(1, max_order + 1):
        acc = acc @ m
        if np.abs(acc - np.eye(4)).max() < tol:
            return k
    return None


def trace_a_qtilde(n: int, qtilde: int) -> float:
    return 2 * np.cos(np.pi / (2 * n)) + 2 * np.cos(np.pi * qtilde / (2 * n))


def trace_scan(n: int, tol=MATRIX_TOL) -> list:
    """Odd ``qtilde`` in ``[1, 4n-1]`` coprime to ``4n`` with ``trace(A_qtilde) = 0``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return [q for q in range(1, 4 * n) if gcd(q, 4 * n) == 1
            and abs(trace_a_qtilde(n, q)) < tol]


def matrix_to_json(m) -> str:
    return json.dumps(np.asarray(m).tolist())


@dataclass(frozen=True)
class ActionReport:
    n: int
    order: int
    free: bool
    conjugation_deviation: float
    trace_scan: tuple
    quotient: LensSpace  # via A_{2n-1}
    reflected_quotient: LensSpace  # via the A- route

    @property
    def ok(self):
        return (self.order == 4 * self.n and self.free
                and self.conjugation_deviation < MATRIX_TOL
                and self.trace_scan == (2 * self.n - 1, 2 * self.n + 1)
                and self.quotient == normalize_lens(4 * self.n, 2 * self.n - 1)
                and self.reflected_quotient == normalize_lens(4 * self.n, 2 * self.n + 1))

    def to_dict(self):
        return {
            "n": self.n, "order": self.order, "free": self.free,
            "conjugation_deviation": self.conjugation_deviation,
            "trace_scan": list(self.trace_scan),
            "quotient": {"p": self.quotient.p, "q": self.quotient.q},
            "reflected_quotient": {"p": self.reflected_quotient.p,
                                   "q": self.reflected_quotient.q},
            "ok": self.ok,
        }


def verify_action(n: int) -> ActionReport:
    """Run the whole chain for ``A+``: order, freeness, conjugation to
    ``A_{2n-1}``, the trace scan, and both lens quotients."""
    f = a_plus(n)
    order = order_of(f, 4 * n + 1)
    free = order is not None and is_free_action(f, order).free
    std = a_standard(n)
    return ActionReport(
        n, order, free, verify_conjugation(n), tuple(trace_scan(n)),
        quotient_lens(std), quotient_lens(conjugate_by_reflection(std)),
    )

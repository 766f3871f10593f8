import json
import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group
from sympy.matrices.normalforms import invariant_factors

from oracles import metacyclic_model_order
from seifert_lens._text import ParseError
from seifert_lens.fpgroup import (CosetLimitExceeded, GroupPresentation, Word, abelianization,
                                  element_order, group_order, is_cyclic,
                                  metacyclic_presentation, parse_presentation,
                                  smith_invariants, todd_coxeter, verify_metacyclic)

PAIRS = [(n, b) for n in range(1, 7) for b in range(1, 6) if gcd(n, b) == 1]


def test_word_reduction_and_format():
    w = Word(((0, 1), (1, 1), (1, -1), (0, 1)))
    assert w.letters == ((0, 1), (0, 1))
    assert (w * w.inverse()).letters == ()
    assert Word.from_syllables([(0, -1), (1, 3)]).format("ah") == "a^-1 h^3"


def test_parse_presentation():
    p = parse_presentation("< a, h | a^-1 h a h, a^4 h^-3 >")
    assert p.generator_names == ("a", "h")
    assert p.format() == "< a, h | a^-1 h a h, a^4 h^-3 >"
    assert parse_presentation(p.format()) == p


def test_equations_become_relators():
    p = parse_presentation("<a,h | a^-1 h a = h^-1, a^4 = h^3>")
    assert p == parse_presentation("<a,h | a^-1 h a h, a^4 h^-3>")


def test_parenthesised_powers():
    p = parse_presentation("<x, y | x^2, y^3, (x y)^2>")
    assert group_order(p) == 6


@pytest.mark.parametrize("text, offset", [
    ("< a | b >", 6),
    ("< a, h | a^ >", 12),
    ("a | a^2 >", 0),
    ("< a | a^2 ", 10),
])
def test_parse_errors(text, offset):
    with pytest.raises(ParseError) as info:
        parse_presentation(text)
    assert info.value.offset == offset


def test_undeclared_generator_rejected():
    with pytest.raises(ValueError):
        GroupPresentation(("a",), (Word(((1, 1),)),))
    p = parse_presentation("<a | a^6>")
    with pytest.raises(ValueError):
        todd_coxeter(p, [Word(((3, 1),))])
    with pytest.raises(ParseError):
        todd_coxeter(p, ["b"])


def test_todd_coxeter_examples():
    assert todd_coxeter(parse_presentation("<a | a^6>"), [], 10**4).index == 6
    t = todd_coxeter(parse_presentation("<a,h | a^-1 h a h, a^4 h^-1>"), [], 10**4)
    assert t.index == 8 == metacyclic_model_order(2, 1)
    t = todd_coxeter(parse_presentation("<a,h | a^-1 h a h, a^4 h^-3>"), ["h"], 10**4)
    assert t.index == 4
    assert t.verify()


def test_group_order_examples():
    assert group_order(parse_presentation("<a,q | q^3, q a^2>")) == 6
    assert group_order(parse_presentation("<a,h | a^-1 h a h, a^6 h^-1>")) == 12
    assert group_order(parse_presentation("<a,h | a^-1 h a h, a^4 h^-3>")) == 24


def test_limit_exceeded_is_a_status():
    t = todd_coxeter(parse_presentation("<a | a^50>"), [], 10)
    assert not t.complete and t.status == "exceeded limit" and t.index is None
    assert group_order(parse_presentation("<a, b | >"), limit=100) is None
    with pytest.raises(CosetLimitExceeded):
        is_cyclic(parse_presentation("<a, b | a^2>"), limit=50)
    with pytest.raises(ValueError):
        todd_coxeter(parse_presentation("<a | a^2>"), [], 0)


def test_trivial_and_free_edge_cases():
    assert group_order(parse_presentation("< | >")) == 1
    assert group_order(parse_presentation("<a | a>")) == 1
    assert group_order(parse_presentation("<a, b | a, b>")) == 1


@pytest.mark.parametrize("n, beta", PAIRS)
def test_order_law_against_model(n, beta):
    p = metacyclic_presentation(n, beta)
    t = todd_coxeter(p)
    assert t.verify()
    assert t.index == 4 * n * beta == metacyclic_model_order(n, beta)
    assert is_cyclic(p) == (beta == 1)


@pytest.mark.parametrize("n, beta", PAIRS)
def test_relator_order_and_redundant_relation_do_not_matter(n, beta):
    p = metacyclic_presentation(n, beta)
    rels = list(p.relators) + [Word.power(1, 2 * beta)]
    rng = random.Random(n * 100 + beta)
    for _ in range(3):
        rng.shuffle(rels)
        q = p.with_relators(rels)
        assert group_order(q) == 4 * n * beta
        assert todd_coxeter(q, ["h"]).index == 2 * n
    shuffled = p.with_relators(p.relators[::-1])
    assert group_order(shuffled) == 4 * n * beta


def test_coset_table_json_export():
    t = todd_coxeter(parse_presentation("<a | a^3>"))
    data = json.loads(t.to_json())
    assert data["status"] == "complete"
    assert data["columns"] == ["a", "a^-1"]
    assert data["table"] == [[1, 2], [2, 0], [0, 1]]


def test_abelianization_examples():
    assert abelianization(parse_presentation("<a, b | >")) == (2, ())
    assert abelianization(parse_presentation("<a,h | a^-1 h a h, a^4 h^-1>")) == (0, (8,))
    assert abelianization(parse_presentation("<a,h | a^-1 h a h, a^4 h^-3>")) == (0, (8,))
    assert abelianization(parse_presentation("<a, b | a^2, b^4>")) == (0, (2, 4))
    assert abelianization(parse_presentation("<a, b | a^6, b^4>")) == (0, (2, 12))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_smith_against_sympy(rows, cols, data):
    m = data.draw(st.lists(st.lists(st.integers(-12, 12), min_size=cols, max_size=cols),
                           min_size=rows, max_size=rows))
    ours = smith_invariants(m, cols)
    theirs = [abs(int(x)) for x in invariant_factors(Matrix(m), domain=ZZ) if x != 0]
    assert ours == theirs
    assert all(b % a == 0 for a, b in zip(ours, ours[1:]))


@pytest.mark.parametrize("n", range(1, 21))
def test_lens_abelianization(n):
    assert abelianization(metacyclic_presentation(n, 1)) == (0, (4 * n,))


@pytest.mark.parametrize("n, beta", PAIRS)
def test_abelianization_order_divides_group_order(n, beta):
    p = metacyclic_presentation(n, beta)
    assert group_order(p) % abelianization(p).order == 0


def test_is_cyclic_examples():
    assert is_cyclic(metacyclic_presentation(2, 1))
    assert not is_cyclic(metacyclic_presentation(2, 3))
    assert is_cyclic(parse_presentation("<a | a^14>"))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 7), st.booleans())
def test_orders_match_sympy(m, k, r, with_subgroup):
    """Metacyclic-type presentations < a, b | a^m, b^k, b^-1 a b a^-r > are finite."""
    F, a, b = free_group("a b")
    ours = parse_presentation(f"<a, b | a^{m}, b^{k}, b^-1 a b a^-{r}>")
    theirs = FpGroup(F, [a**m, b**k, b**-1 * a * b * a**-r])
    table = theirs.coset_enumeration([b] if with_subgroup else [])
    table.compress()
    t = todd_coxeter(ours, ["b"] if with_subgroup else [])
    assert t.complete and t.verify()
    assert t.index == len(table.table)


def test_element_order():
    p = metacyclic_presentation(3, 2)
    assert element_order(p, "h") == 4
    assert element_order(p, "a") == 12


def test_verify_metacyclic_examples():
    c = verify_metacyclic(2, 3)
    assert (c.m, c.k, c.n_H, c.l) == (6, 4, 5, 3)
    assert (5**4 - 1) % 6 == 0 and (3 * 4) % 6 == 0
    assert c.group_order == 24
    c = verify_metacyclic(1, 1)
    assert c.group_order == 4 and c.index_of_normal == 2
    c = verify_metacyclic(3, 2)
    assert c.group_order == 24 and c.normal_order == 4
    with pytest.raises(ValueError):
        verify_metacyclic(2, 4)

"""Lens spaces, Seifert invariants over RP2, and the classification of
lens spaces that fibre over RP2(n).

Seifert manifolds over RP2 are written ``M(-1; b; (a1,b1), ...)``. After
absorbing the Euler term and every ``(1, c)`` fibre there is a single fibre
``(n, beta)``; the total space is a lens space exactly when ``beta = +-1``,
and then ``M(-1; (n, +-1))`` is ``L(4n, 2n -+ 1)`` as oriented manifolds.
"""

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from ._text import ParseError, Tokens
from .fpgroup import (DEFAULT_COSET_LIMIT, CosetLimitExceeded, GroupPresentation, Word,
                      group_order, is_cyclic, metacyclic_presentation)
from .orbifold import Orbifold2D, format_orbifold, is_finite_pi1orb_rp2


@dataclass(frozen=True)
class LensSpace:
    """Oriented lens space ``L(p, q)``; build canonical ones with :func:`normalize_lens`."""

    p: int
    q: int

    def __str__(self):
        return f"L({self.p},{self.q})"


def normalize_lens(p: int, q: int) -> LensSpace:
    """Canonical representative under oriented equivalence: ``q`` becomes
    ``min(q mod p, q^-1 mod p)``."""
    if p <= 0:
        raise ValueError(f"lens space needs p >= 1, got p = {p}")
    if gcd(p, q) != 1:
        raise ValueError(f"L({p},{q}): p and q must be coprime")
    r = q % p
    return LensSpace(p, min(r, pow(r, -1, p)) if p > 1 else 0)


def canonical_lens_classes(p: int):
    """Canonical ``q`` values for a fixed ``p``, ascending."""
    if p == 1:
        return [0]
    return sorted({normalize_lens(p, q).q for q in range(1, p) if gcd(p, q) == 1})


@dataclass(frozen=True)
class SeifertInvariants:
    """``M(-1; b; (alpha_1, beta_1), ...)``; only the RP2 base (genus -1) is supported."""

    base_genus: int = -1
    b: int = 0
    fibers: tuple = field(default=())

    def __post_init__(self):
        if self.base_genus != -1:
            raise ValueError("only the non-orientable base RP2 (genus -1) is supported")
        fibers = tuple((int(a), int(c)) for a, c in self.fibers)
        for a, c in fibers:
            if a < 1:
                raise ValueError(f"fibre ({a},{c}): alpha must be >= 1")
            if gcd(a, c) != 1:
                raise ValueError(f"fibre ({a},{c}): alpha and beta must be coprime")
        object.__setattr__(self, "fibers", fibers)

    @property
    def genuine_fibers(self):
        return tuple(f for f in self.fibers if f[0] > 1)

    def __str__(self):
        parts = ["-1"]
        if self.b:
            parts.append(str(self.b))
        body = "; ".join(parts)
        if self.fibers:
            body += "; " + ", ".join(f"({a},{c})" for a, c in self.fibers)
        return f"M({body})"


def normalize_seifert(s: SeifertInvariants) -> SeifertInvariants:
    """Absorb the Euler term and all ``(1, c)`` fibres into one fibre.

    The combined integer ``b + sum(c)`` goes into the first genuine fibre
    as ``beta -> beta + b * alpha``; with no genuine fibre the result is the
    single fibre ``(1, b)``.
    """
    total = s.b + sum(c for a, c in s.fibers if a == 1)
    genuine = list(s.genuine_fibers)
    if not genuine:
        return SeifertInvariants(-1, 0, ((1, total),))
    a, c = genuine[0]
    genuine[0] = (a, c + total * a)
    return SeifertInvariants(-1, 0, tuple(genuine))


def single_fiber(s: SeifertInvariants):
    """``(n, beta)`` of a normalized one-fibre datum, else ``None``."""
    norm = normalize_seifert(s)
    return norm.fibers[0] if len(norm.fibers) == 1 else None


@dataclass(frozen=True)
class Pi1Presentations:
    full: GroupPresentation  # generators a, q, h
    simplified: GroupPresentation  # generators a, h
    beta: int  # the positive beta used in both presentations
    h_inverted: bool  # True if h was replaced by h^-1 to make beta positive


def pi1_presentation(n: int, beta: int) -> Pi1Presentations:
    """Both presentations of pi_1(M(-1; (n, beta))) with beta made positive."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if gcd(n, beta) != 1:
        raise ValueError(f"(n, beta) = ({n}, {beta}) must be coprime")
    flipped = beta < 0
    beta = abs(beta)
    a, q, h = 0, 1, 2
    full = GroupPresentation(("a", "q", "h"), (
        Word.from_syllables([(a, -1), (h, 1), (a, 1), (h, 1)]),
        Word.from_syllables([(h, 1), (q, 1), (h, -1), (q, -1)]),
        Word.from_syllables([(q, n), (h, beta)]),
        Word.from_syllables([(q, 1), (a, 2)]),
    ))
    return Pi1Presentations(full, metacyclic_presentation(n, beta), beta, flipped)


def lens_for_fiber(n: int, sign: int) -> LensSpace:
    """Oriented ``L(4n, 2n - sign)`` for the fibre ``(n, sign)``, not canonicalized."""
    return LensSpace(4 * n, 2 * n - sign)


@dataclass(frozen=True)
class Recognition:
    """Outcome of :func:`recognize_lens`.

    ``reason`` is ``None`` for lens spaces, otherwise one of
    ``"infinite-base-group"``, ``"infinite-pi1"`` or ``"non-cyclic-pi1"``.
    ``pi1_order`` is ``None`` when the fundamental group is infinite.
    """

    lens: Optional[LensSpace]
    oriented_q: Optional[int]
    reason: Optional[str]
    pi1_order: Optional[int]
    fiber: Optional[tuple]

    @property
    def is_lens(self):
        return self.lens is not None

    def explain(self):
        if self.is_lens:
            return f"lens space {self.lens} (oriented L({self.lens.p},{self.oriented_q}))"
        if self.reason == "infinite-base-group":
            return ("not a lens space: two or more exceptional fibres, so the base "
                    "orbifold group (a quotient of pi_1) is infinite")
        if self.reason == "infinite-pi1":
            return "not a lens space: pi_1 is infinite (beta = 0)"
        return f"not a lens space: pi_1 has order {self.pi1_order} but is not cyclic"


def recognize_lens(s: SeifertInvariants, certify=False, limit=DEFAULT_COSET_LIMIT) -> Recognition:
    """Decide whether ``s`` is a lens space and, if so, which one.

    With ``certify=True`` the order of pi_1 and its (non-)cyclicity are
    confirmed by coset enumeration.
    """
    norm = normalize_seifert(s)
    if len(norm.fibers) >= 2:
        orders = [a for a, _ in norm.fibers]
        assert not is_finite_pi1orb_rp2(orders).finite
        return Recognition(None, None, "infinite-base-group", None, None)
    n, beta = norm.fibers[0]
    if beta == 0:
        return Recognition(None, None, "infinite-pi1", None, (n, beta))
    order = 4 * n * abs(beta)
    if certify:
        pres = pi1_presentation(n, beta).simplified
        found = group_order(pres, limit)
        if found is None:
            raise CosetLimitExceeded(f"more than {limit} cosets for {pres}")
        if found != order or is_cyclic(pres, limit) != (abs(beta) == 1):
            raise AssertionError(f"pi_1 certification failed for {norm}")
    if abs(beta) != 1:
        return Recognition(None, None, "non-cyclic-pi1", order, (n, beta))
    oriented = lens_for_fiber(n, beta)
    return Recognition(normalize_lens(oriented.p, oriented.q), oriented.q, None, order,
                       (n, beta))


@dataclass(frozen=True)
class Fibration:
    invariants: SeifertInvariants
    base: Orbifold2D
    total_space: LensSpace
    oriented_q: int

    @property
    def fiber(self):
        return self.invariants.fibers[0]

    def to_dict(self, certify=False, limit=DEFAULT_COSET_LIMIT):
        n, beta = self.fiber
        pres = pi1_presentation(n, beta)
        order = 4 * n
        if certify:
            found = group_order(pres.simplified, limit)
            if found != order or not is_cyclic(pres.simplified, limit):
                raise AssertionError(f"pi_1 certification failed for {self.invariants}")
        return {
            "lens": {"p": self.total_space.p, "q": self.total_space.q,
                     "q_oriented": self.oriented_q},
            "base": format_orbifold(self.base),
            "fiber": {"n": n, "beta": beta},
            "pi1": {"order": order, "cyclic": True,
                    "presentation": pres.simplified.format()},
        }


def fibration_for(n: int, sign: int) -> Fibration:
    oriented = lens_for_fiber(n, sign)
    return Fibration(
        SeifertInvariants(-1, 0, ((n, sign),)),
        Orbifold2D.rp2(*([n] if n > 1 else [])),
        normalize_lens(oriented.p, oriented.q),
        oriented.q,
    )


def classify_fibrations(lens: LensSpace) -> list:
    """All Seifert fibrations of ``lens`` over RP2(n), n >= 1.

    Only ``L(4n, 2n -+ 1)`` fibre, each exactly once: ``q = 2n - 1`` gives
    ``M(-1; (n, 1))`` and ``q = 2n + 1`` gives ``M(-1; (n, -1))``.
    """
    p = lens.p
    if p % 4:
        return []
    n = p // 4
    q = normalize_lens(p, lens.q).q
    # (2n +- 1)^2 = 1 mod 4n, so both values are already canonical
    for sign in (1, -1):
        if q == 2 * n - sign:
            return [fibration_for(n, sign)]
    return []


def parse_lens(text: str) -> LensSpace:
    """Parse ``L(p,q)``; the result is oriented, not canonicalized."""
    toks = Tokens(text)
    toks.expect("L")
    toks.expect("(")
    offset = toks.peek()[2]
    p = toks.integer()
    toks.expect(",")
    q = toks.integer()
    toks.expect(")")
    toks.finish()
    if p < 1 or gcd(p, q) != 1:
        raise ParseError(f"L({p},{q}) needs p >= 1 and gcd(p, q) = 1", text, offset)
    return LensSpace(p, q)


def parse_seifert(text: str) -> SeifertInvariants:
    """Parse ``M(-1; b; (a1,b1), (a2,b2), ...)``; the ``b;`` part is optional."""
    toks = Tokens(text)
    toks.expect("M")
    toks.expect("(")
    offset = toks.peek()[2]
    genus = toks.integer()
    if genus != -1:
        raise ParseError("only the RP2 base (genus -1) is supported", text, offset, ["-1"])
    b = 0
    fibers = []
    if toks.accept(";"):
        if not toks.at("("):
            b = toks.integer()
            if toks.accept(";"):
                fibers = _parse_fibers(toks)
        else:
            fibers = _parse_fibers(toks)
    toks.expect(")")
    toks.finish()
    try:
        return SeifertInvariants(-1, b, tuple(fibers))
    except ValueError as exc:
        raise ParseError(str(exc), text, offset) from None


def _parse_fibers(toks):
    fibers = []
    while True:
        toks.expect("(")
        a = toks.integer()
        toks.expect(",")
        c = toks.integer()
        toks.expect(")")
        fibers.append((a, c))
        if not toks.accept(","):
            return fibers

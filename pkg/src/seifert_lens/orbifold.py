"""Closed 2-orbifolds with cone points.

An orbifold is stored as its underlying closed surface (orientability plus
genus) together with a sorted tuple of cone-point orders. Non-orientable
genus counts cross-caps, so ``RP2`` has genus 1 and the Klein bottle genus 2.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from ._text import ParseError, Tokens
from .fpgroup import GroupPresentation, Word


class UnsupportedBase(ValueError):
    """The requested decision is only implemented for RP2 bases."""


@dataclass(frozen=True)
class Orbifold2D:
    orientable: bool
    genus: int
    cone_orders: tuple = field(default=())

    def __post_init__(self):
        orders = tuple(sorted(int(n) for n in self.cone_orders))
        if any(n < 1 for n in orders):
            raise ValueError(f"cone orders must be >= 1, got {orders}")
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if not self.orientable and self.genus < 1:
            raise ValueError("a non-orientable surface has genus >= 1")
        object.__setattr__(self, "cone_orders", orders)

    @classmethod
    def sphere(cls, *orders):
        return cls(True, 0, orders)

    @classmethod
    def rp2(cls, *orders):
        return cls(False, 1, orders)

    @property
    def is_rp2(self):
        return not self.orientable and self.genus == 1

    @property
    def surface_euler_characteristic(self):
        return 2 - 2 * self.genus if self.orientable else 2 - self.genus

    def __str__(self):
        return format_orbifold(self)


def normalize_orbifold(o: Orbifold2D) -> Orbifold2D:
    """Drop order-1 cone points, which are smooth points."""
    return Orbifold2D(o.orientable, o.genus, tuple(n for n in o.cone_orders if n != 1))


def euler_characteristic(o: Orbifold2D) -> Fraction:
    chi = Fraction(o.surface_euler_characteristic)
    for n in o.cone_orders:
        chi -= 1 - Fraction(1, n)
    return chi


def _check_rp2_orders(cone_orders):
    orders = sorted(int(n) for n in cone_orders)
    bad = [n for n in orders if n < 2]
    if bad:
        raise ValueError(f"cone orders must be >= 2 (normalize first), got {bad}")
    return orders


def pi1orb_presentation_rp2(cone_orders) -> GroupPresentation:
    """Orbifold fundamental group of RP2(n_1, ..., n_k).

    Generators are ``a`` followed by one generator per cone point (``q`` when
    there is a single cone point, ``q1..qk`` otherwise) with relators
    ``q_i^{n_i}`` and ``q_1 ... q_k a^2``.
    """
    orders = _check_rp2_orders(cone_orders)
    k = len(orders)
    names = ["a"] + (["q"] if k == 1 else [f"q{i + 1}" for i in range(k)])
    relators = [Word.power(i + 1, n) for i, n in enumerate(orders)]
    last = Word(tuple((i + 1, 1) for i in range(k)) + ((0, 1), (0, 1)))
    relators.append(last)
    return GroupPresentation(tuple(names), tuple(relators))


class Finiteness(NamedTuple):
    finite: bool
    order: Optional[int]  # order of the cyclic group when finite
    chi: Optional[Fraction]  # non-positive Euler characteristic witness otherwise


def is_finite_pi1orb_rp2(cone_orders) -> Finiteness:
    """Finite iff at most one cone point; the group is then cyclic of order 2n.

    For two or more cone points the witness is the Euler characteristic of
    RP2(n_1, n_2) built from the first two orders, which is <= 0.
    """
    orders = _check_rp2_orders(cone_orders)
    if len(orders) <= 1:
        n = orders[0] if orders else 1
        return Finiteness(True, 2 * n, None)
    chi = euler_characteristic(Orbifold2D.rp2(orders[0], orders[1]))
    return Finiteness(False, None, chi)


def is_finite_pi1orb(o: Orbifold2D) -> Finiteness:
    if not o.is_rp2:
        raise UnsupportedBase(f"finiteness is only decided for RP2 bases, not {o}")
    return is_finite_pi1orb_rp2(normalize_orbifold(o).cone_orders)


_SURFACES = {"S2": (True, 0), "T2": (True, 1), "RP2": (False, 1), "K": (False, 2)}


def format_orbifold(o: Orbifold2D) -> str:
    for name, (orientable, genus) in _SURFACES.items():
        if (o.orientable, o.genus) == (orientable, genus):
            break
    else:
        name = f"{'O' if o.orientable else 'N'}{o.genus}"
    return f"{name}({','.join(str(n) for n in o.cone_orders)})"


def parse_orbifold(text: str) -> Orbifold2D:
    """Parse ``S2(2,3,3)``, ``RP2(5)``, ``RP2()`` or bare ``RP2``.

    Also accepts ``T2``, ``K`` and the generic ``O<g>`` / ``N<g>`` surfaces
    emitted by :func:`format_orbifold`.
    """
    toks = Tokens(text)
    offset = toks.peek()[2]
    surface = toks.name()
    if surface in _SURFACES:
        orientable, genus = _SURFACES[surface]
    elif surface[0] in "ON" and surface[1:].isdigit():
        orientable, genus = surface[0] == "O", int(surface[1:])
    else:
        raise ParseError(f"unknown surface {surface!r}", text, offset,
                         ["S2", "RP2", "T2", "K", "O<g>", "N<g>"])
    orders = []
    if toks.accept("("):
        if not toks.at(")"):
            orders.append(toks.integer())
            while toks.accept(","):
                orders.append(toks.integer())
        toks.expect(")")
    toks.finish()
    try:
        return Orbifold2D(orientable, genus, tuple(orders))
    except ValueError as exc:
        raise ParseError(str(exc), text, offset) from None


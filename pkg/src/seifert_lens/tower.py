"""An infinite tower of orbifold coverings over RP2(n1, n2), n1, n2 >= 2.

    S2(n1,n1,n2,n2)      -> RP2(n1,n2)         degree 2   (antipodal map)
    S2(n2 x 2n1)         -> S2(n1,n1,n2,n2)    degree n1  (rotation about the poles)
    S2(n2 x n2(m - 2))   -> S2(n2 x m)         degree n2  (same, branched at two of the m points)

Each step is certified by exact Euler characteristic multiplicativity and by
cone-point bookkeeping.
"""

import json
from collections import Counter
from dataclasses import dataclass
from itertools import islice
from typing import Optional

from .orbifold import Orbifold2D, euler_characteristic, format_orbifold

ANTIPODAL = "antipodal-quotient"
POLAR = "polar-rotation"


@dataclass(frozen=True)
class CoveringStep:
    cover: Orbifold2D
    base: Orbifold2D
    degree: int
    description: str
    rotation_order: Optional[int] = None  # for polar rotations

    def to_dict(self):
        return {
            "cover": format_orbifold(self.cover),
            "base": format_orbifold(self.base),
            "degree": self.degree,
            "chi_cover": str(euler_characteristic(self.cover)),
            "chi_base": str(euler_characteristic(self.base)),
        }


def cone_counts(n1, n2):
    """Cone-point counts of the sphere covers: ``2 n1``, then ``m -> n2 (m - 2)``."""
    m = 2 * n1
    while True:
        yield m
        m = n2 * (m - 2)


def iter_tower(n1: int, n2: int):
    if n1 < 2 or n2 < 2:
        raise ValueError("the tower needs n1, n2 >= 2")
    base = Orbifold2D.rp2(n1, n2)
    cover = Orbifold2D.sphere(n1, n1, n2, n2)
    yield CoveringStep(cover, base, 2, ANTIPODAL)
    base, degree = cover, n1
    for m in cone_counts(n1, n2):
        cover = Orbifold2D.sphere(*([n2] * m))
        yield CoveringStep(cover, base, degree, POLAR, degree)
        base, degree = cover, n2


def build_tower(n1: int, n2: int, depth: int) -> list:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    return list(islice(iter_tower(n1, n2), depth))


def certify_step(s: CoveringStep) -> bool:
    if euler_characteristic(s.cover) != s.degree * euler_characteristic(s.base):
        return False
    if not (s.cover.orientable and s.cover.genus == 0):
        return False
    cover = Counter(s.cover.cone_orders)
    base = Counter(s.base.cone_orders)
    if s.description == ANTIPODAL:
        return (s.degree == 2 and s.base.is_rp2
                and cover == Counter({n: 2 * c for n, c in base.items()}))
    if s.description == POLAR:
        d = s.rotation_order
        if d != s.degree or base[d] < 2 or not (s.base.orientable and s.base.genus == 0):
            return False
        base[d] -= 2
        return cover == Counter({n: d * c for n, c in base.items() if c})
    return False


def tower_to_json(steps) -> str:
    return json.dumps([s.to_dict() for s in steps])

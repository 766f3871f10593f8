"""Seifert fibrations of lens spaces over non-orientable base orbifolds."""

from .fpgroup import (AbelianInvariants, CosetLimitExceeded, CosetTable, GroupPresentation,
                      MetacyclicCertificate, Word, abelianization, group_order, is_cyclic,
                      parse_presentation, todd_coxeter, verify_metacyclic)
from .orbifold import (Orbifold2D, euler_characteristic, is_finite_pi1orb_rp2,
                       normalize_orbifold, parse_orbifold, pi1orb_presentation_rp2)
from .seifert import (Fibration, LensSpace, SeifertInvariants, classify_fibrations,
                      normalize_lens, normalize_seifert, parse_lens, parse_seifert,
                      pi1_presentation, recognize_lens)
from ._text import ParseError

__all__ = [
    "AbelianInvariants", "CosetLimitExceeded", "CosetTable", "Fibration", "GroupPresentation",
    "LensSpace", "MetacyclicCertificate", "Orbifold2D", "ParseError", "SeifertInvariants",
    "Word", "abelianization", "classify_fibrations", "euler_characteristic", "group_order",
    "is_cyclic", "is_finite_pi1orb_rp2", "normalize_lens", "normalize_orbifold",
    "normalize_seifert", "parse_lens", "parse_orbifold", "parse_presentation",
    "parse_seifert", "pi1_presentation", "pi1orb_presentation_rp2", "recognize_lens",
    "todd_coxeter", "verify_metacyclic",
]

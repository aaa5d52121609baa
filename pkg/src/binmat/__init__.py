"""Simple binary matroids in an ambient binary projective geometry.

Induced-restriction detection, extremal minimum-size search under
forbidden induced restrictions, and desk-scale verification of the
quantitative facts about the smallest I5-free, triangle-free matroids.
"""

from .gf2 import (
    Flat,
    closure,
    cosets,
    enumerate_flats,
    enumerate_flats_avoiding,
    gaussian_binomial,
    rank_of,
    stabilizer,
)
from .matroid import (
    Matroid,
    contract,
    direct_sum,
    double,
    double_k,
    parse,
    parse_json,
    restrict,
    serialize,
    serialize_json,
)
from .catalog import PatternId, build, list_patterns, parse_pattern
from .detect import (
    CanonicalForm,
    LinearMap,
    Witness,
    canonical_form,
    has_induced,
    is_affine,
    is_isomorphic,
    is_triangle_free,
    isomorphism,
    odd_circuit_free,
)

__all__ = [
    "Flat",
    "Matroid",
    "PatternId",
    "CanonicalForm",
    "LinearMap",
    "Witness",
    "closure",
    "cosets",
    "enumerate_flats",
    "enumerate_flats_avoiding",
    "gaussian_binomial",
    "rank_of",
    "stabilizer",
    "contract",
    "direct_sum",
    "double",
    "double_k",
    "parse",
    "parse_json",
    "restrict",
    "serialize",
    "serialize_json",
    "build",
    "list_patterns",
    "parse_pattern",
    "canonical_form",
    "has_induced",
    "is_affine",
    "is_isomorphic",
    "is_triangle_free",
    "isomorphism",
    "odd_circuit_free",
]

__version__ = "0.1.0"

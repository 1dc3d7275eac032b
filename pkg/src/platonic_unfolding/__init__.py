"""Unfolding of Platonic surfaces and the monodromy of the unfolded cover."""

from .permgroup import Permutation, PermutationGroup, is_cyclic, quotient_by_normal
from .surface import (
    NotRegular,
    SchlafliSymbol,
    TiledSurface,
    ValidationError,
    dual,
    euler_characteristic,
    genus,
    is_rotary,
    rotation_group,
    schlafli,
    validate,
    vertex_orbits,
)
from .unfolding import (
    cocycle,
    deck_transformations,
    k_prime,
    monodromy_generators,
    monodromy_group,
    unfold,
)
from .theorems import VerificationReport, full_report, induced_subgroup
from .catalog import bolza, pi_p, platonic_solid, torus_map

__all__ = [
    "Permutation",
    "PermutationGroup",
    "is_cyclic",
    "quotient_by_normal",
    "NotRegular",
    "SchlafliSymbol",
    "TiledSurface",
    "ValidationError",
    "dual",
    "euler_characteristic",
    "genus",
    "is_rotary",
    "rotation_group",
    "schlafli",
    "validate",
    "vertex_orbits",
    "cocycle",
    "deck_transformations",
    "k_prime",
    "monodromy_generators",
    "monodromy_group",
    "unfold",
    "VerificationReport",
    "full_report",
    "induced_subgroup",
    "bolza",
    "pi_p",
    "platonic_solid",
    "torus_map",
]

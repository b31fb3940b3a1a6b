"""Finite-group toolkit for the element-order class CP2 and its neighbours."""

from .checkers import (
    ClassVerdict,
    FrobeniusDecomposition,
    TheoremDOutcome,
    ViolationWitness,
    classify,
    classify_theorem_d,
    corollary_f,
    cp2_oracle,
    cp2_via_theorem_a,
    detect_frobenius,
    is_cn,
    is_cp,
    is_cp1,
    is_cp2,
    largest_order_cut,
    omega_condition,
    order_map_property,
)
from .elementset import ElementSet
from .group import (
    ActionSpec,
    Group,
    PermutationSpec,
    direct_product,
    from_cayley_table,
    from_permutations,
    induced_subgroup,
    load_group,
    quotient,
    semidirect_product,
)

__version__ = "0.1.0"

__all__ = [
    "ActionSpec",
    "ClassVerdict",
    "ElementSet",
    "FrobeniusDecomposition",
    "Group",
    "PermutationSpec",
    "TheoremDOutcome",
    "ViolationWitness",
    "classify",
    "classify_theorem_d",
    "corollary_f",
    "cp2_oracle",
    "cp2_via_theorem_a",
    "detect_frobenius",
    "direct_product",
    "from_cayley_table",
    "from_permutations",
    "induced_subgroup",
    "is_cn",
    "is_cp",
    "is_cp1",
    "is_cp2",
    "largest_order_cut",
    "load_group",
    "omega_condition",
    "order_map_property",
    "quotient",
    "semidirect_product",
]

"""Exact-arithmetic toolkit for a rank-p^2 commutative Hopf algebra deformation.

The package builds the algebra R[x, y]/(x^p, y^p - t*x) over the localized
polynomial ring F_p[t], verifies every Hopf axiom as an exact matrix identity,
identifies both fibers of the family, takes Cartier duals and Hopf-ideal
quotients, checks freeness of the translation action on regular
representations, and reproduces the associated cohomological dimension
bookkeeping.  Everything is computed over exact rings; there is no floating
point anywhere.
"""

from .action import (
    DEFAULT_SEED,
    ActionPoint,
    RegularRepElement,
    binom_mod_p,
    enumerate_action_points,
    free_locus_hyperplane_check,
    is_action,
    stabilizer,
    translate,
    universal_leading_coefficient_identity,
)
from .algebra import (
    AlgebraElement,
    LinearMap,
    MonomialQuotientAlgebra,
    algebra_hom,
    unit_algebra,
)
from .cohomology import (
    JumpQuery,
    PoincareSeries,
    dim_classifying,
    fiber_jump,
    jump_certificate,
    kunneth,
    minimal_n_for_jump,
    projective_bundle_dim,
    verify_binomial_vs_kunneth,
)
from .hopf import (
    MUTATIONS,
    HopfAlgebra,
    HopfPresentation,
    cartier_dual,
    catalog_build,
    deformation_hopf,
    double_dual_report,
    exhibit_isomorphism,
    generic_grouplike,
    grouplike_order,
    hopf_quotient,
    is_grouplike,
    primitive_space,
    specialize_hopf,
    verify_axioms,
)
from .rings import Fiber, FunctionField, LocalRing, Prime, PrimeField

__version__ = "0.1.0"

__all__ = [
    "ActionPoint",
    "AlgebraElement",
    "DEFAULT_SEED",
    "Fiber",
    "FunctionField",
    "HopfAlgebra",
    "HopfPresentation",
    "JumpQuery",
    "LinearMap",
    "LocalRing",
    "MUTATIONS",
    "MonomialQuotientAlgebra",
    "PoincareSeries",
    "Prime",
    "PrimeField",
    "RegularRepElement",
    "algebra_hom",
    "binom_mod_p",
    "cartier_dual",
    "catalog_build",
    "deformation_hopf",
    "dim_classifying",
    "double_dual_report",
    "enumerate_action_points",
    "exhibit_isomorphism",
    "fiber_jump",
    "free_locus_hyperplane_check",
    "generic_grouplike",
    "grouplike_order",
    "hopf_quotient",
    "is_action",
    "is_grouplike",
    "jump_certificate",
    "kunneth",
    "minimal_n_for_jump",
    "primitive_space",
    "projective_bundle_dim",
    "specialize_hopf",
    "stabilizer",
    "translate",
    "unit_algebra",
    "universal_leading_coefficient_identity",
    "verify_axioms",
    "verify_binomial_vs_kunneth",
]

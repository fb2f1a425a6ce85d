"""Partial morphisms, purity and injective hulls over the rings ℤ/m."""
from .errors import CapExceeded, InvariantViolation
from .exact import (
    ABELIAN,
    PURE,
    Conflation,
    HomFrom,
    HomInto,
    Selector,
    baer_sum,
    conflation_of_mono,
    conflations_equivalent,
    ext_pullback,
    ext_pushout,
    in_substructure,
    is_inflation,
    is_pure_mono,
    pullback,
    pushout,
)
from .hulls import (
    Battery,
    InflationSet,
    is_essential,
    is_injective_hull,
    is_small_over,
    iterative_preenvelope,
    minimize_envelope,
    structural_injective_hull,
)
from .linalg import IntMatrix, RingSpec, smith_normal_form, solve_linear
from .modules import (
    FpModule,
    Morphism,
    cokernel,
    direct_sum,
    enumerate_hom,
    enumerate_subobjects,
    extend_along,
    image,
    kernel,
    lift_along,
)
from .partial import (
    PartialMorphism,
    check_partial,
    check_partial_iso_via_retraction,
    find_extension,
    is_cophantom,
    is_f_injective,
)

__version__ = "0.1.0"

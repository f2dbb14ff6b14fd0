"""Exact screening-vector computations for positive definite integral lattices."""

from .core import (
    Lattice,
    LatticeError,
    extend_to_basis,
    in_dual,
    in_extended_dual,
    in_scaled_lattice,
    is_positive_definite,
    orthogonal_split,
    quotient_invariants,
    sublattice_gram,
)
from .enumeration import (
    BACKEND_ENV,
    EnumerationResult,
    active_backend,
    box_enumerate,
    enumerate_exact_norm,
    enumerate_up_to_norm,
)
from .screeners import (
    ScreenerSet,
    all_screeners,
    central_charge,
    conformal_weight,
    dual_pairing_unit,
    is_screener,
    screener_span,
    screener_splitting,
    screening_system,
    virasoro_shift,
)
from .recognition import (
    ClassificationError,
    Component,
    ExtendedGroup,
    NoScreener,
    NotGeneratedError,
    Rank2Form,
    WARN_2B_ODD,
    catalog,
    identify_extended_type,
    rank2_normal_form,
    rank2_predicted_in_lattice,
    rank2_screener_list,
    recognize_components,
    reduce_screener_basis,
)
from .pairs import (
    FeasibilityReport,
    PairSpec,
    TypeIVSolution,
    analyze_screener,
    make_type_i,
    pair_decompositions,
    rank1_central_charge,
    solve_weight_quadratic,
    type_ii_feasible,
    type_iii_feasible,
    type_iv_search,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_ENV",
    "ClassificationError",
    "Component",
    "EnumerationResult",
    "ExtendedGroup",
    "FeasibilityReport",
    "Lattice",
    "LatticeError",
    "NoScreener",
    "NotGeneratedError",
    "PairSpec",
    "Rank2Form",
    "ScreenerSet",
    "TypeIVSolution",
    "WARN_2B_ODD",
    "active_backend",
    "all_screeners",
    "analyze_screener",
    "box_enumerate",
    "catalog",
    "central_charge",
    "conformal_weight",
    "dual_pairing_unit",
    "enumerate_exact_norm",
    "enumerate_up_to_norm",
    "extend_to_basis",
    "identify_extended_type",
    "in_dual",
    "in_extended_dual",
    "in_scaled_lattice",
    "is_positive_definite",
    "is_screener",
    "make_type_i",
    "orthogonal_split",
    "pair_decompositions",
    "quotient_invariants",
    "rank1_central_charge",
    "rank2_normal_form",
    "rank2_predicted_in_lattice",
    "rank2_screener_list",
    "recognize_components",
    "reduce_screener_basis",
    "screener_span",
    "screener_splitting",
    "screening_system",
    "solve_weight_quadratic",
    "sublattice_gram",
    "type_ii_feasible",
    "type_iii_feasible",
    "type_iv_search",
    "virasoro_shift",
]

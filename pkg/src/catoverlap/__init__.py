"""Overlap functions, phase-space fields and the distinguishability frontier
for equal-weight superpositions of coherent states on a circle."""

__version__ = "0.1.0"

from .distinguish import (
    DEFAULT_CRITERION,
    DistinguishabilityCriterion,
    FrontierRecord,
    calibrate_criterion,
    critical_cat,
    is_distinguishable,
    min_alpha,
    nu_estimate,
)
from .fockcheck import (
    FockVector,
    coherent_fock_vector,
    displacement_matrix,
    oracle_overlap,
    recommended_cutoff,
)
from .overlap import (
    OverlapRecord,
    OverlapSeries,
    asymptotic_overlap,
    cat2_fringe,
    cat2_phase_shifted_fringe,
    cat2_rotated_fringe,
    deviation_scan,
    diagonal_approx_overlap,
    exact_overlap,
    first_orthogonality_displacement,
    surface_scan,
    vcz_mutual_coherence,
)
from .phasespace import (
    FieldKind,
    GridSpec,
    PhaseSpaceField,
    husimi_q,
    husimi_q_at,
    wigner,
    wigner_overlap_integral,
)
from .specfun import RootResult, bessel_j0, j0_integral_reference, j0_root, log_factorial
from .states import (
    CatState,
    Displacement,
    Normalization,
    coherent_overlap,
    components,
    normalization_constant,
)

__all__ = [
    "CatState",
    "DEFAULT_CRITERION",
    "Displacement",
    "DistinguishabilityCriterion",
    "FieldKind",
    "FockVector",
    "FrontierRecord",
    "GridSpec",
    "Normalization",
    "OverlapRecord",
    "OverlapSeries",
    "PhaseSpaceField",
    "RootResult",
    "asymptotic_overlap",
    "bessel_j0",
    "calibrate_criterion",
    "cat2_fringe",
    "cat2_phase_shifted_fringe",
    "cat2_rotated_fringe",
    "coherent_fock_vector",
    "coherent_overlap",
    "components",
    "critical_cat",
    "deviation_scan",
    "diagonal_approx_overlap",
    "displacement_matrix",
    "exact_overlap",
    "first_orthogonality_displacement",
    "husimi_q",
    "husimi_q_at",
    "is_distinguishable",
    "j0_integral_reference",
    "j0_root",
    "log_factorial",
    "min_alpha",
    "normalization_constant",
    "nu_estimate",
    "oracle_overlap",
    "recommended_cutoff",
    "surface_scan",
    "vcz_mutual_coherence",
    "wigner",
    "wigner_overlap_integral",
]

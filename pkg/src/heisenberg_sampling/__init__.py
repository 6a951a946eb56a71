"""Sampling theory on the Heisenberg group.

Group and lattice arithmetic, Schrödinger representations on sampled
signals, Weyl-Heisenberg frames and superframes, the multiplicity density
criterion, Plancherel-side operator fields and the explicit sinc-type
function of the integer lattice.
"""

from .group import (
    IDENTITY,
    Automorphism,
    GroupElement,
    LatticePoint,
    StandardLattice,
    apply_automorphism,
    covolume,
    inverse,
    involution_star_argument,
    lattice_elements,
    modulus,
    multiply,
    reduced_lattice_elements,
)
from .grid import GridSignal, GridSpec, indicator, inner_product, modulate, norm, translate
from .schrodinger import WHAtomIndex, rho_apply, verify_phase_correspondence, wh_atom
from .gabor import (
    FrameReport,
    WHSystemSpec,
    analysis_coefficients,
    frame_bounds,
    range_orthogonality,
    tightness_ratio,
    window_norm_check,
)
from .superframes import (
    SuperframeSpec,
    VectorSignal,
    balan_windows,
    density_gate,
    superframe_tightness,
    window_orthogonality,
)
from .plancherel import (
    MultiplicityFunction,
    SigmaSet,
    admissible_normalization,
    multiplicity_condition_check,
    multiplicity_transform,
    simplified_condition_check,
    support_condition_check,
    unbounded_witness,
)
from .fields import (
    FieldNode,
    RankOneField,
    fibre_criterion_check,
    field_from_json,
    field_to_json,
    hs_pairing,
    inversion_evaluate,
    parseval_check,
)
from .sampling import (
    SamplingExpansionReport,
    SincEvaluation,
    half_band_field,
    idempotent_selfadjoint_check,
    no_onb_check,
    nontotality_counterexample,
    reproducing_check,
    restriction_isometry_check,
    sampling_expansion,
    sinc_by_inversion,
    sinc_closed_form,
    sinc_field,
)
from .kernels import backend as kernel_backend

__version__ = "0.1.0"

__all__ = [
    "Automorphism",
    "FieldNode",
    "FrameReport",
    "GridSignal",
    "GridSpec",
    "GroupElement",
    "IDENTITY",
    "LatticePoint",
    "MultiplicityFunction",
    "RankOneField",
    "SamplingExpansionReport",
    "SigmaSet",
    "SincEvaluation",
    "StandardLattice",
    "SuperframeSpec",
    "VectorSignal",
    "WHAtomIndex",
    "WHSystemSpec",
    "admissible_normalization",
    "analysis_coefficients",
    "apply_automorphism",
    "balan_windows",
    "half_band_field",
    "covolume",
    "density_gate",
    "fibre_criterion_check",
    "field_from_json",
    "field_to_json",
    "frame_bounds",
    "hs_pairing",
    "idempotent_selfadjoint_check",
    "indicator",
    "inner_product",
    "inverse",
    "inversion_evaluate",
    "involution_star_argument",
    "kernel_backend",
    "lattice_elements",
    "modulate",
    "modulus",
    "multiplicity_condition_check",
    "multiplicity_transform",
    "multiply",
    "no_onb_check",
    "nontotality_counterexample",
    "norm",
    "parseval_check",
    "range_orthogonality",
    "reduced_lattice_elements",
    "reproducing_check",
    "restriction_isometry_check",
    "rho_apply",
    "sampling_expansion",
    "simplified_condition_check",
    "sinc_by_inversion",
    "sinc_closed_form",
    "sinc_field",
    "superframe_tightness",
    "support_condition_check",
    "tightness_ratio",
    "translate",
    "unbounded_witness",
    "verify_phase_correspondence",
    "wh_atom",
    "window_norm_check",
    "window_orthogonality",
]

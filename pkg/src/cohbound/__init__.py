"""l1 coherence of multiqubit states and superadditivity lower bounds."""

from ._accel import backend
from .bounds import (
    BOUND_IDS,
    BoundParams,
    BoundReport,
    Condition,
    ConditionVerdict,
    baseline_bound,
    best_ordering,
    best_params,
    cor1_bound,
    evaluate_all,
    evaluate_bound,
    ref_scheme_bound,
    safe_evaluate,
    thm1_bound,
    thm2_bound,
    thm3_bound,
    thm4_bound,
)
from .coherence import (
    CoherenceProfile,
    l1_coherence,
    product_coherence_check,
    profile,
    synthetic_profile,
)
from .config import Config, config
from .errors import CohboundError
from .ineq import (
    ScalarParams,
    SlackResult,
    coeff_gap_identity,
    dominance_check,
    gamma_coeff,
    lambda_coeff,
    lemma1_holds,
    lemma2_holds,
    powf,
    ref31_ineq_holds,
)
from .oracle import (
    FuzzConfig,
    VerifySummary,
    bound_validity_fuzz,
    coherence_oracle,
    lemma_grid_verify,
    superadditivity_fuzz,
)
from .qstate import (
    DensityMatrix,
    PureState,
    SchmidtSpec,
    density_of,
    make_density,
    make_pure,
    partial_trace,
    purity,
    random_pure,
    schmidt_state,
    tensor,
    tensor_pure,
)
from .stateio import as_density, load_state, parse_state, save_density, save_pure

__version__ = "0.1.0"

__all__ = [
    "BOUND_IDS",
    "BoundParams",
    "BoundReport",
    "CohboundError",
    "CoherenceProfile",
    "Condition",
    "ConditionVerdict",
    "Config",
    "DensityMatrix",
    "FuzzConfig",
    "PureState",
    "ScalarParams",
    "SchmidtSpec",
    "SlackResult",
    "VerifySummary",
    "as_density",
    "backend",
    "baseline_bound",
    "best_ordering",
    "best_params",
    "bound_validity_fuzz",
    "coeff_gap_identity",
    "coherence_oracle",
    "config",
    "cor1_bound",
    "density_of",
    "dominance_check",
    "evaluate_all",
    "evaluate_bound",
    "gamma_coeff",
    "l1_coherence",
    "lambda_coeff",
    "lemma1_holds",
    "lemma2_holds",
    "lemma_grid_verify",
    "load_state",
    "make_density",
    "make_pure",
    "parse_state",
    "partial_trace",
    "powf",
    "product_coherence_check",
    "profile",
    "purity",
    "random_pure",
    "ref31_ineq_holds",
    "ref_scheme_bound",
    "safe_evaluate",
    "save_density",
    "save_pure",
    "schmidt_state",
    "superadditivity_fuzz",
    "synthetic_profile",
    "tensor",
    "tensor_pure",
    "thm1_bound",
    "thm2_bound",
    "thm3_bound",
    "thm4_bound",
]

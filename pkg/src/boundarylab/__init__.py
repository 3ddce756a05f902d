"""Boundary behavior of bounded analytic functions on the unit disc.

Zero sequences and Blaschke products with honest truncation bounds, Poisson
and Herglotz integrals for singular-inner and outer factors, Frostman sums
along the circle, weighted series constructions, and a raster model of
Arakeljan's hole conditions for plane domains.
"""

from .blaschke import (
    ApproachPath,
    BlaschkeProduct,
    BoundaryScan,
    LimitProbeReport,
    PathLimit,
    RadialTrace,
    TruncatedEval,
    boundary_scan,
    default_radius_schedule,
    eval_factor,
    limit_probe,
    radial_trace,
    standard_paths,
)
from .config import DEFAULTS, effective_config, load_config_file
from .errors import (
    BoundaryLabError,
    EvaluationError,
    InvalidZeroError,
    PoleError,
    PrefixExhaustedError,
    ResolutionError,
    ValidationError,
)
from .frostman import (
    CONVERGENT,
    DIVERGENT,
    UNDECIDED,
    FrostmanPolicy,
    FrostmanProfile,
    FrostmanReport,
    doubling_schedule,
    frostman_classify,
    frostman_partial,
    frostman_profile,
    frostman_terms,
)
from .grid import (
    ArakeljanVerdict,
    CellClass,
    Component,
    ComponentLabeling,
    GridPlane,
    HoleReport,
    IndependenceReport,
    Probe,
    UnionCheckReport,
    auto_probes,
    classify_holes,
    hole_independence,
    is_arakeljan,
    label_components,
    union_check,
    validate_probe,
)
from .herglotz import (
    ApproxIdentityReport,
    BoundaryFunction,
    InnerFunctionSpec,
    OuterDensity,
    SingularAtoms,
    approx_identity_report,
    eval_inner_outer,
    eval_outer,
    eval_singular_inner,
    kernel_mass,
    poisson_integral,
    poisson_kernel,
)
from .series import (
    SeriesEvaluation,
    SeriesSpec,
    SeriesTerm,
    build_bgh_sum,
    build_lohwater_piranian,
    eval_series,
)
from .unitdisc import (
    ClosedSetSpec,
    ConditionSum,
    ZeroSequence,
    blaschke_condition_sum,
    circular_gap,
    gen_accumulation_sequence,
    gen_radial_sequence,
    normalize_angle,
)

__version__ = "0.1.0"

__all__ = [
    "ApproachPath",
    "ApproxIdentityReport",
    "ArakeljanVerdict",
    "BlaschkeProduct",
    "BoundaryFunction",
    "BoundaryLabError",
    "BoundaryScan",
    "CellClass",
    "ClosedSetSpec",
    "Component",
    "ComponentLabeling",
    "ConditionSum",
    "CONVERGENT",
    "DEFAULTS",
    "DIVERGENT",
    "EvaluationError",
    "FrostmanPolicy",
    "FrostmanProfile",
    "FrostmanReport",
    "GridPlane",
    "HoleReport",
    "IndependenceReport",
    "InnerFunctionSpec",
    "InvalidZeroError",
    "LimitProbeReport",
    "OuterDensity",
    "PathLimit",
    "PoleError",
    "PrefixExhaustedError",
    "Probe",
    "RadialTrace",
    "ResolutionError",
    "SeriesEvaluation",
    "SeriesSpec",
    "SeriesTerm",
    "SingularAtoms",
    "TruncatedEval",
    "UNDECIDED",
    "UnionCheckReport",
    "ValidationError",
    "ZeroSequence",
    "approx_identity_report",
    "auto_probes",
    "blaschke_condition_sum",
    "boundary_scan",
    "build_bgh_sum",
    "build_lohwater_piranian",
    "circular_gap",
    "classify_holes",
    "default_radius_schedule",
    "doubling_schedule",
    "effective_config",
    "eval_factor",
    "eval_inner_outer",
    "eval_outer",
    "eval_series",
    "eval_singular_inner",
    "frostman_classify",
    "frostman_partial",
    "frostman_profile",
    "frostman_terms",
    "gen_accumulation_sequence",
    "gen_radial_sequence",
    "hole_independence",
    "is_arakeljan",
    "kernel_mass",
    "label_components",
    "limit_probe",
    "load_config_file",
    "normalize_angle",
    "poisson_integral",
    "poisson_kernel",
    "radial_trace",
    "standard_paths",
    "union_check",
    "validate_probe",
]

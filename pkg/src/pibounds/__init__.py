"""pibounds: principal-inertia information measures and certified lower
bounds on the Bayes error of estimating a hidden variable, or any
surjective function of it, from a correlated observation.

The package is organized around a simple contract: every bound it
computes can be certified at desk scale by an exact brute-force oracle
that ships alongside it (see :mod:`pibounds.oracle`).
"""

from .distributions import (
    DegradationMap,
    JointDistribution,
    ProbabilityVector,
    StochasticMatrix,
    as_probability_vector,
    canonicalize,
    degrade,
    joint_from_channel,
    load_joint,
    pushforward,
    random_degradation,
    random_joint,
    random_stochastic,
)
from .error_rate import (
    ErrorRateQuery,
    SolverParams,
    binary_entropy,
    entropy,
    fano_error_rate,
    jk_error_rate_lower,
    majorizes,
    schur_probe,
)
from .errors import PiboundsError
from .fn_bounds import (
    AggregationMap,
    aggregation_map,
    function_bound,
    min_surjection_error,
)
from .inertia import (
    InertiaDecomposition,
    ace_maxcorr,
    chi_squared_direct,
    decompose,
    k_correlation,
    total_inertia_spatial,
)
from .oracle import (
    OracleReport,
    bayes_error,
    convexity_probe,
    dpi_verify,
    function_bayes_error,
    mutual_information,
    run_verification,
)
from .pe_bounds import (
    BoundResult,
    InertiaBoundInput,
    advantage_bound,
    crossover_index,
    inertia_bound,
    lp_dual_objective,
    lp_solve,
    lp_value,
    maxcorr_bound,
    uniform_bound,
)

__version__ = "0.1.0"

__all__ = [
    "AggregationMap",
    "BoundResult",
    "DegradationMap",
    "ErrorRateQuery",
    "InertiaBoundInput",
    "InertiaDecomposition",
    "JointDistribution",
    "OracleReport",
    "PiboundsError",
    "ProbabilityVector",
    "SolverParams",
    "StochasticMatrix",
    "ace_maxcorr",
    "advantage_bound",
    "aggregation_map",
    "as_probability_vector",
    "bayes_error",
    "binary_entropy",
    "canonicalize",
    "chi_squared_direct",
    "convexity_probe",
    "crossover_index",
    "decompose",
    "degrade",
    "dpi_verify",
    "entropy",
    "fano_error_rate",
    "function_bayes_error",
    "function_bound",
    "inertia_bound",
    "jk_error_rate_lower",
    "joint_from_channel",
    "k_correlation",
    "load_joint",
    "lp_dual_objective",
    "lp_solve",
    "lp_value",
    "majorizes",
    "maxcorr_bound",
    "min_surjection_error",
    "mutual_information",
    "pushforward",
    "random_degradation",
    "random_joint",
    "random_stochastic",
    "run_verification",
    "schur_probe",
    "total_inertia_spatial",
    "uniform_bound",
]

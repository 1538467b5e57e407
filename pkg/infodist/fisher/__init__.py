"""Classical and quantum Fisher information and measurement disturbance."""

from .metrics import (
    MonotoneMetric,
    SLD,
    RLD,
    REAL_RLD,
    BKM,
    PRESET_METRICS,
    get_metric,
    get_metrics,
    custom_metric,
)
from .information import (
    FisherMatrix,
    classical_fisher,
    quantum_fisher,
    logarithmic_derivatives,
    fisher_from_logarithmic_derivatives,
)
from .disturbance import (
    OutcomeStatistics,
    DisturbanceResult,
    InfimumResult,
    outcome_statistics,
    outcome_fisher,
    post_measurement_points,
    disturbance,
    disturbance_at,
    infimum_disturbance,
)

__all__ = [
    "MonotoneMetric",
    "SLD",
    "RLD",
    "REAL_RLD",
    "BKM",
    "PRESET_METRICS",
    "get_metric",
    "get_metrics",
    "custom_metric",
    "FisherMatrix",
    "classical_fisher",
    "quantum_fisher",
    "logarithmic_derivatives",
    "fisher_from_logarithmic_derivatives",
    "OutcomeStatistics",
    "DisturbanceResult",
    "InfimumResult",
    "outcome_statistics",
    "outcome_fisher",
    "post_measurement_points",
    "disturbance",
    "disturbance_at",
    "infimum_disturbance",
]

"""Kraus-operator measurements, POVMs and the measurement channel."""

from .kraus import (
    NORMALIZATION_TOL,
    PROB_TOL,
    Measurement,
    Outcome,
    OutcomeEnsemble,
    normalization_residual,
    apply,
    meas_channel_state,
    as_channel,
    split_outcome,
    identity_measurement,
    projective_measurement,
    royer,
    random_measurement,
)
from .povm import (
    COND_TOL,
    Povm,
    povm,
    purify,
    is_pure,
    is_reversible,
    smallest_singular_values,
)

__all__ = [
    "NORMALIZATION_TOL",
    "PROB_TOL",
    "COND_TOL",
    "Measurement",
    "Outcome",
    "OutcomeEnsemble",
    "Povm",
    "normalization_residual",
    "apply",
    "meas_channel_state",
    "as_channel",
    "split_outcome",
    "identity_measurement",
    "projective_measurement",
    "royer",
    "random_measurement",
    "povm",
    "purify",
    "is_pure",
    "is_reversible",
    "smallest_singular_values",
]

"""Quantum statistical models and the job config schema."""

from .statistical import (
    FD_STEP,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    StatisticalModel,
    ModelPoint,
    evaluate,
    constant_model,
    classical_binary_model,
    bloch_rotation_model,
    random_hermitian,
    random_density_matrix,
    random_model,
    sampled_model,
)
from .schemas import (
    JobConfig,
    ModelSpec,
    MeasurementSpec,
    SampleSpec,
    ScanSpec,
    DivergenceSpec,
    OutputSpec,
    to_matrix,
    from_matrix,
)

__all__ = [
    "FD_STEP",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "StatisticalModel",
    "ModelPoint",
    "evaluate",
    "constant_model",
    "classical_binary_model",
    "bloch_rotation_model",
    "random_hermitian",
    "random_density_matrix",
    "random_model",
    "sampled_model",
    "JobConfig",
    "ModelSpec",
    "MeasurementSpec",
    "SampleSpec",
    "ScanSpec",
    "DivergenceSpec",
    "OutputSpec",
    "to_matrix",
    "from_matrix",
]

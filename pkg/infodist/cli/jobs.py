"""
Job loading: JSON config to validated JobConfig, then to library objects.
"""

import json
from typing import Any, Dict, Optional, Tuple

import numpy as np
from pydantic import ValidationError

from infodist.config import ToleranceSettings
from infodist.errors import ConfigError
from infodist.measurement.kraus import (
    Measurement,
    identity_measurement,
    projective_measurement,
    random_measurement,
    royer,
)
from infodist.models.schemas import JobConfig, MeasurementSpec, ModelSpec, to_matrix
from infodist.models.statistical import (
    StatisticalModel,
    bloch_rotation_model,
    classical_binary_model,
    random_model,
    sampled_model,
)
from infodist.utils.logging import cli_logger as logger

MODEL_PARAMS = {
    "bloch_rotation": {"r"},
    "classical_binary": set(),
    "random": {"dim", "m", "seed"},
}

MEASUREMENT_PARAMS = {
    "royer": {"theta_m", "sigma_m"},
    "random": {"dim", "n_outcomes", "ops_per_outcome", "seed"},
    "identity": {"dim"},
    "projective": {"dim"},
}


def load_job(path: Optional[str]) -> Tuple[JobConfig, Dict[str, Any]]:
    """
    Read and validate a job config; no path gives the default job.

    Raises:
        ConfigError: unreadable file or malformed JSON
        ValidationError: the JSON does not match the schema
    """
    if path is None:
        return JobConfig(), {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except OSError as e:
        raise ConfigError(f"Cannot read config {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"Malformed JSON in {path}: {e}") from e
    if not isinstance(raw, dict):
        raise ConfigError(f"Config {path} must hold a JSON object")
    logger.debug("Job config loaded", path=path, keys=sorted(raw))
    return JobConfig.model_validate(raw), raw


def build_tolerances(job: JobConfig, psd_tol: Optional[float] = None) -> ToleranceSettings:
    """
    Tolerances from the job, with --tol overriding psd_tol.

    Raises:
        ConfigError: unknown tolerance name or out-of-range value
    """
    values = dict(job.tolerances)
    if psd_tol is not None:
        values["psd_tol"] = psd_tol
    try:
        return ToleranceSettings(**values)
    except ValidationError as e:
        raise ConfigError(f"Invalid tolerances: {e}") from e


def _check_params(kind: str, name: str, params: Dict[str, Any], allowed: Dict[str, set]) -> None:
    unknown = set(params) - allowed[name]
    if unknown:
        raise ConfigError(f"Unknown {kind} parameter(s) for '{name}': {', '.join(sorted(unknown))}")


def build_model(spec: Optional[ModelSpec], seed: int = 0) -> StatisticalModel:
    """
    Raises:
        ConfigError: missing model, unknown parameter or invalid value
    """
    if spec is None:
        raise ConfigError("This command needs a 'model' section")
    if spec.samples is not None:
        try:
            return sampled_model(
                [s.theta[0] for s in spec.samples],
                [to_matrix(s.rho) for s in spec.samples],
            )
        except ValueError as e:
            raise ConfigError(f"Invalid model samples: {e}") from e

    params = spec.params
    _check_params("model", spec.builtin, params, MODEL_PARAMS)
    try:
        if spec.builtin == "bloch_rotation":
            return bloch_rotation_model(float(params.get("r", 0.5)))
        if spec.builtin == "classical_binary":
            return classical_binary_model()
        return random_model(
            int(params.get("dim", 2)),
            int(params.get("m", 1)),
            int(params.get("seed", seed)),
        )
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Invalid parameters for model '{spec.builtin}': {e}") from e


def build_measurement(
    spec: Optional[MeasurementSpec],
    seed: int = 0,
    check: bool = True,
) -> Measurement:
    """
    Raises:
        ConfigError: missing measurement, unknown parameter or invalid value
        InvalidMeasurement: explicit Kraus operators fail normalization (check=True)
    """
    if spec is None:
        raise ConfigError("This command needs a 'measurement' section")
    if spec.kraus is not None:
        outcomes = [[to_matrix(k) for k in outcome] for outcome in spec.kraus]
        return Measurement.from_kraus(outcomes, name="kraus", check=check)

    params = spec.params
    _check_params("measurement", spec.builtin, params, MEASUREMENT_PARAMS)
    try:
        if spec.builtin == "royer":
            return royer(
                float(params.get("theta_m", np.pi / 2)),
                float(params.get("sigma_m", np.pi / 2)),
            )
        if spec.builtin == "identity":
            return identity_measurement(int(params.get("dim", 2)))
        if spec.builtin == "projective":
            return projective_measurement(int(params.get("dim", 2)))
        return random_measurement(
            int(params.get("dim", 2)),
            int(params.get("n_outcomes", 2)),
            int(params.get("ops_per_outcome", 1)),
            int(params.get("seed", seed)),
        )
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Invalid parameters for measurement '{spec.builtin}': {e}") from e

"""
Job configuration schema for the command-line front door.

Pydantic models validate a JSON job config before any computation. Complex
numbers travel as [re, im] pairs (a bare number is read as real), matrices
as row-major nested lists.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

ComplexEntry = Union[float, Tuple[float, float]]
MatrixSpec = List[List[ComplexEntry]]

CommandName = Literal["validate", "tradeoff", "scan", "divergence", "randsuite"]


def to_matrix(rows: MatrixSpec) -> np.ndarray:
    """Nested [re, im] lists to a complex ndarray."""
    out = np.array(
        [[complex(e[0], e[1]) if isinstance(e, (tuple, list)) else complex(e) for e in row] for row in rows],
        dtype=complex,
    )
    return out


def from_matrix(a: np.ndarray) -> List[List[List[float]]]:
    """Complex ndarray to nested [re, im] lists."""
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ===== Model and measurement specs =====

class SampleSpec(_Strict):
    """One (θ, ρ_θ) sample of an explicit model."""

    theta: List[float] = Field(..., min_length=1, max_length=1, description="One-parameter θ")
    rho: MatrixSpec = Field(..., min_length=1, description="Density matrix at θ")


class ModelSpec(_Strict):
    """A built-in model with parameters, or an explicit sample grid."""

    builtin: Optional[Literal["bloch_rotation", "classical_binary", "random"]] = Field(
        default=None, description="Built-in model name"
    )
    params: Dict[str, Any] = Field(default_factory=dict, description="Built-in model parameters")
    samples: Optional[List[SampleSpec]] = Field(
        default=None, min_length=2, description="Explicit samples of a one-parameter model"
    )

    @model_validator(mode="after")
    def exactly_one_source(self):
        if (self.builtin is None) == (self.samples is None):
            raise ValueError("model needs exactly one of 'builtin' or 'samples'")
        return self


class MeasurementSpec(_Strict):
    """A built-in measurement with parameters, or explicit Kraus operators per outcome."""

    builtin: Optional[Literal["royer", "random", "identity", "projective"]] = Field(
        default=None, description="Built-in measurement name"
    )
    params: Dict[str, Any] = Field(default_factory=dict, description="Built-in measurement parameters")
    kraus: Optional[List[List[MatrixSpec]]] = Field(
        default=None, min_length=1, description="Kraus operators grouped by outcome"
    )

    @model_validator(mode="after")
    def exactly_one_source(self):
        if (self.builtin is None) == (self.kraus is None):
            raise ValueError("measurement needs exactly one of 'builtin' or 'kraus'")
        return self


# ===== Command-specific specs =====

class ScanSpec(_Strict):
    """Sweep of one Royer parameter with the other held at its measurement value."""

    parameter: Literal["sigma_m", "theta_m"] = Field(default="sigma_m")
    start: float = Field(default=0.0)
    stop: float = Field(default=float(np.pi / 2))
    points: int = Field(default=16, ge=2, le=10_000)

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


class DivergenceSpec(_Strict):
    """States for the divergence tradeoff, random pairs, and the local expansion switch."""

    rho: Optional[MatrixSpec] = Field(default=None)
    sigma: Optional[MatrixSpec] = Field(default=None)
    random_pairs: int = Field(default=0, ge=0, le=100_000, description="Random full-rank pairs to add")
    dim: int = Field(default=2, ge=2, le=8, description="Dimension of random pairs")
    kinds: List[Literal["quantum_relative", "belavkin_staszewski"]] = Field(
        default_factory=lambda: ["quantum_relative", "belavkin_staszewski"], min_length=1
    )
    local_expansion: bool = Field(default=True, description="Compare 2D/δ² with Fisher metrics on the model")

    @model_validator(mode="after")
    def paired_states(self):
        if (self.rho is None) != (self.sigma is None):
            raise ValueError("divergence needs both 'rho' and 'sigma' or neither")
        return self


class OutputSpec(_Strict):
    path: Optional[str] = Field(default=None, description="Report path (stdout when absent)")
    format: Literal["json", "csv"] = Field(default="json")
    csv_path: Optional[str] = Field(default=None, description="Optional CSV next to a JSON report")


# ===== Job config =====

class JobConfig(_Strict):
    """A complete job: what to evaluate, where, with which metrics and tolerances."""

    command: Optional[CommandName] = Field(default=None, description="Must match the CLI command when set")
    model: Optional[ModelSpec] = None
    measurement: Optional[MeasurementSpec] = None
    theta: List[Union[float, List[float]]] = Field(
        default_factory=list,
        description="Evaluation points; a bare number is a one-parameter θ",
    )
    metrics: List[str] = Field(
        default_factory=lambda: ["sld", "bkm", "real_rld", "rld"], min_length=1
    )
    tolerances: Dict[str, float] = Field(default_factory=dict)
    seed: int = Field(default=0, ge=0)
    trials: Optional[int] = Field(default=None, ge=1)
    workers: Optional[int] = Field(default=None, ge=1, le=64)
    scan: Optional[ScanSpec] = None
    divergence: Optional[DivergenceSpec] = None
    output: OutputSpec = Field(default_factory=OutputSpec)

    @field_validator("metrics")
    @classmethod
    def lowercase_metrics(cls, v: List[str]) -> List[str]:
        return [name.strip() for name in v]

    def theta_points(self) -> List[List[float]]:
        return [[float(t)] if isinstance(t, (int, float)) else [float(x) for x in t] for t in self.theta]

"""
Quantum measurements as outcome-indexed Kraus operator sets {K_ij}.

Outcome i groups the inner Kraus index j. The module covers outcome
statistics and post-measurement states, the block-diagonal measurement
channel, and the built-in and random measurements.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from infodist.core.matrixcore import as_density_matrix, dagger, direct_sum, max_abs
from infodist.errors import DimensionMismatch, InvalidMeasurement
from infodist.utils.logging import measurement_logger as logger

NORMALIZATION_TOL = 1e-9
PROB_TOL = 1e-12

KrausList = Tuple[np.ndarray, ...]


def normalization_residual(outcomes: Sequence[Sequence[np.ndarray]]) -> float:
    """‖Σ_ij K_ij† K_ij − I‖_max for a raw nested Kraus list."""
    ops = [np.asarray(k, dtype=complex) for outcome in outcomes for k in outcome]
    if not ops:
        return float("inf")
    total = sum(dagger(k) @ k for k in ops)
    return max_abs(total - np.eye(ops[0].shape[1]))


@dataclass(frozen=True)
class Measurement:
    """
    Kraus operators grouped by outcome.

    Use Measurement.from_kraus to build one; it checks shapes and the
    normalization condition Σ_ij K_ij† K_ij = I.
    """

    dim: int
    outcomes: Tuple[KrausList, ...]
    name: str = "custom"

    @classmethod
    def from_kraus(
        cls,
        outcomes: Sequence[Sequence[np.ndarray]],
        name: str = "custom",
        tol: float = NORMALIZATION_TOL,
        check: bool = True,
    ) -> "Measurement":
        """
        Raises:
            InvalidMeasurement: empty outcome set, empty outcome, non-square or
                mismatched operators, or normalization residual above tol
        """
        if not outcomes:
            raise InvalidMeasurement("A measurement needs at least one outcome")
        grouped = []
        dim: Optional[int] = None
        for i, outcome in enumerate(outcomes):
            if not outcome:
                raise InvalidMeasurement(f"Outcome {i} has no Kraus operators")
            ops = []
            for k in outcome:
                k = np.asarray(k, dtype=complex)
                if k.ndim != 2 or k.shape[0] != k.shape[1]:
                    raise InvalidMeasurement(f"Kraus operator of outcome {i} has shape {k.shape}")
                if dim is None:
                    dim = k.shape[0]
                elif k.shape[0] != dim:
                    raise InvalidMeasurement(
                        f"Kraus operator of outcome {i} is {k.shape[0]}-dimensional, expected {dim}"
                    )
                ops.append(k)
            grouped.append(tuple(ops))

        if check:
            residual = normalization_residual(grouped)
            if residual > tol:
                raise InvalidMeasurement(
                    f"Normalization residual {residual:.3e} exceeds {tol:.1e}"
                )
        return cls(dim=dim, outcomes=tuple(grouped), name=name)

    @property
    def n_outcomes(self) -> int:
        return len(self.outcomes)

    def normalization_residual(self) -> float:
        return normalization_residual(self.outcomes)

    def unnormalized_blocks(self, rho: np.ndarray) -> List[np.ndarray]:
        """σ_i = Σ_j K_ij ρ K_ij† for every outcome (also applied to derivatives)."""
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (self.dim, self.dim):
            raise DimensionMismatch(
                f"Operator of shape {rho.shape} does not match {self.dim}-dimensional measurement"
            )
        return [sum(k @ rho @ dagger(k) for k in ops) for ops in self.outcomes]


@dataclass(frozen=True)
class Outcome:
    """One outcome: probability p_i and post-measurement state ρ_i (None when null)."""

    probability: float
    state: Optional[np.ndarray]

    @property
    def is_null(self) -> bool:
        return self.state is None


@dataclass(frozen=True)
class OutcomeEnsemble:
    entries: Tuple[Outcome, ...]

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([e.probability for e in self.entries])


def apply(meas: Measurement, rho: np.ndarray, prob_tol: float = PROB_TOL) -> OutcomeEnsemble:
    """
    Outcome probabilities p_i = Σ_j tr(K_ij ρ K_ij†) and normalized
    post-measurement states. Outcomes with p_i ≤ prob_tol are null and carry
    no state.

    Raises:
        DimensionMismatch: ρ does not match the measurement dimension
    """
    entries = []
    for block in meas.unnormalized_blocks(rho):
        block = (block + dagger(block)) / 2
        p = float(np.trace(block).real)
        if p <= prob_tol:
            entries.append(Outcome(probability=max(p, 0.0), state=None))
        else:
            entries.append(Outcome(probability=p, state=as_density_matrix(block / p)))
    return OutcomeEnsemble(entries=tuple(entries))


def meas_channel_state(meas: Measurement, rho: np.ndarray) -> np.ndarray:
    """E^meas(ρ) = ⊕_i Σ_j K_ij ρ K_ij†, of dimension dim × |I|."""
    return direct_sum([(1.0, block) for block in meas.unnormalized_blocks(rho)])


def as_channel(meas: Measurement) -> Measurement:
    """The CPTP map Σ K ρ K† of a measurement, outcome structure forgotten."""
    ops = tuple(k for outcome in meas.outcomes for k in outcome)
    return Measurement(dim=meas.dim, outcomes=(ops,), name=f"{meas.name}_channel")


def split_outcome(meas: Measurement, index: int) -> Measurement:
    """Replace outcome `index` by two copies of its Kraus list scaled by 1/√2."""
    if not 0 <= index < meas.n_outcomes:
        raise IndexError(f"Outcome {index} out of range for {meas.n_outcomes} outcomes")
    half = tuple(k / np.sqrt(2) for k in meas.outcomes[index])
    outcomes = meas.outcomes[:index] + (half, half) + meas.outcomes[index + 1:]
    return Measurement(dim=meas.dim, outcomes=outcomes, name=f"{meas.name}_split{index}")


# ===== Built-in measurements =====

def identity_measurement(dim: int) -> Measurement:
    return Measurement(dim=dim, outcomes=((np.eye(dim, dtype=complex),),), name="identity")


def projective_measurement(dim: int) -> Measurement:
    """Projective measurement in the computational basis."""
    outcomes = []
    for i in range(dim):
        proj = np.zeros((dim, dim), dtype=complex)
        proj[i, i] = 1.0
        outcomes.append((proj,))
    return Measurement(dim=dim, outcomes=tuple(outcomes), name="projective")


def royer(theta_m: float, sigma_m: float) -> Measurement:
    """
    Two-outcome pure measurement on a spin-1/2 system:

        K₁ = diag(cos(θ/2 − σ/4), cos(θ/2 + σ/4))
        K₂ = diag(sin(θ/2 − σ/4), sin(θ/2 + σ/4))

    σ = 0 gives operators proportional to the identity, which extract nothing.
    """
    minus = theta_m / 2 - sigma_m / 4
    plus = theta_m / 2 + sigma_m / 4
    k1 = np.diag([np.cos(minus), np.cos(plus)]).astype(complex)
    k2 = np.diag([np.sin(minus), np.sin(plus)]).astype(complex)
    return Measurement(dim=2, outcomes=((k1,), (k2,)), name="royer")


def random_measurement(
    dim: int,
    n_outcomes: int,
    ops_per_outcome: int,
    seed: int,
) -> Measurement:
    """
    Random measurement from a random isometry.

    n_outcomes × ops_per_outcome complex Gaussian blocks are stacked into a
    (N·d)×d column, its columns orthonormalized by QR and the result sliced
    back into d×d Kraus operators, so Σ K†K = Q†Q = I.
    """
    if min(dim, n_outcomes, ops_per_outcome) < 1:
        raise ValueError("random_measurement arguments must all be ≥ 1")

    rng = np.random.default_rng(seed)
    n_ops = n_outcomes * ops_per_outcome
    stacked = rng.standard_normal((n_ops * dim, dim)) + 1j * rng.standard_normal((n_ops * dim, dim))
    q, _ = np.linalg.qr(stacked)
    blocks = [q[n * dim:(n + 1) * dim, :] for n in range(n_ops)]
    outcomes = tuple(
        tuple(blocks[i * ops_per_outcome:(i + 1) * ops_per_outcome])
        for i in range(n_outcomes)
    )
    meas = Measurement(dim=dim, outcomes=outcomes, name="random")
    logger.debug(
        "Random measurement drawn",
        dim=dim,
        n_outcomes=n_outcomes,
        ops_per_outcome=ops_per_outcome,
        seed=seed,
        residual=meas.normalization_residual(),
    )
    return meas

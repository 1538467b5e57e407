"""
Certifiers for the information–disturbance tradeoff.

Each check evaluates one instance and returns the residual or report a
campaign aggregates:

- check_tradeoff: J^C ⪯ ΔJ^Q (Loewner order, Hermitian sense for RLD)
- check_separating: J^Q(E^meas) = J^C + Σ p_i J'_i via an independent path
- check_monotonicity: J^Q contracts under a Kraus channel
- check_rld_equality: J^C = ΔJ^RLD for pure reversible measurements
- check_pure_dominance: purifying a POVM keeps J^C and lowers ΔJ
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np

from infodist.core.matrixcore import dagger, direct_sum, is_psd, max_abs, min_eigenvalue
from infodist.errors import NotImpure, NotPure, NotReversible
from infodist.fisher.disturbance import disturbance_at, outcome_fisher, outcome_statistics
from infodist.fisher.information import PROB_TOL, FisherMatrix, quantum_fisher
from infodist.fisher.metrics import RLD, MonotoneMetric
from infodist.measurement.kraus import Measurement, as_channel, random_measurement
from infodist.measurement.povm import COND_TOL, is_pure, is_reversible, povm, purify
from infodist.models.statistical import FD_STEP, ModelPoint, StatisticalModel, evaluate

PSD_TOL = 1e-8
EQUALITY_TOL = 1e-7
CLASSICAL_EQUALITY_TOL = 1e-9


def _hermitian(a: np.ndarray) -> np.ndarray:
    return (a + dagger(a)) / 2


@dataclass(frozen=True)
class TradeoffReport:
    theta: np.ndarray
    metric_name: str
    j_classical: FisherMatrix
    delta: np.ndarray
    gap: np.ndarray
    psd_verdict: bool
    min_gap_eigenvalue: float


def check_tradeoff(
    model: StatisticalModel,
    meas: Measurement,
    theta: Sequence[float],
    metric: MonotoneMetric,
    psd_tol: float = PSD_TOL,
    prob_tol: float = PROB_TOL,
    support_tol: Optional[float] = None,
    fd_step: float = FD_STEP,
) -> TradeoffReport:
    """J^C ⪯ ΔJ^Q at θ: the gap ΔJ − J^C must be positive semidefinite."""
    point = evaluate(model, theta, step=fd_step)
    j_classical = outcome_fisher(point, meas, prob_tol)
    delta = disturbance_at(point, meas, metric, prob_tol, support_tol).delta
    gap = _hermitian(delta - j_classical.matrix)
    return TradeoffReport(
        theta=point.theta,
        metric_name=metric.name,
        j_classical=j_classical,
        delta=delta,
        gap=gap,
        psd_verdict=is_psd(gap, psd_tol),
        min_gap_eigenvalue=min_eigenvalue(gap),
    )


def channel_point(point: ModelPoint, meas: Measurement) -> ModelPoint:
    """The model point of {E^meas(ρ_θ)}: direct-sum state and direct-sum derivatives."""
    stats = outcome_statistics(point, meas)
    state = direct_sum([(1.0, b) for b in stats.blocks])
    derivatives = tuple(
        direct_sum([(1.0, b) for b in row]) for row in stats.derivative_blocks
    )
    return ModelPoint(theta=point.theta, state=state, derivatives=derivatives)


def check_separating(
    model: StatisticalModel,
    meas: Measurement,
    theta: Sequence[float],
    metric: MonotoneMetric,
    prob_tol: float = PROB_TOL,
    support_tol: Optional[float] = None,
    fd_step: float = FD_STEP,
) -> float:
    """
    ‖J^Q(E^meas) − (J^C + Σ p_i J'_i)‖_max.

    The left side is the generic eigenbasis Fisher information of the
    explicit block-diagonal family; the right side goes through the outcome
    distribution and the normalized post-measurement families.
    """
    point = evaluate(model, theta, step=fd_step)
    joint = quantum_fisher(channel_point(point, meas), metric, support_tol).matrix
    split = (
        outcome_fisher(point, meas, prob_tol).matrix
        + disturbance_at(point, meas, metric, prob_tol, support_tol).average_after
    )
    return max_abs(joint - split)


ChannelLike = Union[Measurement, Sequence[np.ndarray]]


def _as_kraus_channel(channel: ChannelLike) -> Measurement:
    if isinstance(channel, Measurement):
        return as_channel(channel)
    return Measurement.from_kraus([list(channel)], name="channel")


def check_monotonicity(
    model: StatisticalModel,
    channel: ChannelLike,
    theta: Sequence[float],
    metric: MonotoneMetric,
) -> float:
    """Smallest eigenvalue of J^Q({ρ_θ}) − J^Q({E(ρ_θ)})."""
    kraus = _as_kraus_channel(channel)
    point = evaluate(model, theta)
    stats = outcome_statistics(point, kraus)
    out_point = ModelPoint(
        theta=point.theta,
        state=stats.blocks[0],
        derivatives=tuple(row[0] for row in stats.derivative_blocks),
    )
    gap = quantum_fisher(point, metric).matrix - quantum_fisher(out_point, metric).matrix
    return min_eigenvalue(_hermitian(gap))


@dataclass(frozen=True)
class RldEqualityResult:
    residual: float
    intermediate_residual: float
    j_classical: np.ndarray
    delta_rld: np.ndarray


def measure_rld_equality(
    model: StatisticalModel,
    meas: Measurement,
    theta: Sequence[float],
) -> RldEqualityResult:
    """
    ‖ΔJ^RLD − J^C‖_max on full Hermitian matrices, plus the intermediate
    identity ‖J^RLD({ρ_θ}) − J^RLD({E^meas(ρ_θ)})‖_max. No preconditions:
    for measurements that are not pure and reversible the residuals are
    evidence, not a contract.
    """
    point = evaluate(model, theta)
    j_classical = outcome_fisher(point, meas).matrix
    result = disturbance_at(point, meas, RLD)
    after = quantum_fisher(channel_point(point, meas), RLD).matrix
    return RldEqualityResult(
        residual=max_abs(result.delta - j_classical),
        intermediate_residual=max_abs(result.j_quantum_before.matrix - after),
        j_classical=j_classical,
        delta_rld=result.delta,
    )


def check_rld_equality(
    model: StatisticalModel,
    meas: Measurement,
    theta: Sequence[float],
    cond_tol: float = COND_TOL,
) -> RldEqualityResult:
    """
    J^C = ΔJ^RLD for a pure reversible measurement.

    Raises:
        NotPure: some outcome has several Kraus operators
        NotReversible: some K_i has smallest singular value ≤ cond_tol
    """
    if not is_pure(meas):
        raise NotPure(f"Measurement '{meas.name}' is not pure")
    if not is_reversible(meas, cond_tol):
        raise NotReversible(f"Measurement '{meas.name}' has a singular Kraus operator")
    return measure_rld_equality(model, meas, theta)


@dataclass(frozen=True)
class PureDominanceReport:
    j_classical_impure: np.ndarray
    j_classical_pure: np.ndarray
    classical_residual: float
    dominance_min_eigenvalue: float
    classical_tol: float
    psd_tol: float

    @property
    def passed(self) -> bool:
        return (
            self.classical_residual <= self.classical_tol
            and self.dominance_min_eigenvalue >= -self.psd_tol
        )


def check_pure_dominance(
    meas_impure: Measurement,
    model: StatisticalModel,
    theta: Sequence[float],
    metric: MonotoneMetric,
    classical_tol: float = CLASSICAL_EQUALITY_TOL,
    psd_tol: float = PSD_TOL,
) -> PureDominanceReport:
    """
    Compare an impure measurement with the purification of its POVM: equal
    J^C, and ΔJ(impure) − ΔJ(pure) positive semidefinite.

    Raises:
        NotImpure: every outcome already has a single Kraus operator
    """
    if is_pure(meas_impure):
        raise NotImpure(f"Measurement '{meas_impure.name}' is already pure")
    pure = purify(povm(meas_impure))
    point = evaluate(model, theta)

    jc_impure = outcome_fisher(point, meas_impure).matrix
    jc_pure = outcome_fisher(point, pure).matrix
    gap = disturbance_at(point, meas_impure, metric).delta - disturbance_at(point, pure, metric).delta
    return PureDominanceReport(
        j_classical_impure=jc_impure,
        j_classical_pure=jc_pure,
        classical_residual=max_abs(jc_impure - jc_pure),
        dominance_min_eigenvalue=min_eigenvalue(_hermitian(gap)),
        classical_tol=classical_tol,
        psd_tol=psd_tol,
    )


# ===== Channels =====

def random_channel(dim: int, kraus_count: int, seed: int) -> List[np.ndarray]:
    """Random trace-preserving Kraus set from the stacked-isometry construction."""
    return list(random_measurement(dim, 1, kraus_count, seed).outcomes[0])


def unitary_channel(u: np.ndarray) -> List[np.ndarray]:
    return [np.asarray(u, dtype=complex)]


def completely_depolarizing_channel(dim: int) -> List[np.ndarray]:
    """Kraus operators |i⟩⟨j|/√d, mapping every state to I/d."""
    ops = []
    for i in range(dim):
        for j in range(dim):
            k = np.zeros((dim, dim), dtype=complex)
            k[i, j] = 1 / np.sqrt(dim)
            ops.append(k)
    return ops

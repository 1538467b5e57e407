"""
Measurement-induced disturbance of quantum Fisher information.

ΔJ^Q = J^Q({ρ_θ}) − Σ_i p_i J'^Q_i, where J'^Q_i is the Fisher information
of the post-measurement family {ρ_θ,i}. Post-measurement derivatives come
from the chain rule rather than from differencing normalized states:

    σ_i = Σ_j K_ij ρ K_ij†,   p_i = tr σ_i,
    ∂_a ρ_i = (Σ_j K_ij ∂_aρ K_ij† − ∂_a p_i ρ_i) / p_i
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from infodist.core.matrixcore import as_density_matrix, dagger
from infodist.errors import DegenerateModel, InvalidState
from infodist.fisher.information import (
    PROB_TOL,
    FisherMatrix,
    classical_fisher,
    quantum_fisher,
)
from infodist.fisher.metrics import MonotoneMetric
from infodist.measurement.kraus import Measurement
from infodist.models.statistical import FD_STEP, ModelPoint, StatisticalModel, evaluate
from infodist.utils.logging import fisher_logger as logger


@dataclass(frozen=True)
class OutcomeStatistics:
    """Unnormalized outcome blocks σ_i, their derivatives, p_i and ∂_a p_i."""

    blocks: Tuple[np.ndarray, ...]
    derivative_blocks: Tuple[Tuple[np.ndarray, ...], ...]  # [a][i]
    probs: np.ndarray
    dprobs: np.ndarray  # shape (m, |I|)


def outcome_statistics(point: ModelPoint, meas: Measurement) -> OutcomeStatistics:
    blocks = tuple((b + dagger(b)) / 2 for b in meas.unnormalized_blocks(point.state))
    derivative_blocks = tuple(
        tuple((b + dagger(b)) / 2 for b in meas.unnormalized_blocks(d))
        for d in point.derivatives
    )
    probs = np.array([np.trace(b).real for b in blocks])
    dprobs = np.array([[np.trace(b).real for b in row] for row in derivative_blocks])
    return OutcomeStatistics(
        blocks=blocks,
        derivative_blocks=derivative_blocks,
        probs=probs,
        dprobs=dprobs.reshape(point.param_dim, len(blocks)),
    )


def outcome_fisher(point: ModelPoint, meas: Measurement, prob_tol: float = PROB_TOL) -> FisherMatrix:
    """Classical Fisher information of the outcome distribution of `meas`."""
    stats = outcome_statistics(point, meas)
    return classical_fisher(np.clip(stats.probs, 0.0, None), stats.dprobs, prob_tol)


def post_measurement_points(
    point: ModelPoint,
    meas: Measurement,
    prob_tol: float = PROB_TOL,
) -> List[Tuple[float, Optional[ModelPoint]]]:
    """
    (p_i, post-measurement ModelPoint) per outcome; null outcomes carry None.

    Raises:
        DegenerateModel: a post-measurement state is not a density matrix
    """
    stats = outcome_statistics(point, meas)
    result: List[Tuple[float, Optional[ModelPoint]]] = []
    for i, block in enumerate(stats.blocks):
        p = float(stats.probs[i])
        if p <= prob_tol:
            result.append((max(p, 0.0), None))
            continue
        try:
            state = as_density_matrix(block / p)
        except InvalidState as e:
            raise DegenerateModel(f"Post-measurement state of outcome {i}: {e}") from e
        derivatives = []
        for a in range(point.param_dim):
            d = (stats.derivative_blocks[a][i] - stats.dprobs[a, i] * state) / p
            derivatives.append((d + dagger(d)) / 2)
        result.append((p, ModelPoint(theta=point.theta, state=state, derivatives=tuple(derivatives))))
    return result


@dataclass(frozen=True)
class DisturbanceResult:
    j_quantum_before: FisherMatrix
    per_outcome: Tuple[Tuple[float, Optional[FisherMatrix]], ...]
    delta: np.ndarray

    @property
    def average_after(self) -> np.ndarray:
        """Σ_i p_i J'_i over non-null outcomes."""
        total = np.zeros_like(self.j_quantum_before.matrix)
        for p, fisher in self.per_outcome:
            if fisher is not None:
                total = total + p * fisher.matrix
        return total


def disturbance_at(
    point: ModelPoint,
    meas: Measurement,
    metric: MonotoneMetric,
    prob_tol: float = PROB_TOL,
    support_tol: Optional[float] = None,
) -> DisturbanceResult:
    """ΔJ^Q at an already evaluated model point."""
    before = quantum_fisher(point, metric, support_tol)
    per_outcome = []
    delta = before.matrix.copy()
    for p, post in post_measurement_points(point, meas, prob_tol):
        if post is None:
            per_outcome.append((p, None))
            continue
        after = quantum_fisher(post, metric, support_tol)
        per_outcome.append((p, after))
        delta = delta - p * after.matrix
    return DisturbanceResult(
        j_quantum_before=before,
        per_outcome=tuple(per_outcome),
        delta=(delta + dagger(delta)) / 2,
    )


def disturbance(
    model: StatisticalModel,
    meas: Measurement,
    theta: Sequence[float],
    metric: MonotoneMetric,
) -> DisturbanceResult:
    """
    Disturbance ΔJ^Q of `meas` on `model` at θ for `metric`.

    Raises:
        RankDeficient: a post-measurement family is singular where the metric diverges
        DegenerateModel: the model or a post-measurement state is invalid
    """
    return disturbance_at(evaluate(model, theta), meas, metric)


@dataclass(frozen=True)
class InfimumResult:
    metric_name: str
    value: np.ndarray
    trace_proxy: bool
    candidates: Tuple[Tuple[str, float], ...]


def infimum_disturbance(
    model: StatisticalModel,
    meas: Measurement,
    theta: Sequence[float],
    metrics: Sequence[MonotoneMetric],
    prob_tol: float = PROB_TOL,
    support_tol: Optional[float] = None,
    fd_step: float = FD_STEP,
) -> InfimumResult:
    """
    Smallest disturbance over a list of metrics.

    One parameter: the scalar ΔJ is minimized. Several parameters: the
    candidates can be Loewner-incomparable, so tr(ΔJ) is minimized instead
    and the result is flagged as a trace proxy.
    """
    if not metrics:
        raise ValueError("infimum_disturbance needs at least one metric")

    point = evaluate(model, theta, step=fd_step)
    scored = []
    for metric in metrics:
        delta = disturbance_at(point, meas, metric, prob_tol, support_tol).delta
        scored.append((metric.name, float(np.trace(delta).real), delta))

    name, _, value = min(scored, key=lambda item: item[1])
    trace_proxy = point.param_dim > 1
    if trace_proxy:
        logger.info("Multiparameter infimum ranked by trace", metric=name, m=point.param_dim)
    return InfimumResult(
        metric_name=name,
        value=value,
        trace_proxy=trace_proxy,
        candidates=tuple((n, s) for n, s, _ in scored),
    )

"""
Divergence form of the information–disturbance tradeoff,

    D^C(p‖q) ≤ D^Q(ρ‖σ) − Σ_i p_i D^Q(ρ_i‖σ_i),

the two properties behind it (monotonicity under channels and the
separating property of the measurement channel), and local expansions that
recover Fisher metrics from divergences of nearby states.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from infodist.divergence.entropies import (
    PROB_TOL,
    DivergenceKind,
    DivergenceValue,
    classical_relative_entropy,
    quantum_divergence,
)
from infodist.errors import NumericalError
from infodist.measurement.kraus import Measurement, apply, as_channel, meas_channel_state
from infodist.models.statistical import StatisticalModel
from infodist.utils.logging import divergence_logger as logger

EXPANSION_DELTA = 1e-3


@dataclass(frozen=True)
class DivergenceTradeoffReport:
    kind: DivergenceKind
    lhs: DivergenceValue
    before: DivergenceValue
    outcome_terms: Tuple[Tuple[float, Optional[DivergenceValue]], ...]
    infinite_terms: Tuple[str, ...]
    rhs: Optional[float]
    slack: Optional[float]

    @property
    def vacuous(self) -> bool:
        """True when some term is infinite and the inequality was not evaluated."""
        return bool(self.infinite_terms)

    def passed(self, tol: float = 1e-8) -> bool:
        return self.vacuous or self.slack >= -tol


def _outcome_terms(rho_outcomes, sigma_outcomes, kind, support_tol):
    terms = []
    for i, (r, s) in enumerate(zip(rho_outcomes.entries, sigma_outcomes.entries)):
        if r.is_null:
            # null for ρ: weight p_i is zero, whatever σ does
            terms.append((r.probability, None))
        elif s.is_null:
            terms.append((r.probability, DivergenceValue.infinite(kind)))
        else:
            terms.append((r.probability, quantum_divergence(r.state, s.state, kind, support_tol)))
    return terms


def divergence_tradeoff(
    rho: np.ndarray,
    sigma: np.ndarray,
    meas: Measurement,
    kind: DivergenceKind,
    prob_tol: float = PROB_TOL,
    support_tol: Optional[float] = None,
) -> DivergenceTradeoffReport:
    """
    Evaluate both sides of the divergence tradeoff for one measurement.

    Outcomes are aligned by index. An outcome null for σ but not for ρ
    forces D(ρ_i‖σ_i) = +∞. Any infinite term makes the report vacuous:
    the infinite terms are listed and rhs/slack stay None.
    """
    kind = DivergenceKind(kind)
    rho_outcomes = apply(meas, rho, prob_tol)
    sigma_outcomes = apply(meas, sigma, prob_tol)

    lhs = classical_relative_entropy(
        rho_outcomes.probabilities, sigma_outcomes.probabilities, prob_tol
    )
    before = quantum_divergence(rho, sigma, kind, support_tol)
    terms = _outcome_terms(rho_outcomes, sigma_outcomes, kind, support_tol)

    infinite = []
    if not lhs.is_finite:
        infinite.append("classical")
    if not before.is_finite:
        infinite.append("before")
    for i, (_, value) in enumerate(terms):
        if value is not None and not value.is_finite:
            infinite.append(f"outcome_{i}")

    rhs = slack = None
    if not infinite:
        rhs = before.value - sum(p * v.value for p, v in terms if v is not None)
        slack = rhs - lhs.value
    else:
        logger.info("Divergence tradeoff has infinite terms", kind=kind.value, terms=infinite)

    return DivergenceTradeoffReport(
        kind=kind,
        lhs=lhs,
        before=before,
        outcome_terms=tuple(terms),
        infinite_terms=tuple(infinite),
        rhs=rhs,
        slack=slack,
    )


def check_divergence_separating(
    rho: np.ndarray,
    sigma: np.ndarray,
    meas: Measurement,
    kind: DivergenceKind,
    prob_tol: float = PROB_TOL,
    support_tol: Optional[float] = None,
) -> float:
    """
    |D(E^meas(ρ)‖E^meas(σ)) − (S^C(p‖q) + Σ p_i D(ρ_i‖σ_i))|, the left side
    computed on the explicit block-diagonal states.

    Returns 0 when both sides are infinite and +∞ when exactly one is.
    """
    kind = DivergenceKind(kind)
    joint = quantum_divergence(
        meas_channel_state(meas, rho), meas_channel_state(meas, sigma), kind, support_tol
    )
    rho_outcomes = apply(meas, rho, prob_tol)
    sigma_outcomes = apply(meas, sigma, prob_tol)
    classical = classical_relative_entropy(
        rho_outcomes.probabilities, sigma_outcomes.probabilities, prob_tol
    )
    terms = _outcome_terms(rho_outcomes, sigma_outcomes, kind, support_tol)

    split = classical.value + sum(p * v.value for p, v in terms if v is not None)
    if math.isinf(split) or not joint.is_finite:
        return 0.0 if (math.isinf(split) and not joint.is_finite) else math.inf
    return abs(joint.value - split)


def check_divergence_monotonicity(
    rho: np.ndarray,
    sigma: np.ndarray,
    channel: Measurement,
    kind: DivergenceKind,
) -> float:
    """D(ρ‖σ) − D(E(ρ)‖E(σ)) for the channel Σ K ρ K†; should be ≥ 0."""
    kind = DivergenceKind(kind)
    flat = as_channel(channel)
    out_rho = flat.unnormalized_blocks(rho)[0]
    out_sigma = flat.unnormalized_blocks(sigma)[0]
    before = quantum_divergence(rho, sigma, kind)
    after = quantum_divergence(out_rho, out_sigma, kind)
    if not before.is_finite:
        return math.inf
    if not after.is_finite:
        return -math.inf
    return before.value - after.value


def _directional_metric(model, base, theta, direction, kind, delta):
    shifted = model.state(theta + delta * direction)
    value = quantum_divergence(base, shifted, kind)
    if not value.is_finite:
        raise NumericalError(
            f"{kind.value} divergence between θ and θ+δv is infinite; model changes rank"
        )
    return 2.0 * value.value / delta ** 2


def local_expansion_metric(
    model: StatisticalModel,
    theta: Sequence[float],
    kind: DivergenceKind,
    delta: float = EXPANSION_DELTA,
) -> np.ndarray:
    """
    Metric estimate from D(ρ_θ‖ρ_{θ+δv}) = ½ vᵀJv δ² + O(δ³).

    Diagonal entries use v = e_a; off-diagonal entries come from polarization
    with v = e_a + e_b. Converges to the BKM metric for the quantum relative
    entropy and to the real RLD metric for the Belavkin–Staszewski entropy.
    """
    kind = DivergenceKind(kind)
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    base = model.state(theta)
    m = model.param_dim
    eye = np.eye(m)

    j = np.zeros((m, m))
    for a in range(m):
        j[a, a] = _directional_metric(model, base, theta, eye[a], kind, delta)
    for a in range(m):
        for b in range(a + 1, m):
            both = _directional_metric(model, base, theta, eye[a] + eye[b], kind, delta)
            j[a, b] = j[b, a] = (both - j[a, a] - j[b, b]) / 2
    return j

"""
Randomized certification campaigns.

A campaign is a named trial function plus a tolerance. Every trial derives
its randomness from (campaign_seed, trial_index) alone, so trials can run on
a thread pool in any order and the summary is still the same. Residuals are
oriented so that larger is worse: a trial passes when its residual is at or
below the campaign tolerance.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from infodist.config import ToleranceSettings
from infodist.core.matrixcore import max_abs
from infodist.divergence.entropies import DivergenceKind, quantum_divergence
from infodist.divergence.tradeoff import divergence_tradeoff, local_expansion_metric
from infodist.errors import InfodistError
from infodist.fisher.information import classical_fisher, quantum_fisher
from infodist.fisher.metrics import BKM, PRESET_METRICS, REAL_RLD, SLD
from infodist.measurement.kraus import Measurement, random_measurement, royer
from infodist.models.statistical import (
    StatisticalModel,
    bloch_rotation_model,
    classical_binary_model,
    evaluate,
    random_density_matrix,
    random_model,
)
from infodist.tradeoff.certifiers import (
    check_monotonicity,
    check_pure_dominance,
    check_rld_equality,
    check_separating,
    check_tradeoff,
    random_channel,
)
from infodist.utils.logging import certify_logger as logger

RLD_GRID_RADII = (0.3, 0.5, 0.8)
RLD_GRID_THETA_M = tuple(np.linspace(0.3, 2.7, 5))
RLD_GRID_SIGMA_M = (0.2, 0.7, 1.2, 1.7, 2.2)
RLD_GRID_THETA = 0.7

EXPANSION_CASES = (
    ("bloch_rotation", DivergenceKind.QUANTUM_RELATIVE),
    ("bloch_rotation", DivergenceKind.BELAVKIN_STASZEWSKI),
    ("classical_binary", DivergenceKind.QUANTUM_RELATIVE),
    ("classical_binary", DivergenceKind.BELAVKIN_STASZEWSKI),
)

PRESETS = tuple(PRESET_METRICS.values())

ORACLE_RADII = tuple(round(0.1 * k, 1) for k in range(1, 10))


@dataclass(frozen=True)
class TrialOutcome:
    residual: float
    passed: Optional[bool] = None


@dataclass(frozen=True)
class CampaignSummary:
    name: str
    n_trials: int
    n_pass: int
    worst_residual: float
    failing_seeds: Tuple[int, ...]
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.n_pass == self.n_trials

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "n_trials": self.n_trials,
            "n_pass": self.n_pass,
            "worst_residual": self.worst_residual,
            "failing_seeds": list(self.failing_seeds),
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


TrialFn = Callable[[int, int], TrialOutcome]


@dataclass(frozen=True)
class Campaign:
    name: str
    default_trials: int
    tolerance: float
    trial: TrialFn


def trial_seed(campaign_seed: int, index: int) -> int:
    """Seed of trial `index`, a function of (campaign_seed, index) only."""
    state = np.random.SeedSequence([campaign_seed, index]).generate_state(1)
    return int(state[0])


def _run_trial(campaign: Campaign, campaign_seed: int, index: int) -> Tuple[int, TrialOutcome]:
    seed = trial_seed(campaign_seed, index)
    try:
        outcome = campaign.trial(index, seed)
    except (InfodistError, np.linalg.LinAlgError) as e:
        logger.error(
            "Trial raised",
            campaign=campaign.name,
            index=index,
            seed=seed,
            error=f"{type(e).__name__}: {e}",
        )
        outcome = TrialOutcome(residual=math.inf, passed=False)
    return seed, outcome


def run_campaign(
    campaign: Campaign,
    campaign_seed: int,
    n_trials: Optional[int] = None,
    workers: int = 1,
) -> CampaignSummary:
    """
    Run `n_trials` trials (the campaign default when None) and aggregate
    them in trial-index order.
    """
    n = campaign.default_trials if n_trials is None else n_trials
    indices = range(n)
    if workers > 1 and n > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(lambda i: _run_trial(campaign, campaign_seed, i), indices))
    else:
        results = [_run_trial(campaign, campaign_seed, i) for i in indices]

    failing = []
    for seed, outcome in results:
        ok = outcome.passed if outcome.passed is not None else outcome.residual <= campaign.tolerance
        if not ok:
            failing.append(seed)
    worst = max((outcome.residual for _, outcome in results), default=0.0)

    summary = CampaignSummary(
        name=campaign.name,
        n_trials=n,
        n_pass=n - len(failing),
        worst_residual=worst,
        failing_seeds=tuple(failing),
        tolerance=campaign.tolerance,
    )
    log = logger.info if summary.passed else logger.warning
    log(
        "Campaign finished",
        campaign=campaign.name,
        n_trials=n,
        n_pass=summary.n_pass,
        worst_residual=worst,
    )
    return summary


# ===== Instance generators =====

def random_instance(dim: int, seed: int) -> Tuple[StatisticalModel, Measurement, np.ndarray]:
    """A random one-parameter model, a random measurement and a θ in its domain."""
    rng = np.random.default_rng(seed)
    model = random_model(dim, 1, int(rng.integers(2**31)))
    n_outcomes = int(rng.integers(2, dim + 2))
    ops = int(rng.integers(1, 3))
    meas = random_measurement(dim, n_outcomes, ops, int(rng.integers(2**31)))
    theta = rng.uniform(-np.pi, np.pi, size=1)
    return model, meas, theta


def random_state_pair(dim: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    return random_density_matrix(dim, rng), random_density_matrix(dim, rng)


def rld_grid() -> List[Tuple[float, float, float]]:
    """(r, theta_m, sigma_m) triples of the Royer equality grid."""
    return [
        (r, float(t), s)
        for r in RLD_GRID_RADII
        for t in RLD_GRID_THETA_M
        for s in RLD_GRID_SIGMA_M
    ]


# ===== Trial functions =====

def _tradeoff_trial(dim: int, tol: ToleranceSettings, inject_bug: bool) -> TrialFn:
    def trial(index: int, seed: int) -> TrialOutcome:
        model, meas, theta = random_instance(dim, seed)
        worst = -math.inf
        for metric in PRESETS:
            report = check_tradeoff(
                model, meas, theta, metric, tol.psd_tol, tol.prob_tol, tol.support_tol
            )
            gap = -report.gap if inject_bug else report.gap
            worst = max(worst, -float(np.linalg.eigvalsh(gap)[0]))
        return TrialOutcome(residual=worst)
    return trial


def _separating_trial(dim: int, tol: ToleranceSettings) -> TrialFn:
    def trial(index: int, seed: int) -> TrialOutcome:
        model, meas, theta = random_instance(dim, seed)
        residuals = (
            check_separating(model, meas, theta, m, tol.prob_tol, tol.support_tol)
            for m in PRESETS
        )
        return TrialOutcome(residual=max(residuals))
    return trial


def _rld_grid_trial(index: int, seed: int) -> TrialOutcome:
    r, theta_m, sigma_m = rld_grid()[index]
    result = check_rld_equality(bloch_rotation_model(r), royer(theta_m, sigma_m), [RLD_GRID_THETA])
    return TrialOutcome(residual=max(result.residual, result.intermediate_residual))


def _monotonicity_trial(index: int, seed: int) -> TrialOutcome:
    rng = np.random.default_rng(seed)
    model = random_model(2, 1, int(rng.integers(2**31)))
    channel = random_channel(2, int(rng.integers(1, 5)), int(rng.integers(2**31)))
    theta = rng.uniform(-np.pi, np.pi, size=1)
    gaps = [check_monotonicity(model, channel, theta, m) for m in PRESETS]
    return TrialOutcome(residual=-min(gaps))


def _unitary_trial(index: int, seed: int) -> TrialOutcome:
    rng = np.random.default_rng(seed)
    model = random_model(2, 1, int(rng.integers(2**31)))
    channel = random_channel(2, 1, int(rng.integers(2**31)))
    theta = rng.uniform(-np.pi, np.pi, size=1)
    gaps = [check_monotonicity(model, channel, theta, m) for m in PRESETS]
    return TrialOutcome(residual=max(abs(g) for g in gaps))


def _ordering_trial(index: int, seed: int) -> TrialOutcome:
    rng = np.random.default_rng(seed)
    dim = 2 + index % 2
    model = random_model(dim, 1, int(rng.integers(2**31)))
    point = evaluate(model, rng.uniform(-np.pi, np.pi, size=1))
    sld, bkm, real_rld = (quantum_fisher(point, m).matrix for m in (SLD, BKM, REAL_RLD))
    lowest = min(
        float(np.linalg.eigvalsh(bkm - sld)[0]),
        float(np.linalg.eigvalsh(real_rld - bkm)[0]),
    )
    return TrialOutcome(residual=-lowest)


def _commuting_trial(n_points: int) -> TrialFn:
    model = classical_binary_model()
    grid = np.linspace(model.lower[0], model.upper[0], n_points)

    def trial(index: int, seed: int) -> TrialOutcome:
        point = evaluate(model, [grid[index % n_points]])
        values = [quantum_fisher(point, m).scalar for m in PRESETS]
        return TrialOutcome(residual=max(values) - min(values))
    return trial


def _dominance_trial(tol: ToleranceSettings) -> TrialFn:
    def trial(index: int, seed: int) -> TrialOutcome:
        rng = np.random.default_rng(seed)
        model = random_model(2, 1, int(rng.integers(2**31)))
        meas = random_measurement(2, 2, 2, int(rng.integers(2**31)))
        theta = rng.uniform(-np.pi, np.pi, size=1)
        report = check_pure_dominance(
            meas, model, theta, SLD, tol.classical_equality_tol, tol.psd_tol
        )
        return TrialOutcome(
            residual=max(report.classical_residual, -report.dominance_min_eigenvalue),
            passed=report.passed,
        )
    return trial


def _divergence_trial(index: int, seed: int) -> TrialOutcome:
    rng = np.random.default_rng(seed)
    rho, sigma = random_state_pair(2, int(rng.integers(2**31)))
    measurements = (
        royer(np.pi / 2, np.pi / 2),
        random_measurement(2, 2, int(rng.integers(1, 3)), int(rng.integers(2**31))),
    )
    worst = -math.inf
    for meas in measurements:
        for kind in (DivergenceKind.QUANTUM_RELATIVE, DivergenceKind.BELAVKIN_STASZEWSKI):
            report = divergence_tradeoff(rho, sigma, meas, kind)
            worst = max(worst, math.inf if report.vacuous else -report.slack)
    s_q = quantum_divergence(rho, sigma, DivergenceKind.QUANTUM_RELATIVE).value
    s_bs = quantum_divergence(rho, sigma, DivergenceKind.BELAVKIN_STASZEWSKI).value
    return TrialOutcome(residual=max(worst, s_q - s_bs))


def _expansion_trial(tol: ToleranceSettings) -> TrialFn:
    def trial(index: int, seed: int) -> TrialOutcome:
        model_name, kind = EXPANSION_CASES[index % len(EXPANSION_CASES)]
        if model_name == "bloch_rotation":
            model, theta = bloch_rotation_model(0.5), [0.3]
        else:
            model, theta = classical_binary_model(), [np.pi / 2]
        metric = BKM if kind == DivergenceKind.QUANTUM_RELATIVE else REAL_RLD
        exact = quantum_fisher(evaluate(model, theta), metric).scalar
        estimate = local_expansion_metric(model, theta, kind, tol.expansion_delta)[0, 0]
        return TrialOutcome(residual=abs(estimate - exact) / exact)
    return trial


def _sld_oracle_trial(index: int, seed: int) -> TrialOutcome:
    r = ORACLE_RADII[index % len(ORACLE_RADII)]
    theta = np.random.default_rng(seed).uniform(-np.pi, np.pi, size=1)
    value = quantum_fisher(evaluate(bloch_rotation_model(r), theta), SLD).scalar
    return TrialOutcome(residual=abs(value - r**2))


def _derivative_trial(tol: ToleranceSettings) -> TrialFn:
    def trial(index: int, seed: int) -> TrialOutcome:
        rng = np.random.default_rng(seed)
        dim = 2 + index % 2
        m = 1 + (index // 2) % 2
        model = random_model(dim, m, int(rng.integers(2**31)))
        theta = rng.uniform(-np.pi + 0.1, np.pi - 0.1, size=m)
        analytic = evaluate(model, theta)
        numeric = evaluate(model, theta, step=tol.fd_step, use_analytic=False)
        return TrialOutcome(
            residual=max(
                max_abs(a - b) for a, b in zip(analytic.derivatives, numeric.derivatives)
            )
        )
    return trial


def _classical_binary_trial(n_points: int) -> TrialFn:
    model = classical_binary_model()
    grid = np.linspace(model.lower[0], model.upper[0], n_points)

    def trial(index: int, seed: int) -> TrialOutcome:
        point = evaluate(model, [grid[index % n_points]])
        probs = np.diag(point.state).real
        dprobs = [np.diag(point.derivatives[0]).real]
        return TrialOutcome(residual=abs(classical_fisher(probs, dprobs).scalar - 1.0))
    return trial


def acceptance_campaigns(
    tol: Optional[ToleranceSettings] = None,
    inject_bug: bool = False,
) -> List[Campaign]:
    """
    The full certification suite, in report order.

    inject_bug negates the gap in the tradeoff campaigns; a healthy suite
    must then fail.
    """
    tol = tol or ToleranceSettings()
    return [
        Campaign("tradeoff_qubit", 200, tol.psd_tol, _tradeoff_trial(2, tol, inject_bug)),
        Campaign("tradeoff_qutrit", 50, tol.psd_tol, _tradeoff_trial(3, tol, inject_bug)),
        Campaign("separating_qubit", 200, tol.equality_tol, _separating_trial(2, tol)),
        Campaign("separating_qutrit", 50, tol.equality_tol, _separating_trial(3, tol)),
        Campaign("rld_equality_grid", len(rld_grid()), tol.equality_tol, _rld_grid_trial),
        Campaign("monotonicity", 100, tol.psd_tol, _monotonicity_trial),
        Campaign("unitary_invariance", 100, tol.unitary_tol, _unitary_trial),
        Campaign("metric_ordering", 100, tol.ordering_tol, _ordering_trial),
        Campaign("commuting_reduction", 25, tol.ordering_tol, _commuting_trial(25)),
        Campaign("pure_dominance", 100, tol.psd_tol, _dominance_trial(tol)),
        Campaign("divergence_tradeoff", 100, tol.divergence_slack_tol, _divergence_trial),
        Campaign(
            "local_expansion", len(EXPANSION_CASES), tol.expansion_rel_tol, _expansion_trial(tol)
        ),
        Campaign("sld_oracle", len(ORACLE_RADII), tol.oracle_tol, _sld_oracle_trial),
        Campaign("derivative_oracle", 40, tol.derivative_tol, _derivative_trial(tol)),
        Campaign("classical_binary_oracle", 25, 1e-10, _classical_binary_trial(25)),
    ]


def run_suite(
    campaign_seed: int,
    trials: Optional[int] = None,
    workers: int = 1,
    tol: Optional[ToleranceSettings] = None,
    inject_bug: bool = False,
) -> List[CampaignSummary]:
    """
    Run every acceptance campaign. `trials` caps each campaign's trial count
    (trials=1 is the smoke mode).
    """
    summaries = []
    for campaign in acceptance_campaigns(tol, inject_bug):
        n = campaign.default_trials if trials is None else min(trials, campaign.default_trials)
        summaries.append(run_campaign(campaign, campaign_seed, n, workers))
    return summaries

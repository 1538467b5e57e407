"""
The five CLI commands.

Each command takes a JobContext and returns a CommandResult: a JSON payload,
a CSV table and the overall verdict. Commands never write files or pick exit
codes; main.py does both.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar

import numpy as np

from infodist.config import ToleranceSettings
from infodist.core.matrixcore import (
    EIGENVALUE_FLOOR,
    TRACE_TOL,
    density_matrix_residuals,
    is_psd,
    max_abs,
    min_eigenvalue,
)
from infodist.divergence.entropies import DivergenceKind
from infodist.divergence.tradeoff import (
    check_divergence_separating,
    divergence_tradeoff,
    local_expansion_metric,
)
from infodist.errors import (
    ConfigError,
    InfodistError,
    InvalidMeasurement,
    RankDeficient,
    SingularSigma,
)
from infodist.fisher.disturbance import disturbance_at, infimum_disturbance, outcome_fisher
from infodist.fisher.information import quantum_fisher
from infodist.fisher.metrics import BKM, REAL_RLD, RLD, SLD, get_metrics
from infodist.measurement.kraus import NORMALIZATION_TOL, royer
from infodist.measurement.povm import POVM_TOL, is_pure, is_reversible, povm
from infodist.models.schemas import DivergenceSpec, JobConfig, ScanSpec, to_matrix
from infodist.models.statistical import evaluate
from infodist.tradeoff.campaigns import random_state_pair, run_suite, trial_seed
from infodist.tradeoff.certifiers import (
    check_rld_equality,
    check_separating,
    check_tradeoff,
    measure_rld_equality,
)
from infodist.cli.jobs import build_measurement, build_model
from infodist.cli.reports import Table, scalar_or_trace
from infodist.utils.logging import cli_logger as logger

T = TypeVar("T")

SCAN_COLUMNS = [
    "scan_value",
    "j_classical",
    "delta_sld",
    "delta_bkm",
    "delta_realrld",
    "delta_rld_re",
    "gap_min_eig_sld",
    "rld_equality_residual",
]


@dataclass(frozen=True)
class JobContext:
    job: JobConfig
    tol: ToleranceSettings
    seed: int
    trials: Optional[int] = None
    workers: int = 1
    inject_bug: bool = False


@dataclass(frozen=True)
class CommandResult:
    payload: Dict[str, Any]
    table: Table
    passed: bool


def _ordered_map(fn: Callable[[Any], T], items: Sequence[Any], workers: int) -> List[T]:
    """Map in item order, on a thread pool when workers > 1."""
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(fn, items))
    return [fn(item) for item in items]


def _theta_points(job: JobConfig) -> List[List[float]]:
    points = job.theta_points()
    if not points:
        raise ConfigError("This command needs at least one 'theta' point")
    return points


def _theta_label(theta: Sequence[float]) -> str:
    return ";".join(f"{float(t):.17g}" for t in theta)


# ===== validate =====

def _check(name: str, residual: Optional[float], tolerance: Optional[float], passed: Optional[bool],
           error: Optional[str] = None) -> Dict[str, Any]:
    entry = {"name": name, "residual": residual, "tolerance": tolerance, "passed": passed}
    if error is not None:
        entry["error"] = error
    return entry


def _state_checks(prefix: str, rho: np.ndarray, tol: ToleranceSettings) -> List[Dict[str, Any]]:
    res = density_matrix_residuals(rho)
    negativity = max(0.0, -res["min_eigenvalue"])
    return [
        _check(f"{prefix}.hermiticity", res["hermiticity"], tol.hermiticity_tol,
               res["hermiticity"] <= tol.hermiticity_tol),
        _check(f"{prefix}.trace", res["trace"], TRACE_TOL, res["trace"] <= TRACE_TOL),
        _check(f"{prefix}.negativity", negativity, EIGENVALUE_FLOOR, negativity <= EIGENVALUE_FLOOR),
    ]


def cmd_validate(ctx: JobContext) -> CommandResult:
    """Check every type invariant the job touches and report the residuals."""
    job, tol = ctx.job, ctx.tol
    get_metrics(job.metrics)
    checks: List[Dict[str, Any]] = []
    info: Dict[str, Any] = {"metrics": list(job.metrics)}

    model_dim = None
    if job.model is not None and job.model.samples is not None:
        for i, sample in enumerate(job.model.samples):
            rho = to_matrix(sample.rho)
            if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
                checks.append(_check(f"sample_{i}.shape", None, None, False, f"shape {rho.shape}"))
                continue
            model_dim = rho.shape[0]
            checks.extend(_state_checks(f"sample_{i}", rho, tol))
    elif job.model is not None:
        model = build_model(job.model, ctx.seed)
        model_dim = model.dim
        for k, theta in enumerate(job.theta_points()):
            try:
                point = evaluate(model, theta, step=tol.fd_step)
            except InfodistError as e:
                checks.append(_check(f"theta_{k}.evaluate", None, None, False, f"{type(e).__name__}: {e}"))
                continue
            checks.extend(_state_checks(f"theta_{k}.state", point.state, tol))
            trace = max(abs(np.trace(d)) for d in point.derivatives)
            checks.append(_check(f"theta_{k}.derivative_trace", float(trace), 1e-8, trace <= 1e-8))

    if job.measurement is not None:
        try:
            meas = build_measurement(job.measurement, ctx.seed, check=False)
        except InvalidMeasurement as e:
            checks.append(_check("measurement.structure", None, None, False, str(e)))
        else:
            residual = meas.normalization_residual()
            checks.append(_check("measurement.normalization", residual, NORMALIZATION_TOL,
                                 residual <= NORMALIZATION_TOL))
            elements = povm(meas).elements
            negativity = max(max(0.0, -min_eigenvalue(e)) for e in elements)
            checks.append(_check("povm.negativity", negativity, POVM_TOL, negativity <= POVM_TOL))
            povm_sum = max_abs(sum(elements) - np.eye(meas.dim))
            checks.append(_check("povm.completeness", povm_sum, POVM_TOL, povm_sum <= POVM_TOL))
            pure = is_pure(meas)
            info["measurement"] = {
                "name": meas.name,
                "n_outcomes": meas.n_outcomes,
                "pure": pure,
                "reversible": bool(pure and is_reversible(meas, tol.cond_tol)),
            }
            if model_dim is not None:
                checks.append(_check("dimensions", float(abs(model_dim - meas.dim)), 0.0,
                                     model_dim == meas.dim))

    for c in checks:
        if c["passed"] is False:
            logger.warning("Validation check failed", check=c["name"], residual=c["residual"])

    passed = all(c["passed"] is not False for c in checks)
    table = Table(
        header=["check", "residual", "tolerance", "passed"],
        rows=[[c["name"], c["residual"], c["tolerance"], c["passed"]] for c in checks],
    )
    return CommandResult(payload={"checks": checks, "info": info}, table=table, passed=passed)


# ===== tradeoff =====

def _rld_entry(model, meas, theta, reversible: bool, pure: bool, tol: ToleranceSettings):
    if reversible:
        result = check_rld_equality(model, meas, theta, tol.cond_tol)
        ok = max(result.residual, result.intermediate_residual) <= tol.equality_tol
        return {
            "asserted": True,
            "residual": result.residual,
            "intermediate_residual": result.intermediate_residual,
            "passed": ok,
        }
    if pure:
        try:
            result = measure_rld_equality(model, meas, theta)
        except RankDeficient as e:
            return {"asserted": False, "residual": None, "note": str(e)}
        return {
            "asserted": False,
            "residual": result.residual,
            "intermediate_residual": result.intermediate_residual,
        }
    return None


def cmd_tradeoff(ctx: JobContext) -> CommandResult:
    """Tradeoff inequality, separating property and RLD equality at each θ and metric."""
    job, tol = ctx.job, ctx.tol
    metrics = get_metrics(job.metrics)
    model = build_model(job.model, ctx.seed)
    meas = build_measurement(job.measurement, ctx.seed)
    points = _theta_points(job)
    pure = is_pure(meas)
    reversible = bool(pure and is_reversible(meas, tol.cond_tol))

    results = []
    rows = []
    passed = True
    for k, theta in enumerate(points):
        point = evaluate(model, theta, step=tol.fd_step)
        j_classical = outcome_fisher(point, meas, tol.prob_tol)
        per_metric = []
        for metric in metrics:
            report = check_tradeoff(
                model, meas, theta, metric, tol.psd_tol, tol.prob_tol, tol.support_tol, tol.fd_step
            )
            gap = -report.gap if ctx.inject_bug else report.gap
            verdict = is_psd(gap, tol.psd_tol)
            separating = check_separating(
                model, meas, theta, metric, tol.prob_tol, tol.support_tol, tol.fd_step
            )
            sep_ok = separating <= tol.equality_tol
            passed = passed and verdict and sep_ok
            per_metric.append({
                "metric": metric.name,
                "delta": report.delta,
                "gap": gap,
                "min_gap_eigenvalue": min_eigenvalue(gap),
                "psd_verdict": verdict,
                "separating_residual": separating,
                "separating_passed": sep_ok,
            })
            rows.append([
                k, _theta_label(theta), metric.name,
                scalar_or_trace(j_classical.matrix), scalar_or_trace(report.delta),
                min_eigenvalue(gap), verdict, separating,
            ])

        rld = _rld_entry(model, meas, theta, reversible, pure, tol)
        if rld is not None and rld.get("asserted"):
            passed = passed and rld["passed"]
        infimum = infimum_disturbance(
            model, meas, theta, metrics, tol.prob_tol, tol.support_tol, tol.fd_step
        )
        results.append({
            "theta": list(theta),
            "j_classical": j_classical.matrix,
            "metrics": per_metric,
            "rld_equality": rld,
            "infimum": {
                "metric": infimum.metric_name,
                "value": infimum.value,
                "trace_proxy": infimum.trace_proxy,
            },
        })

    payload = {
        "model": model.name,
        "measurement": {"name": meas.name, "pure": pure, "reversible": reversible},
        "points": results,
    }
    table = Table(
        header=["point", "theta", "metric", "j_classical", "delta", "gap_min_eig",
                "psd_verdict", "separating_residual"],
        rows=rows,
    )
    return CommandResult(payload=payload, table=table, passed=passed)


# ===== scan =====

def _scan_row(model, theta, params: Dict[str, float], parameter: str, value: float,
              tol: ToleranceSettings, inject_bug: bool) -> List[Optional[float]]:
    settings = dict(params)
    settings[parameter] = value
    meas = royer(settings["theta_m"], settings["sigma_m"])
    point = evaluate(model, theta, step=tol.fd_step)

    j_classical = outcome_fisher(point, meas, tol.prob_tol).scalar
    deltas = [
        disturbance_at(point, meas, m, tol.prob_tol, tol.support_tol).delta[0, 0].real
        for m in (SLD, BKM, REAL_RLD)
    ]
    try:
        delta_rld = float(
            disturbance_at(point, meas, RLD, tol.prob_tol, tol.support_tol).delta[0, 0].real
        )
    except RankDeficient:
        delta_rld = None

    gap = deltas[0] - j_classical
    if inject_bug:
        gap = -gap

    rld_residual = None
    if is_reversible(meas, tol.cond_tol):
        rld_residual = measure_rld_equality(model, meas, theta).residual
    return [value, j_classical, *deltas, delta_rld, gap, rld_residual]


def cmd_scan(ctx: JobContext) -> CommandResult:
    """Sweep one Royer parameter and trace information against disturbance."""
    job, tol = ctx.job, ctx.tol
    spec = job.measurement
    if spec is None or spec.builtin != "royer":
        raise ConfigError("scan sweeps a parameter of a 'royer' measurement")
    model = build_model(job.model, ctx.seed)
    if model.param_dim != 1:
        raise ConfigError(f"scan needs a one-parameter model, got m={model.param_dim}")
    points = _theta_points(job)
    if len(points) != 1:
        raise ConfigError(f"scan needs exactly one 'theta' point, got {len(points)}")
    theta = points[0]

    scan = job.scan or ScanSpec()
    base = {
        "theta_m": float(spec.params.get("theta_m", np.pi / 2)),
        "sigma_m": float(spec.params.get("sigma_m", np.pi / 2)),
    }
    values = [float(v) for v in scan.values()]
    rows = _ordered_map(
        lambda v: _scan_row(model, theta, base, scan.parameter, v, tol, ctx.inject_bug),
        values,
        ctx.workers,
    )

    passed = True
    for row in rows:
        gap, rld_residual = row[6], row[7]
        if gap < -tol.psd_tol:
            passed = False
        if rld_residual is not None and rld_residual > tol.equality_tol:
            passed = False

    payload = {
        "model": model.name,
        "theta": list(theta),
        "parameter": scan.parameter,
        "fixed": {k: v for k, v in base.items() if k != scan.parameter},
        "rows": [dict(zip(SCAN_COLUMNS, row)) for row in rows],
    }
    return CommandResult(payload=payload, table=Table(header=SCAN_COLUMNS, rows=rows), passed=passed)


# ===== divergence =====

def _pair_entries(label: str, rho: np.ndarray, sigma: np.ndarray, meas, kinds: List[DivergenceKind],
                  tol: ToleranceSettings) -> List[Dict[str, Any]]:
    entries = []
    for kind in kinds:
        try:
            report = divergence_tradeoff(rho, sigma, meas, kind, tol.prob_tol, tol.support_tol)
            separating = check_divergence_separating(
                rho, sigma, meas, kind, tol.prob_tol, tol.support_tol
            )
        except SingularSigma as e:
            logger.warning("Divergence skipped", pair=label, kind=kind.value, reason=str(e))
            entries.append({"pair": label, "kind": kind.value, "skipped": str(e), "passed": None})
            continue
        ok = report.passed(tol.divergence_slack_tol) and separating <= tol.divergence_slack_tol
        entries.append({
            "pair": label,
            "kind": kind.value,
            "lhs": report.lhs.value,
            "before": report.before.value,
            "rhs": report.rhs,
            "slack": report.slack,
            "vacuous": report.vacuous,
            "infinite_terms": list(report.infinite_terms),
            "separating_residual": separating,
            "passed": ok,
        })

    by_kind = {e["kind"]: e for e in entries if e.get("passed") is not None}
    q = by_kind.get(DivergenceKind.QUANTUM_RELATIVE.value)
    bs = by_kind.get(DivergenceKind.BELAVKIN_STASZEWSKI.value)
    if q is not None and bs is not None and np.isfinite(q["before"]) and np.isfinite(bs["before"]):
        ordered = bs["before"] >= q["before"] - tol.divergence_slack_tol
        bs["bs_dominates_quantum"] = ordered
        bs["passed"] = bs["passed"] and ordered
    return entries


def _expansion_entries(ctx: JobContext) -> List[Dict[str, Any]]:
    job, tol = ctx.job, ctx.tol
    model = build_model(job.model, ctx.seed)
    entries = []
    for theta in _theta_points(job):
        point = evaluate(model, theta, step=tol.fd_step)
        for kind, metric in ((DivergenceKind.QUANTUM_RELATIVE, BKM),
                             (DivergenceKind.BELAVKIN_STASZEWSKI, REAL_RLD)):
            estimate = local_expansion_metric(model, theta, kind, tol.expansion_delta)
            exact = quantum_fisher(point, metric, tol.support_tol).real
            scale = max_abs(exact)
            error = max_abs(estimate - exact) / scale if scale > 0 else max_abs(estimate)
            entries.append({
                "theta": list(theta),
                "kind": kind.value,
                "metric": metric.name,
                "estimate": estimate,
                "exact": exact,
                "relative_error": error,
                "passed": error <= tol.expansion_rel_tol,
            })
    return entries


def cmd_divergence(ctx: JobContext) -> CommandResult:
    """Divergence tradeoff on explicit and random state pairs, plus local expansions."""
    job, tol = ctx.job, ctx.tol
    spec = job.divergence or DivergenceSpec()
    kinds = [DivergenceKind(k) for k in spec.kinds]

    pairs = []
    if spec.rho is not None:
        pairs.append(("explicit", to_matrix(spec.rho), to_matrix(spec.sigma)))
    n_random = ctx.trials if (ctx.trials is not None and spec.random_pairs > 0) else spec.random_pairs
    for i in range(n_random):
        rho, sigma = random_state_pair(spec.dim, trial_seed(ctx.seed, i))
        pairs.append((f"random_{i}", rho, sigma))

    entries: List[Dict[str, Any]] = []
    if pairs:
        meas = build_measurement(job.measurement, ctx.seed)
        per_pair = _ordered_map(
            lambda pair: _pair_entries(pair[0], pair[1], pair[2], meas, kinds, tol),
            pairs,
            ctx.workers,
        )
        entries = [e for group in per_pair for e in group]

    expansions = _expansion_entries(ctx) if (spec.local_expansion and job.model is not None) else []
    if not pairs and not expansions:
        raise ConfigError("divergence needs state pairs or a model for local expansions")

    passed = all(e["passed"] is not False for e in entries + expansions)
    slacks = [e["slack"] for e in entries if e.get("slack") is not None]
    payload = {
        "pairs": entries,
        "local_expansion": expansions,
        "min_slack": min(slacks) if slacks else None,
    }
    table = Table(
        header=["pair", "kind", "lhs", "before", "rhs", "slack", "vacuous", "separating_residual", "passed"],
        rows=[
            [e["pair"], e["kind"], e.get("lhs"), e.get("before"), e.get("rhs"), e.get("slack"),
             e.get("vacuous"), e.get("separating_residual"), e["passed"]]
            for e in entries
        ],
    )
    return CommandResult(payload=payload, table=table, passed=passed)


# ===== randsuite =====

def cmd_randsuite(ctx: JobContext) -> CommandResult:
    """Every acceptance campaign in one run."""
    summaries = run_suite(ctx.seed, ctx.trials, ctx.workers, ctx.tol, ctx.inject_bug)
    passed = all(s.passed for s in summaries)
    table = Table(
        header=["campaign", "n_trials", "n_pass", "worst_residual", "tolerance", "passed", "failing_seeds"],
        rows=[
            [s.name, s.n_trials, s.n_pass, s.worst_residual, s.tolerance, s.passed,
             ";".join(str(x) for x in s.failing_seeds)]
            for s in summaries
        ],
    )
    return CommandResult(
        payload={"campaigns": [s.to_dict() for s in summaries]},
        table=table,
        passed=passed,
    )


COMMANDS: Dict[str, Callable[[JobContext], CommandResult]] = {
    "validate": cmd_validate,
    "tradeoff": cmd_tradeoff,
    "scan": cmd_scan,
    "divergence": cmd_divergence,
    "randsuite": cmd_randsuite,
}

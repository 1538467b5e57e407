"""
Monotone metrics: operator monotone functions f with f(1) = 1.

Each metric defines a quantum Fisher information through the scalar action
of K_ρ = R_ρ f(L_ρ R_ρ⁻¹) on eigenbasis elements |k⟩⟨l|:

    c_kl = p_l f(p_k / p_l)

Presets: SLD (1+x)/2, RLD x, real RLD 2x/(x+1), BKM (x−1)/log x. Among the
symmetric metrics SLD gives the smallest Fisher information and real RLD the
largest.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from infodist.errors import UnknownMetric
from infodist.utils.logging import fisher_logger as logger

F_ONE_TOL = 1e-12
BKM_SERIES_RADIUS = 1e-4

ScalarFn = Callable[[np.ndarray], np.ndarray]
MeanFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class MonotoneMetric:
    """
    A quantum Fisher metric given by f.

    `mean` is an optional two-argument form c(p_k, p_l) that stays defined
    when an eigenvalue vanishes. Metrics that have one (SLD) tolerate
    rank-deficient states by summing only over pairs with c > 0.

    Operator monotonicity of f is never checked; `trusted` is False for
    user-supplied functions.
    """

    name: str
    f: ScalarFn
    is_symmetric: bool
    mean: Optional[MeanFn] = None
    trusted: bool = True

    def __post_init__(self):
        value = float(self.f(np.asarray(1.0)))
        if abs(value - 1.0) > F_ONE_TOL:
            raise ValueError(f"Metric '{self.name}' has f(1) = {value!r}, expected 1")

    def kernel(self, pk: np.ndarray, pl: np.ndarray) -> np.ndarray:
        """c_kl for eigenvalue arrays; pl must be positive unless `mean` is set."""
        if self.mean is not None:
            return self.mean(pk, pl)
        return pl * self.f(pk / pl)


def _sld(x):
    return (1 + x) / 2


def _rld(x):
    return np.asarray(x, dtype=float)


def _real_rld(x):
    return 2 * x / (x + 1)


def _bkm(x):
    x = np.asarray(x, dtype=float)
    u = x - 1
    # u / log(1+u) = 1 + u/2 − u²/12 + u³/24 − …
    series = 1 + u / 2 - u ** 2 / 12 + u ** 3 / 24
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = u / np.log(x)
    return np.where(np.abs(u) < BKM_SERIES_RADIUS, series, direct)


SLD = MonotoneMetric(name="sld", f=_sld, is_symmetric=True, mean=lambda a, b: (a + b) / 2)
RLD = MonotoneMetric(name="rld", f=_rld, is_symmetric=False)
REAL_RLD = MonotoneMetric(name="real_rld", f=_real_rld, is_symmetric=True)
BKM = MonotoneMetric(name="bkm", f=_bkm, is_symmetric=True)

PRESET_METRICS: Dict[str, MonotoneMetric] = {
    m.name: m for m in (SLD, BKM, REAL_RLD, RLD)
}

_ALIASES = {
    "realrld": "real_rld",
    "real-rld": "real_rld",
    "kubo_mori": "bkm",
}


def get_metric(name: str) -> MonotoneMetric:
    """
    Look up a preset metric by name (case-insensitive).

    Raises:
        UnknownMetric: if the name is not a preset
    """
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in PRESET_METRICS:
        raise UnknownMetric(
            f"Unknown metric '{name}'. Available: {', '.join(PRESET_METRICS)}"
        )
    return PRESET_METRICS[key]


def get_metrics(names: List[str]) -> List[MonotoneMetric]:
    return [get_metric(n) for n in names]


def _looks_symmetric(f: ScalarFn) -> bool:
    x = np.geomspace(1e-3, 1e3, 25)
    return bool(np.allclose(x * f(1 / x), f(x), rtol=1e-9, atol=1e-12))


def custom_metric(name: str, f: ScalarFn, is_symmetric: Optional[bool] = None) -> MonotoneMetric:
    """
    Wrap a user-supplied f. Symmetry x·f(1/x) = f(x) is checked on a grid when
    not given. The result carries trusted=False.
    """
    if is_symmetric is None:
        is_symmetric = _looks_symmetric(f)
    logger.warning(
        "Custom metric used without an operator monotonicity check",
        metric=name,
        is_symmetric=is_symmetric,
    )
    return MonotoneMetric(name=name, f=f, is_symmetric=is_symmetric, trusted=False)

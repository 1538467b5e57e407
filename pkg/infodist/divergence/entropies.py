"""
Classical, quantum (Umegaki) and Belavkin–Staszewski relative entropies.

Natural logarithms throughout. +∞ is returned as an explicit
DivergenceValue with is_finite False and never enters arithmetic.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from infodist.core.matrixcore import (
    as_density_matrix,
    eigh,
    matfunc,
    support_cutoff,
    support_projector,
)
from infodist.errors import DimensionMismatch, NotADistribution, NumericalError, SingularSigma

PROB_TOL = 1e-12
SUPPORT_LEAK_TOL = 1e-9
CLAMP_TOL = 1e-10
DISTRIBUTION_TOL = 1e-9


class DivergenceKind(str, Enum):
    CLASSICAL = "classical"
    QUANTUM_RELATIVE = "quantum_relative"
    BELAVKIN_STASZEWSKI = "belavkin_staszewski"


@dataclass(frozen=True)
class DivergenceValue:
    value: float
    kind: DivergenceKind

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    @classmethod
    def infinite(cls, kind: DivergenceKind) -> "DivergenceValue":
        return cls(value=math.inf, kind=kind)

    @classmethod
    def clamped(cls, value: float, kind: DivergenceKind) -> "DivergenceValue":
        """Clamp tiny negative round-off to 0 (Klein's inequality)."""
        if value < -CLAMP_TOL:
            raise NumericalError(f"{kind.value} divergence came out negative: {value:.3e}")
        return cls(value=max(value, 0.0), kind=kind)


def _as_distribution(p: Sequence[float], label: str) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise NotADistribution(f"{label} must be a non-empty vector, got shape {p.shape}")
    if np.any(p < -DISTRIBUTION_TOL) or abs(p.sum() - 1.0) > DISTRIBUTION_TOL:
        raise NotADistribution(f"{label} is not a probability vector (sum {p.sum():.12f})")
    return np.clip(p, 0.0, None)


def classical_relative_entropy(
    p: Sequence[float],
    q: Sequence[float],
    prob_tol: float = PROB_TOL,
) -> DivergenceValue:
    """
    S^C(p‖q) = Σ_{p_i > 0} p_i log(p_i / q_i); +∞ when p puts weight where q has none.

    Raises:
        NotADistribution: p or q is not a probability vector, or lengths differ
    """
    p = _as_distribution(p, "p")
    q = _as_distribution(q, "q")
    if p.shape != q.shape:
        raise NotADistribution(f"Distributions have different lengths {p.size} and {q.size}")

    live = p > prob_tol
    if np.any(q[live] <= prob_tol):
        return DivergenceValue.infinite(DivergenceKind.CLASSICAL)
    value = float(np.sum(p[live] * np.log(p[live] / q[live])))
    return DivergenceValue.clamped(value, DivergenceKind.CLASSICAL)


def _check_pair(rho: np.ndarray, sigma: np.ndarray):
    rho = as_density_matrix(rho)
    sigma = as_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"States of shapes {rho.shape} and {sigma.shape}")
    return rho, sigma


def quantum_relative_entropy(
    rho: np.ndarray,
    sigma: np.ndarray,
    support_tol: Optional[float] = None,
) -> DivergenceValue:
    """
    S^Q(ρ‖σ) = tr ρ(log ρ − log σ), with logarithms taken on supports.

    +∞ when supp ρ ⊄ supp σ, detected as tr(P_σ^⊥ ρ) > 1e-9 with P_σ^⊥ the
    projector onto σ's numerical kernel.
    """
    rho, sigma = _check_pair(rho, sigma)
    kernel = support_projector(sigma, support_tol, kernel=True, positive=True)
    if np.trace(kernel @ rho).real > SUPPORT_LEAK_TOL:
        return DivergenceValue.infinite(DivergenceKind.QUANTUM_RELATIVE)

    log_rho = matfunc(rho, np.log, support_tol, positive=True)
    log_sigma = matfunc(sigma, np.log, support_tol, positive=True)
    value = float(np.trace(rho @ (log_rho - log_sigma)).real)
    return DivergenceValue.clamped(value, DivergenceKind.QUANTUM_RELATIVE)


def bs_relative_entropy(
    rho: np.ndarray,
    sigma: np.ndarray,
    support_tol: Optional[float] = None,
) -> DivergenceValue:
    """
    S^BS(ρ‖σ) = tr ρ log(ρ^{1/2} σ⁻¹ ρ^{1/2}).

    The logarithm is taken on the support of ρ^{1/2} σ⁻¹ ρ^{1/2}, which is
    supp ρ, so rank-deficient ρ is fine.

    Raises:
        SingularSigma: σ is not full rank
    """
    rho, sigma = _check_pair(rho, sigma)
    spectrum = eigh(sigma).eigenvalues
    if spectrum[0] <= support_cutoff(spectrum, support_tol):
        raise SingularSigma(
            f"Belavkin–Staszewski entropy needs full-rank σ (smallest eigenvalue {spectrum[0]:.3e})"
        )

    sqrt_rho = matfunc(rho, np.sqrt, support_tol, positive=True)
    sigma_inv = matfunc(sigma, lambda x: 1.0 / x, support_tol, positive=True)
    inner = sqrt_rho @ sigma_inv @ sqrt_rho
    value = float(np.trace(rho @ matfunc(inner, np.log, support_tol, positive=True)).real)
    return DivergenceValue.clamped(value, DivergenceKind.BELAVKIN_STASZEWSKI)


QUANTUM_DIVERGENCES = {
    DivergenceKind.QUANTUM_RELATIVE: quantum_relative_entropy,
    DivergenceKind.BELAVKIN_STASZEWSKI: bs_relative_entropy,
}


def quantum_divergence(
    rho: np.ndarray,
    sigma: np.ndarray,
    kind: DivergenceKind,
    support_tol: Optional[float] = None,
) -> DivergenceValue:
    kind = DivergenceKind(kind)
    if kind not in QUANTUM_DIVERGENCES:
        raise ValueError(f"'{kind.value}' is not a quantum divergence")
    return QUANTUM_DIVERGENCES[kind](rho, sigma, support_tol)

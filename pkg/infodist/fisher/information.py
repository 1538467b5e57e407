"""
Classical and quantum Fisher information.

The quantum Fisher information for a monotone metric is computed from one
eigendecomposition ρ = Σ p_k |k⟩⟨k|: with D_a = U† ∂_aρ U,

    [J]_ab = Σ_kl conj(D_a)_kl (D_b)_kl / c_kl,    c_kl = p_l f(p_k / p_l)

because L_ρ R_ρ⁻¹ maps |k⟩⟨l| to (p_k/p_l)|k⟩⟨l|.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from infodist.core.matrixcore import dagger, eigh, support_cutoff
from infodist.errors import NotADistribution, RankDeficient, SingularDistribution
from infodist.fisher.metrics import MonotoneMetric
from infodist.models.statistical import ModelPoint

PROB_TOL = 1e-12
DERIV_TOL = 1e-9


@dataclass(frozen=True)
class FisherMatrix:
    """An m×m Hermitian Fisher information matrix tagged with its metric."""

    matrix: np.ndarray
    metric_name: str

    @property
    def param_dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def real(self) -> np.ndarray:
        return self.matrix.real

    @property
    def scalar(self) -> float:
        """The single entry of a one-parameter Fisher information."""
        if self.matrix.shape != (1, 1):
            raise ValueError(f"Fisher matrix is {self.matrix.shape}, not 1×1")
        return float(self.matrix[0, 0].real)


def classical_fisher(
    probs: Sequence[float],
    dprobs: Sequence[Sequence[float]],
    prob_tol: float = PROB_TOL,
) -> FisherMatrix:
    """
    [J^C]_ab = Σ_{i: p_i > prob_tol} (∂_a p_i)(∂_b p_i) / p_i.

    Args:
        probs: outcome probabilities p_i
        dprobs: m rows, row a holding ∂_a p_i over the outcomes

    Raises:
        NotADistribution: p is not a distribution or a derivative row does not sum to 0
        SingularDistribution: a zero-probability outcome has |∂_a p_i| > sqrt(prob_tol)
    """
    p = np.asarray(probs, dtype=float)
    dp = np.atleast_2d(np.asarray(dprobs, dtype=float))
    if p.ndim != 1 or dp.shape[1] != p.shape[0]:
        raise NotADistribution(
            f"Probabilities of shape {p.shape} do not match derivatives of shape {dp.shape}"
        )
    if np.any(p < -prob_tol) or abs(p.sum() - 1.0) > 1e-9:
        raise NotADistribution(f"Not a probability vector: sum {p.sum():.12f}, min {p.min():.3e}")
    row_sums = np.abs(dp.sum(axis=1))
    if np.any(row_sums > 1e-8):
        raise NotADistribution(f"Derivative rows must sum to 0, got {row_sums.max():.3e}")

    live = p > prob_tol
    if np.any(np.abs(dp[:, ~live]) > np.sqrt(prob_tol)):
        raise SingularDistribution(
            "Classical Fisher information diverges at a zero-probability outcome"
        )

    scaled = dp[:, live] / np.sqrt(p[live])
    return FisherMatrix(matrix=(scaled @ scaled.T).astype(complex), metric_name="classical")


def _eigenbasis_weights(
    point: ModelPoint,
    metric: MonotoneMetric,
    support_tol: Optional[float],
    deriv_tol: float,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Eigenvectors U, eigenbasis derivatives D_a and the weights 1/c_kl
    (zero on skipped pairs).
    """
    dec = eigh(point.state)
    p = dec.eigenvalues
    u = dec.eigenvectors
    d = np.array([dagger(u) @ da @ u for da in point.derivatives])

    cutoff = support_cutoff(p, support_tol)
    supported = p > cutoff
    both = np.outer(supported, supported)
    pk = np.clip(p, 0.0, None)[:, None] * np.ones_like(p)[None, :]
    pl = pk.T

    c = np.zeros_like(pk)
    with np.errstate(divide="ignore", invalid="ignore"):
        c[both] = metric.kernel(pk[both], pl[both])
        if metric.mean is not None:
            c[~both] = metric.mean(pk[~both], pl[~both])

    live = c > cutoff
    if metric.mean is None and not np.all(live):
        leaking = np.abs(d[:, ~live])
        if leaking.size and leaking.max() > deriv_tol:
            raise RankDeficient(
                f"Metric '{metric.name}' diverges: state has rank {int(supported.sum())} "
                f"of {len(p)} and the derivative leaves its support "
                f"(|∂ρ| = {leaking.max():.3e} on a null pair)"
            )

    weights = np.zeros_like(c)
    weights[live] = 1.0 / c[live]
    return u, d, weights


def quantum_fisher(
    point: ModelPoint,
    metric: MonotoneMetric,
    support_tol: Optional[float] = None,
    deriv_tol: float = DERIV_TOL,
) -> FisherMatrix:
    """
    Quantum Fisher information of the model at `point` for `metric`.

    Pairs with c_kl at or below the support threshold are skipped. For
    metrics without a two-argument mean that is only allowed when the
    derivative vanishes on those pairs.

    Raises:
        RankDeficient: a general metric on a singular state whose derivative
            leaves the support
    """
    _, d, weights = _eigenbasis_weights(point, metric, support_tol, deriv_tol)
    j = np.einsum("akl,bkl,kl->ab", np.conj(d), d, weights)
    j = (j + dagger(j)) / 2
    return FisherMatrix(matrix=j, metric_name=metric.name)


def logarithmic_derivatives(
    point: ModelPoint,
    metric: MonotoneMetric,
    support_tol: Optional[float] = None,
    deriv_tol: float = DERIV_TOL,
) -> List[np.ndarray]:
    """
    L_a = K_ρ⁻¹(∂_aρ), so that [J]_ab = tr(∂_aρ L_b).

    SLD derivatives are Hermitian; RLD derivatives generally are not.
    """
    u, d, weights = _eigenbasis_weights(point, metric, support_tol, deriv_tol)
    return [u @ (da * weights) @ dagger(u) for da in d]


def fisher_from_logarithmic_derivatives(point: ModelPoint, ls: Sequence[np.ndarray]) -> np.ndarray:
    """[J]_ab = tr(∂_aρ L_b), an independent path used for cross-checks."""
    m = point.param_dim
    j = np.empty((m, m), dtype=complex)
    for a in range(m):
        for b in range(m):
            j[a, b] = np.trace(point.derivatives[a] @ ls[b])
    return j

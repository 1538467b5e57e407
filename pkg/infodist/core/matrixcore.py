"""
Dense complex Hermitian linear algebra primitives.

Everything else in infodist is built on these: eigendecomposition with
deterministic phases, spectral matrix functions with a uniform support
convention, support projectors, direct sums and positivity tests.

Support convention: eigenvalues with |λ| at or below the support threshold
are exact zeros. The default threshold is relative, SUPPORT_REL_TOL times the
largest |λ|. For positive semidefinite inputs (states, POVM elements) pass
positive=True: every eigenvalue at or below the threshold is then a zero,
including the small negatives that state and POVM validation tolerate.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import block_diag

from infodist.errors import DomainError, InvalidState, NonHermitianInput
from infodist.utils.logging import linalg_logger as logger

HERMITICITY_TOL = 1e-10
SUPPORT_REL_TOL = 1e-12
TRACE_TOL = 1e-10
EIGENVALUE_FLOOR = 1e-10

# Columns are phase-fixed on their first component above this magnitude
_PHASE_TOL = 1e-10


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def max_abs(a: np.ndarray) -> float:
    """Max-entry norm ‖A‖_max."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def hermiticity_residual(h: np.ndarray) -> float:
    h = np.asarray(h)
    return max_abs(h - dagger(h))


def as_hermitian(h: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """
    Validate a square Hermitian matrix and return it as an exactly Hermitian
    complex array.

    Raises:
        NonHermitianInput: if H is not square or ‖H − H†‖_max > tol
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] == 0:
        raise NonHermitianInput(f"Expected a non-empty square matrix, got shape {h.shape}")
    residual = hermiticity_residual(h)
    if residual > tol:
        raise NonHermitianInput(f"Hermiticity residual {residual:.3e} exceeds {tol:.1e}")
    return (h + dagger(h)) / 2


def density_matrix_residuals(rho: np.ndarray) -> dict:
    """Residuals of the three density-matrix axioms, for reporting."""
    rho = np.asarray(rho, dtype=complex)
    herm = (rho + dagger(rho)) / 2
    return {
        "hermiticity": hermiticity_residual(rho),
        "trace": float(abs(np.trace(rho) - 1.0)),
        "min_eigenvalue": float(np.linalg.eigvalsh(herm)[0]),
    }


def as_density_matrix(
    rho: np.ndarray,
    hermiticity_tol: float = HERMITICITY_TOL,
    trace_tol: float = TRACE_TOL,
    eigenvalue_floor: float = EIGENVALUE_FLOOR,
) -> np.ndarray:
    """
    Validate a density matrix: Hermitian, unit trace, eigenvalues ≥ −floor.

    Raises:
        InvalidState: if any axiom fails
    """
    try:
        rho = as_hermitian(rho, hermiticity_tol)
    except NonHermitianInput as e:
        raise InvalidState(str(e)) from e
    trace = np.trace(rho).real
    if abs(trace - 1.0) > trace_tol:
        raise InvalidState(f"Trace {trace:.12f} differs from 1 by more than {trace_tol:.1e}")
    smallest = np.linalg.eigvalsh(rho)[0]
    if smallest < -eigenvalue_floor:
        raise InvalidState(f"Negative eigenvalue {smallest:.3e}")
    return rho


@dataclass(frozen=True)
class SpectralDecomposition:
    """H = U diag(λ) U† with λ ascending and phase-fixed eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ dagger(u)

    def residual(self, h: np.ndarray) -> float:
        return max_abs(self.reconstruct() - np.asarray(h))

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)


def _fix_phases(u: np.ndarray) -> np.ndarray:
    u = u.copy()
    for col in range(u.shape[1]):
        v = u[:, col]
        idx = int(np.argmax(np.abs(v) > _PHASE_TOL))
        u[:, col] = v * (np.abs(v[idx]) / v[idx])
    return u


def eigh(h: np.ndarray, tol: float = HERMITICITY_TOL) -> SpectralDecomposition:
    """
    Eigendecomposition of a Hermitian matrix.

    Eigenvalues come back ascending; each eigenvector's first non-negligible
    component is made real and positive, so the output is reproducible.

    Raises:
        NonHermitianInput: if H is not Hermitian within tol
    """
    h = as_hermitian(h, tol)
    eigenvalues, eigenvectors = np.linalg.eigh(h)
    return SpectralDecomposition(
        eigenvalues=eigenvalues,
        eigenvectors=_fix_phases(eigenvectors),
    )


def support_cutoff(eigenvalues: np.ndarray, support_tol: Optional[float] = None) -> float:
    """Absolute threshold below which |λ| counts as zero."""
    if support_tol is not None:
        return support_tol
    scale = float(np.max(np.abs(eigenvalues))) if len(eigenvalues) else 0.0
    return SUPPORT_REL_TOL * scale


def _retained(eigenvalues: np.ndarray, cutoff: float, positive: bool) -> np.ndarray:
    if positive:
        return eigenvalues > cutoff
    return np.abs(eigenvalues) > cutoff


def matfunc(
    h: np.ndarray,
    func: Callable[[np.ndarray], np.ndarray],
    support_tol: Optional[float] = None,
    tol: float = HERMITICITY_TOL,
    positive: bool = False,
) -> np.ndarray:
    """
    Spectral function U diag(φ(λ)) U†.

    φ is applied only to retained eigenvalues (|λ| > support threshold, or
    λ > support threshold when positive); the rest map to 0. φ must accept
    numpy arrays.

    Raises:
        DomainError: if φ is undefined (non-finite) at a retained eigenvalue
    """
    dec = eigh(h, tol)
    cutoff = support_cutoff(dec.eigenvalues, support_tol)
    retained = _retained(dec.eigenvalues, cutoff, positive)
    dropped = dec.eigenvalues[~retained]
    if positive and np.any(dropped < -cutoff):
        logger.debug(
            "Negative eigenvalues treated as zero",
            count=int(np.sum(dropped < -cutoff)),
            smallest=float(dropped.min()),
        )

    values = np.zeros(dec.dim)
    with np.errstate(all="ignore"):
        mapped = np.asarray(func(dec.eigenvalues[retained]), dtype=float)
    if not np.all(np.isfinite(mapped)):
        bad = dec.eigenvalues[retained][~np.isfinite(mapped)]
        raise DomainError(f"Function undefined at retained eigenvalue(s) {bad}")
    values[retained] = mapped

    u = dec.eigenvectors
    out = (u * values) @ dagger(u)
    return (out + dagger(out)) / 2


def support_projector(
    h: np.ndarray,
    support_tol: Optional[float] = None,
    kernel: bool = False,
    positive: bool = False,
) -> np.ndarray:
    """Projector onto the numerical support of H, or onto its kernel."""
    dec = eigh(h)
    cutoff = support_cutoff(dec.eigenvalues, support_tol)
    mask = _retained(dec.eigenvalues, cutoff, positive)
    if kernel:
        mask = ~mask
    u = dec.eigenvectors[:, mask]
    return u @ dagger(u)


def direct_sum(blocks: Sequence[Tuple[float, np.ndarray]]) -> np.ndarray:
    """
    Block-diagonal matrix whose i-th block is weight_i × matrix_i.

    Raises:
        ValueError: on a negative weight or an empty block list
    """
    if not blocks:
        raise ValueError("direct_sum needs at least one block")
    scaled = []
    for weight, matrix in blocks:
        if weight < 0:
            raise ValueError(f"Block weight must be non-negative, got {weight}")
        scaled.append(weight * np.asarray(matrix, dtype=complex))
    return block_diag(*scaled)


def min_eigenvalue(h: np.ndarray, tol: float = HERMITICITY_TOL) -> float:
    return float(np.linalg.eigvalsh(as_hermitian(h, tol))[0])


def is_psd(h: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff the smallest eigenvalue of H is ≥ −tol."""
    return min_eigenvalue(h) >= -tol

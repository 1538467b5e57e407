"""Hermitian linear algebra primitives."""

from .matrixcore import (
    HERMITICITY_TOL,
    SUPPORT_REL_TOL,
    TRACE_TOL,
    EIGENVALUE_FLOOR,
    SpectralDecomposition,
    dagger,
    max_abs,
    hermiticity_residual,
    as_hermitian,
    as_density_matrix,
    density_matrix_residuals,
    eigh,
    support_cutoff,
    matfunc,
    support_projector,
    direct_sum,
    min_eigenvalue,
    is_psd,
)

__all__ = [
    "HERMITICITY_TOL",
    "SUPPORT_REL_TOL",
    "TRACE_TOL",
    "EIGENVALUE_FLOOR",
    "SpectralDecomposition",
    "dagger",
    "max_abs",
    "hermiticity_residual",
    "as_hermitian",
    "as_density_matrix",
    "density_matrix_residuals",
    "eigh",
    "support_cutoff",
    "matfunc",
    "support_projector",
    "direct_sum",
    "min_eigenvalue",
    "is_psd",
]

"""
POVM extraction, purification and the pure / reversible classification.

A measurement is pure when every outcome has exactly one Kraus operator, and
reversible when it is pure and every K_i is invertible. purify() builds the
pure measurement K_i = E_i^{1/2} that has the same POVM as a given one.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from infodist.core.matrixcore import as_hermitian, dagger, matfunc, max_abs, min_eigenvalue
from infodist.errors import InvalidMeasurement, NotPure
from infodist.measurement.kraus import Measurement

POVM_TOL = 1e-9
COND_TOL = 1e-8


@dataclass(frozen=True)
class Povm:
    elements: Tuple[np.ndarray, ...]

    @classmethod
    def from_elements(cls, elements: Sequence[np.ndarray], tol: float = POVM_TOL) -> "Povm":
        """
        Raises:
            InvalidMeasurement: an element is not PSD or the elements do not sum to I
        """
        if not elements:
            raise InvalidMeasurement("A POVM needs at least one element")
        checked = []
        for i, e in enumerate(elements):
            e = as_hermitian(e, tol)
            if min_eigenvalue(e) < -tol:
                raise InvalidMeasurement(f"POVM element {i} is not positive semidefinite")
            checked.append(e)
        residual = max_abs(sum(checked) - np.eye(checked[0].shape[0]))
        if residual > tol:
            raise InvalidMeasurement(f"POVM elements sum to I only within {residual:.3e}")
        return cls(elements=tuple(checked))

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def probabilities(self, rho: np.ndarray) -> np.ndarray:
        return np.array([np.trace(e @ rho).real for e in self.elements])


def povm(meas: Measurement) -> Povm:
    """E_i = Σ_j K_ij† K_ij."""
    elements = []
    for ops in meas.outcomes:
        e = sum(dagger(k) @ k for k in ops)
        elements.append((e + dagger(e)) / 2)
    return Povm(elements=tuple(elements))


def purify(p: Povm) -> Measurement:
    """Pure measurement with K_i = E_i^{1/2}, the positive square root."""
    kraus = tuple((matfunc(e, np.sqrt, positive=True),) for e in p.elements)
    return Measurement(dim=p.dim, outcomes=kraus, name="purified")


def is_pure(meas: Measurement) -> bool:
    return all(len(ops) == 1 for ops in meas.outcomes)


def smallest_singular_values(meas: Measurement) -> np.ndarray:
    """Smallest singular value of each K_i of a pure measurement."""
    if not is_pure(meas):
        raise NotPure(f"Measurement '{meas.name}' has an outcome with several Kraus operators")
    return np.array([np.linalg.svd(ops[0], compute_uv=False)[-1] for ops in meas.outcomes])


def is_reversible(meas: Measurement, cond_tol: float = COND_TOL) -> bool:
    """
    True iff every K_i has smallest singular value above cond_tol.

    Raises:
        NotPure: reversibility is only defined for pure measurements
    """
    return bool(np.all(smallest_singular_values(meas) > cond_tol))

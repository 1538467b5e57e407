"""
Quantum statistical models θ ↦ ρ_θ with parameter derivatives.

A StatisticalModel is an immutable bundle of a state function, an optional
analytic derivative function and an axis-aligned parameter box. evaluate()
turns it into a ModelPoint, the (ρ_θ, {∂_a ρ_θ}) pair that every Fisher
computation consumes.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import expm, expm_frechet

from infodist.core.matrixcore import (
    HERMITICITY_TOL,
    as_density_matrix,
    as_hermitian,
    dagger,
)
from infodist.errors import DegenerateModel, InvalidState, NonHermitianInput, OutOfDomain
from infodist.utils.logging import model_logger as logger

FD_STEP = 1e-5
ANALYTIC_TRACE_TOL = 1e-9
FD_TRACE_TOL = 1e-8
RANDOM_MODEL_MIX = 0.1

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

StateFn = Callable[[np.ndarray], np.ndarray]
DerivativeFn = Callable[[np.ndarray], Sequence[np.ndarray]]


@dataclass(frozen=True)
class StatisticalModel:
    """A differentiable family of density matrices over a parameter box."""

    name: str
    param_dim: int
    dim: int
    state_fn: StateFn
    lower: Tuple[float, ...]
    upper: Tuple[float, ...]
    derivative_fn: Optional[DerivativeFn] = None
    params: Dict[str, Any] = field(default_factory=dict)

    def contains(self, theta: np.ndarray) -> bool:
        theta = np.asarray(theta, dtype=float)
        return bool(
            theta.shape == (self.param_dim,)
            and np.all(theta >= np.asarray(self.lower))
            and np.all(theta <= np.asarray(self.upper))
        )

    def state(self, theta: np.ndarray) -> np.ndarray:
        """ρ_θ, validated against the density-matrix axioms."""
        theta = _check_theta(self, theta)
        try:
            return as_density_matrix(self.state_fn(theta))
        except InvalidState as e:
            raise DegenerateModel(f"{self.name} at θ={theta.tolist()}: {e}") from e


@dataclass(frozen=True)
class ModelPoint:
    """ρ_θ together with its m derivative matrices at one θ."""

    theta: np.ndarray
    state: np.ndarray
    derivatives: Tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return self.state.shape[0]

    @property
    def param_dim(self) -> int:
        return len(self.derivatives)


def _check_theta(model: StatisticalModel, theta: np.ndarray) -> np.ndarray:
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    if theta.shape != (model.param_dim,):
        raise OutOfDomain(
            f"{model.name} expects {model.param_dim} parameter(s), got shape {theta.shape}"
        )
    if not model.contains(theta):
        raise OutOfDomain(
            f"θ={theta.tolist()} outside {model.name} domain "
            f"[{list(model.lower)}, {list(model.upper)}]"
        )
    return theta


def _finite_difference(model: StatisticalModel, theta: np.ndarray, step: float) -> List[np.ndarray]:
    derivatives = []
    for a in range(model.param_dim):
        shift = np.zeros(model.param_dim)
        shift[a] = step
        if not (model.contains(theta + shift) and model.contains(theta - shift)):
            raise OutOfDomain(
                f"Central difference along axis {a} with step {step} leaves {model.name} domain"
            )
        d = (model.state(theta + shift) - model.state(theta - shift)) / (2 * step)
        derivatives.append((d + dagger(d)) / 2)
    return derivatives


def evaluate(
    model: StatisticalModel,
    theta: Sequence[float],
    step: float = FD_STEP,
    use_analytic: bool = True,
) -> ModelPoint:
    """
    Evaluate a model at θ.

    Analytic derivatives are used when the model has them and use_analytic is
    set; otherwise central finite differences with the given step, symmetrized
    to exact Hermiticity.

    Raises:
        OutOfDomain: θ (or θ ± step for finite differences) outside the box
        DegenerateModel: state or derivatives break their invariants
    """
    theta = _check_theta(model, theta)
    state = model.state(theta)

    if use_analytic and model.derivative_fn is not None:
        raw = list(model.derivative_fn(theta))
        if len(raw) != model.param_dim:
            raise DegenerateModel(
                f"{model.name} returned {len(raw)} derivatives for {model.param_dim} parameters"
            )
        try:
            derivatives = [as_hermitian(d, 1e-9) for d in raw]
        except NonHermitianInput as e:
            raise DegenerateModel(f"{model.name} derivative not Hermitian: {e}") from e
        trace_tol = ANALYTIC_TRACE_TOL
    else:
        derivatives = _finite_difference(model, theta, step)
        trace_tol = FD_TRACE_TOL

    for a, d in enumerate(derivatives):
        trace = abs(np.trace(d))
        if trace > trace_tol:
            raise DegenerateModel(
                f"{model.name} derivative {a} has trace {trace:.3e} at θ={theta.tolist()}"
            )

    return ModelPoint(theta=theta, state=state, derivatives=tuple(derivatives))


# ===== Built-in models =====

def constant_model(rho: np.ndarray, param_dim: int = 1) -> StatisticalModel:
    """ρ_θ = ρ for all θ; every derivative vanishes."""
    rho = as_density_matrix(rho)
    zero = np.zeros_like(rho)
    return StatisticalModel(
        name="constant",
        param_dim=param_dim,
        dim=rho.shape[0],
        state_fn=lambda theta: rho,
        derivative_fn=lambda theta: [zero] * param_dim,
        lower=(-np.inf,) * param_dim,
        upper=(np.inf,) * param_dim,
    )


def classical_binary_model() -> StatisticalModel:
    """
    Commuting qubit family diag(cos²(θ/2), sin²(θ/2)).

    The domain stays away from θ = 0 and θ = π, where the state loses rank.
    """
    def state(theta):
        t = theta[0]
        return np.diag([np.cos(t / 2) ** 2, np.sin(t / 2) ** 2]).astype(complex)

    def derivative(theta):
        s = np.sin(theta[0]) / 2
        return [np.diag([-s, s]).astype(complex)]

    return StatisticalModel(
        name="classical_binary",
        param_dim=1,
        dim=2,
        state_fn=state,
        derivative_fn=derivative,
        lower=(0.1,),
        upper=(np.pi - 0.1,),
    )


def bloch_rotation_model(r: float) -> StatisticalModel:
    """Qubit with Bloch vector of length r rotating in the x–y plane."""
    if not 0 < r < 1:
        raise ValueError(f"Bloch radius must lie in (0, 1), got {r}")

    identity = np.eye(2, dtype=complex)

    def state(theta):
        t = theta[0]
        return (identity + r * np.cos(t) * PAULI_X + r * np.sin(t) * PAULI_Y) / 2

    def derivative(theta):
        t = theta[0]
        return [(-r * np.sin(t) * PAULI_X + r * np.cos(t) * PAULI_Y) / 2]

    return StatisticalModel(
        name="bloch_rotation",
        param_dim=1,
        dim=2,
        state_fn=state,
        derivative_fn=derivative,
        lower=(-2 * np.pi,),
        upper=(2 * np.pi,),
        params={"r": r},
    )


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (x + dagger(x)) / 2


def random_density_matrix(
    dim: int,
    rng: np.random.Generator,
    mix: float = RANDOM_MODEL_MIX,
) -> np.ndarray:
    """
    Hilbert–Schmidt random state AA†/tr(AA†), mixed with I/d at weight mix.

    The smallest eigenvalue is at least mix/d.
    """
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    w = a @ dagger(a)
    w = w / np.trace(w).real
    rho = (1 - mix) * w + mix * np.eye(dim) / dim
    return (rho + dagger(rho)) / 2


def random_model(dim: int, m: int, seed: int) -> StatisticalModel:
    """
    Unitary orbit ρ_θ = U(θ) ρ₀ U(θ)† with U(θ) = exp(−i Σ_a θ_a G_a).

    Generators and ρ₀ are drawn from a generator seeded with `seed`.
    Derivatives use the exact Fréchet derivative of the exponential; for
    m = 1 this reduces to −i[G, ρ_θ].
    """
    if dim < 2 or m < 1:
        raise ValueError(f"random_model needs dim ≥ 2 and m ≥ 1, got dim={dim}, m={m}")

    rng = np.random.default_rng(seed)
    generators = [random_hermitian(dim, rng) for _ in range(m)]
    rho0 = random_density_matrix(dim, rng)

    def exponent(theta):
        return -1j * sum(t * g for t, g in zip(theta, generators))

    def state(theta):
        u = expm(exponent(theta))
        return u @ rho0 @ dagger(u)

    def derivative(theta):
        a_mat = exponent(theta)
        u = expm(a_mat)
        out = []
        for g in generators:
            du = expm_frechet(a_mat, -1j * g, compute_expm=False)
            d = du @ rho0 @ dagger(u) + u @ rho0 @ dagger(du)
            out.append((d + dagger(d)) / 2)
        return out

    logger.debug("Random model drawn", dim=dim, m=m, seed=seed)
    return StatisticalModel(
        name="random",
        param_dim=m,
        dim=dim,
        state_fn=state,
        derivative_fn=derivative,
        lower=(-np.pi,) * m,
        upper=(np.pi,) * m,
        params={"dim": dim, "m": m, "seed": seed, "generators": generators, "rho0": rho0},
    )


def sampled_model(thetas: Sequence[float], states: Sequence[np.ndarray]) -> StatisticalModel:
    """
    One-parameter model given by explicit (θ, ρ) samples.

    Derivatives at the samples come from second-order finite differences on
    the (possibly non-uniform) grid. Evaluation is only defined at sample
    points.
    """
    if len(thetas) != len(states) or len(thetas) < 2:
        raise ValueError("A sampled model needs at least two (θ, ρ) samples of equal count")

    order = np.argsort(np.asarray(thetas, dtype=float))
    grid = np.asarray(thetas, dtype=float)[order]
    if np.any(np.diff(grid) <= 0):
        raise ValueError("Sample θ values must be distinct")
    stack = np.stack([as_density_matrix(states[i]) for i in order])
    edge_order = 2 if len(grid) >= 3 else 1
    gradient = np.gradient(stack, grid, axis=0, edge_order=edge_order)
    gradient = (gradient + dagger(gradient)) / 2

    def index_of(theta):
        hits = np.flatnonzero(np.isclose(grid, theta[0], rtol=0.0, atol=1e-12))
        if hits.size == 0:
            raise OutOfDomain(f"θ={theta[0]} is not one of the model's sample points")
        return int(hits[0])

    return StatisticalModel(
        name="samples",
        param_dim=1,
        dim=stack.shape[1],
        state_fn=lambda theta: stack[index_of(theta)],
        derivative_fn=lambda theta: [gradient[index_of(theta)]],
        lower=(float(grid[0]),),
        upper=(float(grid[-1]),),
        params={"n_samples": len(grid)},
    )

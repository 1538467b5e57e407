"""Relative entropies and the divergence form of the tradeoff."""

from .entropies import (
    DivergenceKind,
    DivergenceValue,
    classical_relative_entropy,
    quantum_relative_entropy,
    bs_relative_entropy,
    quantum_divergence,
)
from .tradeoff import (
    EXPANSION_DELTA,
    DivergenceTradeoffReport,
    divergence_tradeoff,
    check_divergence_separating,
    check_divergence_monotonicity,
    local_expansion_metric,
)

__all__ = [
    "DivergenceKind",
    "DivergenceValue",
    "classical_relative_entropy",
    "quantum_relative_entropy",
    "bs_relative_entropy",
    "quantum_divergence",
    "EXPANSION_DELTA",
    "DivergenceTradeoffReport",
    "divergence_tradeoff",
    "check_divergence_separating",
    "check_divergence_monotonicity",
    "local_expansion_metric",
]

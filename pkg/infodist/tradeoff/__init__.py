"""
Information–disturbance certifiers.

Randomized campaigns are in infodist.tradeoff.campaigns, which depends on
infodist.config and is imported on its own.
"""

from .certifiers import (
    PSD_TOL,
    EQUALITY_TOL,
    CLASSICAL_EQUALITY_TOL,
    TradeoffReport,
    RldEqualityResult,
    PureDominanceReport,
    check_tradeoff,
    channel_point,
    check_separating,
    check_monotonicity,
    measure_rld_equality,
    check_rld_equality,
    check_pure_dominance,
    random_channel,
    unitary_channel,
    completely_depolarizing_channel,
)

__all__ = [
    "PSD_TOL",
    "EQUALITY_TOL",
    "CLASSICAL_EQUALITY_TOL",
    "TradeoffReport",
    "RldEqualityResult",
    "PureDominanceReport",
    "check_tradeoff",
    "channel_point",
    "check_separating",
    "check_monotonicity",
    "measure_rld_equality",
    "check_rld_equality",
    "check_pure_dominance",
    "random_channel",
    "unitary_channel",
    "completely_depolarizing_channel",
]

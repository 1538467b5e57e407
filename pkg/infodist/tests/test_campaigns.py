"""
Tests for seeded certification campaigns.

Run with: python -m pytest infodist/tests/test_campaigns.py -v
"""

import math

import numpy as np
import pytest

from infodist.config import ToleranceSettings
from infodist.errors import NumericalError
from infodist.tradeoff.campaigns import (
    Campaign,
    TrialOutcome,
    acceptance_campaigns,
    rld_grid,
    run_campaign,
    run_suite,
    trial_seed,
)


def _echo_campaign(tolerance=0.5):
    """Campaign whose residual is the trial index scaled down."""
    return Campaign("echo", 5, tolerance, lambda index, seed: TrialOutcome(residual=index / 4))


class TestTrialSeeds:
    """Tests for per-trial seed derivation."""

    def test_deterministic(self):
        assert trial_seed(7, 3) == trial_seed(7, 3)

    def test_depends_on_both_inputs(self):
        seeds = {trial_seed(s, i) for s in (0, 1) for i in range(10)}
        assert len(seeds) == 20


class TestRunCampaign:
    """Tests for running and aggregating a single campaign."""

    def test_aggregation(self):
        summary = run_campaign(_echo_campaign(), campaign_seed=0)
        assert summary.n_trials == 5
        assert summary.n_pass == 3
        assert summary.worst_residual == 1.0
        assert summary.failing_seeds == (trial_seed(0, 3), trial_seed(0, 4))
        assert not summary.passed

    def test_explicit_verdict_wins(self):
        campaign = Campaign("flag", 2, 1.0, lambda i, s: TrialOutcome(residual=0.0, passed=i == 0))
        assert run_campaign(campaign, 0).n_pass == 1

    def test_raising_trial_counts_as_failure(self, log_buffer):
        def trial(index, seed):
            raise NumericalError("eigendecomposition did not converge")

        summary = run_campaign(Campaign("boom", 2, 1.0, trial), 3)
        assert summary.n_pass == 0
        assert math.isinf(summary.worst_residual)
        assert log_buffer.get_stats()["error_count"] == 2

    def test_linalg_error_counts_as_failure(self, log_buffer):
        """Test that a non-converging eigensolver fails its trial, not the suite."""
        def trial(index, seed):
            if index == 1:
                raise np.linalg.LinAlgError("Eigenvalues did not converge")
            return TrialOutcome(residual=0.0)

        summary = run_campaign(Campaign("solver", 3, 1.0, trial), 5)
        assert summary.n_trials == 3
        assert summary.n_pass == 2
        assert math.isinf(summary.worst_residual)
        assert summary.failing_seeds == (trial_seed(5, 1),)
        assert log_buffer.get_stats()["error_count"] == 1

    def test_workers_do_not_change_results(self):
        campaign = acceptance_campaigns()[0]
        serial = run_campaign(campaign, 11, n_trials=6, workers=1)
        threaded = run_campaign(campaign, 11, n_trials=6, workers=3)
        assert serial == threaded

    def test_empty_campaign(self):
        summary = run_campaign(_echo_campaign(), 0, n_trials=0)
        assert summary.passed
        assert summary.worst_residual == 0.0


class TestSuite:
    """Tests for the full acceptance suite."""

    def test_campaign_names_unique(self):
        names = [c.name for c in acceptance_campaigns()]
        assert len(names) == len(set(names))

    def test_rld_grid_size(self):
        assert len(rld_grid()) == 75

    def test_tolerances_flow_into_campaigns(self):
        tol = ToleranceSettings(psd_tol=1e-6)
        by_name = {c.name: c for c in acceptance_campaigns(tol)}
        assert by_name["tradeoff_qubit"].tolerance == 1e-6

    def test_smoke_mode_passes(self):
        summaries = run_suite(campaign_seed=0, trials=1)
        failing = [s.name for s in summaries if not s.passed]
        assert failing == []
        assert all(s.n_trials == 1 for s in summaries)

    @pytest.mark.parametrize("seed", [0, 1])
    def test_injected_bug_is_caught(self, seed):
        """Test that negating the gap makes the tradeoff campaigns fail."""
        summaries = {s.name: s for s in run_suite(seed, trials=3, inject_bug=True)}
        assert not summaries["tradeoff_qubit"].passed
        assert not summaries["tradeoff_qutrit"].passed
        assert summaries["separating_qubit"].passed

    def test_reproducible(self):
        a = [s.to_dict() for s in run_suite(5, trials=2)]
        b = [s.to_dict() for s in run_suite(5, trials=2, workers=2)]
        assert a == b

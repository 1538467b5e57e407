"""
Tests for relative entropies and the divergence tradeoff.

Run with: python -m pytest infodist/tests/test_divergence.py -v
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from infodist.divergence.entropies import (
    DivergenceKind,
    bs_relative_entropy,
    classical_relative_entropy,
    quantum_divergence,
    quantum_relative_entropy,
)
from infodist.divergence.tradeoff import (
    check_divergence_monotonicity,
    check_divergence_separating,
    divergence_tradeoff,
    local_expansion_metric,
)
from infodist.errors import NotADistribution, SingularSigma
from infodist.fisher.information import quantum_fisher
from infodist.fisher.metrics import BKM, REAL_RLD
from infodist.measurement.kraus import projective_measurement, random_measurement, royer
from infodist.models.statistical import evaluate, random_density_matrix, random_model

QUANTUM_KINDS = [DivergenceKind.QUANTUM_RELATIVE, DivergenceKind.BELAVKIN_STASZEWSKI]


def _pair(seed, dim=2):
    rng = np.random.default_rng(seed)
    return random_density_matrix(dim, rng), random_density_matrix(dim, rng)


class TestClassicalRelativeEntropy:
    """Tests for S^C."""

    def test_known_value(self):
        value = classical_relative_entropy([0.5, 0.5], [0.25, 0.75])
        assert value.value == pytest.approx(0.5 * math.log(4 / 3), abs=1e-15)

    def test_infinite_when_support_escapes(self):
        assert not classical_relative_entropy([0.5, 0.5], [1.0, 0.0]).is_finite

    def test_zero_weight_ignored(self):
        assert classical_relative_entropy([1.0, 0.0], [0.5, 0.5]).value == pytest.approx(math.log(2))

    def test_rejects_non_distribution(self):
        with pytest.raises(NotADistribution):
            classical_relative_entropy([0.5, 0.6], [0.5, 0.5])
        with pytest.raises(NotADistribution):
            classical_relative_entropy([1.0], [0.5, 0.5])


class TestQuantumRelativeEntropies:
    """Tests for S^Q and S^BS."""

    @pytest.mark.parametrize("kind", QUANTUM_KINDS, ids=lambda k: k.value)
    def test_zero_on_equal_states(self, kind, rng):
        rho = random_density_matrix(3, rng)
        assert quantum_divergence(rho, rho, kind).value == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("kind", QUANTUM_KINDS, ids=lambda k: k.value)
    def test_classical_reduction(self, kind):
        """Test that commuting diagonal states reduce to S^C."""
        p, q = np.array([0.2, 0.3, 0.5]), np.array([0.4, 0.4, 0.2])
        value = quantum_divergence(np.diag(p), np.diag(q), kind).value
        assert value == pytest.approx(classical_relative_entropy(p, q).value, abs=1e-12)

    def test_quantum_infinite_outside_support(self):
        value = quantum_relative_entropy(np.eye(2) / 2, np.diag([1.0, 0.0]))
        assert not value.is_finite

    def test_quantum_finite_inside_support(self):
        """Test that a rank-deficient ρ inside supp σ stays finite."""
        value = quantum_relative_entropy(np.diag([1.0, 0.0]), np.eye(2) / 2)
        assert value.value == pytest.approx(math.log(2), abs=1e-12)

    @pytest.mark.parametrize("kind", QUANTUM_KINDS, ids=lambda k: k.value)
    def test_tolerated_negative_eigenvalue(self, kind):
        """Test that a state at the edge of validation (λ = −5e-11) is accepted."""
        rho = np.diag([1.0 + 5e-11, -5e-11])
        value = quantum_divergence(rho, np.eye(2) / 2, kind)
        assert value.value == pytest.approx(math.log(2), abs=1e-9)

    def test_bs_needs_full_rank_sigma(self):
        with pytest.raises(SingularSigma):
            bs_relative_entropy(np.diag([1.0, 0.0]), np.diag([1.0, 0.0]))

    def test_bs_accepts_rank_deficient_rho(self):
        value = bs_relative_entropy(np.diag([1.0, 0.0]), np.eye(2) / 2)
        assert value.value == pytest.approx(math.log(2), abs=1e-12)

    @given(st.integers(min_value=0, max_value=2**31 - 1), st.sampled_from([2, 3]))
    @settings(max_examples=30, deadline=None)
    def test_bs_dominates_quantum(self, seed, dim):
        """Property: S^BS ≥ S^Q on full-rank pairs."""
        rho, sigma = _pair(seed, dim)
        s_q = quantum_relative_entropy(rho, sigma).value
        s_bs = bs_relative_entropy(rho, sigma).value
        assert s_bs >= s_q - 1e-8

    def test_classical_is_not_quantum(self):
        with pytest.raises(ValueError):
            quantum_divergence(np.eye(2) / 2, np.eye(2) / 2, DivergenceKind.CLASSICAL)


class TestDivergenceTradeoff:
    """Tests for the divergence tradeoff and its two ingredients."""

    @pytest.mark.parametrize("kind", QUANTUM_KINDS, ids=lambda k: k.value)
    def test_equal_states_give_zero_slack(self, kind, rng, royer_quarter):
        rho = random_density_matrix(2, rng)
        report = divergence_tradeoff(rho, rho, royer_quarter, kind)
        assert report.slack == pytest.approx(0.0, abs=1e-12)
        assert report.passed()

    @given(st.integers(min_value=0, max_value=2**31 - 1), st.sampled_from(QUANTUM_KINDS))
    @settings(max_examples=40, deadline=None)
    def test_slack_nonnegative(self, seed, kind):
        """Property: D^C(p‖q) ≤ D(ρ‖σ) − Σ p_i D(ρ_i‖σ_i) for Royer and random measurements."""
        rho, sigma = _pair(seed)
        for meas in (royer(np.pi / 2, np.pi / 2), random_measurement(2, 2, 1 + seed % 2, seed)):
            report = divergence_tradeoff(rho, sigma, meas, kind)
            assert not report.vacuous
            assert report.slack >= -1e-8

    def test_vacuous_report(self):
        """Test that an outcome null for σ only makes the report vacuous."""
        report = divergence_tradeoff(
            np.eye(2) / 2, np.diag([1.0, 0.0]), projective_measurement(2),
            DivergenceKind.QUANTUM_RELATIVE,
        )
        assert report.vacuous
        assert "classical" in report.infinite_terms
        assert "outcome_1" in report.infinite_terms
        assert report.slack is None
        assert report.passed()

    @given(st.integers(min_value=0, max_value=2**31 - 1), st.sampled_from(QUANTUM_KINDS))
    @settings(max_examples=25, deadline=None)
    def test_separating_property(self, seed, kind):
        """Property: the block-diagonal divergence splits into classical plus average terms."""
        rho, sigma = _pair(seed)
        meas = random_measurement(2, 3, 1 + seed % 2, seed)
        assert check_divergence_separating(rho, sigma, meas, kind) <= 1e-8

    @given(st.integers(min_value=0, max_value=2**31 - 1), st.sampled_from(QUANTUM_KINDS))
    @settings(max_examples=25, deadline=None)
    def test_monotonicity(self, seed, kind):
        """Property: divergences contract under channels."""
        rho, sigma = _pair(seed, 3)
        channel = random_measurement(3, 1, 2, seed)
        assert check_divergence_monotonicity(rho, sigma, channel, kind) >= -1e-8


class TestLocalExpansion:
    """Tests for Fisher metrics recovered from divergences of nearby states."""

    @pytest.mark.parametrize(
        "kind,metric",
        [(DivergenceKind.QUANTUM_RELATIVE, BKM), (DivergenceKind.BELAVKIN_STASZEWSKI, REAL_RLD)],
        ids=["bkm", "real_rld"],
    )
    def test_bloch_rotation(self, kind, metric, bloch_half):
        estimate = local_expansion_metric(bloch_half, [0.3], kind)[0, 0]
        exact = quantum_fisher(evaluate(bloch_half, [0.3]), metric).scalar
        assert estimate == pytest.approx(exact, rel=1e-2)

    @pytest.mark.parametrize("kind", QUANTUM_KINDS, ids=lambda k: k.value)
    def test_classical_binary_limit_is_one(self, kind, binary):
        estimate = local_expansion_metric(binary, [np.pi / 2], kind)[0, 0]
        assert estimate == pytest.approx(1.0, rel=1e-2)

    def test_two_parameters_by_polarization(self):
        model = random_model(2, 2, 17)
        theta = [0.2, -0.3]
        estimate = local_expansion_metric(model, theta, DivergenceKind.QUANTUM_RELATIVE, delta=1e-3)
        exact = quantum_fisher(evaluate(model, theta), BKM).real
        np.testing.assert_allclose(estimate, exact, rtol=2e-2, atol=2e-2 * np.abs(exact).max())

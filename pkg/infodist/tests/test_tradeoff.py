"""
Tests for the tradeoff certifiers.

Run with: python -m pytest infodist/tests/test_tradeoff.py -v
"""

import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from infodist.core.matrixcore import max_abs
from infodist.errors import NotImpure, NotPure, NotReversible
from infodist.fisher.information import quantum_fisher
from infodist.fisher.metrics import PRESET_METRICS, SLD
from infodist.measurement.kraus import (
    Measurement,
    identity_measurement,
    projective_measurement,
    random_measurement,
    royer,
    split_outcome,
)
from infodist.models.statistical import (
    bloch_rotation_model,
    classical_binary_model,
    evaluate,
    random_model,
)
from infodist.tradeoff.campaigns import random_instance
from infodist.tradeoff.certifiers import (
    channel_point,
    check_monotonicity,
    check_pure_dominance,
    check_rld_equality,
    check_separating,
    check_tradeoff,
    completely_depolarizing_channel,
    measure_rld_equality,
    random_channel,
    unitary_channel,
)

PRESETS = list(PRESET_METRICS.values())
SEEDS = st.integers(min_value=0, max_value=2**31 - 1)


class TestTradeoffInequality:
    """Tests for J^C ⪯ ΔJ^Q."""

    @pytest.mark.parametrize("metric", PRESETS, ids=lambda m: m.name)
    def test_identity_measurement(self, metric, bloch_half):
        report = check_tradeoff(bloch_half, identity_measurement(2), [0.3], metric)
        assert max_abs(report.j_classical.matrix) == 0.0
        assert max_abs(report.delta) < 1e-14
        assert report.psd_verdict

    @pytest.mark.parametrize("metric", PRESETS, ids=lambda m: m.name)
    def test_classical_saturation(self, metric, binary):
        """Test that a projective measurement saturates the bound on a commuting family."""
        report = check_tradeoff(binary, projective_measurement(2), [1.3], metric)
        assert report.j_classical.scalar == pytest.approx(1.0, abs=1e-12)
        assert max_abs(report.gap) < 1e-12
        assert report.psd_verdict

    def test_gap_is_definitional(self, bloch_half, royer_quarter):
        report = check_tradeoff(bloch_half, royer_quarter, [0.8], SLD)
        assert max_abs(report.gap - (report.delta - report.j_classical.matrix)) <= 1e-12

    @given(SEEDS, st.sampled_from([2, 3]))
    @settings(max_examples=30, deadline=None)
    def test_random_instances(self, seed, dim):
        """Property: the gap is PSD for every preset metric on random instances."""
        model, meas, theta = random_instance(dim, seed)
        for metric in PRESETS:
            report = check_tradeoff(model, meas, theta, metric)
            assert report.psd_verdict, (metric.name, report.min_gap_eigenvalue)


class TestSeparating:
    """Tests for the separating property of the measurement channel."""

    def test_identity_measurement(self, bloch_half):
        assert check_separating(bloch_half, identity_measurement(2), [0.3], SLD) < 1e-14

    @pytest.mark.parametrize("metric", PRESETS, ids=lambda m: m.name)
    def test_royer_on_bloch(self, metric, bloch_half, royer_quarter):
        assert check_separating(bloch_half, royer_quarter, [0.4], metric) <= 1e-7

    @given(SEEDS, st.sampled_from([2, 3]))
    @settings(max_examples=30, deadline=None)
    def test_random_instances(self, seed, dim):
        model, meas, theta = random_instance(dim, seed)
        for metric in PRESETS:
            assert check_separating(model, meas, theta, metric) <= 1e-7

    def test_refinement_invariance(self, bloch_half):
        """Test that splitting an outcome in two halves changes nothing."""
        meas = random_measurement(2, 2, 2, 8)
        split = split_outcome(meas, 1)
        for metric in PRESETS:
            a = check_tradeoff(bloch_half, meas, [0.6], metric)
            b = check_tradeoff(bloch_half, split, [0.6], metric)
            assert max_abs(a.gap - b.gap) < 1e-9
            assert a.psd_verdict == b.psd_verdict
            point = evaluate(bloch_half, [0.6])
            ja = quantum_fisher(channel_point(point, meas), metric).matrix
            jb = quantum_fisher(channel_point(point, split), metric).matrix
            assert max_abs(ja - jb) < 1e-9


class TestMonotonicity:
    """Tests for contraction of quantum Fisher information under channels."""

    @pytest.mark.parametrize("metric", PRESETS, ids=lambda m: m.name)
    def test_unitary_channel(self, metric, bloch_half):
        u = random_channel(2, 1, 3)[0]
        gap = check_monotonicity(bloch_half, unitary_channel(u), [0.2], metric)
        assert abs(gap) <= 1e-9

    @pytest.mark.parametrize("metric", PRESETS, ids=lambda m: m.name)
    def test_completely_depolarizing(self, metric, bloch_half):
        gap = check_monotonicity(bloch_half, completely_depolarizing_channel(2), [0.2], metric)
        j = quantum_fisher(evaluate(bloch_half, [0.2]), metric).scalar
        assert gap == pytest.approx(j, abs=1e-12)

    def test_measurement_as_channel(self, bloch_half, royer_quarter):
        assert check_monotonicity(bloch_half, royer_quarter, [0.2], SLD) >= -1e-8

    @given(SEEDS, st.integers(min_value=1, max_value=4))
    @settings(max_examples=30, deadline=None)
    def test_random_channels(self, seed, kraus_count):
        model = random_model(2, 1, seed)
        channel = random_channel(2, kraus_count, seed + 1)
        for metric in PRESETS:
            assert check_monotonicity(model, channel, [0.5], metric) >= -1e-8

    def test_random_channel_trace_preserving(self):
        ops = random_channel(3, 4, 12)
        total = sum(k.conj().T @ k for k in ops)
        assert max_abs(total - np.eye(3)) < 1e-10


class TestRldEquality:
    """Tests for J^C = ΔJ^RLD on pure reversible measurements."""

    def test_royer_on_bloch(self, bloch_half, royer_quarter):
        result = check_rld_equality(bloch_half, royer_quarter, [0.7])
        assert result.residual <= 1e-7
        assert result.intermediate_residual <= 1e-7

    def test_identity_measurement(self, bloch_half):
        result = check_rld_equality(bloch_half, identity_measurement(2), [0.7])
        assert result.residual < 1e-14

    @pytest.mark.parametrize("theta_m", np.linspace(0.3, 2.7, 5))
    @pytest.mark.parametrize("sigma_m", [0.2, 0.7, 1.2, 1.7, 2.2])
    def test_royer_grid(self, theta_m, sigma_m):
        result = check_rld_equality(bloch_rotation_model(0.8), royer(theta_m, sigma_m), [1.1])
        assert max(result.residual, result.intermediate_residual) <= 1e-7

    @given(SEEDS)
    @settings(max_examples=20, deadline=None)
    def test_random_pure_reversible(self, seed):
        model = random_model(2, 1, seed)
        meas = random_measurement(2, 3, 1, seed)
        assert check_rld_equality(model, meas, [0.4]).residual <= 1e-7

    def test_not_pure(self, bloch_half):
        with pytest.raises(NotPure):
            check_rld_equality(bloch_half, random_measurement(2, 2, 2, 1), [0.1])

    def test_not_reversible(self, bloch_half):
        with pytest.raises(NotReversible):
            check_rld_equality(bloch_half, projective_measurement(2), [0.1])

    def test_non_reversible_is_measured(self, bloch_half):
        """Test that a pure non-reversible measurement gets a residual without an assertion."""
        result = measure_rld_equality(bloch_half, projective_measurement(2), [0.1])
        assert np.isfinite(result.residual)


class TestPureDominance:
    """Tests for purified measurements against impure ones."""

    @given(SEEDS)
    @settings(max_examples=25, deadline=None)
    def test_random_impure(self, seed):
        model = random_model(2, 1, seed)
        meas = random_measurement(2, 2, 2, seed + 7)
        report = check_pure_dominance(meas, model, [0.3], SLD)
        assert report.classical_residual <= 1e-9
        assert report.dominance_min_eigenvalue >= -1e-8
        assert report.passed

    def test_identity_povm(self, bloch_half):
        """Test {I/√2, I/√2} against its purification {I}."""
        half = np.eye(2) / np.sqrt(2)
        impure = Measurement.from_kraus([[half, half]])
        report = check_pure_dominance(impure, bloch_half, [0.9], SLD)
        assert max_abs(report.j_classical_impure) == 0.0
        assert max_abs(report.j_classical_pure) == 0.0
        assert report.dominance_min_eigenvalue >= -1e-12

    def test_pure_rejected(self, bloch_half, royer_quarter):
        with pytest.raises(NotImpure):
            check_pure_dominance(royer_quarter, bloch_half, [0.9], SLD)


def _binary_near_edge():
    """The commuting binary family with its domain opened up to θ = 0."""
    return dataclasses.replace(classical_binary_model(), lower=(0.0,))


class TestToleranceParameters:
    """Tests that prob_tol and support_tol reach the tradeoff verdict."""

    # sin²(θ/2) = 1e-10 and ∂p = ±1e-5 at this θ
    THETA = [2e-5]

    def test_defaults_keep_rare_outcome(self):
        report = check_tradeoff(_binary_near_edge(), projective_measurement(2), self.THETA, SLD)
        assert report.j_classical.scalar == pytest.approx(1.0, rel=1e-6)
        assert report.delta[0, 0].real == pytest.approx(1.0, rel=1e-6)

    def test_prob_tol_nulls_rare_outcome(self):
        report = check_tradeoff(
            _binary_near_edge(), projective_measurement(2), self.THETA, SLD, prob_tol=1e-8
        )
        assert report.j_classical.scalar < 1e-9
        assert report.psd_verdict

    def test_support_tol_drops_small_eigenvalue(self):
        report = check_tradeoff(
            _binary_near_edge(), projective_measurement(2), self.THETA, SLD, support_tol=1e-9
        )
        assert abs(report.delta[0, 0]) < 1e-9
        assert not report.psd_verdict

    def test_separating_accepts_tolerances(self, bloch_half, royer_quarter):
        residual = check_separating(
            bloch_half, royer_quarter, [0.4], SLD, prob_tol=1e-10, support_tol=1e-9
        )
        assert residual <= 1e-7

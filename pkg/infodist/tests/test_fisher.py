"""
Tests for monotone metrics, Fisher information and measurement disturbance.

Run with: python -m pytest infodist/tests/test_fisher.py -v
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from infodist.core.matrixcore import dagger, max_abs, min_eigenvalue
from infodist.errors import NotADistribution, RankDeficient, SingularDistribution, UnknownMetric
from infodist.fisher.disturbance import (
    disturbance,
    infimum_disturbance,
    outcome_fisher,
    post_measurement_points,
)
from infodist.fisher.information import (
    classical_fisher,
    fisher_from_logarithmic_derivatives,
    logarithmic_derivatives,
    quantum_fisher,
)
from infodist.fisher.metrics import (
    BKM,
    PRESET_METRICS,
    REAL_RLD,
    RLD,
    SLD,
    custom_metric,
    get_metric,
)
from infodist.measurement.kraus import identity_measurement, projective_measurement, random_measurement
from infodist.models.statistical import ModelPoint, bloch_rotation_model, evaluate, random_model

PRESETS = list(PRESET_METRICS.values())


class TestMetrics:
    """Tests for the monotone metric registry."""

    def test_presets_normalized(self):
        for metric in PRESETS:
            assert float(metric.f(np.asarray(1.0))) == pytest.approx(1.0, abs=1e-12)

    def test_bkm_series_continuity(self):
        """Test that the BKM function is smooth across its series switch."""
        x = np.array([1 - 2e-4, 1 - 5e-5, 1 + 5e-5, 1 + 2e-4])
        exact = (x - 1) / np.log(x)
        np.testing.assert_allclose(BKM.f(x), exact, rtol=1e-10)

    def test_lookup_and_aliases(self):
        assert get_metric("SLD") is SLD
        assert get_metric("realrld") is REAL_RLD
        assert get_metric("kubo_mori") is BKM

    def test_unknown_metric(self):
        with pytest.raises(UnknownMetric):
            get_metric("XYZ")

    def test_custom_metric_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            custom_metric("bad", lambda x: 2 * x)

    def test_custom_metric_is_untrusted(self, log_buffer):
        """Test that a custom metric is flagged and logged."""
        metric = custom_metric("geometric", np.sqrt)
        assert not metric.trusted
        assert metric.is_symmetric
        assert log_buffer.get_stats()["warning_count"] == 1


class TestClassicalFisher:
    """Tests for the classical Fisher information."""

    def test_binary_model_equals_one(self, binary):
        """Test J^C = 1 for the commuting binary model across its domain."""
        for t in np.linspace(binary.lower[0], binary.upper[0], 11):
            point = evaluate(binary, [t])
            j = classical_fisher(np.diag(point.state).real, [np.diag(point.derivatives[0]).real])
            assert j.scalar == pytest.approx(1.0, abs=1e-10)

    def test_not_a_distribution(self):
        with pytest.raises(NotADistribution):
            classical_fisher([0.5, 0.6], [[0.1, -0.1]])

    def test_singular_distribution(self):
        with pytest.raises(SingularDistribution):
            classical_fisher([1.0, 0.0], [[-0.1, 0.1]])

    def test_zero_outcome_without_derivative(self):
        assert classical_fisher([1.0, 0.0], [[0.0, 0.0]]).scalar == 0.0

    @given(st.integers(min_value=0, max_value=2**31 - 1), st.integers(min_value=2, max_value=6))
    @settings(max_examples=30, deadline=None)
    def test_outcome_relabeling(self, seed, n):
        """Property: permuting outcomes leaves J^C unchanged."""
        rng = np.random.default_rng(seed)
        p = rng.dirichlet(np.ones(n)) + 0.05
        p = p / p.sum()
        dp = rng.normal(size=(2, n))
        dp = dp - dp.mean(axis=1, keepdims=True)
        perm = rng.permutation(n)
        original = classical_fisher(p, dp).matrix
        relabeled = classical_fisher(p[perm], dp[:, perm]).matrix
        assert max_abs(original - relabeled) <= 1e-10 * max(1.0, max_abs(original))


class TestQuantumFisher:
    """Tests for quantum Fisher information under the preset metrics."""

    @pytest.mark.parametrize("r", [0.1, 0.3, 0.5, 0.7, 0.9])
    def test_bloch_closed_forms(self, r):
        """Test SLD r², BKM r·artanh(r) and (real) RLD r²/(1 − r²)."""
        point = evaluate(bloch_rotation_model(r), [0.37])
        assert quantum_fisher(point, SLD).scalar == pytest.approx(r**2, abs=1e-8)
        assert quantum_fisher(point, BKM).scalar == pytest.approx(r * np.arctanh(r), abs=1e-8)
        assert quantum_fisher(point, REAL_RLD).scalar == pytest.approx(r**2 / (1 - r**2), abs=1e-8)
        assert quantum_fisher(point, RLD).scalar == pytest.approx(r**2 / (1 - r**2), abs=1e-8)

    def test_commuting_model_metrics_coincide(self, binary):
        point = evaluate(binary, [1.1])
        values = [quantum_fisher(point, m).scalar for m in PRESETS]
        assert max(values) - min(values) < 1e-9
        assert values[0] == pytest.approx(1.0, abs=1e-10)

    @given(st.integers(min_value=0, max_value=2**31 - 1), st.sampled_from([2, 3]))
    @settings(max_examples=25, deadline=None)
    def test_metric_ordering(self, seed, dim):
        """Property: J^SLD ⪯ J^BKM ⪯ J^realRLD on full-rank models."""
        model = random_model(dim, 2, seed)
        point = evaluate(model, np.random.default_rng(seed).uniform(-2, 2, size=2))
        sld, bkm, real = (quantum_fisher(point, m).matrix for m in (SLD, BKM, REAL_RLD))
        assert min_eigenvalue(bkm - sld) >= -1e-9
        assert min_eigenvalue(real - bkm) >= -1e-9

    @given(st.integers(min_value=0, max_value=2**31 - 1), st.sampled_from([2, 3]))
    @settings(max_examples=20, deadline=None)
    def test_unitary_orbit_is_theta_independent(self, seed, dim):
        """Property: J^SLD is constant along a one-parameter unitary orbit."""
        model = random_model(dim, 1, seed)
        values = [
            quantum_fisher(evaluate(model, [t]), SLD).scalar for t in np.linspace(-2.5, 2.5, 5)
        ]
        assert max(values) - min(values) <= 1e-6 * max(1.0, max(values))

    def test_hermitian_result(self):
        point = evaluate(random_model(3, 2, 9), [0.4, 0.1])
        j = quantum_fisher(point, RLD).matrix
        assert max_abs(j - dagger(j)) == 0.0

    def test_pure_state_sld(self):
        """Test that SLD handles a rank-deficient family via its mean form."""
        psi = np.array([1.0, 1.0]) / np.sqrt(2)
        rho = np.outer(psi, psi).astype(complex)
        d = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex) / 2
        point = ModelPoint(theta=np.zeros(1), state=rho, derivatives=(d,))
        assert quantum_fisher(point, SLD).scalar == pytest.approx(1.0, abs=1e-12)

    def test_rank_deficient_general_metric(self):
        """Test that RLD on a pure state with a leaking derivative raises."""
        rho = np.diag([1.0, 0.0]).astype(complex)
        d = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex) / 2
        point = ModelPoint(theta=np.zeros(1), state=rho, derivatives=(d,))
        with pytest.raises(RankDeficient):
            quantum_fisher(point, RLD)

    def test_rank_deficient_constant_family(self):
        """Test that a θ-independent singular family has zero information for every metric."""
        rho = np.diag([1.0, 0.0]).astype(complex)
        point = ModelPoint(theta=np.zeros(1), state=rho, derivatives=(np.zeros((2, 2), complex),))
        for metric in PRESETS:
            assert quantum_fisher(point, metric).scalar == 0.0


class TestLogarithmicDerivatives:
    """Tests for the logarithmic derivative path."""

    @pytest.mark.parametrize("metric", PRESETS, ids=lambda m: m.name)
    def test_independent_path(self, metric):
        point = evaluate(random_model(3, 2, 21), [0.2, -0.4])
        ls = logarithmic_derivatives(point, metric)
        np.testing.assert_allclose(
            fisher_from_logarithmic_derivatives(point, ls),
            quantum_fisher(point, metric).matrix,
            atol=1e-10,
        )

    def test_sld_is_hermitian(self):
        point = evaluate(random_model(3, 1, 4), [0.6])
        (l,) = logarithmic_derivatives(point, SLD)
        assert max_abs(l - dagger(l)) < 1e-12


class TestDisturbance:
    """Tests for measurement-induced disturbance."""

    def test_identity_measurement_disturbs_nothing(self, bloch_half):
        for metric in PRESETS:
            result = disturbance(bloch_half, identity_measurement(2), [0.3], metric)
            assert max_abs(result.delta) < 1e-14

    def test_projective_on_commuting_model(self, binary):
        """Test that a projective measurement extracts everything from a commuting family."""
        point = evaluate(binary, [0.9])
        meas = projective_measurement(2)
        assert outcome_fisher(point, meas).scalar == pytest.approx(1.0, abs=1e-12)
        for metric in PRESETS:
            result = disturbance(binary, meas, [0.9], metric)
            assert result.delta[0, 0].real == pytest.approx(1.0, abs=1e-12)
            assert max_abs(result.average_after) < 1e-14

    def test_post_measurement_points_are_states(self, bloch_half):
        point = evaluate(bloch_half, [1.2])
        for p, post in post_measurement_points(point, random_measurement(2, 3, 2, 5)):
            assert p > 0
            assert np.trace(post.state).real == pytest.approx(1.0, abs=1e-12)
            assert abs(np.trace(post.derivatives[0])) < 1e-12

    def test_infimum_single_parameter(self, bloch_half, royer_quarter):
        result = infimum_disturbance(bloch_half, royer_quarter, [0.5], PRESETS)
        assert not result.trace_proxy
        assert result.metric_name in PRESET_METRICS
        best = min(score for _, score in result.candidates)
        assert np.trace(result.value).real == pytest.approx(best)

    def test_infimum_multiparameter_uses_trace(self):
        model = random_model(2, 2, 13)
        result = infimum_disturbance(model, random_measurement(2, 2, 1, 3), [0.1, 0.2], [SLD, BKM])
        assert result.trace_proxy

    def test_infimum_needs_metrics(self, bloch_half, royer_quarter):
        with pytest.raises(ValueError):
            infimum_disturbance(bloch_half, royer_quarter, [0.5], [])

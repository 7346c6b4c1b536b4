import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nuclab.errors import DomainError, SingularPotentialError
from nuclab.potential import (
    PotentialSpec,
    classify_vacua,
    find_stationary_points,
    v1,
    v1_derivatives,
)
from nuclab.slowroll import (
    M_TILDE_SQ,
    hubble_sq,
    pressure_params,
    slow_roll_check,
)


@pytest.fixture
def default_pair(default_spec):
    return classify_vacua(default_spec, find_stationary_points(default_spec))


class TestHubbleSq:
    def test_zero_potential(self):
        assert hubble_sq(0.0) == 0.0

    def test_unit_potential_oracle(self):
        assert hubble_sq(1.0) == pytest.approx(8.0 * math.pi / 3.0, rel=1e-15)

    def test_back_solved_published_operand(self):
        # 0.5924 is the potential value implied by the published H^2 = 4.962
        assert hubble_sq(0.5924) == pytest.approx(8.0 * math.pi / 3.0 * 0.5924, rel=1e-15)
        assert hubble_sq(0.5924) == pytest.approx(4.962, abs=1e-3)

    def test_rejects_negative_energy(self):
        with pytest.raises(DomainError):
            hubble_sq(-1e-9)

    @given(st.floats(min_value=0.0, max_value=1e6), st.floats(min_value=0.0, max_value=1e3))
    def test_linear(self, v, a):
        assert hubble_sq(a * v) == pytest.approx(a * hubble_sq(v), rel=1e-12, abs=1e-12)


class TestSlowRollCheck:
    def test_passes_at_both_vacua_and_tipping_point(self, default_spec, default_pair):
        for phi in (default_pair.phi_F, default_pair.phi_T, default_spec.phi_star):
            report = slow_roll_check(default_spec, phi)
            assert report.passes
            assert report.ratio < 0.15

    def test_report_fields_consistent(self, default_spec, default_pair):
        report = slow_roll_check(default_spec, default_pair.phi_T)
        assert report.lhs == abs(report.v_pp)
        assert report.rhs == report.h_sq
        assert report.h_sq == pytest.approx(8.0 * math.pi / 3.0 * report.v, rel=1e-15)
        assert report.ratio == pytest.approx(report.lhs / report.rhs, rel=1e-15)

    def test_literal_ratio_identity(self, default_spec, rng):
        # spec invariant: ratio recomputed independently at random points
        for phi in rng.uniform(0.0, 2.0 * math.pi, size=100):
            report = slow_roll_check(default_spec, phi)
            _, d2 = v1_derivatives(default_spec, phi)
            expected = abs(float(d2)) / (8.0 * math.pi / 3.0 * float(v1(default_spec, phi)))
            assert report.ratio == pytest.approx(expected, rel=1e-12)

    def test_v1_only_flag(self):
        spec = PotentialSpec(offset=0.4)
        with_offset = slow_roll_check(spec, 1.0, use_v1_only=False)
        without = slow_roll_check(spec, 1.0, use_v1_only=True)
        assert with_offset.v == pytest.approx(without.v + 0.4, rel=1e-12)
        assert with_offset.ratio < without.ratio

    def test_threshold_is_configurable(self, default_spec, default_pair):
        report = slow_roll_check(default_spec, default_pair.phi_T, pass_threshold=0.01)
        assert not report.passes

    def test_negative_energy_propagates(self):
        spec = PotentialSpec(offset=-10.0)
        with pytest.raises(DomainError):
            slow_roll_check(spec, 0.1, use_v1_only=False)


class TestPressureParams:
    def test_epsilon_vanishes_at_stationary_points(self, default_spec, default_pair):
        for phi in (default_pair.phi_F, default_pair.phi_T):
            params = pressure_params(default_spec, phi)
            assert params.epsilon < 1e-18

    def test_both_small_at_vacua(self, default_spec, default_pair):
        for phi in (default_pair.phi_F, default_pair.phi_T):
            params = pressure_params(default_spec, phi)
            assert abs(params.epsilon) < 1.0
            assert abs(params.eta) < 1.0

    def test_m_tilde_value(self, default_spec):
        params = pressure_params(default_spec, 1.0)
        assert params.m_tilde_sq == pytest.approx(1.0 / (8.0 * math.pi), rel=1e-15)

    def test_eta_cross_module_identity(self, default_spec, rng):
        # eta == lhs * sign(V'') / (8 pi V) ties the two diagnostics together
        for phi in rng.uniform(0.0, 2.0 * math.pi, size=25):
            report = slow_roll_check(default_spec, phi)
            params = pressure_params(default_spec, phi)
            expected = report.lhs * math.copysign(1.0, report.v_pp) / (8.0 * math.pi * report.v)
            assert params.eta == pytest.approx(expected, rel=1e-12)

    def test_epsilon_oracle(self, default_spec):
        phi = 1.234
        d1, _ = v1_derivatives(default_spec, phi)
        value = float(v1(default_spec, phi))
        expected = 0.5 * M_TILDE_SQ * (float(d1) / value) ** 2
        assert pressure_params(default_spec, phi).epsilon == pytest.approx(expected, rel=1e-14)

    def test_singular_potential(self):
        spec = PotentialSpec(amplitude=0.0, m=0.441)
        with pytest.raises(SingularPotentialError):
            pressure_params(spec, spec.phi_star)

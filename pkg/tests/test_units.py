import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nuclab.errors import DomainError
from nuclab.units import (
    PHI_STAR_TIPPING,
    chaotic_phi_star,
    chaotic_scales,
    chaotic_threshold,
    chaotic_trajectory,
    natural_units,
    string_coupling,
)


def test_natural_units_constants():
    u = natural_units()
    assert (u.hbar, u.c, u.G, u.M_p, u.t_p, u.l_p) == (1.0,) * 6
    assert u.m_e == 4.338e-20
    assert u.m_star == 8.676e-20


def test_mass_ratio_is_exactly_two():
    u = natural_units()
    assert u.m_star == 2.0 * u.m_e


def test_planck_normalization_identity():
    u = natural_units()
    assert u.M_p * math.sqrt(u.G) == 1.0


def test_units_identical_across_calls():
    assert natural_units() is natural_units()
    assert natural_units() == natural_units()


class TestChaoticThreshold:
    def test_published_value(self):
        assert chaotic_threshold() == pytest.approx(3.1, abs=0.01)

    def test_arithmetic_oracle(self):
        # sqrt(60 / 2 pi) simplifies to sqrt(30 / pi)
        assert chaotic_threshold() == pytest.approx(math.sqrt(30.0 / math.pi), rel=1e-15)

    def test_square_inverts_definition(self):
        assert chaotic_threshold() ** 2 == pytest.approx(60.0 / (2.0 * math.pi), rel=1e-15)


class TestChaoticPhiStar:
    def test_oracle_at_published_mass(self):
        expected = (3.0 / (16.0 * math.pi)) ** 0.25 / math.sqrt(0.441)
        assert chaotic_phi_star(0.441) == pytest.approx(expected, rel=1e-15)
        # the closure formula does not land on the adopted tipping point
        assert chaotic_phi_star(0.441) != pytest.approx(PHI_STAR_TIPPING, rel=0.5)

    def test_unit_mass(self):
        assert chaotic_phi_star(1.0) == pytest.approx((3.0 / (16.0 * math.pi)) ** 0.25, rel=1e-15)

    def test_quadrupled_mass_halves_value(self):
        m = 0.37
        assert chaotic_phi_star(4.0 * m) == pytest.approx(0.5 * chaotic_phi_star(m), rel=1e-12)

    @given(st.floats(min_value=1e-3, max_value=1e3))
    def test_power_law_invariant(self, m):
        # phi*(m) sqrt(m) is the m-independent prefactor
        assert chaotic_phi_star(m) * math.sqrt(m) == pytest.approx(
            (3.0 / (16.0 * math.pi)) ** 0.25, rel=1e-12
        )

    @pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_bad_mass(self, bad):
        with pytest.raises(DomainError):
            chaotic_phi_star(bad)


class TestChaoticTrajectory:
    def test_starts_at_initial_value(self):
        assert chaotic_trajectory(3.1, 0.441, 0.0) == 3.1

    def test_arithmetic_oracle_one_planck_time(self):
        expected = 3.1 - 0.441 / math.sqrt(12.0 * math.pi)
        assert chaotic_trajectory(3.1, 0.441, 1.0) == pytest.approx(expected, rel=1e-15)

    @given(st.floats(min_value=-100.0, max_value=100.0))
    def test_linear_in_time(self, t):
        phi0, m = 3.1, 0.441
        drop_t = chaotic_trajectory(phi0, m, t) - phi0
        drop_2t = chaotic_trajectory(phi0, m, 2.0 * t) - phi0
        assert drop_2t == pytest.approx(2.0 * drop_t, rel=1e-12, abs=1e-15)

    def test_rejects_nonpositive_mass(self):
        with pytest.raises(DomainError):
            chaotic_trajectory(3.1, 0.0, 1.0)


class TestStringCoupling:
    def test_zero_field(self):
        report = string_coupling(0.0)
        assert report.value == 1.0
        assert not report.weak

    def test_weak_regime(self):
        report = string_coupling(-5.0)
        assert report.value == pytest.approx(math.exp(-5.0), rel=1e-15)
        assert report.value == pytest.approx(6.74e-3, rel=1e-2)
        assert report.weak

    def test_threshold_is_strict(self):
        assert not string_coupling(-1.0).weak
        assert string_coupling(-1.0 - 1e-12).weak

    @given(
        st.floats(min_value=-50.0, max_value=50.0),
        st.floats(min_value=-50.0, max_value=50.0),
    )
    def test_monotone(self, a, b):
        # non-strict under floats: exp collapses sub-resolution differences
        if a < b:
            assert string_coupling(a).value <= string_coupling(b).value

    def test_strictly_monotone_at_separated_points(self):
        values = [string_coupling(phi).value for phi in (-3.0, -1.0, 0.0, 2.0)]
        assert values == sorted(values)
        assert len(set(values)) == len(values)


def test_chaotic_scales_bundle():
    scales = chaotic_scales(0.441)
    assert scales.m == 0.441
    assert scales.phi_0_threshold == chaotic_threshold()
    assert scales.phi_star_formula == chaotic_phi_star(0.441)
    # the adopted value is an independent configuration input
    assert scales.phi_star_used == PHI_STAR_TIPPING
    assert chaotic_scales(0.441, phi_star_used=2.5).phi_star_used == 2.5

"""Kinematics: velocities, light-cone conversions, spin velocity."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import relbilliards as rb
from conftest import any_particle, bradyon_states, finite_floats, nonzero_floats


class TestVelocity:
    def test_rest_particle(self):
        assert rb.velocity(1.0, 0.0) == 0.0

    def test_negative_energy_massless(self):
        # E = -1, P = 1 moves left at light speed
        assert rb.velocity(-1.0, 1.0) == -1.0

    def test_direct_quotient(self):
        assert rb.velocity(2.0, 1.0) == 0.5

    def test_zero_energy_rejected(self):
        with pytest.raises(rb.ZeroEnergyError):
            rb.velocity(0.0, 1.0)


class TestVelocityFromSigma:
    def test_rest(self):
        assert rb.velocity_from_sigma(1.0, 1.0) == 0.0

    def test_massless_right_mover(self):
        assert rb.velocity_from_sigma(2.0, 0.0) == 1.0

    def test_direct_evaluation(self):
        # (1 - 0.75) / (1 + 0.75) = 1/7, cross-checked against velocity(E, P)
        v = rb.velocity_from_sigma(1.0, 0.75)
        assert v == pytest.approx(1 / 7, rel=1e-15)
        E = (1.0 + 0.75 / 1.0) / 2
        P = (1.0 - 0.75 / 1.0) / 2
        assert v == pytest.approx(rb.velocity(E, P), rel=1e-14)

    def test_degenerate(self):
        with pytest.raises(rb.DegenerateKinematicsError):
            rb.velocity_from_sigma(1.0, -1.0)

    @given(any_particle())
    def test_agrees_with_velocity(self, p):
        sr = p.sigma_rho()
        if sr.sigma * sr.sigma + p.mu == 0:
            return  # massless left-mover: outside the formula's domain
        assert rb.velocity_from_sigma(sr.sigma, p.mu) == pytest.approx(
            p.velocity, rel=1e-12
        )

    def test_agreement_sweep_bradyons_and_tachyons(self):
        # 1e4 random particles of both speed classes, 1e-12 relative
        import random

        rng = random.Random(20240811)
        for _ in range(10_000):
            E = rng.choice([-1, 1]) * rng.uniform(0.2, 3.0)
            if rng.random() < 0.5:
                v = rng.uniform(-0.95, 0.95)
            else:
                v = rng.choice([-1, 1]) * rng.uniform(1.05, 4.0)
            P = E * v
            mu = E * E - P * P
            got = rb.velocity_from_sigma(E + P, mu)
            assert abs(got - v) <= 1e-12 * max(1.0, abs(v))


class TestSigmaRhoRoundTrip:
    def test_rest_particle(self):
        p = rb.ParticleState(1.0, 0.0, 1.0, 0.0)
        sr = rb.to_sigma_rho(p)
        assert (sr.sigma, sr.rho) == (1.0, 1.0)

    def test_massless_left_mover(self):
        p = rb.ParticleState(-1.0, 1.0, 0.0, 0.0)
        sr = rb.to_sigma_rho(p)
        assert (sr.sigma, sr.rho) == (0.0, -2.0)

    def test_inverse_linear_map(self):
        assert rb.from_sigma_rho(rb.SigmaRho(3.0, 1.0)) == (2.0, 1.0)

    @given(
        st.fractions(min_value=-8, max_value=8, max_denominator=64),
        st.fractions(min_value=-8, max_value=8, max_denominator=64),
    )
    def test_round_trip_exact_in_rational_mode(self, E, P):
        if E == 0:
            E = Fraction(1)
        p = rb.ParticleState(E, P, E * E - P * P, Fraction(0))
        back = rb.from_sigma_rho(rb.to_sigma_rho(p))
        assert back == (E, P)

    @given(nonzero_floats(0.2, 3.0), finite_floats(-3.0, 3.0))
    def test_round_trip_float(self, E, P):
        p = rb.ParticleState(E, P, E * E - P * P, 0.0)
        e2, p2 = rb.from_sigma_rho(rb.to_sigma_rho(p))
        assert e2 == pytest.approx(E, rel=1e-12)
        assert p2 == pytest.approx(P, rel=1e-12, abs=1e-12)

    def test_sigma_rho_reproduces_mu(self):
        p = rb.ParticleState(2.0, 1.0, 3.0, 0.0)
        assert rb.to_sigma_rho(p).mass_squared == pytest.approx(3.0, rel=1e-12)


class TestSpinVelocity:
    def test_rest(self):
        assert rb.spin_velocity(1.0, 1.0) == 1.0

    def test_sign_from_energy(self):
        assert rb.spin_velocity(1.0, -1.0) == -1.0

    def test_stopped_watch_for_massless(self):
        assert rb.spin_velocity(0.0, -1.0) == 0.0

    def test_zero_energy(self):
        with pytest.raises(rb.ZeroEnergyError):
            rb.spin_velocity(1.0, 0.0)

    @given(bradyon_states())
    def test_squared_relation(self, p):
        import math

        m = math.sqrt(p.mu)
        s = rb.spin_velocity(m, p.E)
        assert s * s == pytest.approx(1 - p.velocity**2, rel=1e-12)


class TestParticleState:
    def test_zero_energy_rejected(self):
        with pytest.raises(rb.ZeroEnergyError):
            rb.ParticleState(0.0, 1.0, -1.0, 0.0)

    def test_inconsistent_mu_rejected(self):
        with pytest.raises(ValueError):
            rb.ParticleState(1.0, 0.0, 0.5, 0.0)

    def test_drift_is_observable_not_corrected(self):
        mu = 1.0 + 1e-14  # inside tolerance
        p = rb.ParticleState(1.0, 0.0, mu, 0.0)
        assert p.mu == mu
        assert p.mass_drift() != 0.0
        assert abs(p.mass_drift()) < 1e-12

    def test_exact_mode_requires_exact_mu(self):
        with pytest.raises(ValueError):
            rb.ParticleState(
                Fraction(1), Fraction(0), Fraction(1, 2), Fraction(0)
            )

    def test_massless_factory_exact_speed(self):
        for E in (0.3, -1.7, 2.0):
            for d in (1, -1):
                p = rb.massless(E, d)
                assert p.velocity == float(d)
                assert p.mu == 0.0

    def test_moved(self):
        p = rb.ParticleState(2.0, 1.0, 3.0, 1.0)
        assert p.moved(2.0).x == pytest.approx(2.0)

"""Event-driven N-particle evolution: scheduling, stepping, reversibility."""

from fractions import Fraction

import pytest

import relbilliards as rb
from conftest import relative_error


def _two_body(x1, v1, mu1, x2, v2, mu2, E1=1.0, E2=1.0):
    p1 = rb.ParticleState(E1, E1 * v1, E1 * E1 * (1 - v1 * v1) if mu1 is None else mu1, x1, 0)
    p2 = rb.ParticleState(E2, E2 * v2, E2 * E2 * (1 - v2 * v2) if mu2 is None else mu2, x2, 1)
    return rb.BilliardState((p1, p2), 0.0)


class TestNextCollisions:
    def test_linear_intersection(self):
        # x = -1 at v = 0.5 meets x = 1 at v = -1 at t = 4/3, x = -1/3
        s = _two_body(-1.0, 0.5, None, 1.0, -1.0, None)
        found = rb.next_collisions(s)
        assert len(found) == 1
        (pair, t), = found
        assert pair == (0, 1)
        assert t == pytest.approx(4 / 3, rel=1e-15)
        new, events = rb.step(s)
        assert events[0].x == pytest.approx(-1 / 3, rel=1e-14)

    def test_equal_velocities_no_event(self):
        s = _two_body(-1.0, 0.5, None, 1.0, 0.5, None)
        assert rb.next_collisions(s) == []

    def test_diverging_no_event(self):
        s = _two_body(-1.0, -0.5, None, 1.0, 0.5, None)
        assert rb.next_collisions(s) == []

    def test_mirror_simultaneity(self):
        params, m0 = rb.mirror_initial(4.0, 1.0, 1.0, -1.0)
        state = rb.billiard_from_mirror(params, m0)
        state, _ = rb.step(state)  # inner-pair swap
        found = rb.next_collisions(state)
        assert [pair for pair, _ in found] == [(0, 1), (2, 3)]
        t0 = found[0][1]
        assert all(t == t0 for _, t in found)

    def test_backward_times_negative(self):
        s = _two_body(-1.0, -0.5, None, 1.0, 0.5, None)  # diverging forward
        found = rb.next_collisions(s, "backward")
        assert len(found) == 1
        assert found[0][1] == pytest.approx(-2.0)


class TestStep:
    def test_worked_example_setup(self):
        """Rest particle at origin hit by a left-moving negative-energy
        massless particle from x = 1: single event, particle 0 stays at
        rest with flipped energy sign.

        Closing speed is 1 over a unit gap, so the event lands at t = 1.
        """
        p1 = rb.ParticleState(1.0, 0.0, 1.0, 0.0, 0)
        p2 = rb.massless(-1.0, -1, x=1.0, label=1)
        assert p2.velocity == -1.0
        s = rb.BilliardState((p1, p2), 0.0)
        new, events = rb.step(s)
        assert len(events) == 1
        event = events[0]
        assert event.t == pytest.approx(1.0)
        assert event.x == pytest.approx(0.0, abs=1e-15)
        assert event.tachyonic is True
        post1, post2 = event.post
        assert post1.E == -1.0 and post1.P == 0.0
        assert post2.E == 1.0 and post2.P == 1.0
        assert new.particles[0].velocity == 0.0

    def test_no_event_raises(self):
        s = _two_body(-1.0, 0.5, None, 1.0, 0.5, None)
        with pytest.raises(rb.NoEventError):
            rb.step(s)

    def test_triple_collision_detected(self):
        ps = (
            rb.ParticleState(1.0, 0.5, 0.75, -1.0, 0),
            rb.ParticleState(1.0, 0.0, 1.0, 0.0, 1),
            rb.ParticleState(1.0, -0.5, 0.75, 1.0, 2),
        )
        s = rb.BilliardState(ps, 0.0)
        with pytest.raises(rb.TripleCollisionError):
            rb.step(s)

    def test_mirror_double_event_conserves_totals(self):
        params, m0 = rb.mirror_initial(4.0, 1.0, 1.0, -1.0)
        state = rb.billiard_from_mirror(params, m0)
        E0, P0 = state.total_energy(), state.total_momentum()
        state, _ = rb.step(state)
        state, events = rb.step(state)
        assert len(events) == 2
        assert state.total_energy() == pytest.approx(E0, rel=1e-12)
        assert state.total_momentum() == pytest.approx(P0, abs=1e-12)

    def test_ordering_reestablished(self):
        params, m0 = rb.mirror_initial(0.75, 1.0, 1.0, -1.0)
        state = rb.billiard_from_mirror(params, m0)
        for _ in range(12):
            state, _ = rb.step(state)
            xs = [float(p.x) for p in state.particles]
            assert all(b - a >= -1e-12 for a, b in zip(xs, xs[1:]))


class TestSimulate:
    def test_max_events_zero(self):
        s = _two_body(-1.0, 0.5, None, 1.0, -1.0, None)
        final, log = rb.simulate(s, max_events=0)
        assert final == s
        assert log == []

    def test_equal_velocity_terminates_quietly(self):
        s = _two_body(-1.0, 0.5, None, 1.0, 0.5, None)
        final, log = rb.simulate(s, max_events=10)
        assert log == []
        assert final == s

    def test_t_limit_advances_free_motion(self):
        s = _two_body(-1.0, 0.5, None, 1.0, 0.5, None)
        final, log = rb.simulate(s, t_limit=4.0)
        assert log == []
        assert final.t == 4.0
        assert final.particles[0].x == pytest.approx(1.0)

    def test_sigma_cycle_in_simulation(self):
        """12 events of the bounded three-collision orbit visit the sigma
        cycle (1, 4, -2) repeatedly."""
        params, m0 = rb.mirror_initial(4.0, 1.0, 1.0, -1.0)
        state = rb.billiard_from_mirror(params, m0)
        _, events = rb.simulate(state, max_events=12)
        assert len(events) == 12
        sigmas = [
            e.post[0].E + e.post[0].P for e in events if e.pair == (0, 1)
        ]
        assert sigmas == pytest.approx([4.0, -2.0, 1.0, 4.0])

    def test_determinism(self):
        params, m0 = rb.mirror_initial(0.75, 1.0, 0.9, -2.0)
        s = rb.billiard_from_mirror(params, m0)
        a = rb.simulate(s, max_events=40)
        b = rb.simulate(s, max_events=40)
        assert a == b

    def test_conservation_along_log(self):
        params, m0 = rb.mirror_initial(2.0, 1.0, -1.0, -1.0)
        state = rb.billiard_from_mirror(params, m0)
        E0, P0 = state.total_energy(), state.total_momentum()
        final, log = rb.simulate(state, max_events=60)
        assert len(log) == 60
        assert final.total_energy() == pytest.approx(E0, rel=1e-10)
        assert final.total_momentum() == pytest.approx(P0, abs=1e-10)
        for p in final.particles:
            assert abs(float(p.mass_drift())) <= 1e-10 * (
                float(p.E) ** 2 + float(p.P) ** 2 + 1
            )

    def test_error_carries_event_index(self):
        ps = (
            rb.ParticleState(1.0, 0.5, 0.75, -1.0, 0),
            rb.ParticleState(1.0, 0.0, 1.0, 0.0, 1),
            rb.ParticleState(1.0, -0.5, 0.75, 1.0, 2),
        )
        s = rb.BilliardState(ps, 0.0)
        with pytest.raises(rb.TripleCollisionError, match="event index 0"):
            rb.simulate(s, max_events=5)

    def test_degenerate_collision_surfaces(self):
        # s = sigma_i + sigma_j = 0 with distinct masses: zero rest mass
        p1 = rb.ParticleState(1.0, 0.0, 1.0, 0.0, 0)  # sigma = 1, rho = 1
        p2 = rb.ParticleState(0.5, -1.5, -2.0, 1.0, 1)  # sigma = -1, rho = 2
        s = rb.BilliardState((p1, p2), 0.0)
        with pytest.raises(rb.DegenerateCollisionError):
            rb.simulate(s, max_events=1)


class TestReversibility:
    def test_mirror_exact_rational(self):
        params, m0 = rb.mirror_initial(
            Fraction(4), Fraction(1), Fraction(1), Fraction(-1), t0=Fraction(0)
        )
        b0 = rb.billiard_from_mirror(params, m0)
        fwd, ev = rb.simulate(b0, "forward", max_events=30)
        assert len(ev) == 30
        back, ev2 = rb.simulate(fwd, "backward", t_limit=Fraction(0))
        assert back == b0
        assert len(ev2) == 30

    def test_generic_rational_short(self):
        ps = (
            rb.ParticleState(Fraction(2), Fraction(1), Fraction(3), Fraction(-2), 0),
            rb.ParticleState(Fraction(-1), Fraction(1), Fraction(0), Fraction(0), 1),
            rb.ParticleState(Fraction(3, 2), Fraction(-1), Fraction(5, 4), Fraction(1), 2),
        )
        s0 = rb.BilliardState(ps, Fraction(0))
        s1, e1 = rb.simulate(s0, "forward", max_events=6)
        assert len(e1) > 0
        s2, e2 = rb.simulate(s1, "backward", t_limit=Fraction(0))
        assert s2 == s0

    def test_float_round_trip(self):
        ps = (
            rb.ParticleState(1.0, 0.5, 0.75, -2.0, 0),
            rb.ParticleState(-1.0, 1.0, 0.0, -0.5, 1),
            rb.ParticleState(2.0, -1.0, 3.0, 1.0, 2),
        )
        s0 = rb.BilliardState(ps, 0.0)
        s1, e1 = rb.simulate(s0, "forward", max_events=8)
        s2, _ = rb.simulate(s1, "backward", t_limit=0.0)
        for p, q in zip(s0.particles, s2.particles):
            assert relative_error(p.x, q.x) < 1e-12 or abs(p.x - q.x) < 1e-12
            assert p.P == pytest.approx(q.P, rel=1e-12, abs=1e-12)
            assert p.E == pytest.approx(q.E, rel=1e-12)

    def test_backward_matches_forward_of_reversed(self):
        """Stepping backward equals momentum-reversing, stepping forward,
        and reversing back (times negated)."""
        params, m0 = rb.mirror_initial(0.75, 1.0, 0.7, -1.5)
        s = rb.billiard_from_mirror(params, m0)
        s, _ = rb.step(s)  # move off the gap-zero start
        # first backward step re-resolves the event we are sitting on
        back, ev_b = rb.step(s, "backward")
        assert all(e.t <= s.t for e in ev_b)
        assert back.t == s.t
        back2, _ = rb.step(back, "backward")
        assert back2.t < s.t


class TestBilliardState:
    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            rb.BilliardState(
                (
                    rb.ParticleState(1.0, 0.0, 1.0, 1.0, 0),
                    rb.ParticleState(1.0, 0.0, 1.0, -1.0, 1),
                ),
                0.0,
            )

    def test_tachyons_accepted(self):
        s = _two_body(-1.0, 2.0, -3.0, 1.0, -2.0, -3.0)
        final, log = rb.simulate(s, max_events=1)
        assert len(log) == 1

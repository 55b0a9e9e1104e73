import math

import numpy as np
import pytest

from dynamokit.frenet import (
    CurveProfile,
    FrenetFrame,
    MetricDegeneracyWarning,
    accumulated_rotation_angle,
    frenet_rhs,
    integrate_frame,
    stretch_factor,
    time_evolution_rhs,
    twist_angle,
)


def helix_frame(kappa: float, tau: float, s: float) -> FrenetFrame:
    """Closed-form helix frame: radius a = kappa/w^2, pitch b = tau/w^2, w^2 = kappa^2 + tau^2."""
    w2 = kappa * kappa + tau * tau
    a, b = kappa / w2, tau / w2
    c = 1.0 / math.sqrt(w2)
    theta = s / c
    t = np.array([-(a / c) * math.sin(theta), (a / c) * math.cos(theta), b / c])
    n = np.array([-math.cos(theta), -math.sin(theta), 0.0])
    bb = np.array([(b / c) * math.sin(theta), -(b / c) * math.cos(theta), a / c])
    return FrenetFrame(t, n, bb)


def frame_distance(f1: FrenetFrame, f2: FrenetFrame) -> float:
    return max(
        float(np.max(np.abs(f1.t - f2.t))),
        float(np.max(np.abs(f1.n - f2.n))),
        float(np.max(np.abs(f1.b - f2.b))),
    )


class TestFrenetFrame:
    def test_canonical_is_valid(self):
        frame = FrenetFrame.canonical()
        assert frame.orthonormality_defect() == 0.0

    def test_rejects_non_orthogonal(self):
        with pytest.raises(ValueError):
            FrenetFrame(np.array([1.0, 0, 0]), np.array([1.0, 0, 0]), np.array([0, 0, 1.0]))

    def test_rejects_left_handed(self):
        with pytest.raises(ValueError):
            FrenetFrame(np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.array([0, 0, -1.0]))

    def test_rejects_non_unit(self):
        with pytest.raises(ValueError):
            FrenetFrame(np.array([2.0, 0, 0]), np.array([0, 1.0, 0]), np.array([0, 0, 1.0]))


class TestArclengthRhs:
    def test_straight_line_is_stationary(self):
        dt, dn, db = frenet_rhs(FrenetFrame.canonical(), 0.0, 0.0)
        assert not np.any(dt) and not np.any(dn) and not np.any(db)

    def test_unit_circle_rhs(self):
        frame = FrenetFrame.canonical()
        dt, dn, db = frenet_rhs(frame, 1.0, 0.0)
        np.testing.assert_array_equal(dt, frame.n)
        np.testing.assert_array_equal(dn, -frame.t)
        assert not np.any(db)

    def test_normal_derivative_mixes_curvature_and_torsion(self):
        frame = FrenetFrame.canonical()
        _, dn, _ = frenet_rhs(frame, 2.0, 3.0)
        np.testing.assert_array_equal(dn, -2.0 * frame.t + 3.0 * frame.b)

    @pytest.mark.parametrize("kappa,tau", [(0.5, 0.0), (1.0, 1.0), (2.0, 3.0)])
    def test_skew_symmetry_is_exact(self, kappa, tau):
        frame = FrenetFrame.canonical()
        dt, dn, _ = frenet_rhs(frame, kappa, tau)
        # d/ds (t . n) expanded with the returned derivatives
        assert float(dt @ frame.n + frame.t @ dn) == 0.0


class TestTimeEvolutionRhs:
    def test_static_when_kappa_prime_and_tau_vanish(self):
        dt, dn, db = time_evolution_rhs(FrenetFrame.canonical(), 1.0, 0.0, 0.0)
        assert not np.any(dt) and not np.any(dn) and not np.any(db)

    def test_torsion_coupling(self):
        frame = FrenetFrame.canonical()
        dt, dn, db = time_evolution_rhs(frame, 1.0, 0.0, 2.0)
        np.testing.assert_array_equal(dt, -2.0 * frame.n)
        np.testing.assert_array_equal(dn, 2.0 * frame.t)
        assert not np.any(db)

    def test_curvature_gradient_coupling(self):
        frame = FrenetFrame.canonical()
        dt, dn, db = time_evolution_rhs(frame, 1.0, 1.0, 0.0)
        np.testing.assert_array_equal(dt, frame.b)
        assert not np.any(dn)
        np.testing.assert_array_equal(db, -frame.t)


class TestIntegrateFrame:
    def test_straight_line_frame_is_constant(self):
        traj = integrate_frame(
            CurveProfile.constant(0.0, 0.0), 0.0, 3.0, 0.01, FrenetFrame.canonical()
        )
        assert frame_distance(traj.final_frame, FrenetFrame.canonical()) == 0.0
        assert traj.max_defect == 0.0
        assert traj.reorthonormalizations == []

    def test_unit_circle_closes_after_full_turn(self):
        start = FrenetFrame.canonical()
        traj = integrate_frame(CurveProfile.constant(1.0, 0.0), 0.0, 2.0 * math.pi, 1e-3, start)
        assert frame_distance(traj.final_frame, start) < 1e-8
        assert traj.samples[-1][0] == 2.0 * math.pi

    def test_helix_matches_closed_form(self):
        kappa, tau, span = 1.0, 1.0, 5.0
        start = helix_frame(kappa, tau, 0.0)
        traj = integrate_frame(CurveProfile.constant(kappa, tau), 0.0, span, 1e-3, start)
        assert frame_distance(traj.final_frame, helix_frame(kappa, tau, span)) < 1e-8

    def test_helix_rotation_angle(self):
        kappa, tau, span = 1.0, 1.0, 5.0
        traj = integrate_frame(
            CurveProfile.constant(kappa, tau), 0.0, span, 1e-3, helix_frame(kappa, tau, 0.0)
        )
        expected = span * math.sqrt(kappa * kappa + tau * tau)
        assert accumulated_rotation_angle(traj) == pytest.approx(expected, abs=1e-7)

    def test_orthonormality_stays_tight_without_events(self):
        traj = integrate_frame(
            CurveProfile.constant(1.0, 1.0), 0.0, 5.0, 1e-3, helix_frame(1.0, 1.0, 0.0)
        )
        assert traj.max_defect < 1e-8
        assert traj.reorthonormalizations == []

    def test_coarse_step_triggers_reorthonormalization_events(self):
        traj = integrate_frame(
            CurveProfile.constant(3.0, 0.0), 0.0, 40.0, 0.5, FrenetFrame.canonical()
        )
        assert len(traj.reorthonormalizations) > 0
        # frames stay valid because drift is projected out once flagged
        assert traj.final_frame.orthonormality_defect() <= 1e-8

    def test_sampled_at_every_step(self):
        traj = integrate_frame(
            CurveProfile.constant(1.0, 0.0), 0.0, 1.0, 0.25, FrenetFrame.canonical()
        )
        assert [s for s, _ in traj.samples] == [0.0, 0.25, 0.5, 0.75, 1.0]

    def test_rejects_bad_step(self):
        with pytest.raises(ValueError):
            integrate_frame(CurveProfile.constant(1.0, 0.0), 0.0, 1.0, 0.0, FrenetFrame.canonical())
        with pytest.raises(ValueError):
            integrate_frame(
                CurveProfile.constant(1.0, 0.0), 0.0, 1.0, -0.1, FrenetFrame.canonical()
            )

    def test_rejects_negative_curvature(self):
        with pytest.raises(ValueError):
            integrate_frame(
                CurveProfile.constant(-1.0, 0.0), 0.0, 1.0, 0.1, FrenetFrame.canonical()
            )


class TestCurveProfile:
    def test_fd_curvature_derivative_default(self):
        profile = CurveProfile(kappa=lambda s: math.sin(s) + 2.0, tau=0.0)
        for s in (0.0, 0.7, 2.0):
            assert profile.kappa_prime_at(s) == pytest.approx(math.cos(s), abs=1e-8)

    def test_constant_profile_has_zero_curvature_derivative(self):
        profile = CurveProfile.constant(2.0, 0.5)
        assert profile.kappa_prime_at(1.3) == 0.0
        assert profile.tau_constant == 0.5

    def test_analytic_derivative_wins_over_fd(self):
        profile = CurveProfile(kappa=lambda s: s * s, tau=0.0, kappa_prime=lambda s: 2.0 * s)
        assert profile.kappa_prime_at(3.0) == 6.0


class TestTwistAngle:
    def test_zero_torsion_returns_reference(self):
        assert twist_angle(0.7, CurveProfile.constant(1.0, 0.0), 5.0) == 0.7

    def test_constant_torsion_is_exact(self):
        assert twist_angle(0.25, CurveProfile.constant(1.0, 1.0), 2.0) == 0.25 - 2.0

    def test_linear_torsion_quadrature(self):
        profile = CurveProfile(kappa=1.0, tau=lambda u: u)
        # integral of u over [0, 1] = 0.5 exactly (Simpson is exact for cubics)
        assert twist_angle(1.0, profile, 1.0) == pytest.approx(0.5, abs=1e-14)

    def test_additivity_on_subintervals(self):
        tau = lambda u: math.sin(u) + 0.5  # noqa: E731
        profile = CurveProfile(kappa=1.0, tau=tau)
        s1, s2 = 0.8, 2.1
        shifted = CurveProfile(kappa=1.0, tau=lambda u: tau(s1 + u))
        total = twist_angle(0.0, profile, s2)
        first = twist_angle(0.0, profile, s1)
        increment = twist_angle(0.0, shifted, s2 - s1)
        assert first + increment == pytest.approx(total, abs=1e-10)


class TestStretchFactor:
    def test_filament_limit(self):
        assert stretch_factor(0.0, 5.0, 0.3) == 1.0

    def test_direct_substitution(self):
        assert stretch_factor(0.1, 1.0, 0.0) == pytest.approx(0.9, abs=1e-15)

    def test_perpendicular_angle(self):
        assert stretch_factor(2.0, 3.0, math.pi / 2.0) == pytest.approx(1.0, abs=1e-14)

    def test_antisymmetry_exact_at_zero(self):
        assert stretch_factor(0.3, 2.0, 0.0) + stretch_factor(0.3, 2.0, math.pi) == 2.0

    def test_antisymmetry_at_random_angles(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            r, kappa = rng.uniform(0.0, 0.99, size=2)
            theta = rng.uniform(-10.0, 10.0)
            total = stretch_factor(r, kappa, theta) + stretch_factor(r, kappa, theta + math.pi)
            assert total == pytest.approx(2.0, abs=1e-13)

    def test_degenerate_metric_warns(self):
        with pytest.warns(MetricDegeneracyWarning):
            value = stretch_factor(2.0, 1.0, 0.0)
        assert value == -1.0

    def test_rejects_negative_radius(self):
        with pytest.raises(ValueError):
            stretch_factor(-0.1, 1.0, 0.0)

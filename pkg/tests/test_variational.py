"""Conjugate identities, shift function, subderivatives, and gradients."""

import math

import numpy as np
import pytest

from bregfar import (MultivaluedGradient, PointSet, SubderivativeEstimate,
                     bregman_distance, clarke_subdifferential_support,
                     dini_subderivative, energy, find_tie,
                     gradient_farthest_distance, left_farthest,
                     neg_restricted_conjugate, p_power, shannon,
                     subdifferential_inverse_check, theta, theta_conjugate,
                     theta_convexity_falsifier, theta_midpoint_scan)

import oracles


def vec(*entries):
    return np.array(entries, dtype=float)


def pset(f, rows):
    return PointSet(np.array(rows, dtype=float), f)


class TestNegRestrictedConjugate:
    def test_singleton_at_origin(self):
        f = energy(2)
        C = pset(f, [[0, 0]])
        for s in (vec(0, 0), vec(1, -3), vec(0.25, 7)):
            assert neg_restricted_conjugate(f, C, s) == 0.0

    def test_energy_two_point(self):
        f = energy(2)
        C = pset(f, [[0, 0], [2, 0]])
        # candidates: f(0) - 0 = 0 and f((2,0)) - 2 = 2 - 2 = 0
        assert neg_restricted_conjugate(f, C, vec(1, 0)) == 0.0

    def test_identity_with_farthest_distance_shannon(self):
        f = shannon(2)
        rng = np.random.default_rng(17)
        C = pset(f, rng.uniform(0.2, 3.0, (6, 2)))
        for _ in range(100):
            s = rng.uniform(-1.5, 1.5, 2)
            lhs = neg_restricted_conjugate(f, C, s)
            y = f.conjugate_gradient(s)
            rhs = left_farthest(f, C, y).value - f.conjugate_value(s)
            assert abs(lhs - rhs) <= 1e-9 * (1 + abs(lhs))


class TestTheta:
    def test_zero_at_origin(self):
        for f, rows in ((energy(2), [[0, 0], [1, -1]]),
                        (shannon(2), [[1, 1], [2, 0.5]]),
                        (p_power(4, 2), [[0.5, 0.5], [-1, 1]])):
            C = pset(f, rows)
            assert theta(f, C, np.zeros(2)) == 0.0

    def test_energy_two_candidates(self):
        f = energy(2)
        C = pset(f, [[0, 0], [1, 0]])
        # candidates: f((1,0)) - f(0) = 0.5 and f((2,0)) - f((1,0)) = 1.5
        assert theta(f, C, vec(1, 0)) == 0.5

    def test_shannon_boundary_candidate(self):
        f = shannon(1)
        C = pset(f, [[1.0]])
        # x + c = 0 sits on the closed domain edge where the 0 ln 0
        # convention applies: f(0) - f(1) = 0 - (-1)
        assert theta(f, C, vec(-1)) == 1.0

    def test_infinite_when_every_shift_leaves_domain(self):
        f = shannon(1)
        C = pset(f, [[1.0]])
        assert theta(f, C, vec(-2)) == math.inf


class TestThetaConjugate:
    def test_singleton_is_a_bregman_distance(self):
        f = shannon(2)
        c = vec(1.5, 0.5)
        C = pset(f, [c])
        rng = np.random.default_rng(3)
        for _ in range(20):
            s = rng.uniform(-1.0, 1.0, 2)
            lhs = theta_conjugate(f, C, s)
            rhs = bregman_distance(f, c, f.conjugate_gradient(s))
            assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    def test_energy_two_point_hand_value(self):
        f = energy(2)
        C = pset(f, [[0, 0], [2, 0]])
        s = vec(1, 0)
        assert theta_conjugate(f, C, s) == pytest.approx(0.5)
        # the dual query grad f*(s) = s is the bisector point: both
        # distances equal 0.5
        assert left_farthest(f, C, s).value == pytest.approx(0.5)

    def test_identity_sweep_shannon_and_ppower(self):
        rng = np.random.default_rng(29)
        for f in (shannon(2), p_power(4, 2)):
            if f.kind == "shannon":
                pts = rng.uniform(0.2, 3.0, (5, 2))
            else:
                pts = rng.uniform(0.1, 2.0, (5, 2)) * rng.choice(
                    [-1.0, 1.0], (5, 2))
            C = pset(f, pts)
            for _ in range(100):
                s = rng.uniform(-1.5, 1.5, 2)
                lhs = theta_conjugate(f, C, s)
                rhs = left_farthest(f, C, f.conjugate_gradient(s)).value
                assert abs(lhs - rhs) <= 1e-9 * (1 + abs(lhs))

    def test_midpoint_convexity_in_the_dual_variable(self):
        f = shannon(2)
        rng = np.random.default_rng(41)
        C = pset(f, rng.uniform(0.2, 3.0, (6, 2)))
        for _ in range(200):
            s1 = rng.uniform(-1.0, 1.0, 2)
            s2 = rng.uniform(-1.0, 1.0, 2)
            mid = theta_conjugate(f, C, 0.5 * (s1 + s2))
            avg = 0.5 * (theta_conjugate(f, C, s1)
                         + theta_conjugate(f, C, s2))
            assert mid <= avg + 1e-10


class TestDiniSubderivative:
    def test_energy_singleton_formula(self):
        f = energy(2)
        C = pset(f, [[0, 0], [1, 0]])
        y, w = vec(3, 0), vec(0.3, -0.7)
        est = dini_subderivative(f, C, y, w)
        assert isinstance(est, SubderivativeEstimate)
        assert est.formula_value == pytest.approx(np.dot(y - vec(0, 0), w))
        assert abs(est.dini_value - est.formula_value) <= 1e-4 * (
            1 + abs(est.formula_value))

    def test_energy_tie_point_both_signs(self):
        f = energy(2)
        C = pset(f, [[0, 0], [2, 0]])
        y = vec(1, 1)
        for w in (vec(1, 0), vec(-1, 0)):
            est = dini_subderivative(f, C, y, w)
            assert est.formula_value == pytest.approx(1.0)
            assert abs(est.dini_value - 1.0) <= 1e-4 * 2

    def test_schedule_is_decreasing(self):
        f = energy(2)
        C = pset(f, [[0, 0], [1, 1]])
        est = dini_subderivative(f, C, vec(2, 2), vec(1, 0))
        sched = est.step_schedule
        assert all(a > b > 0 for a, b in zip(sched, sched[1:]))

    def test_schedule_shrinks_near_boundary(self):
        f = shannon(2)
        C = pset(f, [[1, 1], [2, 2]])
        y, w = vec(5e-4, 1.0), vec(-1.0, 0.0)
        with pytest.warns(UserWarning, match="shrunk"):
            est = dini_subderivative(f, C, y, w)
        assert max(est.step_schedule) == pytest.approx(1e-4)
        assert abs(est.dini_value - est.formula_value) <= 1e-4 * (
            1 + abs(est.formula_value))

    def test_band_contract_random_shannon(self):
        f = shannon(2)
        rng = np.random.default_rng(59)
        C = pset(f, rng.uniform(0.3, 3.0, (6, 2)))
        for _ in range(25):
            y = rng.uniform(0.5, 2.5, 2)
            w = rng.normal(size=2)
            w /= np.linalg.norm(w)
            est = dini_subderivative(f, C, y, w)
            assert abs(est.dini_value - est.formula_value) <= 1e-4 * (
                1 + abs(est.formula_value))


class TestClarkeSupport:
    def test_singleton_is_linear(self):
        f = p_power(4, 2)
        C = pset(f, [[0.5, 0.5]])
        y = vec(1.2, -0.8)
        g = f.hessian_diagonal(y) * (y - vec(0.5, 0.5))
        for w in (vec(1, 0), vec(0, 1), vec(-2, 3)):
            assert clarke_subdifferential_support(f, C, y, w) == pytest.approx(
                np.dot(g, w))

    def test_tie_point_support(self):
        f = energy(2)
        C = pset(f, [[0, 0], [2, 0]])
        assert clarke_subdifferential_support(f, C, vec(1, 1),
                                              vec(0, 1)) == pytest.approx(1.0)

    def test_equals_dini_formula_everywhere(self):
        f = shannon(2)
        rng = np.random.default_rng(71)
        C = pset(f, rng.uniform(0.3, 3.0, (5, 2)))
        points = [rng.uniform(0.5, 2.5, 2) for _ in range(10)]
        points.append(np.asarray(
            find_tie(f, C, C.points[0],
                     C.points[left_farthest(f, C, C.points[0]).witness]
                     ).location))
        for y in points:
            for _ in range(4):
                w = rng.normal(size=2)
                est = dini_subderivative(f, C, y, w)
                support = clarke_subdifferential_support(f, C, y, w)
                assert support == pytest.approx(est.formula_value, rel=1e-12)
                assert abs(est.dini_value - support) <= 1e-4 * (1 + abs(support))


class TestGradient:
    def test_energy_classical_formula(self):
        f = energy(2)
        C = pset(f, [[0, 0], [1, 0], [0, 1]])
        y = vec(2, 0)
        res = gradient_farthest_distance(f, C, y)
        np.testing.assert_allclose(res.gradient, y - vec(0, 1))
        assert res.rel_err <= 1e-5

    def test_shannon_hand_example(self):
        f = shannon(2)
        C = pset(f, [[1, 1], [2, 3]])
        y = vec(1.5, 1.5)
        dists = [oracles.kl_distance(c, y) for c in C.points]
        p = C.points[int(np.argmax(dists))]
        res = gradient_farthest_distance(f, C, y)
        np.testing.assert_allclose(res.gradient, (y - p) / 1.5, rtol=1e-12)
        assert res.rel_err <= 1e-5
        np.testing.assert_allclose(res.fd_gradient, res.gradient, rtol=1e-4)

    def test_tie_point_signals_multivalued(self):
        f = energy(2)
        C = pset(f, [[0, 0], [2, 0]])
        tie = find_tie(f, C, vec(-1, 0.5), vec(3, 0.5))
        with pytest.raises(MultivaluedGradient, match="not unique"):
            gradient_farthest_distance(f, C, np.asarray(tie.location))

    def test_cross_check_random_ppower(self):
        f = p_power(4, 2)
        rng = np.random.default_rng(83)
        pts = rng.uniform(0.2, 1.5, (6, 2)) * rng.choice([-1.0, 1.0], (6, 2))
        C = pset(f, pts)
        checked = 0
        for _ in range(40):
            y = rng.uniform(0.2, 1.5, 2) * rng.choice([-1.0, 1.0], 2)
            result = left_farthest(f, C, y)
            if not result.is_singleton or not np.all(
                    f.hessian_diagonal(y) > 0):
                continue
            res = gradient_farthest_distance(f, C, y)
            assert res.rel_err <= 1e-5
            checked += 1
        assert checked >= 20


class TestSubdifferentialInverse:
    def test_singleton_both_true(self):
        f = shannon(2)
        C = pset(f, [[1.5, 0.5]])
        rng = np.random.default_rng(7)
        for _ in range(25):
            s = rng.uniform(-1.0, 1.0, 2)
            assert subdifferential_inverse_check(f, C, 0, s) == (True, True)

    def test_energy_dual_tie_both_members(self):
        f = energy(2)
        C = pset(f, [[0, 0], [2, 0]])
        s = vec(1, 0)
        for c in (0, vec(0, 0), 1, vec(2, 0)):
            assert subdifferential_inverse_check(f, C, c, s) == (True, True)

    def test_predicates_agree_on_random_sweep(self):
        f = shannon(2)
        rng = np.random.default_rng(97)
        agree = 0
        for _ in range(1000):
            C = pset(f, rng.uniform(0.2, 3.0, (rng.integers(2, 7), 2)))
            idx = int(rng.integers(0, C.size))
            s = rng.uniform(-1.5, 1.5, 2)
            left, right = subdifferential_inverse_check(f, C, idx, s)
            agree += left == right
        assert agree == 1000

    def test_non_member_rejected(self):
        f = energy(2)
        C = pset(f, [[0, 0], [2, 0]])
        with pytest.raises(ValueError, match="not a member"):
            subdifferential_inverse_check(f, C, vec(9, 9), vec(1, 0))


class TestThetaConvexity:
    def test_two_point_set_violation_found(self):
        f = energy(2)
        C = pset(f, [[0, 0], [2, 0]])
        search = theta_convexity_falsifier(f, C, seed=11)
        assert search.found and not search.inconclusive
        assert search.gap > 1e-10
        mid = 0.5 * (search.x + search.y)
        lhs = theta(f, C, mid)
        rhs = 0.5 * (theta(f, C, search.x) + theta(f, C, search.y))
        assert lhs - rhs == pytest.approx(search.gap)

    def test_shannon_pair_violation_found(self):
        f = shannon(2)
        C = pset(f, [[0.5, 1.0], [2.5, 1.0]])
        search = theta_convexity_falsifier(f, C, seed=13)
        assert search.found
        assert search.gap > 1e-10

    def test_singleton_scan_stays_convex(self):
        f = shannon(2)
        C = pset(f, [[1.0, 2.0]])
        worst, _, used = theta_midpoint_scan(f, C, seed=19, trials=2000)
        assert used > 0
        assert worst <= 1e-10

    def test_singleton_falsifier_reports_no_violation(self):
        f = energy(2)
        C = pset(f, [[0.5, -0.5]])
        search = theta_convexity_falsifier(f, C, seed=23, trials=500)
        assert not search.found
        assert search.inconclusive
        assert search.gap <= 1e-10

"""Catalog members: values, gradients, Hessians, conjugates, domains."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bregfar import (CustomScalar, DimensionMismatch, DomainViolation,
                     HessianUndefined, energy, from_config, p_power,
                     separable_custom, shannon)

import oracles


def vec(*entries):
    return np.array(entries, dtype=float)


class TestValues:
    def test_energy_value(self):
        assert energy(2).value(vec(3, 4)) == 12.5

    def test_shannon_value(self):
        f = shannon(2)
        assert f.value(vec(1, 1)) == pytest.approx(-2.0, abs=1e-15)
        assert f.value(vec(1, 1)) == pytest.approx(
            oracles.shannon_value(vec(1, 1)), abs=1e-15)

    def test_shannon_outside_domain_is_infinite(self):
        assert shannon(2).value(vec(-1, 1)) == math.inf

    def test_shannon_boundary_uses_exact_zero_branch(self):
        assert shannon(1).value(vec(0)) == 0.0

    def test_ppower_value_matches_reference(self):
        f = p_power(1.5, 2)
        x = vec(0.7, -1.3)
        assert f.value(x) == pytest.approx(oracles.ppower_value(1.5, x),
                                           rel=1e-15)

    def test_value_batch_allows_infinite_rows(self):
        f = shannon(2)
        rows = np.array([[1.0, 1.0], [-1.0, 1.0]])
        vals = f.value_batch(rows)
        assert vals[0] == pytest.approx(-2.0)
        assert vals[1] == math.inf


class TestGradients:
    def test_energy_gradient_is_identity(self):
        np.testing.assert_allclose(energy(2).gradient(vec(3, 4)), vec(3, 4))

    def test_shannon_gradient_is_log(self):
        np.testing.assert_allclose(shannon(2).gradient(vec(1, math.e)),
                                   vec(0, 1), atol=1e-15)

    def test_ppower_gradient(self):
        np.testing.assert_allclose(p_power(3, 1).gradient(vec(2)), vec(4))

    def test_gradient_outside_domain_raises(self):
        with pytest.raises(DomainViolation, match="coordinate 0"):
            shannon(2).gradient(vec(-1, 1))

    def test_gradient_batch_rejects_outside_row(self):
        f = shannon(2)
        with pytest.raises(DomainViolation):
            f.gradient_batch(np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            energy(2).value(vec(1, 2, 3))


class TestHessians:
    def test_energy_hessian_identity(self):
        np.testing.assert_allclose(energy(2).hessian(vec(0.3, -0.7)),
                                   np.eye(2))

    def test_shannon_hessian(self):
        np.testing.assert_allclose(shannon(2).hessian(vec(2, 4)),
                                   np.diag([0.5, 0.25]))

    def test_ppower_hessian(self):
        np.testing.assert_allclose(p_power(4, 2).hessian(vec(1, 2)),
                                   np.diag([3.0, 12.0]))

    def test_ppower_below_two_rejects_zero_coordinate(self):
        with pytest.raises(HessianUndefined):
            p_power(1.5, 2).hessian(vec(0.0, 1.0))

    def test_ppower_two_gives_one_at_zero(self):
        np.testing.assert_allclose(p_power(2, 2).hessian_diagonal(vec(0, 1)),
                                   vec(1, 1))

    def test_ppower_above_two_gives_zero_at_zero(self):
        np.testing.assert_allclose(p_power(4, 2).hessian_diagonal(vec(0, 1)),
                                   vec(0, 3))


class TestConjugates:
    def test_energy_self_conjugate(self):
        assert energy(2).conjugate_value(vec(3, 4)) == 12.5

    def test_shannon_conjugate_is_sum_exp(self):
        assert shannon(2).conjugate_value(vec(0, 0)) == pytest.approx(2.0)

    def test_ppower_two_matches_energy(self):
        assert p_power(2, 1).conjugate_value(vec(5)) == pytest.approx(12.5)

    def test_energy_conjugate_gradient(self):
        np.testing.assert_allclose(energy(2).conjugate_gradient(vec(1, -2)),
                                   vec(1, -2))

    def test_shannon_conjugate_gradient_is_exp(self):
        np.testing.assert_allclose(shannon(2).conjugate_gradient(vec(0, 1)),
                                   vec(1, math.e))

    def test_conjugate_of_conjugate_is_original(self):
        f = shannon(3)
        assert f.conjugate().conjugate() is f

    @pytest.mark.parametrize("f", [energy(2), shannon(2), p_power(1.5, 2),
                                   p_power(2, 2), p_power(4, 2)])
    def test_round_trip_100_random(self, f):
        rng = np.random.default_rng(42)
        for _ in range(100):
            x = {
                "shannon": rng.uniform(0.1, 3.0, 2),
            }.get(f.kind, rng.uniform(0.1, 2.0, 2) *
                  rng.choice([-1.0, 1.0], 2))
            s = f.gradient(x)
            np.testing.assert_allclose(f.gradient(f.conjugate_gradient(s)),
                                       s, rtol=1e-9, atol=1e-9)

    @pytest.mark.parametrize("f", [energy(2), shannon(2), p_power(1.5, 2),
                                   p_power(4, 2)])
    def test_fenchel_young_equality(self, f):
        rng = np.random.default_rng(3)
        for _ in range(50):
            if f.kind == "shannon":
                x = rng.uniform(0.2, 3.0, 2)
            else:
                x = rng.uniform(0.1, 2.0, 2) * rng.choice([-1.0, 1.0], 2)
            s = f.gradient(x)
            residual = f.value(x) + f.conjugate_value(s) - float(np.dot(s, x))
            assert abs(residual) <= 1e-9 * (1.0 + abs(f.value(x)))


class TestCustomMember:
    def make_entropy_like(self):
        # same formulas as the entropy member but with no closed-form
        # inverse wired in, to force the safeguarded numeric route
        def val(t):
            t = np.asarray(t, dtype=float)
            safe = np.where(t > 0, t, 1.0)
            return np.where(t > 0, safe * np.log(safe) - safe,
                            np.where(t == 0.0, 0.0, np.inf))

        phi = CustomScalar(value_fn=val,
                           deriv_fn=lambda t: np.log(t),
                           second_deriv_fn=lambda t: 1.0 / t,
                           lower=0.0, upper=math.inf, seed=1.0,
                           name="entropy_like")
        return separable_custom(phi, 2)

    def test_numeric_inverse_matches_exp(self):
        f = self.make_entropy_like()
        s = vec(0.3, -1.1)
        np.testing.assert_allclose(f.conjugate_gradient(s), np.exp(s),
                                   rtol=1e-9)

    def test_numeric_conjugate_value_matches_closed_form(self):
        f = self.make_entropy_like()
        s = vec(0.5, -0.2)
        assert f.conjugate_value(s) == pytest.approx(float(np.sum(np.exp(s))),
                                                     rel=1e-9)

    def test_round_trip_through_numeric_inverse(self):
        f = self.make_entropy_like()
        rng = np.random.default_rng(11)
        for _ in range(25):
            x = rng.uniform(0.1, 4.0, 2)
            np.testing.assert_allclose(f.conjugate_gradient(f.gradient(x)),
                                       x, rtol=1e-9)


class TestConfig:
    def test_energy_config(self):
        f = from_config({"kind": "energy", "dimension": 3})
        assert f.dimension == 3 and f.describe()["kind"] == "energy"

    def test_ppower_config_needs_p(self):
        with pytest.raises(ValueError, match="p"):
            from_config({"kind": "ppower", "dimension": 2})

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            from_config({"kind": "logdet", "dimension": 2})

    def test_bad_dimension_rejected(self):
        with pytest.raises(ValueError):
            from_config({"kind": "energy", "dimension": 0})
        with pytest.raises(ValueError):
            from_config({"kind": "energy", "dimension": True})

    def test_p_at_most_one_rejected(self):
        with pytest.raises(ValueError):
            p_power(1.0, 2)
        with pytest.raises(ValueError):
            p_power(0.5, 2)

    def test_describe_round_trips_through_config(self):
        f = p_power(1.5, 4)
        again = from_config(f.describe())
        assert again.describe() == f.describe()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(min_value=-50, max_value=50), min_size=1,
                max_size=4))
def test_energy_value_agrees_with_reference_everywhere(entries):
    x = np.array(entries)
    f = energy(len(entries))
    assert f.value(x) == pytest.approx(oracles.energy_value(x), rel=1e-12)
    np.testing.assert_allclose(f.gradient(x), x)

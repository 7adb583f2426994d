"""Catalog of separable Legendre-type convex functions on R^J.

A catalog member is a coordinatewise sum ``f(x) = sum_j phi(x_j)`` of a
one-dimensional building block (:mod:`bregfar.scalar`).  Each member is
essentially smooth and essentially strictly convex, so its gradient is a
bijection between the interior ``U`` of its domain and the interior of the
conjugate's domain, with inverse equal to the conjugate's gradient.

Built-in members:

===========  =======================  ==================  =================
kind         f(x)                     U                   conjugate
===========  =======================  ==================  =================
``energy``   ``||x||^2 / 2``          all of R^J          itself
``shannon``  ``sum x_j ln x_j - x_j`` positive orthant    ``sum exp(s_j)``
``ppower``   ``sum |x_j|^p / p``      all of R^J          q-power, 1/p+1/q=1
===========  =======================  ==================  =================

Custom separable members are a programmatic extension point via
:class:`bregfar.scalar.CustomScalar`; they are not expressible in
configuration files.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, DomainViolation
from .scalar import (EntropyScalar, PowerScalar, QuadraticScalar,
                     ScalarConvex)

__all__ = [
    "DomainDescriptor", "LegendreFunction",
    "energy", "shannon", "p_power", "separable_custom", "from_config",
]


class DomainDescriptor:
    """Product of open intervals describing ``U``, the interior of ``dom f``.

    Membership is strict inequality on every coordinate; there is no epsilon.
    Callers that need margins (grids, finite-difference steps) apply their
    own.
    """

    def __init__(self, lower, upper):
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        if self.lower.shape != self.upper.shape or self.lower.ndim != 1:
            raise ValueError("domain bounds must be 1-d arrays of equal length")
        if np.any(self.lower >= self.upper):
            raise ValueError("domain intervals must be nonempty and open")
        self.lower.setflags(write=False)
        self.upper.setflags(write=False)

    @property
    def dimension(self):
        return self.lower.shape[0]

    def contains(self, x):
        """True iff every coordinate lies strictly inside its interval."""
        x = np.asarray(x, dtype=float)
        return bool(np.all(x > self.lower) and np.all(x < self.upper))

    def contains_rows(self, points):
        """Row mask of strict membership for a (n, J) array."""
        points = np.asarray(points, dtype=float)
        return np.all((points > self.lower) & (points < self.upper), axis=-1)

    def check(self, x, label="point"):
        """Raise :class:`DomainViolation` naming the first bad coordinate."""
        x = np.asarray(x, dtype=float)
        bad = (x <= self.lower) | (x >= self.upper)
        if np.any(bad):
            j = int(np.argmax(bad))
            raise DomainViolation(
                f"coordinate {j} of {label} (= {float(x[j])!r}) is outside "
                f"the open interval ({self.lower[j]:g}, {self.upper[j]:g})",
                coordinate=j, value=float(x[j]))

    def boundary_gap(self, x):
        """Per-coordinate distance to the nearest bound (inf if unbounded)."""
        x = np.asarray(x, dtype=float)
        lo = np.where(np.isfinite(self.lower), x - self.lower, math.inf)
        hi = np.where(np.isfinite(self.upper), self.upper - x, math.inf)
        return np.minimum(lo, hi)

    def __repr__(self):
        pairs = ", ".join(f"({lo:g}, {hi:g})"
                          for lo, hi in zip(self.lower, self.upper))
        return f"DomainDescriptor[{pairs}]"


class LegendreFunction:
    """A separable Legendre-type convex function together with its oracles.

    Parameters
    ----------
    phi : ScalarConvex
        The one-dimensional building block applied to every coordinate.
    dimension : int
        Number of coordinates J (>= 1).

    Notes
    -----
    ``value`` is extended-real valued: it returns ``+inf`` outside ``dom f``.
    All other operations require their argument strictly inside the relevant
    open domain and raise :class:`DomainViolation` otherwise, because their
    outputs are vectors or matrices.
    """

    def __init__(self, phi: ScalarConvex, dimension: int):
        dimension = int(dimension)
        if dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {dimension}")
        self.phi = phi
        self.dimension = dimension
        self.kind = phi.name
        self.domain = DomainDescriptor(
            np.full(dimension, phi.lower), np.full(dimension, phi.upper))
        self._conjugate = None

    # -- single-point operations ------------------------------------------

    def value(self, x):
        """f(x) as an extended real; ``+inf`` when x is outside dom f."""
        x = self._check_vector(x)
        return float(np.sum(self.phi.value(x)))

    def gradient(self, x):
        """Gradient of f at x in U."""
        x = self._check_vector(x)
        self.domain.check(x, label="gradient argument")
        return np.asarray(self.phi.deriv(x), dtype=float)

    def hessian(self, x):
        """Hessian of f at x in U, a (J, J) diagonal matrix."""
        return np.diag(self.hessian_diagonal(x))

    def hessian_diagonal(self, x):
        """Diagonal of the Hessian; cheaper than :meth:`hessian`."""
        x = self._check_vector(x)
        self.domain.check(x, label="hessian argument")
        return np.asarray(self.phi.second_deriv(x), dtype=float)

    def conjugate_value(self, s):
        """f*(s); finite for every s when the member is supercoercive."""
        s = self._check_vector(s)
        return float(np.sum(self.phi.conjugate_value(s)))

    def conjugate_gradient(self, s):
        """The inverse gradient map: the unique x in U with grad f(x) = s."""
        s = self._check_vector(s)
        return np.asarray(self.phi.deriv_inverse(s), dtype=float)

    def conjugate(self):
        """The conjugate function f* as a catalog member (cached)."""
        if self._conjugate is None:
            self._conjugate = LegendreFunction(self.phi.conjugate(),
                                               self.dimension)
            self._conjugate._conjugate = self
        return self._conjugate

    # -- batched internals --------------------------------------------------

    def value_batch(self, points):
        """Row values of f for a (..., J) array; ``+inf`` rows allowed."""
        points = np.asarray(points, dtype=float)
        return np.sum(self.phi.value(points), axis=-1)

    def gradient_batch(self, points):
        """Row gradients for a (..., J) array; every row must lie in U."""
        points = np.asarray(points, dtype=float)
        inside = self.domain.contains_rows(points)
        if not np.all(inside):
            flat = points.reshape(-1, self.dimension)
            row = int(np.argmax(~inside.ravel()))
            self.domain.check(flat[row], label=f"batch row {row}")
        return np.asarray(self.phi.deriv(points), dtype=float)

    def conjugate_gradient_batch(self, duals):
        """Row inverse gradients for a (..., J) array."""
        duals = np.asarray(duals, dtype=float)
        return np.asarray(self.phi.deriv_inverse(duals), dtype=float)

    # -- plumbing -----------------------------------------------------------

    def _check_vector(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise DimensionMismatch(
                f"expected shape ({self.dimension},), got {x.shape}")
        return x

    def describe(self):
        """Configuration-style description of this member."""
        out = {"kind": _config_kind(self.phi), "dimension": self.dimension}
        if isinstance(self.phi, PowerScalar):
            out["p"] = self.phi.p
        return out

    def __repr__(self):
        return f"LegendreFunction(kind={self.kind!r}, dimension={self.dimension})"


def _config_kind(phi):
    if isinstance(phi, QuadraticScalar):
        return "energy"
    if isinstance(phi, EntropyScalar):
        return "shannon"
    if isinstance(phi, PowerScalar):
        return "ppower"
    return phi.name


def energy(dimension):
    """``||x||^2 / 2`` on all of R^J; self-conjugate, identity gradient."""
    return LegendreFunction(QuadraticScalar(), dimension)


def shannon(dimension):
    """Negative entropy ``sum x_j ln x_j - x_j`` on the nonnegative orthant."""
    return LegendreFunction(EntropyScalar(), dimension)


def p_power(p, dimension):
    """``sum |x_j|^p / p`` with p > 1; conjugate is the q-power."""
    return LegendreFunction(PowerScalar(p), dimension)


def separable_custom(phi, dimension):
    """Coordinatewise sum of a user-supplied one-dimensional member."""
    if not isinstance(phi, ScalarConvex):
        raise TypeError("phi must be a ScalarConvex (e.g. CustomScalar)")
    return LegendreFunction(phi, dimension)


def from_config(spec):
    """Build a catalog member from a configuration mapping.

    Expected keys: ``kind`` in {"energy", "shannon", "ppower"},
    ``dimension`` a positive integer, and ``p`` (> 1) for "ppower" only.
    """
    if not isinstance(spec, dict):
        raise ValueError(f"function spec must be a mapping, got {type(spec).__name__}")
    try:
        kind = spec["kind"]
        dimension = spec["dimension"]
    except KeyError as exc:
        raise ValueError(f"function spec is missing key {exc.args[0]!r}") from None
    if not isinstance(dimension, int) or isinstance(dimension, bool) or dimension < 1:
        raise ValueError(f"dimension must be a positive integer, got {dimension!r}")
    if kind == "energy":
        return energy(dimension)
    if kind == "shannon":
        return shannon(dimension)
    if kind == "ppower":
        if "p" not in spec:
            raise ValueError('kind "ppower" requires key "p"')
        return p_power(float(spec["p"]), dimension)
    raise ValueError(f"unknown function kind {kind!r} "
                     '(expected "energy", "shannon", or "ppower")')

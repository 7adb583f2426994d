"""One-dimensional convex building blocks.

Every member is a strictly convex, essentially smooth function ``phi`` of a
real variable, finite on an interval and ``+inf`` outside, with a continuous
strictly increasing derivative on the open interior.  Coordinatewise sums of
these members form the separable catalog in :mod:`bregfar.legendre`.

All evaluation methods are numpy-elementwise: they accept scalars or arrays
and return arrays of the same shape.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainViolation, HessianUndefined, NonConvergence

_INVERSE_TOL_SCALE = 1e-12
_INVERSE_MAX_ITER = 200


def invert_increasing(fn, target, lower, upper, seed, d_fn=None):
    """Solve ``fn(t) = target`` for a continuous strictly increasing ``fn``
    on the open interval ``(lower, upper)``.

    Bracket expansion from the interior ``seed``, then bisection with Newton
    acceleration when ``d_fn`` is available.  Terminates at
    ``|fn(t) - target| <= 1e-12 * (1 + |target|)``; raises
    :class:`NonConvergence` after the iteration cap.
    """
    tol = _INVERSE_TOL_SCALE * (1.0 + abs(target))
    t = min(max(seed, lower), upper)
    if not lower < t < upper:
        t = _interior_point(lower, upper)

    def residual(u):
        return float(fn(u)) - target

    r = residual(t)
    if abs(r) <= tol:
        return t

    # Expand toward the side where the target lies.  Against an infinite
    # bound the step doubles; against a finite bound the gap halves.
    lo, hi = t, t
    r_lo = r_hi = r
    step = 1.0
    for _ in range(_INVERSE_MAX_ITER):
        if r_lo <= 0.0 <= r_hi:
            break
        if r > 0.0:  # need smaller t
            hi, r_hi = t, r
            t = t - step if math.isinf(lower) else 0.5 * (t + lower)
            step *= 2.0
        else:  # need larger t
            lo, r_lo = t, r
            t = t + step if math.isinf(upper) else 0.5 * (t + upper)
            step *= 2.0
        r = residual(t)
        if abs(r) <= tol:
            return t
        if r > 0.0:
            hi, r_hi = t, r
        else:
            lo, r_lo = t, r
    else:
        raise NonConvergence(
            f"no bracket for target {target!r} on ({lower}, {upper})")

    # Safeguarded solve: Newton when it stays inside the bracket, bisection
    # otherwise.  The bracket invariant fn(lo) <= target <= fn(hi) holds.
    for _ in range(_INVERSE_MAX_ITER):
        t = None
        if d_fn is not None:
            anchor = lo if abs(r_lo) <= abs(r_hi) else hi
            r_anchor = r_lo if anchor == lo else r_hi
            try:
                slope = float(d_fn(anchor))
            except HessianUndefined:
                slope = 0.0
            if slope > 0.0 and math.isfinite(slope):
                cand = anchor - r_anchor / slope
                if lo < cand < hi:
                    t = cand
        if t is None:
            t = 0.5 * (lo + hi)
        r = residual(t)
        if abs(r) <= tol:
            return t
        if r > 0.0:
            hi, r_hi = t, r
        else:
            lo, r_lo = t, r
        if lo == hi:
            return lo
    raise NonConvergence(
        f"derivative inversion did not reach tolerance {tol!r} "
        f"for target {target!r}")


def _interior_point(lower, upper):
    if math.isinf(lower) and math.isinf(upper):
        return 0.0
    if math.isinf(lower):
        return upper - 1.0
    if math.isinf(upper):
        return lower + 1.0
    return 0.5 * (lower + upper)


class ScalarConvex:
    """Base class; subclasses override the closed forms they have.

    ``lower``/``upper`` bound the open interval where ``deriv`` is defined.
    ``value`` must be finite wherever the function is (possibly including a
    closed boundary) and ``+inf`` elsewhere.
    """

    name = "custom"
    lower = -math.inf
    upper = math.inf

    def value(self, t):
        raise NotImplementedError

    def deriv(self, t):
        raise NotImplementedError

    def second_deriv(self, t):
        raise HessianUndefined(f"{self.name}: no second derivative oracle")

    def interior_seed(self):
        return _interior_point(self.lower, self.upper)

    def deriv_inverse(self, s):
        """Inverse of ``deriv``; numeric fallback, elementwise."""
        s = np.asarray(s, dtype=float)
        flat = [
            invert_increasing(self.deriv, float(si), self.lower, self.upper,
                              self.interior_seed(), d_fn=self._second_or_none())
            for si in s.ravel()
        ]
        return np.asarray(flat, dtype=float).reshape(s.shape)

    def _second_or_none(self):
        try:
            self.second_deriv(self.interior_seed())
        except HessianUndefined:
            return None
        return self.second_deriv

    def conjugate_value(self, s):
        """Fenchel conjugate ``phi*(s) = s*t - phi(t)`` at ``t = (phi')^{-1}(s)``."""
        s = np.asarray(s, dtype=float)
        t = self.deriv_inverse(s)
        return s * t - np.asarray(self.value(t), dtype=float)

    def conjugate(self):
        return ConjugateScalar(self)


class QuadraticScalar(ScalarConvex):
    """phi(t) = t^2 / 2; self-conjugate."""

    name = "energy"

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return 0.5 * t * t

    def deriv(self, t):
        return np.asarray(t, dtype=float)

    def second_deriv(self, t):
        return np.ones_like(np.asarray(t, dtype=float))

    def deriv_inverse(self, s):
        return np.asarray(s, dtype=float)

    def conjugate_value(self, s):
        s = np.asarray(s, dtype=float)
        return 0.5 * s * s

    def conjugate(self):
        return self


class EntropyScalar(ScalarConvex):
    """phi(t) = t*ln(t) - t on t >= 0 (with 0*ln(0) = 0 as an exact branch),
    +inf for t < 0.  Interior domain (0, inf)."""

    name = "shannon"
    lower = 0.0

    def value(self, t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t > 0.0, t, 1.0)
        finite = safe * np.log(safe) - safe
        return np.where(t > 0.0, finite,
                        np.where(t == 0.0, 0.0, math.inf))

    def deriv(self, t):
        return np.log(np.asarray(t, dtype=float))

    def second_deriv(self, t):
        return 1.0 / np.asarray(t, dtype=float)

    def deriv_inverse(self, s):
        return np.exp(np.asarray(s, dtype=float))

    def conjugate_value(self, s):
        return np.exp(np.asarray(s, dtype=float))

    def conjugate(self):
        return ExpScalar()

    def interior_seed(self):
        return 1.0


class ExpScalar(ScalarConvex):
    """phi(t) = exp(t); conjugate of the entropy member.

    Not supercoercive: its own conjugate gradient (log) only exists for
    positive arguments.  It backs the dual route for the entropy member and
    is not part of the configuration catalog.
    """

    name = "exp"

    def value(self, t):
        return np.exp(np.asarray(t, dtype=float))

    def deriv(self, t):
        return np.exp(np.asarray(t, dtype=float))

    def second_deriv(self, t):
        return np.exp(np.asarray(t, dtype=float))

    def deriv_inverse(self, s):
        s = np.asarray(s, dtype=float)
        if np.any(s <= 0.0):
            bad = int(np.argmax(s <= 0.0))
            raise DomainViolation(
                "conjugate gradient of exp needs a positive argument, got "
                f"{s.ravel()[bad]!r}", coordinate=bad, value=float(s.ravel()[bad]))
        return np.log(s)

    def conjugate_value(self, s):
        s = np.asarray(s, dtype=float)
        safe = np.where(s > 0.0, s, 1.0)
        finite = safe * np.log(safe) - safe
        return np.where(s > 0.0, finite,
                        np.where(s == 0.0, 0.0, math.inf))

    def conjugate(self):
        return EntropyScalar()


class PowerScalar(ScalarConvex):
    """phi(t) = |t|^p / p with p > 1; conjugate is the q-power, 1/p + 1/q = 1."""

    def __init__(self, p):
        p = float(p)
        if not p > 1.0:
            raise ValueError(f"power exponent must satisfy p > 1, got {p!r}")
        self.p = p
        self.q = p / (p - 1.0)
        self.name = f"ppower({p:g})"

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return np.abs(t) ** self.p / self.p

    def deriv(self, t):
        t = np.asarray(t, dtype=float)
        return np.sign(t) * np.abs(t) ** (self.p - 1.0)

    def second_deriv(self, t):
        t = np.asarray(t, dtype=float)
        if self.p < 2.0 and np.any(t == 0.0):
            raise HessianUndefined(
                f"|t|^{self.p:g} has no second derivative at t = 0")
        # p = 2 gives |t|^0 = 1 at 0; p > 2 gives the limit value 0.
        return (self.p - 1.0) * np.abs(t) ** (self.p - 2.0)

    def deriv_inverse(self, s):
        s = np.asarray(s, dtype=float)
        return np.sign(s) * np.abs(s) ** (self.q - 1.0)

    def conjugate_value(self, s):
        s = np.asarray(s, dtype=float)
        return np.abs(s) ** self.q / self.q

    def conjugate(self):
        return PowerScalar(self.q)


class CustomScalar(ScalarConvex):
    """User-supplied member: callables for value and derivative, an open
    interval domain, and optionally a second derivative and an interior seed.

    Callables must be numpy-elementwise.  ``value_fn`` must return ``+inf``
    wherever the function is not finite.
    """

    def __init__(self, value_fn, deriv_fn, second_deriv_fn=None,
                 lower=-math.inf, upper=math.inf, seed=None, name="custom"):
        if not lower < upper:
            raise ValueError(f"empty domain interval ({lower}, {upper})")
        self._value_fn = value_fn
        self._deriv_fn = deriv_fn
        self._second_fn = second_deriv_fn
        self.lower = float(lower)
        self.upper = float(upper)
        self._seed = seed
        self.name = name

    def value(self, t):
        return np.asarray(self._value_fn(np.asarray(t, dtype=float)), dtype=float)

    def deriv(self, t):
        return np.asarray(self._deriv_fn(np.asarray(t, dtype=float)), dtype=float)

    def second_deriv(self, t):
        if self._second_fn is None:
            raise HessianUndefined(f"{self.name}: no second derivative oracle")
        return np.asarray(self._second_fn(np.asarray(t, dtype=float)), dtype=float)

    def interior_seed(self):
        if self._seed is not None:
            return float(self._seed)
        return _interior_point(self.lower, self.upper)


class ConjugateScalar(ScalarConvex):
    """Numeric conjugate of another member.

    Under supercoercivity the conjugate has full domain; its derivative is
    the inverse of the base derivative and its curvature the reciprocal of
    the base curvature at the matched point.
    """

    def __init__(self, base):
        self._base = base
        self.name = f"{base.name}*"

    def value(self, s):
        return self._base.conjugate_value(s)

    def deriv(self, s):
        return self._base.deriv_inverse(s)

    def second_deriv(self, s):
        t = self._base.deriv_inverse(s)
        d2 = np.asarray(self._base.second_deriv(t), dtype=float)
        if np.any(d2 == 0.0):
            raise HessianUndefined(
                f"{self.name}: infinite curvature (base second derivative is 0)")
        return 1.0 / d2

    def deriv_inverse(self, t):
        return self._base.deriv(t)

    def conjugate_value(self, t):
        return self._base.value(t)

    def conjugate(self):
        return self._base

"""Conjugate identities and one-sided calculus of the farthest-distance function.

Three views of the same object are tied together here.  With bfD the left
farthest distance over a finite set C:

* the conjugate of the restricted function max_c (f(c) - <s, c>) equals
  bfD(grad f*(s)) - f*(s);
* the shift function theta(x) = min_c (f(x + c) - f(c)) has conjugate
  theta*(s) = bfD(grad f*(s));
* bfD itself has matching Dini and Clarke directional derivatives
  max <H(y)(y - p), w> over the farthest points p, hence a gradient exactly
  when the farthest point is unique.

The convexity of theta characterizes singletons, which is what the tie
search and the midpoint falsifier exercise.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainViolation, HessianUndefined, MultivaluedGradient
from .farthest import (DEFAULT_TIE_TOL, _member_index, left_distances,
                       left_farthest)
from .legendre import LegendreFunction
from .pointset import PointSet

__all__ = [
    "SubderivativeEstimate", "GradientResult", "ThetaConvexitySearch",
    "neg_restricted_conjugate", "theta", "theta_conjugate",
    "dini_subderivative", "clarke_subdifferential_support",
    "gradient_farthest_distance", "subdifferential_inverse_check",
    "theta_midpoint_scan", "theta_convexity_falsifier",
]

_DINI_SCHEDULE = (1e-3, 1e-4, 1e-5, 1e-6, 1e-7)
_FD_STEP = 1e-6
_STRUCTURED_SCALES = (0.5, 0.1, 1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class SubderivativeEstimate:
    """One-sided directional derivative of the farthest-distance function.

    ``dini_value`` extrapolates difference quotients over ``step_schedule``;
    ``formula_value`` is the closed-form max over the farthest points.
    """

    direction: np.ndarray
    dini_value: float
    formula_value: float
    step_schedule: tuple


@dataclass(frozen=True)
class GradientResult:
    gradient: np.ndarray
    fd_gradient: np.ndarray
    rel_err: float


@dataclass(frozen=True)
class ThetaConvexitySearch:
    """Outcome of the midpoint-convexity search on the shift function.

    ``found`` means a violating triple was located (the function is not
    convex); ``inconclusive`` means no violation surfaced within the trial
    budget, which is evidence, not proof, of convexity.
    """

    found: bool
    x: np.ndarray | None
    y: np.ndarray | None
    gap: float
    trials_used: int
    inconclusive: bool


def neg_restricted_conjugate(f: LegendreFunction, C: PointSet, s):
    """max over c in C of f(c) - <s, c>, the conjugate of the negated
    restriction of f to the reflected set."""
    s = f._check_vector(s)
    return float(np.max(f.value_batch(C.points) - C.points @ s))


def theta(f: LegendreFunction, C: PointSet, x):
    """Shift function min over c in C of f(x + c) - f(c); +inf when x + c
    leaves dom f for every c."""
    x = f._check_vector(x)
    vals = f.value_batch(x + C.points) - f.value_batch(C.points)
    return float(np.min(vals))


def theta_conjugate(f: LegendreFunction, C: PointSet, s):
    """Conjugate of the shift function: f*(s) plus the restricted conjugate.

    Coincides with the farthest distance evaluated at grad f*(s).
    """
    s = f._check_vector(s)
    return f.conjugate_value(s) + neg_restricted_conjugate(f, C, s)


def clarke_subdifferential_support(f: LegendreFunction, C: PointSet, y, w,
                                   eps_tie=DEFAULT_TIE_TOL):
    """Support value of the generalized gradient of the farthest distance.

    The subdifferential is the Hessian image of y minus the convex hull of
    the farthest points; its support in direction w is attained at one of
    the finitely many generators ``H(y) (y - p)``.
    """
    y = f._check_vector(y)
    w = f._check_vector(w)
    result = left_farthest(f, C, y, eps_tie)
    hdiag = f.hessian_diagonal(y)
    tops = C.points[list(result.argmax_indices)]
    return float(np.max(((y - tops) * hdiag) @ w))


def dini_subderivative(f: LegendreFunction, C: PointSet, y, w,
                       eps_tie=DEFAULT_TIE_TOL) -> SubderivativeEstimate:
    """Estimate the one-sided directional derivative of the farthest
    distance at y in direction w.

    Difference quotients are taken over a decade step schedule and the last
    two are averaged with Richardson weights (the quotient error is linear
    in the step for a one-sided kinked max).  The schedule shrinks once, by
    a factor of ten, if its largest step exits the open domain.
    """
    y = f._check_vector(y)
    w = f._check_vector(w)
    f.domain.check(y, label="base point")

    schedule = _DINI_SCHEDULE
    if not all(f.domain.contains(y + t * w) for t in schedule):
        schedule = tuple(0.1 * t for t in schedule)
        warnings.warn("dini step schedule shrunk by 10x to stay inside the "
                      "open domain", stacklevel=2)
        if not all(f.domain.contains(y + t * w) for t in schedule):
            raise DomainViolation("step schedule exits the open domain even "
                                  "after shrinking once")

    base = left_farthest(f, C, y, eps_tie).value
    quotients = [
        (left_farthest(f, C, y + t * w, eps_tie).value - base) / t
        for t in schedule
    ]
    dini = quotients[-1] + (quotients[-1] - quotients[-2]) / 9.0
    formula = clarke_subdifferential_support(f, C, y, w, eps_tie)
    return SubderivativeEstimate(direction=w.copy(), dini_value=float(dini),
                                 formula_value=formula,
                                 step_schedule=schedule)


def gradient_farthest_distance(f: LegendreFunction, C: PointSet, y,
                               eps_tie=DEFAULT_TIE_TOL) -> GradientResult:
    """Gradient of the farthest distance where it exists.

    Returns ``H(y) (y - p)`` together with a central-difference cross-check
    when the farthest point p is unique; raises
    :class:`MultivaluedGradient` at argmax ties, where the function has a
    genuine kink.
    """
    y = f._check_vector(y)
    result = left_farthest(f, C, y, eps_tie)
    if not result.is_singleton:
        raise MultivaluedGradient(
            f"farthest point is not unique (indices {result.argmax_indices}); "
            "the farthest distance is not differentiable here")
    hdiag = f.hessian_diagonal(y)
    if not np.all(hdiag > 0.0):
        raise HessianUndefined("hessian is not positive definite at the "
                               "query point")
    gradient = hdiag * (y - C.points[result.witness])

    fd = np.empty_like(y)
    gaps = f.domain.boundary_gap(y)
    for j in range(y.shape[0]):
        h = _FD_STEP * (1.0 + abs(y[j]))
        if math.isfinite(gaps[j]):
            h = min(h, 0.25 * gaps[j])
        step = np.zeros_like(y)
        step[j] = h
        up = left_farthest(f, C, y + step, eps_tie).value
        down = left_farthest(f, C, y - step, eps_tie).value
        fd[j] = (up - down) / (2.0 * h)
    rel_err = float(np.linalg.norm(gradient - fd)
                    / (1.0 + np.linalg.norm(gradient)))
    return GradientResult(gradient=gradient, fd_gradient=fd, rel_err=rel_err)


def subdifferential_inverse_check(f: LegendreFunction, C: PointSet, c, s,
                                  tol=1e-9, eps_tie=DEFAULT_TIE_TOL):
    """Both sides of the inverse relation between the restricted-conjugate
    subdifferential and the farthest-point map.

    Returns a pair of booleans: whether c attains the restricted-conjugate
    max at s, and whether c's index lies in the farthest argmax set at
    grad f*(s).  The two predicates agree for Legendre catalog members.
    """
    s = f._check_vector(s)
    idx = _member_index(C, c)
    best = neg_restricted_conjugate(f, C, s)
    attained = f.value(C.points[idx]) - float(np.dot(s, C.points[idx]))
    left_pred = attained >= best - tol * (1.0 + abs(best))
    dual_query = f.conjugate_gradient(s)
    right_pred = idx in left_farthest(f, C, dual_query, eps_tie).argmax_indices
    return bool(left_pred), bool(right_pred)


def _finite_triple(f, C, x, y):
    mid = 0.5 * (x + y)
    vals = (theta(f, C, x), theta(f, C, y), theta(f, C, mid))
    if not all(map(math.isfinite, vals)):
        return None
    return vals


def theta_midpoint_scan(f: LegendreFunction, C: PointSet, seed, trials=10_000,
                        slack=1e-10):
    """Random midpoint-convexity scan of the shift function.

    Draws trial pairs from a box twice the spread of the set (anchored so
    the shift stays in dom f through the set's first point) and returns the
    worst convexity gap ``theta(mid) - (theta(x) + theta(y)) / 2`` with its
    witnessing pair and the number of usable trials.
    """
    rng = np.random.default_rng(seed)
    pts = C.points
    center = 0.5 * (pts.max(axis=0) + pts.min(axis=0))
    spread = pts.max(axis=0) - pts.min(axis=0)
    half = np.maximum(spread, 0.5)
    anchor = pts[0]

    worst_gap = -math.inf
    worst_pair = (None, None)
    used = 0
    for _ in range(trials):
        # sample box points z and shift by the anchor so theta(z - anchor)
        # has the finite candidate f(z) - f(anchor) whenever z is in dom f
        z1 = center + half * rng.uniform(-1.0, 1.0, size=pts.shape[1])
        z2 = center + half * rng.uniform(-1.0, 1.0, size=pts.shape[1])
        x, y = z1 - anchor, z2 - anchor
        vals = _finite_triple(f, C, x, y)
        if vals is None:
            continue
        used += 1
        gap = vals[2] - 0.5 * (vals[0] + vals[1])
        if gap > worst_gap:
            worst_gap = gap
            worst_pair = (x, y)
    return worst_gap, worst_pair, used


def theta_convexity_falsifier(f: LegendreFunction, C: PointSet, seed,
                              trials=10_000,
                              slack=1e-10) -> ThetaConvexitySearch:
    """Search for a midpoint-convexity violation of the shift function.

    For a set with at least two distinct points a violation always exists:
    along the difference direction d of a distinct pair, the symmetric pair
    (s d, -s d) has theta-average strictly below theta(0) = 0 for small s,
    by strict monotonicity of the gradient map.  That structured scan runs
    first; a random-box scan follows.  A non-singleton set for which neither
    stage finds a violation is reported inconclusive, never convex.
    """
    pts = C.points
    count = 0
    for i in range(C.size):
        for j in range(i + 1, C.size):
            d = pts[j] - pts[i]
            if not np.any(d != 0.0):
                continue
            for scale in _STRUCTURED_SCALES:
                count += 1
                x = scale * d
                vals = _finite_triple(f, C, x, -x)
                if vals is None:
                    continue
                gap = vals[2] - 0.5 * (vals[0] + vals[1])
                if gap > slack:
                    return ThetaConvexitySearch(found=True, x=x, y=-x,
                                                gap=float(gap),
                                                trials_used=count,
                                                inconclusive=False)

    worst_gap, pair, used = theta_midpoint_scan(f, C, seed, trials, slack)
    count += used
    if worst_gap > slack:
        return ThetaConvexitySearch(found=True, x=pair[0], y=pair[1],
                                    gap=float(worst_gap), trials_used=count,
                                    inconclusive=False)
    return ThetaConvexitySearch(found=False, x=None, y=None,
                                gap=float(worst_gap), trials_used=count,
                                inconclusive=True)

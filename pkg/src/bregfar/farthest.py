"""Bregman distances and farthest-point machinery over finite point sets.

The distance induced by a catalog member f is

    D(x, y) = f(x) - f(y) - <grad f(y), x - y>   for y in U,  +inf otherwise.

It is nonnegative, zero exactly on the diagonal, and in general neither
symmetric nor a metric.  Over a finite set C the *left* farthest machinery
maximizes D(c, y) in the first slot; the *right* machinery maximizes
D(y, c) in the second slot and can be computed either directly or through
the conjugate function (both routes must agree).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainViolation, SameWitness
from .legendre import LegendreFunction
from .pointset import PointSet

__all__ = [
    "DEFAULT_TIE_TOL", "FarthestResult", "TieWitness",
    "bregman_distance", "left_distances", "right_distances",
    "left_farthest", "left_farthest_batch",
    "right_farthest_direct", "right_farthest_dual",
    "check_farthest_characterization", "ray_point",
    "monotonicity_gap", "find_tie",
]

DEFAULT_TIE_TOL = 1e-9
_SEGMENT_MARGIN = 1e-8
_BISECT_STEPS = 128
_GOLDEN_STEPS = 48


@dataclass(frozen=True)
class FarthestResult:
    """Farthest distance over a finite set, with its argmax index set.

    ``value`` is the exact maximum over the set (no tolerance); the index
    set collects every index whose distance is within the relative tie
    tolerance of the maximum, and ``witness`` is its least element.
    """

    value: float
    argmax_indices: tuple
    witness: int

    @property
    def is_singleton(self):
        return len(self.argmax_indices) == 1


@dataclass(frozen=True)
class TieWitness:
    """A query point where the top two farthest distances coincide.

    ``top_gap`` is the difference between the largest and second-largest
    distance over the set at ``location``; ``pair`` holds the two competing
    indices.
    """

    location: np.ndarray
    top_gap: float
    pair: tuple


def bregman_distance(f: LegendreFunction, x, y):
    """D(x, y); ``+inf`` when y is outside U or x is outside dom f."""
    x = f._check_vector(x)
    y = f._check_vector(y)
    if not f.domain.contains(y):
        return math.inf
    fx = f.value(x)
    if math.isinf(fx):
        return math.inf
    return fx - f.value(y) - float(np.dot(f.gradient(y), x - y))


def left_distances(f: LegendreFunction, C: PointSet, y):
    """Vector of D(c_i, y) over the set; requires y in U."""
    y = f._check_vector(y)
    g = f.gradient(y)
    return f.value_batch(C.points) - f.value(y) - (C.points - y) @ g


def right_distances(f: LegendreFunction, C: PointSet, y):
    """Vector of D(y, c_i) over the set; requires y in U."""
    y = f._check_vector(y)
    f.domain.check(y, label="query point")
    grads = f.gradient_batch(C.points)
    offsets = np.einsum("ij,ij->i", grads, y - C.points)
    return f.value(y) - f.value_batch(C.points) - offsets


def _collect(distances, eps_tie):
    value = float(np.max(distances))
    threshold = value - eps_tie * (1.0 + abs(value))
    indices = np.flatnonzero(distances >= threshold)
    return FarthestResult(value=value,
                          argmax_indices=tuple(int(i) for i in indices),
                          witness=int(indices[0]))


def left_farthest(f: LegendreFunction, C: PointSet, y,
                  eps_tie=DEFAULT_TIE_TOL) -> FarthestResult:
    """Maximize D(c, y) over the set; exact max, tie-tolerant argmax."""
    return _collect(left_distances(f, C, y), eps_tie)


def right_farthest_direct(f: LegendreFunction, C: PointSet, y,
                          eps_tie=DEFAULT_TIE_TOL) -> FarthestResult:
    """Maximize D(y, c) over the set by direct evaluation."""
    return _collect(right_distances(f, C, y), eps_tie)


def right_farthest_dual(f: LegendreFunction, C: PointSet, y,
                        eps_tie=DEFAULT_TIE_TOL) -> FarthestResult:
    """Maximize D(y, c) through the conjugate function.

    The gradient map sends the set and the query into the conjugate domain,
    where the right distances become left distances under f*; indices are
    preserved, so the result is directly comparable with
    :func:`right_farthest_direct`.
    """
    y = f._check_vector(y)
    f.domain.check(y, label="query point")
    fstar = f.conjugate()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # duplicate warning already issued for C
        dual_set = PointSet(f.gradient_batch(C.points), fstar)
    return left_farthest(fstar, dual_set, f.gradient(y), eps_tie)


def _member_index(C: PointSet, x):
    if np.isscalar(x) and not isinstance(x, bool):
        idx = int(x)
        if not 0 <= idx < C.size:
            raise ValueError(f"index {idx} out of range for {C.size} points")
        return idx
    idx = C.index_of(x)
    if idx < 0:
        raise ValueError(f"{np.asarray(x).tolist()} is not a member of the point set")
    return idx


def check_farthest_characterization(f: LegendreFunction, C: PointSet, y, x,
                                    tol=1e-9):
    """Variational test for x being a farthest point of y.

    Evaluates, with relative slack, the predicate

        for all c in C:  D(c, x) <= <grad f(y) - grad f(x), c - x>,

    which holds exactly when x attains the maximum of D(., y) over the set.
    ``x`` may be an index into the set or a member point.
    """
    y = f._check_vector(y)
    idx = _member_index(C, x)
    xp = C.points[idx]
    gx = f.gradient(xp)
    gy = f.gradient(y)
    lhs = f.value_batch(C.points) - f.value(xp) - (C.points - xp) @ gx
    rhs = (C.points - xp) @ (gy - gx)
    slack = tol * (1.0 + np.abs(lhs) + np.abs(rhs))
    return bool(np.all(lhs <= rhs + slack))


def ray_point(f: LegendreFunction, x, y, lam):
    """Pull the dual segment through y away from x back into U.

    Returns ``grad f*(lam * grad f(y) + (1 - lam) * grad f(x))`` for
    lam >= 1.  At lam = 1 this is y.  When x is a farthest point of y, x
    stays farthest for the returned point, uniquely so for lam > 1.
    """
    lam = float(lam)
    if lam < 1.0:
        raise ValueError(f"ray parameter must satisfy lam >= 1, got {lam}")
    x = f._check_vector(x)
    y = f._check_vector(y)
    f.domain.check(x, label="ray base point")
    f.domain.check(y, label="ray through point")
    return f.conjugate_gradient(lam * f.gradient(y) + (1.0 - lam) * f.gradient(x))


def monotonicity_gap(f: LegendreFunction, C: PointSet, x, y,
                     eps_tie=DEFAULT_TIE_TOL):
    """Inner product certifying monotonicity of the farthest-point map.

    Uses the deterministic witnesses p_x, p_y at x and y and returns
    ``<p_y - p_x, grad f(x) - grad f(y)>``, which is nonnegative up to
    roundoff for any witness selection.
    """
    px = C.points[left_farthest(f, C, x, eps_tie).witness]
    py = C.points[left_farthest(f, C, y, eps_tie).witness]
    return float(np.dot(py - px, f.gradient(x) - f.gradient(y)))


def left_farthest_batch(f: LegendreFunction, C: PointSet, queries,
                        eps_tie=DEFAULT_TIE_TOL):
    """Vectorized left farthest over many query points.

    ``queries`` is (N, J) with every row in U.  Returns arrays
    ``(values, witnesses, tie_counts)`` of shapes (N,), (N,), (N,).
    """
    queries = np.asarray(queries, dtype=float)
    grads = f.gradient_batch(queries)
    vals_q = f.value_batch(queries)
    cross = grads @ C.points.T
    diag = np.einsum("ij,ij->i", grads, queries)
    distances = (f.value_batch(C.points)[None, :] - vals_q[:, None]
                 - cross + diag[:, None])
    values = distances.max(axis=1)
    thresholds = values - eps_tie * (1.0 + np.abs(values))
    hits = distances >= thresholds[:, None]
    witnesses = hits.argmax(axis=1)
    tie_counts = hits.sum(axis=1)
    return values, witnesses.astype(int), tie_counts.astype(int)


def _clip_segment(f: LegendreFunction, a, b):
    """Largest [t0, t1] within [0, 1] keeping a + t(b - a) strictly in U,
    with clipped ends retreated by a relative margin."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = b - a
    t0, t1 = 0.0, 1.0
    lower, upper = f.domain.lower, f.domain.upper
    for j in range(a.shape[0]):
        for bound, need_upper in ((lower[j], False), (upper[j], True)):
            if not math.isfinite(bound):
                continue
            if d[j] == 0.0:
                ok = a[j] > bound if need_upper is False else a[j] < bound
                if not ok:
                    raise DomainViolation(
                        f"segment coordinate {j} (= {a[j]!r}) never enters the "
                        f"open domain", coordinate=j, value=float(a[j]))
                continue
            t_bound = (bound - a[j]) / d[j]
            moving_up = d[j] > 0.0
            # crossing an upper bound going up (or a lower bound going down)
            # caps t from above; the opposite crossings raise the floor.
            if moving_up == need_upper:
                t1 = min(t1, t_bound)
            else:
                t0 = max(t0, t_bound)
    if not t0 < t1:
        raise DomainViolation("segment exits the open domain")
    width = t1 - t0
    if t0 > 0.0:
        t0 += _SEGMENT_MARGIN * width
    if t1 < 1.0:
        t1 -= _SEGMENT_MARGIN * width
    for t in (t0, t1):
        point = a + t * d
        if not f.domain.contains(point):
            raise DomainViolation("segment exits the open domain")
    return t0, t1


def _top_gap(distances):
    order = np.argsort(-distances, kind="stable")
    i0, i1 = int(order[0]), int(order[1])
    return float(distances[i0] - distances[i1]), (min(i0, i1), max(i0, i1))


def find_tie(f: LegendreFunction, C: PointSet, a, b,
             eps_tie=DEFAULT_TIE_TOL) -> TieWitness:
    """Locate a point on the segment [a, b] where the farthest point ties.

    Requires the left farthest witnesses at the two ends to differ (a
    singleton set can never satisfy this).  Bisects the segment on the
    witness label, then polishes the top-two distance gap by golden-section
    search.  Raises :class:`SameWitness` when the precondition fails.
    """
    a = f._check_vector(a)
    b = f._check_vector(b)
    if C.distinct_count() < 2:
        raise SameWitness("the point set has fewer than two distinct points; "
                          "every query shares one witness")
    t0, t1 = _clip_segment(f, a, b)
    d = b - a

    def at(t):
        return a + t * d

    def label(t):
        # exact argmax (first max index): bisecting on the tie-tolerant
        # witness would stop at the edge of the tolerance band instead of
        # the true crossing
        return int(np.argmax(left_distances(f, C, at(t))))

    lab_lo = label(t0)
    if lab_lo == label(t1):
        raise SameWitness(
            f"witness {lab_lo} is identical at both segment ends")

    lo, hi = t0, t1
    for _ in range(_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if label(mid) == lab_lo:
            lo = mid
        else:
            hi = mid

    # Polish on the gap itself; bisection has already collapsed the bracket
    # to rounding level, golden-section guards near-flat label boundaries.
    span = hi - lo
    g_lo, g_hi = lo - 32.0 * span, hi + 32.0 * span
    g_lo, g_hi = max(t0, g_lo), min(t1, g_hi)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0

    def gap_at(t):
        return _top_gap(left_distances(f, C, at(t)))[0]

    x1 = g_hi - invphi * (g_hi - g_lo)
    x2 = g_lo + invphi * (g_hi - g_lo)
    f1, f2 = gap_at(x1), gap_at(x2)
    for _ in range(_GOLDEN_STEPS):
        if g_hi - g_lo <= 0.0:
            break
        if f1 <= f2:
            g_hi, x2, f2 = x2, x1, f1
            x1 = g_hi - invphi * (g_hi - g_lo)
            f1 = gap_at(x1)
        else:
            g_lo, x1, f1 = x1, x2, f2
            x2 = g_lo + invphi * (g_hi - g_lo)
            f2 = gap_at(x2)

    best_t = min((0.5 * (lo + hi), lo, hi, x1, x2), key=gap_at)
    location = at(best_t)
    gap, pair = _top_gap(left_distances(f, C, location))
    return TieWitness(location=location, top_gap=gap, pair=pair)

"""Property verification suites over the whole catalog.

Each suite exercises one contract: conjugate round trips, the farthest
characterization, ray invariance, duality of the right and left machinery,
monotonicity, the two conjugate identities, Clarke regularity, the gradient
dichotomy, convexity of the shift function exactly for singletons, and the
tie search that witnesses the singleton dichotomy.  Suites draw their own
instances from a seeded generator, so a report is a pure function of
(seed, sizes, tolerances).
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import MultivaluedGradient, SameWitness
from .farthest import (DEFAULT_TIE_TOL, bregman_distance, find_tie,
                       left_distances, left_farthest, monotonicity_gap,
                       ray_point, check_farthest_characterization,
                       right_farthest_direct, right_farthest_dual)
from .grid import GridSpec, rasterize_field
from .legendre import LegendreFunction, energy, p_power, shannon
from .pointset import PointSet
from .variational import (dini_subderivative, gradient_farthest_distance,
                          neg_restricted_conjugate,
                          subdifferential_inverse_check, theta_conjugate,
                          theta_convexity_falsifier, theta_midpoint_scan)

__all__ = ["SuiteSizes", "Tolerances", "SuiteResult", "run_verification",
           "report_to_json", "catalog_roster", "smooth_roster",
           "sample_interior", "sample_pointset", "construct_tie"]

_GENERIC_GAP = 1e-3


@dataclass(frozen=True)
class Tolerances:
    """Numeric bands shared by the suites; all relative."""

    eps_tie: float = DEFAULT_TIE_TOL
    identity_rtol: float = 1e-9
    fd_gradient_rtol: float = 1e-5
    fd_hessian_rtol: float = 1e-4
    dini_band: float = 1e-4
    convexity_slack: float = 1e-10
    tie_gap_rtol: float = 1e-10


@dataclass(frozen=True)
class SuiteSizes:
    """Instance counts per suite; defaults match the acceptance scale."""

    round_trip_points: int = 1000
    deriv_points: int = 40
    convexity_triples: int = 200
    axiom_queries: int = 100
    char_queries: int = 500
    char_set_max: int = 50
    ray_instances: int = 200
    dual_queries: int = 1000
    mono_pairs: int = 1000
    usc_ties: int = 5
    usc_probes: int = 20
    identity_queries: int = 1000
    composed_pairs: int = 300
    clarke_generic: int = 50
    clarke_ties: int = 20
    clarke_dirs: int = 8
    dichotomy_generic: int = 60
    grad_singleton: int = 200
    subdiff_pairs: int = 1000
    theta_falsifier_trials: int = 10_000
    theta_scan_trials: int = 2000
    dichotomy_sets: int = 50
    grid_res: int = 101
    set_size: int = 12

    @classmethod
    def quick(cls):
        """Reduced counts for fast test runs."""
        return cls(round_trip_points=100, deriv_points=8,
                   convexity_triples=30, axiom_queries=20, char_queries=40,
                   char_set_max=12, ray_instances=24, dual_queries=80,
                   mono_pairs=80, usc_ties=2, usc_probes=8,
                   identity_queries=80, composed_pairs=40, clarke_generic=6,
                   clarke_ties=3, clarke_dirs=4, dichotomy_generic=10,
                   grad_singleton=20, subdiff_pairs=80,
                   theta_falsifier_trials=500, theta_scan_trials=200,
                   dichotomy_sets=6, grid_res=21, set_size=6)


@dataclass
class SuiteResult:
    check_name: str
    instances_run: int
    pass_count: int
    worst_residual: float
    seed: int
    detail: str = ""

    @property
    def passed(self):
        return self.pass_count == self.instances_run


def catalog_roster(dimension=2):
    return [energy(dimension), shannon(dimension),
            p_power(1.5, dimension), p_power(4.0, dimension)]


def smooth_roster(dimension=2):
    """Members that are twice continuously differentiable on all of U."""
    return [energy(dimension), shannon(dimension), p_power(4.0, dimension)]


def sample_interior(f: LegendreFunction, rng, count):
    """Random points strictly inside U, kept a margin off every boundary."""
    dim = f.dimension
    if f.kind == "shannon":
        return rng.uniform(0.1, 3.0, size=(count, dim))
    if f.kind == "ppower":
        mag = rng.uniform(0.1, 2.0, size=(count, dim))
        sign = rng.integers(0, 2, size=(count, dim)) * 2 - 1
        return mag * sign
    return rng.uniform(-2.0, 2.0, size=(count, dim))


def sample_pointset(f: LegendreFunction, rng, size) -> PointSet:
    return PointSet(sample_interior(f, rng, size), f)


def sample_dual(f: LegendreFunction, rng, count):
    """Random dual vectors drawn from the gradient image of U."""
    return f.gradient_batch(sample_interior(f, rng, count))


def construct_tie(f: LegendreFunction, C: PointSet, eps_tie=DEFAULT_TIE_TOL):
    """Deterministic tie point for any set with two distinct points.

    The witness at the first set point names a strictly farther second
    point; the witness at that second point is necessarily different, so
    the segment between the two set points brackets a label change.
    """
    a = C.points[0]
    w0 = left_farthest(f, C, a, eps_tie).witness
    return find_tie(f, C, a, C.points[w0], eps_tie)


def _generic_queries(f, C, rng, count, eps_tie):
    """Sample queries whose farthest point is unique by a clear margin."""
    out = []
    attempts = 0
    while len(out) < count and attempts < 80 * count:
        attempts += 1
        y = sample_interior(f, rng, 1)[0]
        d = left_distances(f, C, y)
        order = np.argsort(-d, kind="stable")
        gap = d[order[0]] - d[order[1]]
        if gap >= _GENERIC_GAP * (1.0 + abs(d[order[0]])):
            out.append(y)
    return out


def _rel(a, b):
    return abs(a - b) / (1.0 + abs(a))


def _suite_conjugate_round_trip(rng, sizes, tol):
    members = []
    for dim in (1, 2, 5):
        members += [energy(dim), shannon(dim), p_power(1.5, dim),
                    p_power(2.0, dim), p_power(4.0, dim)]
    worst = 0.0
    passed = 0
    detail = ""
    for f in members:
        x = sample_interior(f, rng, sizes.round_trip_points)
        s = f.gradient_batch(x)
        back = f.conjugate_gradient_batch(s)
        res_pt = np.linalg.norm(back - x, axis=1) / (1.0 + np.linalg.norm(x, axis=1))
        s_back = f.gradient_batch(back)
        res_dual = np.linalg.norm(s_back - s, axis=1) / (1.0 + np.linalg.norm(s, axis=1))
        fy = np.abs(f.value_batch(x) + np.array([f.conjugate_value(row) for row in s])
                    - np.einsum("ij,ij->i", s, x))
        fy_rel = fy / (1.0 + np.abs(f.value_batch(x)))
        residual = float(max(res_pt.max(), res_dual.max(), fy_rel.max()))
        worst = max(worst, residual)
        if residual <= tol.identity_rtol:
            passed += 1
        elif not detail:
            detail = f"{f.describe()} round trip residual {residual:.3e}"
    return SuiteResult("conjugate_round_trip", len(members), passed, worst,
                       0, detail)


def _suite_derivative_consistency(rng, sizes, tol):
    instances = 0
    passed = 0
    worst = 0.0
    detail = ""
    for f in catalog_roster(2):
        pts = sample_interior(f, rng, sizes.deriv_points)
        bad = 0.0
        for y in pts:
            g = f.gradient(y)
            h_fd = np.empty_like(y)
            g_fd = np.empty_like(y)
            for j in range(y.shape[0]):
                h = 1e-6 * (1.0 + abs(y[j]))
                step = np.zeros_like(y)
                step[j] = h
                g_fd[j] = (f.value(y + step) - f.value(y - step)) / (2 * h)
                h_fd[j] = (f.gradient(y + step)[j] - f.gradient(y - step)[j]) / (2 * h)
            hd = f.hessian_diagonal(y)
            rg = np.max(np.abs(g_fd - g) / (1.0 + np.abs(g)))
            rh = np.max(np.abs(h_fd - hd) / (1.0 + np.abs(hd)))
            bad = max(bad, rg / tol.fd_gradient_rtol, rh / tol.fd_hessian_rtol)
        instances += 1
        worst = max(worst, bad)
        if bad <= 1.0:
            passed += 1
        elif not detail:
            detail = f"{f.describe()} derivative mismatch ratio {bad:.3e}"
    return SuiteResult("derivative_consistency", instances, passed, worst,
                       0, detail)


def _suite_convexity_spot(rng, sizes, tol):
    instances = 0
    passed = 0
    worst = -math.inf
    detail = ""
    for f in catalog_roster(2):
        x = sample_interior(f, rng, sizes.convexity_triples)
        y = sample_interior(f, rng, sizes.convexity_triples)
        lam = rng.uniform(0.05, 0.95, size=sizes.convexity_triples)
        gap = -math.inf
        for xi, yi, li in zip(x, y, lam):
            mix = f.value(li * xi + (1 - li) * yi)
            bound = li * f.value(xi) + (1 - li) * f.value(yi)
            gap = max(gap, (mix - bound) / (1.0 + abs(bound)))
        instances += 1
        worst = max(worst, gap)
        if gap <= 1e-12:
            passed += 1
        elif not detail:
            detail = f"{f.describe()} convexity gap {gap:.3e}"
    return SuiteResult("convexity_spot", instances, passed, worst, 0, detail)


def _suite_distance_axioms(rng, sizes, tol):
    instances = 0
    passed = 0
    worst = 0.0
    detail = ""
    for f in catalog_roster(2):
        C = sample_pointset(f, rng, sizes.set_size)
        ys = sample_interior(f, rng, sizes.axiom_queries)
        bad = 0.0
        ok = True
        for y in ys:
            d = left_distances(f, C, y)
            bad = max(bad, float(-d.min()))
            if d.min() < -1e-12:
                ok = False
            if bregman_distance(f, y, y) != 0.0:
                ok = False
            x = sample_interior(f, rng, 1)[0]
            if np.linalg.norm(x - y) >= 0.01:
                if bregman_distance(f, x, y) <= 1e-12:
                    ok = False
        instances += 1
        worst = max(worst, bad)
        if ok:
            passed += 1
        elif not detail:
            detail = f"{f.describe()} axiom violation, residual {bad:.3e}"
    return SuiteResult("distance_axioms", instances, passed, worst, 0, detail)


def _suite_characterization(rng, sizes, tol):
    instances = 0
    passed = 0
    disagreements = 0
    detail = ""
    for f in catalog_roster(2):
        size = int(rng.integers(2, sizes.char_set_max + 1))
        C = sample_pointset(f, rng, size)
        ys = sample_interior(f, rng, sizes.char_queries)
        for y in ys:
            result = left_farthest(f, C, y, tol.eps_tie)
            clean = True
            for idx in range(C.size):
                pred = check_farthest_characterization(f, C, y, idx)
                member = idx in result.argmax_indices
                if pred != member:
                    clean = False
                    disagreements += 1
                    if not detail:
                        detail = (f"{f.describe()} query {y.tolist()} index "
                                  f"{idx}: predicate {pred}, member {member}")
            instances += 1
            if clean:
                passed += 1
    return SuiteResult("characterization_equivalence", instances, passed,
                       float(disagreements), 0, detail)


def _suite_ray_invariance(rng, sizes, tol):
    roster = catalog_roster(2)
    per = max(1, sizes.ray_instances // len(roster))
    instances = 0
    passed = 0
    worst = math.inf
    detail = ""
    for f in roster:
        C = sample_pointset(f, rng, sizes.set_size)
        queries = _generic_queries(f, C, rng, per, tol.eps_tie)
        for y in queries:
            base = left_farthest(f, C, y, tol.eps_tie)
            xi = base.witness
            xpt = C.points[xi]
            ok = True
            for lam in (1.0, 1.25, 2.0):
                z = ray_point(f, xpt, y, lam)
                res = left_farthest(f, C, z, tol.eps_tie)
                if lam == 1.0:
                    ok = ok and xi in res.argmax_indices
                    continue
                d = left_distances(f, C, z)
                order = np.argsort(-d, kind="stable")
                gap = float(d[order[0]] - d[order[1]])
                worst = min(worst, gap)
                ok = ok and res.argmax_indices == (xi,) and gap > 0.0
            instances += 1
            if ok:
                passed += 1
            elif not detail:
                detail = f"{f.describe()} ray failure at y={y.tolist()}"
    if not math.isfinite(worst):
        worst = 0.0
    return SuiteResult("ray_invariance", instances, passed, worst, 0, detail)


def _suite_dual_agreement(rng, sizes, tol):
    instances = 0
    passed = 0
    worst = 0.0
    detail = ""
    for f in catalog_roster(2):
        C = sample_pointset(f, rng, sizes.set_size)
        ys = sample_interior(f, rng, sizes.dual_queries)
        for y in ys:
            direct = right_farthest_direct(f, C, y, tol.eps_tie)
            dual = right_farthest_dual(f, C, y, tol.eps_tie)
            residual = _rel(direct.value, dual.value)
            worst = max(worst, residual)
            instances += 1
            if (residual <= tol.identity_rtol
                    and direct.argmax_indices == dual.argmax_indices):
                passed += 1
            elif not detail:
                detail = (f"{f.describe()} direct/dual mismatch at "
                          f"y={y.tolist()}: {direct.value!r} vs {dual.value!r}")
    return SuiteResult("dual_agreement", instances, passed, worst, 0, detail)


def _suite_monotonicity(rng, sizes, tol):
    instances = 0
    passed = 0
    worst = 0.0
    detail = ""
    for f in catalog_roster(2):
        C = sample_pointset(f, rng, sizes.set_size)
        xs = sample_interior(f, rng, sizes.mono_pairs)
        ys = sample_interior(f, rng, sizes.mono_pairs)
        for x, y in zip(xs, ys):
            gap = monotonicity_gap(f, C, x, y, tol.eps_tie)
            px = C.points[left_farthest(f, C, x, tol.eps_tie).witness]
            py = C.points[left_farthest(f, C, y, tol.eps_tie).witness]
            scale = 1.0 + np.linalg.norm(py - px) * np.linalg.norm(
                f.gradient(x) - f.gradient(y))
            residual = max(0.0, -gap) / scale
            worst = max(worst, residual)
            instances += 1
            if gap >= -1e-10 * scale:
                passed += 1
            elif not detail:
                detail = (f"{f.describe()} negative gap {gap:.3e} at "
                          f"x={x.tolist()}, y={y.tolist()}")
    return SuiteResult("monotonicity", instances, passed, worst, 0, detail)


def _suite_upper_semicontinuity(rng, sizes, tol):
    instances = 0
    passed = 0
    worst = 0.0
    detail = ""
    for f in catalog_roster(2):
        for _ in range(sizes.usc_ties):
            C = sample_pointset(f, rng, sizes.set_size)
            witness = construct_tie(f, C, tol.eps_tie)
            z = witness.location
            # inflated membership band: perturbations move each distance by
            # O(radius), far below this
            base = left_farthest(f, C, z, 1e-4)
            ok = True
            for _ in range(sizes.usc_probes):
                delta = rng.normal(size=f.dimension)
                delta *= 1e-6 / np.linalg.norm(delta)
                near = left_farthest(f, C, z + delta, tol.eps_tie)
                if near.witness not in base.argmax_indices:
                    ok = False
                    if not detail:
                        detail = (f"{f.describe()} witness {near.witness} "
                                  f"not in limit argmax {base.argmax_indices}")
            instances += 1
            worst = max(worst, witness.top_gap)
            if ok:
                passed += 1
    return SuiteResult("upper_semicontinuity", instances, passed, worst,
                       0, detail)


def _suite_restricted_conjugate(rng, sizes, tol):
    instances = 0
    passed = 0
    worst = 0.0
    detail = ""
    for f in catalog_roster(2):
        C = sample_pointset(f, rng, sizes.set_size)
        duals = sample_dual(f, rng, sizes.identity_queries)
        for s in duals:
            lhs = neg_restricted_conjugate(f, C, s)
            rhs = (left_farthest(f, C, f.conjugate_gradient(s), tol.eps_tie).value
                   - f.conjugate_value(s))
            residual = _rel(lhs, rhs)
            worst = max(worst, residual)
            instances += 1
            if residual <= tol.identity_rtol:
                passed += 1
            elif not detail:
                detail = (f"{f.describe()} restricted conjugate mismatch "
                          f"{lhs!r} vs {rhs!r} at s={s.tolist()}")
    return SuiteResult("restricted_conjugate_identity", instances, passed,
                       worst, 0, detail)


def _suite_shift_conjugate(rng, sizes, tol):
    instances = 0
    passed = 0
    worst = 0.0
    detail = ""
    for f in catalog_roster(2):
        C = sample_pointset(f, rng, sizes.set_size)
        duals = sample_dual(f, rng, sizes.identity_queries)
        for s in duals:
            lhs = theta_conjugate(f, C, s)
            rhs = left_farthest(f, C, f.conjugate_gradient(s), tol.eps_tie).value
            residual = _rel(lhs, rhs)
            worst = max(worst, residual)
            instances += 1
            if residual <= tol.identity_rtol:
                passed += 1
            elif not detail:
                detail = (f"{f.describe()} shift conjugate mismatch "
                          f"{lhs!r} vs {rhs!r} at s={s.tolist()}")
    return SuiteResult("shift_conjugate_identity", instances, passed, worst,
                       0, detail)


def _suite_composed_convexity(rng, sizes, tol):
    instances = 0
    passed = 0
    worst = -math.inf
    detail = ""
    for f in catalog_roster(2):
        C = sample_pointset(f, rng, sizes.set_size)

        def g(s):
            return left_farthest(f, C, f.conjugate_gradient(s), tol.eps_tie).value

        s1 = sample_dual(f, rng, sizes.composed_pairs)
        s2 = sample_dual(f, rng, sizes.composed_pairs)
        for a, b in zip(s1, s2):
            lhs = g(0.5 * (a + b))
            rhs = 0.5 * (g(a) + g(b))
            gap = (lhs - rhs) / (1.0 + abs(rhs))
            worst = max(worst, gap)
            instances += 1
            if gap <= tol.convexity_slack:
                passed += 1
            elif not detail:
                detail = f"{f.describe()} composed convexity gap {gap:.3e}"
    return SuiteResult("composed_convexity", instances, passed, worst, 0,
                       detail)


def _suite_clarke_regularity(rng, sizes, tol):
    instances = 0
    passed = 0
    worst = 0.0
    detail = ""
    for f in smooth_roster(2):
        C = sample_pointset(f, rng, sizes.set_size)
        points = _generic_queries(f, C, rng, sizes.clarke_generic, tol.eps_tie)
        for _ in range(sizes.clarke_ties):
            Ct = sample_pointset(f, rng, sizes.set_size)
            points.append(("tie", Ct, construct_tie(f, Ct, tol.eps_tie).location))
        for entry in points:
            if isinstance(entry, tuple):
                _, set_here, y = entry
            else:
                set_here, y = C, entry
            for _ in range(sizes.clarke_dirs):
                w = rng.normal(size=f.dimension)
                w /= np.linalg.norm(w)
                est = dini_subderivative(f, set_here, y, w, tol.eps_tie)
                residual = (abs(est.dini_value - est.formula_value)
                            / (1.0 + abs(est.formula_value)))
                worst = max(worst, residual)
                instances += 1
                if residual <= tol.dini_band:
                    passed += 1
                elif not detail:
                    detail = (f"{f.describe()} dini {est.dini_value!r} vs "
                              f"formula {est.formula_value!r} at "
                              f"y={np.asarray(y).tolist()}")
    return SuiteResult("clarke_regularity", instances, passed, worst, 0,
                       detail)


def _suite_gradient_formula(rng, sizes, tol):
    instances = 0
    passed = 0
    worst = 0.0
    detail = ""
    for f in smooth_roster(2):
        C = sample_pointset(f, rng, sizes.set_size)
        queries = _generic_queries(f, C, rng, sizes.grad_singleton, tol.eps_tie)
        for y in queries:
            res = gradient_farthest_distance(f, C, y, tol.eps_tie)
            worst = max(worst, res.rel_err)
            instances += 1
            if res.rel_err <= tol.fd_gradient_rtol:
                passed += 1
            elif not detail:
                detail = (f"{f.describe()} gradient fd mismatch "
                          f"{res.rel_err:.3e} at y={y.tolist()}")
    return SuiteResult("gradient_formula", instances, passed, worst, 0,
                       detail)


def _suite_differentiability_dichotomy(rng, sizes, tol):
    instances = 0
    passed = 0
    violations = 0
    detail = ""
    for f in catalog_roster(2):
        C = sample_pointset(f, rng, sizes.set_size)
        for y in _generic_queries(f, C, rng, sizes.dichotomy_generic,
                                  tol.eps_tie):
            instances += 1
            try:
                gradient_farthest_distance(f, C, y, tol.eps_tie)
                passed += 1
            except MultivaluedGradient:
                violations += 1
                if not detail:
                    detail = (f"{f.describe()} multivalued signal at generic "
                              f"y={y.tolist()}")
        for _ in range(max(1, sizes.usc_ties)):
            Ct = sample_pointset(f, rng, sizes.set_size)
            loc = construct_tie(f, Ct, tol.eps_tie).location
            instances += 1
            try:
                gradient_farthest_distance(f, Ct, loc, tol.eps_tie)
                violations += 1
                if not detail:
                    detail = (f"{f.describe()} gradient returned at tie "
                              f"location {loc.tolist()}")
            except MultivaluedGradient:
                passed += 1
    return SuiteResult("differentiability_dichotomy", instances, passed,
                       float(violations), 0, detail)


def _suite_subdifferential_inverse(rng, sizes, tol):
    instances = 0
    passed = 0
    disagreements = 0
    detail = ""
    for f in catalog_roster(2):
        C = sample_pointset(f, rng, sizes.set_size)
        duals = sample_dual(f, rng, sizes.subdiff_pairs)
        picks = rng.integers(0, C.size, size=sizes.subdiff_pairs)
        for s, idx in zip(duals, picks):
            left, right = subdifferential_inverse_check(
                f, C, int(idx), s, tol.identity_rtol, tol.eps_tie)
            instances += 1
            if left == right:
                passed += 1
            else:
                disagreements += 1
                if not detail:
                    detail = (f"{f.describe()} predicates split at index "
                              f"{int(idx)}, s={s.tolist()}: {left} vs {right}")
    return SuiteResult("subdifferential_inverse", instances, passed,
                       float(disagreements), 0, detail)


def _suite_shift_convexity_dichotomy(rng, sizes, tol):
    instances = 0
    passed = 0
    inconclusive = 0
    detail = ""
    for f in catalog_roster(2):
        single = PointSet(sample_interior(f, rng, 1), f)
        gap, _, used = theta_midpoint_scan(
            f, single, int(rng.integers(0, 2**31)), sizes.theta_scan_trials,
            tol.convexity_slack)
        instances += 1
        if used > 0 and gap <= tol.convexity_slack:
            passed += 1
        elif not detail:
            detail = (f"{f.describe()} singleton midpoint gap {gap:.3e} "
                      f"over {used} usable trials")

        for _ in range(sizes.dichotomy_sets):
            C = sample_pointset(f, rng, max(2, sizes.set_size // 2))
            search = theta_convexity_falsifier(
                f, C, int(rng.integers(0, 2**31)),
                sizes.theta_falsifier_trials, tol.convexity_slack)
            instances += 1
            if search.found:
                passed += 1
            else:
                inconclusive += 1
                if not detail:
                    detail = (f"{f.describe()} falsifier inconclusive after "
                              f"{search.trials_used} trials")
    return SuiteResult("shift_convexity_dichotomy", instances, passed,
                       float(inconclusive), 0, detail)


def _suite_singleton_uniqueness(rng, sizes, tol):
    instances = 0
    passed = 0
    worst = 0.0
    detail = ""
    for f in catalog_roster(2):
        c = sample_interior(f, rng, 1)
        C = PointSet(c, f)
        if f.kind == "shannon":
            lo, hi = np.full(2, 0.05), np.full(2, 3.2)
        else:
            lo, hi = np.full(2, -2.2), np.full(2, 2.2)
        grid = GridSpec(lo, hi, (sizes.grid_res, sizes.grid_res))
        raster = rasterize_field(f, C, grid, tol.eps_tie)
        ties = int(np.count_nonzero(raster.tie_counts != 1))
        instances += 1
        worst = max(worst, float(ties))
        if ties == 0 and np.all(raster.witnesses == 0):
            passed += 1
        elif not detail:
            detail = f"{f.describe()} singleton grid had {ties} multi-label nodes"
    return SuiteResult("singleton_uniqueness", instances, passed, worst, 0,
                       detail)


def _suite_tie_search(rng, sizes, tol):
    instances = 0
    passed = 0
    worst = 0.0
    detail = ""
    for f in catalog_roster(2):
        for _ in range(sizes.dichotomy_sets):
            C = sample_pointset(f, rng, max(2, sizes.set_size // 2))
            instances += 1
            try:
                witness = construct_tie(f, C, tol.eps_tie)
            except SameWitness:
                if not detail:
                    detail = f"{f.describe()} tie search met equal witnesses"
                continue
            value = left_farthest(f, C, witness.location, tol.eps_tie).value
            ratio = witness.top_gap / (1.0 + value)
            worst = max(worst, ratio)
            if ratio <= tol.tie_gap_rtol:
                passed += 1
            elif not detail:
                detail = (f"{f.describe()} residual tie gap ratio {ratio:.3e} "
                          f"at {witness.location.tolist()}")
    return SuiteResult("tie_search", instances, passed, worst, 0, detail)


_SUITES = (
    ("conjugate_round_trip", _suite_conjugate_round_trip),
    ("derivative_consistency", _suite_derivative_consistency),
    ("convexity_spot", _suite_convexity_spot),
    ("distance_axioms", _suite_distance_axioms),
    ("characterization_equivalence", _suite_characterization),
    ("ray_invariance", _suite_ray_invariance),
    ("dual_agreement", _suite_dual_agreement),
    ("monotonicity", _suite_monotonicity),
    ("upper_semicontinuity", _suite_upper_semicontinuity),
    ("restricted_conjugate_identity", _suite_restricted_conjugate),
    ("shift_conjugate_identity", _suite_shift_conjugate),
    ("composed_convexity", _suite_composed_convexity),
    ("clarke_regularity", _suite_clarke_regularity),
    ("gradient_formula", _suite_gradient_formula),
    ("differentiability_dichotomy", _suite_differentiability_dichotomy),
    ("subdifferential_inverse", _suite_subdifferential_inverse),
    ("shift_convexity_dichotomy", _suite_shift_convexity_dichotomy),
    ("singleton_uniqueness", _suite_singleton_uniqueness),
    ("tie_search", _suite_tie_search),
)


def run_verification(seed=2024, sizes: SuiteSizes | None = None,
                     tol: Tolerances | None = None):
    """Run every suite and return (report dict, all_passed)."""
    sizes = sizes or SuiteSizes()
    tol = tol or Tolerances()
    results = []
    for idx, (name, suite) in enumerate(_SUITES):
        rng = np.random.default_rng(np.random.SeedSequence(
            entropy=seed, spawn_key=(idx,)))
        try:
            result = suite(rng, sizes, tol)
        except Exception as exc:  # a crashed suite is a failed suite
            result = SuiteResult(name, 1, 0, math.inf, seed,
                                 f"suite aborted: {exc}")
        result.seed = seed
        results.append(result)
    all_passed = all(r.passed for r in results)
    report = {
        "all_passed": all_passed,
        "seed": seed,
        "sizes": asdict(sizes),
        "tolerances": asdict(tol),
        "suites": [asdict(r) for r in results],
    }
    return report, all_passed


def report_to_json(report):
    """Canonical byte-stable rendering of a verification report."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"

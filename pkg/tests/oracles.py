"""Independent reference formulas for test oracles.

Everything here is written directly from the defining formulas, on purpose
not through the package's own classes, so the tests compare two separate
routes to each number.
"""

import math

import numpy as np


def energy_value(x):
    x = np.asarray(x, dtype=float)
    return 0.5 * float(np.dot(x, x))


def energy_distance(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return 0.5 * float(np.dot(x - y, x - y))


def shannon_value(x):
    total = 0.0
    for t in np.asarray(x, dtype=float):
        if t < 0.0:
            return math.inf
        if t > 0.0:
            total += t * math.log(t) - t
    return total


def kl_distance(x, y):
    """Kullback-Leibler form sum x ln(x/y) - x + y; x >= 0, y > 0."""
    total = 0.0
    for a, b in zip(np.asarray(x, float), np.asarray(y, float)):
        if a < 0.0:
            return math.inf
        if a > 0.0:
            total += a * math.log(a / b)
        total += b - a
    return total


def ppower_value(p, x):
    return float(np.sum(np.abs(np.asarray(x, float)) ** p) / p)


def ppower_grad(p, x):
    x = np.asarray(x, dtype=float)
    return np.sign(x) * np.abs(x) ** (p - 1.0)


def ppower_distance(p, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return (ppower_value(p, x) - ppower_value(p, y)
            - float(np.dot(ppower_grad(p, y), x - y)))


def brute_left_profile(dist_fn, points, y):
    """Distances dist_fn(c, y) for each row c, as a plain list."""
    return [dist_fn(c, y) for c in np.asarray(points, dtype=float)]


def brute_argmax(values, eps_tie=1e-9):
    """Indices within the relative tie band of the max, plus the max."""
    best = max(values)
    keep = [i for i, v in enumerate(values)
            if v >= best - eps_tie * (1.0 + abs(best))]
    return best, keep

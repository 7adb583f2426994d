"""Finite point sets and their ingestion.

The farthest-point machinery works over a nonempty finite set of points
lying strictly inside the open domain ``U`` of a companion catalog member.
Finiteness realizes the compactness assumption; emptiness and points on or
outside the boundary of ``U`` are construction errors.
"""

from __future__ import annotations

import csv
import json
import warnings

import numpy as np

from .errors import PointSetError
from .legendre import LegendreFunction

__all__ = ["PointSet", "load_point_array", "load_points"]

_A3_MESSAGE = "point set must be a nonempty bounded closed subset of U"


class PointSet:
    """An ordered list of J-vectors strictly inside ``U``.

    Order matters only for deterministic tie-breaking (the least index wins);
    the semantics are otherwise those of a set.  Duplicate points are allowed
    but flagged with a warning, since they make argmax index sets redundant.
    """

    def __init__(self, points, function: LegendreFunction):
        points = np.asarray(points, dtype=float)
        if points.size == 0:
            raise PointSetError(f"{_A3_MESSAGE}: the set is empty")
        if points.ndim != 2:
            raise PointSetError(
                f"points must form a (n, J) array, got shape {points.shape}")
        if points.shape[1] != function.dimension:
            raise PointSetError(
                f"points have dimension {points.shape[1]} but the function "
                f"expects {function.dimension}")
        if not np.all(np.isfinite(points)):
            raise PointSetError(f"{_A3_MESSAGE}: non-finite coordinate found")
        inside = function.domain.contains_rows(points)
        if not np.all(inside):
            row = int(np.argmax(~inside))
            raise PointSetError(
                f"{_A3_MESSAGE}: point {row} = {points[row].tolist()} is not "
                f"strictly inside {function.domain}")
        uniq = np.unique(points, axis=0)
        if uniq.shape[0] < points.shape[0]:
            warnings.warn("point set contains duplicate points; argmax index "
                          "sets may list duplicates", stacklevel=2)
        self.points = points.copy()
        self.points.setflags(write=False)
        self.function = function

    @property
    def size(self):
        return self.points.shape[0]

    @property
    def dimension(self):
        return self.points.shape[1]

    def __len__(self):
        return self.points.shape[0]

    def __getitem__(self, index):
        return self.points[index]

    def index_of(self, x, tol=0.0):
        """Index of the first point equal to ``x`` (within ``tol``); -1 if absent."""
        x = np.asarray(x, dtype=float)
        hits = np.all(np.abs(self.points - x) <= tol, axis=1)
        return int(np.argmax(hits)) if np.any(hits) else -1

    def distinct_count(self):
        return int(np.unique(self.points, axis=0).shape[0])

    def __repr__(self):
        return (f"PointSet({self.size} points, J={self.dimension}, "
                f"under {self.function.kind})")


def load_point_array(path):
    """Read raw point rows from a JSON array of arrays or a CSV file.

    The format is chosen by sniffing the first non-whitespace character:
    ``[`` means JSON, anything else CSV with one point per row.  Returns a
    float array of shape (n, J) with J inferred from the rows.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise PointSetError(f"cannot read point set {path!r}: {exc}") from exc
    stripped = text.lstrip()
    if not stripped:
        raise PointSetError(f"{_A3_MESSAGE}: file {path!r} is empty")
    if stripped[0] == "[":
        try:
            rows = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise PointSetError(f"cannot parse {path!r} as JSON: {exc}") from exc
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise PointSetError(f"{path!r} must hold a JSON array of arrays")
    else:
        rows = []
        for record in csv.reader(text.splitlines()):
            if not record or all(not cell.strip() for cell in record):
                continue
            rows.append([cell for cell in record])
    if not rows:
        raise PointSetError(f"{_A3_MESSAGE}: file {path!r} holds no points")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise PointSetError(
                f"row {i} of {path!r} has {len(row)} entries, expected {width}")
    try:
        array = np.asarray(rows, dtype=float)
    except ValueError as exc:
        raise PointSetError(f"non-numeric entry in {path!r}: {exc}") from exc
    return array


def load_points(path, function: LegendreFunction) -> PointSet:
    """Read a point set file and validate it against ``function``."""
    return PointSet(load_point_array(path), function)

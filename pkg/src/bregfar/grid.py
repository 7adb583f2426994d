"""Farthest-label fields on rectangular grids, with CSV and graymap output.

A grid of query points is labeled by the witness index of the left
farthest point; the boundaries between labels trace the tie geometry of
the point set.  Output is deterministic byte-for-byte for fixed inputs:
CSV rows are emitted in row-major node order with shortest round-trip
float formatting, and the two-dimensional label image is a binary
portable graymap.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainViolation
from .farthest import DEFAULT_TIE_TOL, left_farthest_batch
from .legendre import LegendreFunction
from .pointset import PointSet

__all__ = ["GridSpec", "FieldRaster", "rasterize_field",
           "write_field_csv", "write_label_pgm", "gray_level"]

DEFAULT_GRID_MARGIN = 1e-3


@dataclass(frozen=True)
class GridSpec:
    """Axis-aligned evaluation grid, shrunk toward its center by a margin.

    The relative margin keeps nodes off the box faces so grids stated in
    closed-domain coordinates still evaluate strictly inside U.
    """

    lower: np.ndarray
    upper: np.ndarray
    resolution: tuple
    margin: float = DEFAULT_GRID_MARGIN

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float).copy()
        upper = np.asarray(self.upper, dtype=float).copy()
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise ValueError("grid bounds must be 1-d vectors of equal length")
        if not np.all(np.isfinite(lower)) or not np.all(np.isfinite(upper)):
            raise ValueError("grid bounds must be finite")
        if not np.all(lower < upper):
            raise ValueError("grid requires lower < upper on every axis")
        res = tuple(int(r) for r in np.atleast_1d(self.resolution))
        if len(res) == 1:
            res = res * lower.shape[0]
        if len(res) != lower.shape[0]:
            raise ValueError("resolution must be scalar or one per axis")
        if any(r < 1 for r in res):
            raise ValueError("resolution must be positive")
        if not 0.0 <= float(self.margin) < 0.5:
            raise ValueError("margin must lie in [0, 0.5)")
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "resolution", res)
        object.__setattr__(self, "margin", float(self.margin))

    @property
    def dimension(self):
        return self.lower.shape[0]

    def axes(self):
        """Per-axis node arrays after the margin shrink."""
        out = []
        for lo, up, r in zip(self.lower, self.upper, self.resolution):
            pad = self.margin * (up - lo)
            out.append(np.linspace(lo + pad, up - pad, r))
        return out

    def nodes(self):
        """All grid nodes, row-major over the axes, shape (prod(res), J)."""
        mesh = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([m.reshape(-1) for m in mesh], axis=-1)


@dataclass(frozen=True)
class FieldRaster:
    """Evaluated farthest-label field on a grid."""

    nodes: np.ndarray
    values: np.ndarray
    witnesses: np.ndarray
    tie_counts: np.ndarray

    @property
    def tie_flags(self):
        return self.tie_counts >= 2


def rasterize_field(f: LegendreFunction, C: PointSet, grid: GridSpec,
                    eps_tie=DEFAULT_TIE_TOL) -> FieldRaster:
    """Evaluate the left farthest value, witness, and tie flag at each node."""
    if grid.dimension != f.dimension:
        raise ValueError(f"grid dimension {grid.dimension} does not match "
                         f"function dimension {f.dimension}")
    nodes = grid.nodes()
    inside = f.domain.contains_rows(nodes)
    if not np.all(inside):
        bad = nodes[int(np.flatnonzero(~inside)[0])]
        raise DomainViolation(
            f"grid node {bad.tolist()} lies outside the open domain even "
            "after the margin shrink")
    values, witnesses, tie_counts = left_farthest_batch(f, C, nodes, eps_tie)
    return FieldRaster(nodes=nodes, values=values, witnesses=witnesses,
                       tie_counts=tie_counts)


def write_field_csv(path, raster: FieldRaster):
    """Write node coordinates, farthest value, witness, and tie flag.

    RFC-4180 quoting and CRLF row endings via the csv module; floats are
    shortest round-trip reprs so output is byte-stable.
    """
    dim = raster.nodes.shape[1]
    header = [f"x{j + 1}" for j in range(dim)] + ["farthest_value",
                                                  "witness", "tie"]
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for node, value, wit, ties in zip(raster.nodes, raster.values,
                                          raster.witnesses,
                                          raster.tie_counts):
            row = [repr(float(c)) for c in node]
            row += [repr(float(value)), str(int(wit)),
                    "1" if ties >= 2 else "0"]
            writer.writerow(row)


def gray_level(index, set_size):
    """Witness index -> gray level, spread evenly over 0..255."""
    return int(round(255.0 * index / max(set_size - 1, 1)))


def write_label_pgm(path, grid: GridSpec, raster: FieldRaster, set_size):
    """Binary portable graymap of the witness labels; planar grids only.

    Columns follow the first axis left to right, rows the second axis top
    to bottom (largest coordinate on top).
    """
    if grid.dimension != 2:
        raise ValueError("label image output requires a 2-d grid")
    r0, r1 = grid.resolution
    labels = raster.witnesses.reshape(r0, r1)
    levels = np.array([[gray_level(int(v), set_size) for v in row]
                       for row in labels], dtype=np.uint8)
    image = levels.T[::-1, :]
    with open(path, "wb") as handle:
        handle.write(f"P5\n{r0} {r1}\n255\n".encode("ascii"))
        handle.write(image.tobytes())

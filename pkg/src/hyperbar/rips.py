"""Rips filtrations of point clouds (the simplicial special case)."""

from __future__ import annotations

import math
from itertools import combinations
from typing import IO, Sequence

import numpy as np

from .filtration import ZERO, Filtration, FormatError, Grade


class PointCloud:
    def __init__(self, points: Sequence[Sequence[float]]):
        arr = np.asarray(points, dtype=float)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("points must all have the same dimension")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coordinates must be finite")
        self.points = arr

    def __len__(self):
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def parse_points(source: str | IO) -> PointCloud:
    if hasattr(source, "read"):
        source = source.read()
    rows = []
    width = None
    for lineno, line in enumerate(source.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            row = [float(x) for x in s.split()]
        except ValueError:
            raise FormatError(f"non-numeric coordinate in {s!r}", lineno) from None
        if width is not None and len(row) != width:
            raise FormatError(f"expected {width} coordinates, got {len(row)}", lineno)
        width = len(row)
        rows.append(row)
    return PointCloud(rows)


def rips_filtration(cloud: PointCloud, r_max: float, max_dim: int = 2) -> Filtration:
    """Grade each simplex by its diameter; simplices with diameter ``>= r_max`` are left out.

    A simplex belongs to the Rips complex at scale ``r`` (pairwise distances
    strictly below ``r``) exactly when its grade is ``< r``.  Diameters are
    compared as squared distances and reported as their square roots.
    """
    n = len(cloud)
    if n == 0:
        raise ValueError("empty point cloud")
    if r_max <= 0:
        raise ValueError("r_max must be positive")
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    pts = cloud.points
    diff = pts[:, None, :] - pts[None, :, :]
    sq = np.einsum("ijk,ijk->ij", diff, diff)
    limit = r_max * r_max
    grades = {(i,): ZERO for i in range(n)}
    # square-distance keys keep ties exact; values are the real diameters
    edge_sq = {}
    for i, j in combinations(range(n), 2):
        d2 = float(sq[i, j])
        if d2 < limit:
            edge_sq[i, j] = d2
    for k in range(1, max_dim + 1):
        for s in combinations(range(n), k + 1):
            pairs = list(combinations(s, 2))
            if all(p in edge_sq for p in pairs):
                d2 = max(edge_sq[p] for p in pairs)
                grades[s] = Grade(d2, math.sqrt(d2)) if d2 > 0 else ZERO
    width = len(str(n - 1))
    roster = tuple(f"p{i:0{width}d}" for i in range(n))
    return Filtration(roster, grades, max_dim=max(max_dim, 1))

"""Barcodes of hypergraph filtrations by boundary-matrix pivoting.

For each dimension ``k`` the matrix has one row per ``k``-hyperedge and one
column per finite ``(k+1)``-hyperedge; ``M[i, j] = 1`` iff row ``i`` is a face
of column ``j``.  Columns are sorted by (grade, lexicographic members), rows
by the exact reverse of that order.  Each row then yields a pair
(row grade, pivot column grade), read as an embedded-homology bar when the
row is born first and as an additional Ĥ bar when the column comes first.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Sequence

from .filtration import INF, Filtration, Grade
from .gf2 import BitMatrix, low_bit
from .hypergraph import Hyperedge, faces

log = logging.getLogger(__name__)

KINDS = ("inf", "hat")
MODES = ("filtered", "literal")
# Guard for the literal full row universe: C(|V|, k+1) rows.
MAX_FULL_ROWS = 2_000_000


@dataclass(frozen=True, order=False)
class Bar:
    dim: int
    kind: str
    birth: Grade
    death: Grade
    edge: Hyperedge | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown bar kind {self.kind!r}")
        if not self.birth < self.death:
            raise ValueError(f"bar needs birth < death, got {self.birth} >= {self.death}")
        if self.kind == "inf" and not self.birth.finite:
            raise ValueError("embedded-homology bars are born at a finite grade")

    @property
    def infinite(self) -> bool:
        return not self.death.finite

    def alive(self, t: Grade, r: Grade) -> bool:
        """Whether the bar spans ``[t, r]``: born by ``t`` and still alive at ``r``."""
        return self.birth <= t and self.death > r

    def sort_key(self):
        return (self.dim, KINDS.index(self.kind), self.birth, self.death, self.edge or ())


def sort_bars(bars: Iterable[Bar]) -> list[Bar]:
    return sorted(bars, key=Bar.sort_key)


@dataclass(frozen=True)
class DimMatrix:
    k: int
    row_edges: tuple[Hyperedge, ...]
    col_edges: tuple[Hyperedge, ...]
    row_grades: tuple[Grade, ...]
    col_grades: tuple[Grade, ...]
    matrix: BitMatrix


@dataclass(frozen=True)
class PivotSet:
    """Pivot pairs ``(row, column)`` plus the reduced columns they came from."""

    pairs: tuple[tuple[int, int], ...]
    columns: tuple[int, ...] = ()

    def __post_init__(self):
        rows = [i for i, _ in self.pairs]
        cols = [j for _, j in self.pairs]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("a row or column carries two pivots")

    @property
    def row_to_col(self) -> dict[int, int]:
        return dict(self.pairs)

    @property
    def pivot_columns(self) -> set[int]:
        return {j for _, j in self.pairs}

    def __len__(self):
        return len(self.pairs)


def _order_key(f: Filtration, e: Hyperedge):
    return (f.grade(e).key, e)


def build_dim_matrix(f: Filtration, k: int, rows: str = "faces") -> DimMatrix:
    """Boundary matrix from dimension ``k+1`` to ``k``.

    ``rows="faces"`` keeps finite ``k``-hyperedges and faces of columns;
    every other row is infinite and entry-free, so it can neither pivot nor
    emit a bar.  ``rows="all"`` uses every ``(k+1)``-subset of the roster.
    """
    if k < 0:
        raise ValueError("dimension must be non-negative")
    if k + 1 > f.max_dim:
        raise ValueError(f"dimension {k} needs hyperedges of dimension {k + 1} "
                         f"beyond max_dim={f.max_dim}")
    cols = sorted(f.finite_edges(k + 1), key=lambda e: _order_key(f, e))
    if rows == "all":
        n = len(f.roster)
        if comb(n, k + 1) > MAX_FULL_ROWS:
            raise ValueError(f"full row universe of C({n},{k + 1}) rows is too large")
        universe = set(combinations(range(n), k + 1))
    elif rows == "faces":
        universe = set(f.finite_edges(k))
        for c in cols:
            universe.update(faces(c))
    else:
        raise ValueError(f"unknown row universe {rows!r}")
    row_edges = sorted(universe, key=lambda e: _order_key(f, e), reverse=True)
    index = {e: i for i, e in enumerate(row_edges)}
    columns = []
    for c in cols:
        bits = 0
        for face in faces(c):
            bits |= 1 << index[face]
        columns.append(bits)
    return DimMatrix(
        k=k,
        row_edges=tuple(row_edges),
        col_edges=tuple(cols),
        row_grades=tuple(f.grade(e) for e in row_edges),
        col_grades=tuple(f.grade(e) for e in cols),
        matrix=BitMatrix(len(row_edges), len(cols), tuple(columns)),
    )


def compute_pivot(m: DimMatrix | BitMatrix) -> PivotSet:
    """Row-by-row pivot search, following the published pseudo-code step for step.

    For each row take the smallest non-pivot column with a 1 there, record
    the pivot, and add that column to every later non-pivot column with a 1
    in the same row.  Quadratic in the matrix size; see ``reduce_pivots``.
    """
    mat = m.matrix if isinstance(m, DimMatrix) else m
    cols = list(mat.columns)
    is_pivot = [False] * mat.cols
    pairs = []
    for i in range(mat.rows):
        bit = 1 << i
        j = next((j for j in range(mat.cols) if not is_pivot[j] and cols[j] & bit), None)
        if j is None:
            continue
        pairs.append((i, j))
        is_pivot[j] = True
        for k in range(j + 1, mat.cols):
            if not is_pivot[k] and cols[k] & bit:
                cols[k] ^= cols[j]
    return PivotSet(tuple(pairs), tuple(cols))


def reduce_pivots(m: DimMatrix | BitMatrix) -> PivotSet:
    """Same pivot set as ``compute_pivot`` via left-to-right column reduction.

    Both procedures only add earlier columns to later ones and finish with
    every nonzero column topped (first nonzero row) by its own pivot row, so
    the pairs are the matrix's unique rank-profile pivots.
    """
    mat = m.matrix if isinstance(m, DimMatrix) else m
    reduced = list(mat.columns)
    owner: dict[int, int] = {}
    for j in range(mat.cols):
        c = reduced[j]
        while c:
            p = low_bit(c)
            other = owner.get(p)
            if other is None:
                owner[p] = j
                break
            c ^= reduced[other]
        reduced[j] = c
    pairs = sorted(owner.items())
    return PivotSet(tuple(pairs), tuple(reduced))


PivotFn = Callable[[DimMatrix], PivotSet]


def negative_edges(dm: DimMatrix, pivots: PivotSet) -> set[Hyperedge]:
    """Column hyperedges that pivot: their arrival kills a class one dimension down."""
    return {dm.col_edges[j] for j in pivots.pivot_columns}


def negative_rows(f: Filtration, k: int, pivot_fn: PivotFn = reduce_pivots) -> set[Hyperedge]:
    """Finite ``k``-hyperedges that are pivot columns of the dimension ``k-1`` matrix."""
    if k < 1:
        return set()
    dm = build_dim_matrix(f, k - 1)
    return negative_edges(dm, pivot_fn(dm))


def extract_bars(f: Filtration, dm: DimMatrix, pivots: PivotSet, mode: str = "filtered",
                 negative: set[Hyperedge] | None = None) -> list[Bar]:
    """Read bars off the pivot pairs of one dimension matrix.

    Filtered mode skips rows listed in ``negative`` (computed from the
    dimension below when not given); literal mode emits a pair for every row.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "filtered" and negative is None:
        negative = negative_rows(f, dm.k)
    row_to_col = pivots.row_to_col
    bars = []
    for i, e in enumerate(dm.row_edges):
        if mode == "filtered" and e in negative:
            continue
        birth = dm.row_grades[i]
        j = row_to_col.get(i)
        death = dm.col_grades[j] if j is not None else INF
        if birth < death:
            bars.append(Bar(dm.k, "inf", birth, death, e))
        elif death < birth:
            bars.append(Bar(dm.k, "hat", death, birth, e))
    return bars


def compute_barcodes(f: Filtration, max_k: int, mode: str = "filtered", rows: str = "faces",
                     pivot_fn: PivotFn = reduce_pivots) -> list[Bar]:
    """Barcodes in dimensions ``0..max_k``, in deterministic order.

    Dimensions run upward so each one can reuse the pivot columns of the
    previous matrix as its negative rows.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if max_k + 1 > f.max_dim:
        raise ValueError(f"max_k={max_k} needs hyperedges of dimension {max_k + 1} "
                         f"beyond max_dim={f.max_dim}")
    bars: list[Bar] = []
    negative: set[Hyperedge] = set()
    for k in range(max_k + 1):
        dm = build_dim_matrix(f, k, rows=rows)
        pivots = pivot_fn(dm)
        log.debug("dim %d: %d rows, %d cols, %d pivots",
                  k, dm.matrix.rows, dm.matrix.cols, len(pivots))
        bars.extend(extract_bars(f, dm, pivots, mode, negative))
        negative = negative_edges(dm, pivots)
    return sort_bars(bars)


def rank_function(bars: Iterable[Bar], dim: int, kind: str, t: Grade, r: Grade) -> int:
    """Number of bars of one dimension and kind alive over ``[t, r]``."""
    return sum(1 for b in bars if b.dim == dim and b.kind == kind and b.alive(t, r))


@dataclass(frozen=True)
class ModuleSummand:
    """``Σ^start R[t]`` (free) or ``Σ^start R[t]/(t^length)`` (torsion)."""

    kind: str
    start: int
    length: int | None = None

    def __post_init__(self):
        if self.kind not in ("free", "torsion"):
            raise ValueError(f"unknown summand kind {self.kind!r}")
        if self.kind == "torsion" and (self.length is None or self.length < 1):
            raise ValueError("torsion summands need length >= 1")


def decompose(bars: Sequence[Bar], critical_grades: Sequence[Grade]) -> list[ModuleSummand]:
    """Graded-module summands of a barcode, indexing grades by ``critical_grades``."""
    index = {g: i for i, g in enumerate(critical_grades)}

    def at(g):
        try:
            return index[g]
        except KeyError:
            raise ValueError(f"bar endpoint {g!r} is not a critical grade") from None

    out = []
    for b in bars:
        start = at(b.birth)
        if b.infinite:
            out.append(ModuleSummand("free", start))
        else:
            out.append(ModuleSummand("torsion", start, at(b.death) - start))
    return out


def recompose(summands: Sequence[ModuleSummand], critical_grades: Sequence[Grade]) -> list[tuple[Grade, Grade]]:
    """Inverse of ``decompose``: ``(alpha, inf)`` and ``(beta, beta + gamma)`` intervals."""
    out = []
    for s in summands:
        birth = critical_grades[s.start]
        death = INF if s.kind == "free" else critical_grades[s.start + s.length]
        out.append((birth, death))
    return out

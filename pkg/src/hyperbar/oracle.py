"""Brute-force persistent Betti numbers straight from the subspace definitions.

Everything here works in the ambient simplex spaces over the whole roster,
so it is only usable on small rosters.  It shares no code with the engine's
matrix reduction and is the reference the engine is tested against.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import gf2
from .engine import Bar, sort_bars
from .filtration import INF, Filtration, Grade
from .gf2 import Subspace
from .hypergraph import (
    MAX_AMBIENT_VERTICES,
    Hypergraph,
    RosterTooLarge,
    boundary_image,
    cycle_space,
    edge_space,
    inf_chain_space,
    sup_chain_space,
)


@dataclass(frozen=True)
class GradeSnapshot:
    t: Grade
    hypergraph: Hypergraph
    edges: dict[int, Subspace]
    inf: dict[int, Subspace]
    sup: dict[int, Subspace]


def snapshot(f: Filtration, t: Grade, max_dim: int | None = None,
             cap: int = MAX_AMBIENT_VERTICES) -> GradeSnapshot:
    """Subspaces of the hypergraph of hyperedges graded ``<= t``.

    ``t = inf`` gives the final hypergraph: every finitely graded hyperedge.
    """
    if len(f.roster) > cap:
        raise RosterTooLarge(f"oracle roster cap is {cap} vertices, got {len(f.roster)}")
    if not t.finite:
        finite = [g for g in f.critical_grades()]
        t = finite[-1] if finite else t
    h = f.at(t) if t.finite else Hypergraph(f.roster)
    top = f.max_dim if max_dim is None else max_dim
    dims = range(top + 1)
    return GradeSnapshot(
        t=t,
        hypergraph=h,
        edges={n: edge_space(h, n) for n in dims},
        inf={n: inf_chain_space(h, n) for n in dims},
        sup={n: sup_chain_space(h, n) for n in dims},
    )


def _check_order(t: Grade, r: Grade) -> None:
    if r < t:
        raise ValueError(f"need t <= r, got t={t!r}, r={r!r}")


def _persistent(f, n, t, r, side, snaps=None):
    _check_order(t, r)
    at_t = snaps[t] if snaps else snapshot(f, t, max_dim=n + 1)
    at_r = snaps[r] if snaps else snapshot(f, r, max_dim=n + 1)
    h = at_t.hypergraph
    cycles = cycle_space(h, n, getattr(at_t, side)[n])
    bounds = boundary_image(h, n + 1, at_r.inf[n + 1])
    return cycles.dim - gf2.subspace_intersection(cycles, bounds).dim


def persistent_betti_inf(f: Filtration, n: int, t: Grade, r: Grade, snaps=None) -> int:
    """Rank of the map on embedded homology from grade ``t`` to grade ``r``."""
    return _persistent(f, n, t, r, "inf", snaps)


def persistent_betti_hat(f: Filtration, n: int, t: Grade, r: Grade, snaps=None) -> int:
    """Rank of the map on Ĥ from grade ``t`` to grade ``r``."""
    return _persistent(f, n, t, r, "sup", snaps)


@dataclass
class PersistentBettiTable:
    """Persistent Betti numbers at every pair of critical grades ``g_i <= g_j``.

    Values are constant between critical grades, so a bar dying at ``inf``
    is one still alive at the last critical grade.
    """

    dim: int
    grades: list[Grade]
    inf: dict[tuple[int, int], int] = field(default_factory=dict)
    hat: dict[tuple[int, int], int] = field(default_factory=dict)

    def additional(self) -> dict[tuple[int, int], int]:
        return {ij: self.hat[ij] - self.inf[ij] for ij in self.inf}


def betti_table(f: Filtration, n: int, grades: Sequence[Grade] | None = None) -> PersistentBettiTable:
    grades = list(f.critical_grades() if grades is None else grades)
    snaps = {g: snapshot(f, g, max_dim=n + 1) for g in grades}
    table = PersistentBettiTable(n, grades)
    for i, t in enumerate(grades):
        for j in range(i, len(grades)):
            r = grades[j]
            table.inf[i, j] = persistent_betti_inf(f, n, t, r, snaps)
            table.hat[i, j] = persistent_betti_hat(f, n, t, r, snaps)
    return table


class NotRealizable(ValueError):
    pass


def _bars_from_rank(rank: dict[tuple[int, int], int], grades: list[Grade], dim: int, kind: str) -> list[Bar]:
    m = len(grades)

    def b(i, j):
        if i < 0:
            return 0
        return rank[i, j]

    bars = []
    for i in range(m):
        for j in range(i + 1, m + 1):
            if j == m:
                mult = b(i, m - 1) - b(i - 1, m - 1)
                death = INF
            else:
                mult = b(i, j - 1) - b(i - 1, j - 1) - b(i, j) + b(i - 1, j)
                death = grades[j]
            if mult < 0:
                raise NotRealizable(
                    f"negative multiplicity {mult} for [{grades[i]!r}, {death!r}) in {kind} table")
            bars.extend(Bar(dim, kind, grades[i], death) for _ in range(mult))
    return bars


def bars_from_betti(table: PersistentBettiTable) -> tuple[list[Bar], list[Bar]]:
    """Interval multisets whose rank functions reproduce the table.

    Returns the embedded-homology bars and the additional Ĥ bars, the latter
    from the entrywise difference ``hat - inf``.
    """
    inf_bars = _bars_from_rank(table.inf, table.grades, table.dim, "inf")
    hat_bars = _bars_from_rank(table.additional(), table.grades, table.dim, "hat")
    for name, rank, bars in (("inf", table.inf, inf_bars), ("hat", table.additional(), hat_bars)):
        for (i, j), v in rank.items():
            alive = sum(1 for bar in bars if bar.alive(table.grades[i], table.grades[j]))
            if alive != v:
                raise NotRealizable(f"{name} table entry ({i},{j})={v} not reproduced ({alive})")
    return inf_bars, hat_bars


def oracle_barcodes(f: Filtration, max_k: int) -> list[Bar]:
    bars = []
    for n in range(max_k + 1):
        inf_bars, hat_bars = bars_from_betti(betti_table(f, n))
        bars.extend(inf_bars)
        bars.extend(hat_bars)
    return sort_bars(bars)


def classical_persistence(f: Filtration, max_k: int) -> list[Bar]:
    """Textbook persistence of a simplicial filtration by standard column reduction.

    All finite simplices are ordered by (grade, dimension, members); each
    boundary column is reduced against earlier ones until its youngest face
    is unclaimed.
    """
    if not f.is_simplicial:
        raise ValueError("classical persistence needs a simplicial filtration")
    simplices = [e for k in range(min(max_k + 1, f.max_dim) + 1) for e in f.finite_edges(k)]
    simplices.sort(key=lambda e: (f.grade(e), len(e), e))
    position = {s: i for i, s in enumerate(simplices)}
    low_owner: dict[int, int] = {}
    columns: list[set[int]] = []
    for j, s in enumerate(simplices):
        col = set()
        if len(s) > 1:
            col = {position[s[:i] + s[i + 1:]] for i in range(len(s))}
        while col:
            low = max(col)
            if low not in low_owner:
                low_owner[low] = j
                break
            col ^= columns[low_owner[low]]
        columns.append(col)
    killed = {}
    for low, j in low_owner.items():
        killed[low] = j
    negative = set(low_owner.values())
    bars = []
    for i, s in enumerate(simplices):
        dim = len(s) - 1
        if i in negative or dim > max_k:
            continue
        birth = f.grade(s)
        death = f.grade(simplices[killed[i]]) if i in killed else INF
        if birth < death:
            bars.append(Bar(dim, "inf", birth, death, s))
    return sort_bars(bars)


@dataclass(frozen=True)
class Discrepancy:
    dim: int
    kind: str
    birth: Grade
    death: Grade
    present_in: str
    count: int = 1

    def __str__(self):
        return (f"dim {self.dim} {self.kind} [{self.birth.render()}, {self.death.render()}) "
                f"only in {self.present_in} (x{self.count})")


@dataclass(frozen=True)
class DiffReport:
    entries: tuple[Discrepancy, ...] = ()

    def __bool__(self):
        return bool(self.entries)

    @property
    def empty(self) -> bool:
        return not self.entries

    def render(self) -> str:
        if not self.entries:
            return "engine and oracle agree\n"
        return "".join(f"{d}\n" for d in self.entries)


def _bar_counter(bars: Iterable[Bar]) -> Counter:
    return Counter((b.dim, b.kind, b.birth, b.death) for b in bars)


def compare(engine_bars: Iterable[Bar], oracle_bars: Iterable[Bar]) -> DiffReport:
    a, b = _bar_counter(engine_bars), _bar_counter(oracle_bars)
    out = []
    for side, diff in (("engine", a - b), ("oracle", b - a)):
        for (dim, kind, birth, death), c in diff.items():
            out.append(Discrepancy(dim, kind, birth, death, side, c))
    out.sort(key=lambda d: (d.dim, d.kind, d.birth, d.death, d.present_in))
    return DiffReport(tuple(out))

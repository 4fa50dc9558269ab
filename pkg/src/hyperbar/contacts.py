"""From timestamped face-to-face contacts to a hypergraph filtration.

Records are bucketed into fixed windows; in each window every maximal
clique of the contact graph is one group meeting and bumps that group's
meeting count ``T_e`` by one.  Subgroups of a meeting get nothing.  A group
seen ``T_e`` times enters the filtration at ``log(max T) - log(T_e)``.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import IO, Iterable

import networkx as nx

from .filtration import ZERO, Filtration, FormatError, Grade

WINDOW_SECONDS = 20
SIZE_CAP = 5


@dataclass(frozen=True)
class ContactRecord:
    t: int
    i: str
    j: str

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("timestamps are non-negative")
        if self.i == self.j:
            raise ValueError("a contact needs two distinct individuals")


def parse_contacts(source: str | bytes | IO) -> list[ContactRecord]:
    """Parse ``t i j`` lines; blank and ``#`` lines are skipped, extra columns ignored."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    records = []
    for lineno, line in enumerate(source.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) < 3:
            raise FormatError(f"expected '<t> <i> <j>', got {s!r}", lineno)
        try:
            t = int(parts[0])
        except ValueError:
            raise FormatError(f"timestamp {parts[0]!r} is not an integer", lineno) from None
        if t < 0:
            raise FormatError(f"negative timestamp {t}", lineno)
        if parts[1] == parts[2]:
            raise FormatError(f"self-contact of {parts[1]!r}", lineno)
        records.append(ContactRecord(t, parts[1], parts[2]))
    return records


@dataclass(frozen=True)
class WindowGraph:
    index: int
    edges: frozenset[tuple[str, str]]

    @property
    def vertices(self) -> set[str]:
        return {v for e in self.edges for v in e}


def window_graphs(records: Iterable[ContactRecord], window_len: int = WINDOW_SECONDS) -> list[WindowGraph]:
    """Tumbling windows aligned at the first timestamp; only non-empty windows are returned."""
    if window_len <= 0:
        raise ValueError("window length must be positive")
    records = list(records)
    if not records:
        return []
    t0 = min(r.t for r in records)
    buckets: dict[int, set[tuple[str, str]]] = defaultdict(set)
    for r in records:
        buckets[(r.t - t0) // window_len].add((r.i, r.j) if r.i < r.j else (r.j, r.i))
    return [WindowGraph(w, frozenset(buckets[w])) for w in sorted(buckets)]


def _cliques(g: WindowGraph, size_cap: int) -> tuple[set[tuple[str, ...]], int]:
    if size_cap < 2:
        raise ValueError("size_cap must be at least 2")
    graph = nx.Graph()
    graph.add_edges_from(g.edges)
    out: set[tuple[str, ...]] = set()
    truncated = 0
    for clique in nx.find_cliques(graph):
        members = tuple(sorted(clique))
        if len(members) < 2:
            continue
        if len(members) > size_cap:
            truncated += 1
            out.update(combinations(members, size_cap))
        else:
            out.add(members)
    return out, truncated


def maximal_cliques(g: WindowGraph, size_cap: int = SIZE_CAP) -> set[tuple[str, ...]]:
    """Inclusion-maximal cliques with at least two members.

    A clique larger than ``size_cap`` is replaced by all of its
    ``size_cap``-subsets; ``tally_meetings`` counts how often that happens.
    """
    return _cliques(g, size_cap)[0]


@dataclass
class MeetingTally:
    roster: tuple[str, ...]
    counts: dict[tuple[str, ...], int] = field(default_factory=dict)
    truncated: int = 0

    @property
    def max_count(self) -> int:
        return max(self.counts.values(), default=0)


def tally_meetings(windows: Iterable[WindowGraph], size_cap: int = SIZE_CAP) -> MeetingTally:
    counts: Counter = Counter()
    roster: set[str] = set()
    truncated = 0
    for g in windows:
        roster |= g.vertices
        cliques, cut = _cliques(g, size_cap)
        truncated += cut
        counts.update(cliques)
    return MeetingTally(tuple(sorted(roster)), dict(counts), truncated)


def build_filtration(tally: MeetingTally, log_base: float = math.e,
                     max_dim: int | None = None) -> Filtration:
    """Grade each observed group ``log(max T / T_e)``; singletons at zero, the rest infinite."""
    if not tally.counts:
        raise ValueError("cannot build a filtration from an empty tally")
    top = tally.max_count
    index = {v: i for i, v in enumerate(tally.roster)}
    grades = {(i,): ZERO for i in range(len(tally.roster))}
    for members, count in tally.counts.items():
        grades[tuple(index[v] for v in members)] = Grade.log_ratio(top, count, log_base)
    if max_dim is None:
        max_dim = max(max(len(m) for m in tally.counts) - 1, 2)
    return Filtration(tally.roster, grades, max_dim=max_dim)


def ingest(source, window_len: int = WINDOW_SECONDS, size_cap: int = SIZE_CAP,
           log_base: float = math.e) -> tuple[MeetingTally, Filtration]:
    records = parse_contacts(source)
    tally = tally_meetings(window_graphs(records, window_len), size_cap)
    return tally, build_filtration(tally, log_base, max_dim=max(size_cap - 1, 2))

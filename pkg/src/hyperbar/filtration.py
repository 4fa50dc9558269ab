"""Grades and hypergraph filtrations, plus the ``hyperedge,grade`` file format."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Mapping

from .hypergraph import Hyperedge, Hypergraph, faces, make_edge


@total_ordering
@dataclass(frozen=True, eq=False)
class Grade:
    """A filtration value.

    ``key`` carries the exact order (an int, Fraction or float; ``inf`` for
    infinity) and ``value`` the real number used for display.  Contact grades
    ``log(maxT / T_e)`` use ``key = Fraction(maxT, T_e) - 1`` so ties and
    ordering never depend on floating point.  Grade zero has key 0 in every
    family; other grades are only comparable within one filtration.
    """

    key: object
    value: float

    @classmethod
    def real(cls, x: float) -> "Grade":
        x = float(x)
        if math.isnan(x) or x < 0:
            raise ValueError(f"grade must be a non-negative real or inf, got {x}")
        return INF if math.isinf(x) else cls(x, x)

    @classmethod
    def log_ratio(cls, num: int, den: int, base: float = math.e) -> "Grade":
        """The grade ``log(num / den)`` with exact ordering by the ratio."""
        if den <= 0:
            return INF
        r = Fraction(num, den)
        if r < 1:
            raise ValueError("log-ratio grades need num >= den")
        # shifted so that log(1) = 0 coincides with the real grade 0
        return cls(r - 1, math.log(r) / math.log(base))

    @property
    def finite(self) -> bool:
        return not (isinstance(self.key, float) and math.isinf(self.key))

    def __eq__(self, other):
        if not isinstance(other, Grade):
            return NotImplemented
        return self.key == other.key

    def __lt__(self, other):
        if not isinstance(other, Grade):
            return NotImplemented
        return self.key < other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "Grade(inf)" if not self.finite else f"Grade({self.value:.9g})"

    def render(self) -> str:
        return "inf" if not self.finite else f"{self.value:.9g}"


INF = Grade(math.inf, math.inf)
ZERO = Grade(0.0, 0.0)


def parse_grade(text: str) -> Grade:
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity"):
        return INF
    return Grade.real(float(t))


@dataclass(frozen=True)
class Filtration:
    """Grades on hyperedges over a fixed roster.

    Hyperedges not listed have grade infinity, except singletons, which sit
    at ``origin`` (grade zero) unless graded explicitly.
    """

    roster: tuple[str, ...]
    grades: Mapping[Hyperedge, Grade]
    max_dim: int = 4
    origin: Grade = ZERO

    def __post_init__(self):
        n = len(self.roster)
        if len(set(self.roster)) != n:
            raise ValueError("vertex ids must be unique")
        for e in self.grades:
            if not e or list(e) != sorted(set(e)) or e[0] < 0 or e[-1] >= n:
                raise ValueError(f"bad hyperedge {e!r}")
            if len(e) - 1 > self.max_dim:
                raise ValueError(f"hyperedge {e!r} exceeds max_dim={self.max_dim}")

    @classmethod
    def from_labels(cls, roster: Iterable[str], grades: Mapping[Iterable[str] | str, Grade | float],
                    max_dim: int = 4, origin: Grade = ZERO) -> "Filtration":
        """Build from labelled edges; a string key is split into single-character labels."""
        roster = tuple(roster)
        index = {v: i for i, v in enumerate(roster)}
        out = {}
        for e, g in grades.items():
            members = list(e)
            out[make_edge(index[v] for v in members)] = g if isinstance(g, Grade) else Grade.real(g)
        return cls(roster, out, max_dim, origin)

    def grade(self, e: Hyperedge) -> Grade:
        g = self.grades.get(e)
        if g is not None:
            return g
        return self.origin if len(e) == 1 else INF

    def finite_edges(self, k: int) -> list[Hyperedge]:
        """Finite-grade hyperedges of dimension ``k``, lexicographic."""
        if k == 0:
            return [(i,) for i in range(len(self.roster)) if self.grade((i,)).finite]
        return sorted(e for e, g in self.grades.items() if len(e) == k + 1 and g.finite)

    def critical_grades(self) -> list[Grade]:
        gs = {g for g in self.grades.values() if g.finite}
        if any((i,) not in self.grades for i in range(len(self.roster))):
            gs.add(self.origin)
        return sorted(gs)

    def at(self, t: Grade) -> Hypergraph:
        """The hypergraph of all hyperedges with grade <= t."""
        edges = {e for e, g in self.grades.items() if g <= t}
        edges.update((i,) for i in range(len(self.roster))
                     if (i,) not in self.grades and self.origin <= t)
        return Hypergraph(self.roster, frozenset(edges))

    @property
    def is_simplicial(self) -> bool:
        """True iff no finite hyperedge has a face graded later than itself."""
        for e, g in self.grades.items():
            if g.finite and any(self.grade(f) > g for f in faces(e)):
                return False
        return True

    def label(self, e: Hyperedge) -> str:
        return "|".join(self.roster[i] for i in e)


def write_filtration(f: Filtration) -> str:
    """Render as ``hyperedge,grade`` CSV sorted by (grade, lexicographic labels)."""
    rows = []
    for e, g in f.grades.items():
        labels = sorted(f.roster[i] for i in e)
        rows.append((g, labels))
    rows.sort(key=lambda r: (r[0], r[1]))
    buf = io.StringIO()
    buf.write("hyperedge,grade\n")
    for g, labels in rows:
        buf.write(f"{'|'.join(labels)},{g.render()}\n")
    return buf.getvalue()


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def read_filtration(text: str, max_dim: int | None = None,
                    roster: Iterable[str] | None = None, at_least: int = 0) -> Filtration:
    """Parse a ``hyperedge,grade`` file.

    The roster is every label mentioned (sorted) unless given.  Singleton
    rows set vertex grades explicitly; unlisted vertices get grade zero.
    Without ``max_dim`` the cap is the largest listed dimension, raised to
    ``at_least``.
    """
    entries = []
    labels: set[str] = set()
    lines = text.splitlines()
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if lineno == 1 and s.replace(" ", "") == "hyperedge,grade":
            continue
        parts = s.split(",")
        if len(parts) != 2:
            raise FormatError(f"expected 'hyperedge,grade', got {s!r}", lineno)
        members = [m.strip() for m in parts[0].split("|")]
        if not all(members) or len(set(members)) != len(members):
            raise FormatError(f"bad hyperedge {parts[0]!r}", lineno)
        try:
            g = parse_grade(parts[1])
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from None
        entries.append((members, g, lineno))
        labels.update(members)
    if roster is None:
        roster = sorted(labels)
    roster = tuple(roster)
    index = {v: i for i, v in enumerate(roster)}
    top = max((len(m) - 1 for m, _, _ in entries), default=0)
    cap = max(top, at_least) if max_dim is None else max_dim
    grades = {}
    for members, g, lineno in entries:
        if len(members) - 1 > cap:
            raise FormatError(f"hyperedge of dimension {len(members) - 1} exceeds max_dim={cap}", lineno)
        e = make_edge(index[m] for m in members)
        if e in grades:
            raise FormatError(f"duplicate hyperedge {'|'.join(members)}", lineno)
        grades[e] = g
    return Filtration(roster, grades, max_dim=cap)

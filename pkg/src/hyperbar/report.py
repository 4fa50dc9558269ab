"""Barcode files and summary statistics."""

from __future__ import annotations

import csv
import io
import json
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .engine import KINDS, Bar, sort_bars
from .filtration import FormatError, parse_grade

CSV_HEADER = ["dim", "kind", "birth", "death"]


def export_barcodes(bars: Iterable[Bar], fmt: str = "csv") -> str:
    bars = sort_bars(bars)
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(",".join(CSV_HEADER) + "\n")
        for b in bars:
            buf.write(f"{b.dim},{b.kind},{b.birth.render()},{b.death.render()}\n")
        return buf.getvalue()
    if fmt == "json":
        def val(g):
            return g.value if g.finite else "inf"
        rows = [{"dim": b.dim, "kind": b.kind, "birth": val(b.birth), "death": val(b.death)}
                for b in bars]
        return json.dumps(rows, indent=1) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def read_barcodes(text: str) -> list[Bar]:
    """Parse a barcode file; JSON if it starts with ``[``, CSV otherwise."""
    if text.lstrip().startswith("["):
        out = []
        for n, row in enumerate(json.loads(text)):
            try:
                out.append(_bar(row["dim"], row["kind"], str(row["birth"]), str(row["death"])))
            except (KeyError, ValueError) as exc:
                raise FormatError(f"bar {n}: {exc}") from None
        return out
    reader = csv.reader(io.StringIO(text))
    out = []
    for lineno, row in enumerate(reader, start=1):
        if not row or (lineno == 1 and [c.strip() for c in row] == CSV_HEADER):
            continue
        if len(row) != 4:
            raise FormatError(f"expected 4 fields, got {len(row)}", lineno)
        try:
            out.append(_bar(row[0], row[1].strip(), row[2], row[3]))
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from None
    return out


def _bar(dim, kind, birth: str, death: str) -> Bar:
    return Bar(int(dim), kind, parse_grade(birth), parse_grade(death))


@dataclass(frozen=True)
class StatsSummary:
    """Dimension-``dim`` counts: embedded-homology bars ``N`` (``n`` of them
    infinite) and Ĥ bars ``N_hat`` (``n_hat`` infinite)."""

    dim: int
    N: int
    n: int
    N_hat: int
    n_hat: int

    def __post_init__(self):
        if not (0 <= self.n <= self.N and 0 <= self.n_hat <= self.N_hat):
            raise ValueError("need 0 <= n <= N and 0 <= n_hat <= N_hat")

    @property
    def total(self) -> int:
        return self.N + self.N_hat

    @property
    def prop_inf(self) -> Fraction:
        return Fraction(self.n, self.total) if self.total else Fraction(0)

    @property
    def prop_hat(self) -> Fraction:
        return Fraction(self.n_hat, self.total) if self.total else Fraction(0)

    def as_dict(self) -> dict:
        return {
            "dim": self.dim, "N": self.N, "n": self.n,
            "N_hat": self.N_hat, "n_hat": self.n_hat,
            "prop_inf": float(self.prop_inf), "prop_hat": float(self.prop_hat),
            "prop_inf_exact": str(self.prop_inf), "prop_hat_exact": str(self.prop_hat),
        }


def stats(bars: Iterable[Bar], dim: int) -> StatsSummary:
    counts = {(k, inf): 0 for k in KINDS for inf in (False, True)}
    for b in bars:
        if b.dim == dim:
            counts[b.kind, b.infinite] += 1
    return StatsSummary(
        dim,
        N=counts["inf", False] + counts["inf", True], n=counts["inf", True],
        N_hat=counts["hat", False] + counts["hat", True], n_hat=counts["hat", True],
    )


def length_summary(bars: Iterable[Bar], dim: int) -> dict:
    """Finite bar lengths per kind: count, min, median, max."""
    out = {}
    for kind in KINDS:
        lengths = sorted(b.death.value - b.birth.value for b in bars
                         if b.dim == dim and b.kind == kind and not b.infinite)
        out[kind] = {
            "count": len(lengths),
            "min": lengths[0] if lengths else None,
            "median": statistics.median(lengths) if lengths else None,
            "max": lengths[-1] if lengths else None,
        }
    return out


def betti_at(bars: Iterable[Bar], dim: int, t: float, r: float | None = None) -> dict:
    """Bars of each kind alive over ``[t, r]`` (``r`` defaults to ``t``), by real value."""
    r = t if r is None else r
    bars = list(bars)
    return {kind: sum(1 for b in bars if b.dim == dim and b.kind == kind
                      and b.birth.value <= t and b.death.value > r)
            for kind in KINDS}


def stats_json(bars: Sequence[Bar], dim: int, betti_grades: Sequence[float] = ()) -> str:
    bars = list(bars)
    doc = stats(bars, dim).as_dict()
    doc["lengths"] = length_summary(bars, dim)
    if betti_grades:
        doc["betti"] = [{"t": t, **betti_at(bars, dim, t)} for t in betti_grades]
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


TABLE_HEADER = ["dataset", "N", "n", "N_hat", "n_hat", "prop_inf", "prop_hat"]


def summary_table(rows: Sequence[tuple[str, StatsSummary]]) -> str:
    buf = io.StringIO()
    buf.write(",".join(TABLE_HEADER) + "\n")
    for name, s in rows:
        buf.write(f"{name},{s.N},{s.n},{s.N_hat},{s.n_hat},"
                  f"{float(s.prop_inf):.4f},{float(s.prop_hat):.4f}\n")
    return buf.getvalue()

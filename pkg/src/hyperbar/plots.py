"""Matplotlib figures: barcode plots and the infinite-bar proportion chart.

SVG output is made byte-stable by fixing the id hash salt and dropping the
date metadata.
"""

from __future__ import annotations

import io
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .engine import Bar, sort_bars  # noqa: E402
from .report import StatsSummary  # noqa: E402

COLORS = {"inf": "#2e8b57", "hat": "#1f4e9c"}
LABELS = {"inf": "embedded (H inf)", "hat": "additional Ĥ"}
_RC = {"svg.hashsalt": "hyperbar", "svg.fonttype": "path", "font.size": 9}


def _save(fig, fmt: str) -> bytes:
    buf = io.BytesIO()
    meta = {"Date": None} if fmt == "svg" else {"Software": None} if fmt == "png" else None
    fig.savefig(buf, format=fmt, metadata=meta)
    plt.close(fig)
    return buf.getvalue()


def draw_barcodes(ax, bars: Iterable[Bar], grade_axis: tuple[float, float] | None = None) -> None:
    """Draw one horizontal bar per interval; infinite bars end in an arrow at the right edge."""
    bars = sort_bars(bars)
    finite = [g.value for b in bars for g in (b.birth, b.death) if g.finite]
    if grade_axis is None:
        hi = max(finite, default=0.0)
        grade_axis = (0.0, hi * 1.15 if hi > 0 else 1.0)
    lo, hi = grade_axis
    edge = hi - 0.04 * (hi - lo)
    seen = set()
    for y, b in enumerate(reversed(bars)):
        color = COLORS[b.kind]
        label = None
        if b.kind not in seen:
            label = LABELS[b.kind]
            seen.add(b.kind)
        x0 = b.birth.value if b.birth.finite else edge
        if b.infinite:
            ax.annotate("", xy=(hi, y), xytext=(x0, y),
                        arrowprops=dict(arrowstyle="-|>", color=color, lw=2, shrinkA=0, shrinkB=0))
            ax.plot([], [], color=color, lw=2, label=label)
        else:
            ax.plot([x0, b.death.value], [y, y], color=color, lw=2, solid_capstyle="butt", label=label)
    ax.set_xlim(lo, hi)
    ax.set_ylim(-1, max(len(bars), 1))
    ax.set_yticks([])
    ax.set_xlabel("grade")
    if bars:
        ax.legend(loc="lower right", frameon=False)


def render_barcodes(bars: Iterable[Bar], grade_axis: tuple[float, float] | None = None,
                    fmt: str = "svg", title: str | None = None) -> bytes:
    """Barcode figure, one panel per dimension present (a single empty panel if none)."""
    bars = sort_bars(bars)
    dims = sorted({b.dim for b in bars}) or [0]
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(len(dims), 1, figsize=(6, 1.2 + 1.6 * len(dims)), squeeze=False)
        for ax, d in zip(axes[:, 0], dims):
            draw_barcodes(ax, [b for b in bars if b.dim == d], grade_axis)
            ax.set_title(f"dimension {d}", loc="left")
        if title:
            fig.suptitle(title)
        fig.tight_layout()
        return _save(fig, fmt)


def render_svg(bars: Iterable[Bar], grade_axis: tuple[float, float] | None = None) -> str:
    return render_barcodes(bars, grade_axis, "svg").decode("utf-8")


def render_proportions(rows: Sequence[tuple[str, StatsSummary]], fmt: str = "svg") -> bytes:
    """Per-dataset proportions of bars ending at infinity, one series per kind."""
    names = [name for name, _ in rows]
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(max(4, 1.3 * len(rows)), 3.2))
        xs = list(range(len(rows)))
        ax.plot(xs, [float(s.prop_inf) for _, s in rows], "o", color=COLORS["inf"], label="n/(N+N̂)")
        ax.plot(xs, [float(s.prop_hat) for _, s in rows], "o", color="#8b1a1a", label="n̂/(N+N̂)")
        ax.set_xticks(xs)
        ax.set_xticklabels(names)
        ax.set_ylim(0, 1)
        ax.set_ylabel("proportion ending at infinity")
        ax.legend(frameon=False)
        fig.tight_layout()
        return _save(fig, fmt)

"""Command-line entry point: ``hyperbar <subcommand> ...``."""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import contacts, engine, oracle, plots, report, rips, synth
from .filtration import FormatError, read_filtration, write_filtration
from .hypergraph import MAX_AMBIENT_VERTICES, RosterTooLarge

log = logging.getLogger("hyperbar")


class DataError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"{path}: {exc.strerror}") from None


def _write(path: str | None, data: str | bytes) -> None:
    if path is None or path == "-":
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
        else:
            sys.stdout.write(data)
        return
    p = Path(path)
    if isinstance(data, bytes):
        p.write_bytes(data)
    else:
        p.write_text(data, encoding="utf-8")


def _threads() -> int:
    raw = os.environ.get("HYPERBAR_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise DataError(f"HYPERBAR_THREADS must be an integer, got {raw!r}") from None


def _log_base(text: str) -> float:
    if text == "e":
        return math.e
    base = float(text)
    if base <= 1:
        raise argparse.ArgumentTypeError("log base must exceed 1")
    return base


def cmd_ingest(args) -> int:
    tally, filt = contacts.ingest(_read(args.contacts), args.window, args.size_cap, args.log_base)
    if tally.truncated:
        log.warning("%d cliques exceeded size cap %d and were split", tally.truncated, args.size_cap)
    _write(args.output, write_filtration(filt))
    return 0


def _load_filtration(path: str, max_k: int):
    return read_filtration(_read(path), at_least=max_k + 1)


def cmd_compute(args) -> int:
    filt = _load_filtration(args.filtration, args.max_dim)
    bars = engine.compute_barcodes(filt, args.max_dim, mode=args.mode, rows=args.rows)
    _write(args.output, report.export_barcodes(bars, args.format))
    return 0


def cmd_stats(args) -> int:
    bars = report.read_barcodes(_read(args.barcodes))
    _write(None, report.stats_json(bars, args.dim, args.betti_at or ()))
    return 0


def cmd_plot(args) -> int:
    bars = report.read_barcodes(_read(args.barcodes))
    if args.dim is not None:
        bars = [b for b in bars if b.dim == args.dim]
    axis = (0.0, args.xmax) if args.xmax else None
    fmt = Path(args.output).suffix.lstrip(".").lower() or "svg"
    _write(args.output, plots.render_barcodes(bars, axis, fmt))
    return 0


def cmd_rips(args) -> int:
    cloud = rips.parse_points(_read(args.points))
    filt = rips.rips_filtration(cloud, args.rmax, args.max_dim)
    _write(args.output, write_filtration(filt))
    return 0


def cmd_oracle_check(args) -> int:
    filt = _load_filtration(args.filtration, args.max_dim)
    if len(filt.roster) > args.cap:
        print(f"roster of {len(filt.roster)} vertices exceeds oracle cap {args.cap}", file=sys.stderr)
        return 1
    ours = engine.compute_barcodes(filt, args.max_dim)
    truth = oracle.oracle_barcodes(filt, args.max_dim)
    diff = oracle.compare(ours, truth)
    sys.stdout.write(diff.render())
    return 1 if diff else 0


def _dataset(job):
    path, window, size_cap, log_base = job
    tally, filt = contacts.ingest(Path(path).read_text(encoding="utf-8"), window, size_cap, log_base)
    return engine.compute_barcodes(filt, 1)


def cmd_report(args) -> int:
    """Table-style summary for several contact files, with barcodes and figures per dataset."""
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    names = args.names or [Path(p).stem for p in args.contacts]
    if len(names) != len(args.contacts):
        raise DataError("--names must give one name per contact file")
    jobs = [(p, args.window, args.size_cap, args.log_base) for p in args.contacts]
    workers = min(_threads(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_dataset, jobs))
    else:
        results = [_dataset(j) for j in jobs]
    rows = []
    for name, bars in zip(names, results):
        (out / f"{name}_barcodes.csv").write_text(report.export_barcodes(bars))
        (out / f"{name}_barcodes.svg").write_bytes(plots.render_barcodes(bars, title=name))
        rows.append((name, report.stats(bars, 1)))
        log.info("%s: %d bars, %d infinite dim-0", name, len(bars),
                 sum(1 for b in bars if b.dim == 0 and b.infinite))
    (out / "summary.csv").write_text(report.summary_table(rows))
    (out / "proportions.svg").write_bytes(plots.render_proportions(rows))
    sys.stdout.write(report.summary_table(rows))
    return 0


def cmd_synth(args) -> int:
    recs = synth.generate_contacts(args.individuals, args.contacts, seed=args.seed,
                                   clusters=args.clusters)
    _write(args.output, synth.format_contacts(recs))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperbar",
                                description="Persistent embedded and Ĥ homology of hypergraph filtrations.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ingest", help="contact records -> filtration file")
    s.add_argument("contacts")
    s.add_argument("-o", "--output")
    s.add_argument("--window", type=int, default=contacts.WINDOW_SECONDS)
    s.add_argument("--size-cap", type=int, default=contacts.SIZE_CAP)
    s.add_argument("--log-base", type=_log_base, default=math.e)
    s.set_defaults(func=cmd_ingest)

    s = sub.add_parser("compute", help="filtration file -> barcode file")
    s.add_argument("filtration")
    s.add_argument("--max-dim", type=int, default=1)
    s.add_argument("--mode", choices=engine.MODES, default="filtered")
    s.add_argument("--rows", choices=("faces", "all"), default="faces")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_compute)

    s = sub.add_parser("stats", help="barcode file -> JSON statistics")
    s.add_argument("barcodes")
    s.add_argument("--dim", type=int, default=1)
    s.add_argument("--betti-at", type=float, action="append", metavar="T")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("plot", help="barcode file -> figure (svg or png by suffix)")
    s.add_argument("barcodes")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--dim", type=int)
    s.add_argument("--xmax", type=float)
    s.set_defaults(func=cmd_plot)

    s = sub.add_parser("rips", help="point cloud -> Rips filtration file")
    s.add_argument("points")
    s.add_argument("--rmax", type=float, required=True)
    s.add_argument("--max-dim", type=int, default=2)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_rips)

    s = sub.add_parser("oracle-check", help="compare engine barcodes with the brute-force oracle")
    s.add_argument("filtration")
    s.add_argument("--max-dim", type=int, default=1)
    s.add_argument("--cap", type=int, default=MAX_AMBIENT_VERTICES)
    s.set_defaults(func=cmd_oracle_check)

    s = sub.add_parser("report", help="contact files -> summary table, barcodes and figures")
    s.add_argument("contacts", nargs="+")
    s.add_argument("-o", "--output", required=True, help="output directory")
    s.add_argument("--names", nargs="+")
    s.add_argument("--window", type=int, default=contacts.WINDOW_SECONDS)
    s.add_argument("--size-cap", type=int, default=contacts.SIZE_CAP)
    s.add_argument("--log-base", type=_log_base, default=math.e)
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("synth", help="generate a synthetic contact stream")
    s.add_argument("--individuals", type=int, default=60)
    s.add_argument("--contacts", type=int, default=5000)
    s.add_argument("--clusters", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_synth)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (FormatError, DataError, RosterTooLarge, ValueError) as exc:
        print(f"hyperbar {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""
Command line interface.

    untangle recognize INPUT [--emit-certificate FILE] [--stats FILE.csv]
                             [--simplify] [--force-exact]
    untangle bench [PATTERN ...] [--repeat K] [--jobs K] [--out FILE]
                   [--profile FILE] [--simplify] [--force-exact]
    untangle verify [--quick]

INPUT is a gluing-table file or ``corpus:NAME``.  ``recognize`` exits with 0
for a trivial knot, 1 for a non-trivial knot and 2 on any error.
"""
from __future__ import annotations

import argparse
import csv
import io
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path

from . import corpus, verify
from .pipeline import RecognitionError, Result, recognize
from .tri import TriangulationError, serialize

__all__ = ["StatsRecord", "CSV_FIELDS", "main"]

CSV_FIELDS = ["name", "n", "nodes", "feas_tests", "pivots", "promotions", "time_ms",
              "verdict", "iterations"]

EXIT_TRIVIAL, EXIT_NONTRIVIAL, EXIT_ERROR = 0, 1, 2


@dataclass
class StatsRecord:
    name: str
    n: int
    nodes: int
    feas_tests: int
    pivots: int
    promotions: int
    time_ms: float
    verdict: str
    iterations: int

    @classmethod
    def from_verdict(cls, name, verdict, time_ms):
        s = verdict.total_stats()
        return cls(name, verdict.input_n, s.nodes, s.feasibility_tests, s.pivots,
                   s.promotions, round(time_ms, 3), str(verdict.result), verdict.iterations)

    def row(self):
        return [str(getattr(self, f)) for f in CSV_FIELDS]

    @classmethod
    def from_row(cls, row):
        vals = dict(zip(CSV_FIELDS, row))
        kw = {}
        for f in fields(cls):
            v = vals[f.name]
            kw[f.name] = int(v) if f.type == "int" else float(v) if f.type == "float" else v
        return cls(**kw)


def write_records(records, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in records:
        w.writerow(r.row())


def read_records(fh):
    rows = list(csv.reader(fh))
    if not rows or rows[0] != CSV_FIELDS:
        raise ValueError("unexpected CSV header")
    return [StatsRecord.from_row(r) for r in rows[1:]]


def append_record(path, record):
    path = Path(path)
    fresh = not path.exists() or path.stat().st_size == 0
    with open(path, "a", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if fresh:
            w.writerow(CSV_FIELDS)
        w.writerow(record.row())


def run_one(name, tri, simplify=False, exact=False):
    started = time.perf_counter()
    verdict = recognize(tri, simplify=simplify, exact=exact)
    ms = (time.perf_counter() - started) * 1000.0
    return verdict, StatsRecord.from_verdict(name, verdict, ms)


def certificate_text(name, verdict):
    buf = io.StringIO()
    buf.write(f"# normal disc certificate for {name}\n")
    buf.write("# triangulation containing the disc:\n")
    buf.write(serialize(verdict.certificate_triangulation))
    buf.write("# normal coordinates (7 per tetrahedron):\n")
    buf.write(verdict.certificate.to_line() + "\n")
    return buf.getvalue()


def cmd_recognize(args, out, err):
    try:
        name, tri = corpus.resolve(args.input)
        verdict, record = run_one(name, tri, args.simplify, args.force_exact)
    except (OSError, KeyError, TriangulationError, RecognitionError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ERROR
    out.write(f"{verdict.result}\n")
    out.write(f"  input: {name}\n  n: {record.n}\n  nodes: {record.nodes}\n")
    out.write(f"  iterations: {record.iterations}\n  feasibility tests: {record.feas_tests}\n")
    out.write(f"  time: {record.time_ms:.1f} ms\n")
    try:
        if args.emit_certificate:
            if verdict.certificate is None:
                err.write("note: no certificate disc for this verdict; nothing written\n")
            else:
                Path(args.emit_certificate).write_text(certificate_text(name, verdict))
        if args.stats:
            append_record(args.stats, record)
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ERROR
    return EXIT_TRIVIAL if verdict.result is Result.TRIVIAL else EXIT_NONTRIVIAL


def _bench_one(job):
    entry, repeat, simplify, exact = job
    try:
        tri = entry.triangulation()
        times, record = [], None
        for _ in range(repeat):
            _, record = run_one(entry.name, tri, simplify, exact)
            times.append(record.time_ms)
        record.time_ms = round(statistics.median(times), 3)
        return record, None
    except Exception as exc:           # a failing input is reported, not fatal
        return StatsRecord(entry.name, entry.n, 0, 0, 0, 0, 0.0, "error", 0), f"{type(exc).__name__}: {exc}"


def cmd_bench(args, out, err):
    try:
        selected = {}
        for pattern in args.patterns or ["*"]:
            for e in corpus.entries(pattern):
                selected[e.name] = e
    except (OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ERROR
    if not selected:
        err.write("error: no corpus entries matched\n")
        return EXIT_ERROR
    jobs = [(e, max(1, args.repeat), args.simplify, args.force_exact) for e in selected.values()]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_bench_one, jobs))
    else:
        results = [_bench_one(j) for j in jobs]
    results.sort(key=lambda r: r[0].name)
    records = [r for r, _ in results]
    mismatches = 0
    for record, problem in results:
        if problem:
            err.write(f"{record.name}: {problem}\n")
        if record.verdict != selected[record.name].verdict:
            mismatches += 1
            err.write(f"{record.name}: verdict {record.verdict}, expected {selected[record.name].verdict}\n")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_records(records, fh)
    else:
        write_records(records, out)
    if args.profile:
        with open(args.profile, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["n", "nodes"])
            for r in sorted(records, key=lambda r: (r.n, r.name)):
                if r.verdict != "error":
                    w.writerow([r.n, r.nodes])
    return 0 if mismatches == 0 else 1


def cmd_verify(args, out, err):
    ok = verify.run(quick=args.quick, out=lambda line: out.write(line + "\n"))
    return 0 if ok else 1


def build_parser():
    p = argparse.ArgumentParser(prog="untangle", description="Unknot recognition from knot complement triangulations.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("recognize", help="decide whether one input is the unknot")
    r.add_argument("input", help="gluing-table file or corpus:NAME")
    r.add_argument("--emit-certificate", metavar="FILE", help="write the disc certificate here")
    r.add_argument("--stats", metavar="FILE.csv", help="append a stats record to this CSV")
    r.add_argument("--simplify", action="store_true", help="run the simplification pre-pass")
    r.add_argument("--force-exact", action="store_true", help="disable the native integer fast path")
    r.set_defaults(func=cmd_recognize)

    b = sub.add_parser("bench", help="run the corpus and emit CSV")
    b.add_argument("patterns", nargs="*", help="corpus name globs (default: everything)")
    b.add_argument("--repeat", type=int, default=1, help="runs per input; time is the median")
    b.add_argument("--jobs", type=int, default=1, help="worker processes")
    b.add_argument("--out", metavar="FILE", help="CSV output (default: stdout)")
    b.add_argument("--profile", metavar="FILE", help="write (n, nodes) pairs here")
    b.add_argument("--simplify", action="store_true")
    b.add_argument("--force-exact", action="store_true")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="run the oracle suites")
    v.add_argument("--quick", action="store_true", help="only the fast subset")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else 0
    return args.func(args, out, err)


if __name__ == "__main__":
    sys.exit(main())

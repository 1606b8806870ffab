"""Command-line front end: ``ffgeom verify | stats | construct | spectrum``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import spectral, stats, verify
from .errors import FFGeomError
from .field import PrimeField
from .pointsets import KINDS, PointSet, construct, parse_pointset, serialize_pointset
from .verify import CheckRecord

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit; surface as a usage error instead
        raise UsageError(message)


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def _field(q: int) -> PrimeField:
    try:
        return PrimeField(q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _q_list(text: str) -> list[int]:
    try:
        qs = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise UsageError(f"--q expects comma-separated integers, got {text!r}") from exc
    if not qs:
        raise UsageError("--q is empty")
    return sorted(set(qs))


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


# ------------------------------------------------------------------ verify


def cmd_verify(args) -> int:
    qs = _q_list(args.q)
    suites = list(verify.SUITES) if args.suite == "all" else [args.suite]
    for q in qs:
        _field(q)
        for s in suites:
            if q > verify.SIZE_GUARDS[s]:
                raise UsageError(f"q={q} exceeds the size guard {verify.SIZE_GUARDS[s]} of suite {s!r}")
    records = verify.run(qs, suites)
    failed = [r for r in records if r.status == "fail"]
    for r in records:
        print(f"{r.status.upper():6} q={r.q:<3} {r.name}  expected={r.expected} actual={r.actual}")
    print(f"{len(records)} checks, {len(failed)} failed")
    if args.json:
        report = {
            "q": qs if len(qs) > 1 else qs[0],
            "suite": args.suite,
            "checks": [r.as_dict() for r in records],
        }
        _write(json.dumps(report, indent=2, sort_keys=True) + "\n", args.json)
    return EXIT_FAIL if failed else EXIT_OK


# ------------------------------------------------------------------ point-set sources


def _construct_params(args) -> dict:
    params = {}
    for key in ("k", "n", "seed", "radius"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    if getattr(args, "center", None) is not None:
        try:
            cx, cy = (int(t) for t in args.center.split(","))
        except ValueError as exc:
            raise UsageError(f"--center expects 'x,y', got {args.center!r}") from exc
        params["center"] = (cx, cy)
    return params


def _build(q: int | None, kind: str, args) -> PointSet:
    if q is None:
        raise UsageError("--q is required with a construction")
    F = _field(q)
    params = _construct_params(args)
    if kind in ("parallel_lines", "isotropic_lines") and "k" not in params:
        raise UsageError(f"{kind} needs --k")
    if kind == "random" and "n" not in params:
        raise UsageError("random needs --n")
    try:
        return construct(F, kind, **params)
    except FFGeomError as exc:
        raise UsageError(str(exc)) from exc


def _load(path: str) -> PointSet:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return parse_pointset(text)
    except FFGeomError as exc:
        raise UsageError(f"{path}: {exc}") from exc


# ------------------------------------------------------------------ stats


def collect_stats(P: PointSet) -> tuple[list[tuple[str, object]], list[CheckRecord]]:
    """Plain statistics as (name, value) rows plus ratio reports."""
    q, n = P.q, len(P)
    w = stats.bisector_multiset(P)
    classes = stats.distance_classes(P)
    pinned = stats.pinned_distance_counts(P)
    summary = stats.pinned_summary(pinned, q)
    energy = stats.bisector_energy(P, w)
    rows: list[tuple[str, object]] = [
        ("q", q),
        ("size", n),
        ("distinct_bisectors", len(w)),
        ("bisector_energy", energy),
        ("q_double_prime", stats.q_double_prime(P)),
        ("nonzero_distance_pairs", n * n - classes[0]),
        ("isosceles_triangles", stats.isosceles_count(P)),
        ("distance_energy", stats.distance_energy(classes)),
    ]
    rows += [(f"distance_class.{d}", c) for d, c in classes.items()]
    hist: dict[int, int] = {}
    for v in pinned.values():
        hist[v] = hist.get(v, 0) + 1
    rows += [(f"pinned_histogram.{v}", hist[v]) for v in sorted(hist)]
    rows += [(f"pinned.{k}", v) for k, v in summary.items()]
    reports = [
        CheckRecord(f"report.{name}", "report", "", _fmt(float(value)), q)
        for name, value in sorted(stats.ratio_reports(P).items())
    ]
    if n:
        reports.append(CheckRecord("report.energy_over_q_size_squared", "report", "", _fmt(energy / (q * n * n)), q))
    return rows, sorted(reports, key=lambda r: r.name)


def render_stats(rows, reports, emit: str) -> str:
    if emit == "json":
        body = {
            "stats": {name: value for name, value in rows},
            "reports": [r.as_dict() for r in reports],
        }
        return json.dumps(body, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "status", "value"])
    for name, value in rows:
        writer.writerow([name, "value", _fmt(value)])
    for r in reports:
        writer.writerow([r.name, r.status, r.actual])
    return buf.getvalue()


def cmd_stats(args) -> int:
    if (args.input is None) == (args.construct is None):
        raise UsageError("give exactly one of --input or --construct")
    P = _load(args.input) if args.input else _build(args.q, args.construct, args)
    rows, reports = collect_stats(P)
    _write(render_stats(rows, reports, args.emit), args.out)
    return EXIT_OK


# ------------------------------------------------------------------ construct


def cmd_construct(args) -> int:
    P = _build(args.q, args.kind, args)
    _write(serialize_pointset(P), args.out)
    return EXIT_OK


# ------------------------------------------------------------------ spectrum


def cmd_spectrum(args) -> int:
    F = _field(args.q)
    if args.graph == "bisector":
        if args.q > spectral.MAX_EIGEN_Q:
            raise UsageError(f"bisector spectrum is limited to q <= {spectral.MAX_EIGEN_Q}")
        d = args.d % args.q
        if d == 0:
            raise UsageError("--d must be a nonzero distance")
        G = spectral.bisector_graph(F, d)
    else:
        if args.q > spectral.MAX_INCIDENCE_Q:
            raise UsageError(f"incidence spectrum is limited to q <= {spectral.MAX_INCIDENCE_Q}")
        G = spectral.incidence_graph(F)
    eigs = spectral.spectrum(G)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "eigenvalue"])
    for i, lam in enumerate(eigs):
        writer.writerow([i, _fmt(float(lam))])
    _write(buf.getvalue(), args.out)
    return EXIT_OK


# ------------------------------------------------------------------ parser


def _add_construct_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--center", help="x,y")
    p.add_argument("--radius", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ffgeom", description="Finite-field plane geometry checks and statistics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="run check batteries")
    p.add_argument("--q", required=True, help="comma-separated odd primes")
    p.add_argument("--suite", choices=[*verify.SUITES, "all"], default="all")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="statistics of a point set")
    p.add_argument("--input", metavar="FILE")
    p.add_argument("--construct", choices=KINDS, metavar="KIND")
    p.add_argument("--q", type=int)
    _add_construct_params(p)
    p.add_argument("--emit", choices=("csv", "json"), default="csv")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("construct", help="write a point-set file")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--kind", choices=KINDS, required=True)
    _add_construct_params(p)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("spectrum", help="eigenvalues of a bisector or incidence graph")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--graph", choices=("bisector", "incidence"), default="bisector")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_spectrum)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"ffgeom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

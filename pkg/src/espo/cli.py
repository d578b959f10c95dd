"""Command-line runner with deterministic, machine-readable reports.

Every report carries the tool version, the seed and a digest of the inputs,
so identical (inputs, seed, version) runs produce byte-identical files.
Exit codes: 0 success, 2 validation error, 3 budget error, 64 usage error.
"""

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import __version__, counterexample, groups, pregeometry, sets, sumprod
from .algebra import parse_rational
from .cgp import cgp_verdict
from .counting import (count_intersection, fit_exponent,
                       point_line_incidences, variety_from_json)
from .errors import BudgetError, ValidationError
from .sets import (FiltrationSpec, PointSet, filtration_level,
                   filtration_size, read_point_file, write_point_file)
from .subgroups import SubgroupHandle, spec_from_json


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------

def _inputs_digest(files, params):
    h = hashlib.sha256()
    for path in files:
        with open(path, "rb") as fh:
            h.update(fh.read())
        h.update(b"\x00")
    h.update(json.dumps(params, sort_keys=True).encode())
    return h.hexdigest()


def make_report(payload, files=(), params=None, seed=None):
    report = {"tool": "espo", "version": __version__,
              "inputs_digest": _inputs_digest(files, params or {})}
    if seed is not None:
        report["seed"] = seed
    report.update(payload)
    return report


def emit_report(report, fmt="json", out=None):
    """Write a report as byte-stable JSON, or as CSV rows (list of strings)."""
    if fmt == "json":
        text = json.dumps(report, sort_keys=True, indent=2,
                          separators=(",", ": ")) + "\n"
    elif fmt == "csv":
        text = "\n".join(report) + "\n"
    else:
        raise ValidationError("unknown report format %r" % (fmt,))
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _default_workers():
    return int(os.environ.get("ESPO_THREADS", "1"))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_count(args):
    with open(args.variety) as fh:
        V = variety_from_json(json.load(fh))
    point_sets = [read_point_file(p, group=V.group) for p in args.sets]
    workers = args.workers if args.workers else _default_workers()
    count = count_intersection(V, point_sets, strategy=args.strategy,
                               workers=workers)
    report = make_report(
        {"count": count, "strategy": args.strategy, "workers": workers,
         "set_sizes": [len(s) for s in point_sets]},
        files=[args.variety] + list(args.sets),
        params={"strategy": args.strategy})
    emit_report(report, out=args.out)
    return 0


def _parse_sample(text):
    try:
        n, c = text.split(":")
        return int(n), int(c)
    except ValueError:
        raise ValidationError("sample must look like N:count, got %r" % text)


def cmd_fit(args):
    samples = [_parse_sample(s) for s in args.sample]
    slope, intercept, max_residual = fit_exponent(samples)
    params = {"samples": samples, "dim": args.dim}
    if args.format == "csv":
        rows = ["N,count,bound,ratio"]
        for N, c in samples:
            bound = N ** args.dim
            rows.append("%d,%d,%d,%s" % (N, c, bound, Fraction(c, bound)))
        emit_report(rows, fmt="csv", out=args.out)
        return 0
    report = make_report(
        {"samples": [[N, c] for N, c in samples], "dim": args.dim,
         "slope_advisory_floating": round(slope, 6),
         "intercept_advisory_floating": round(intercept, 6),
         "max_residual_advisory_floating": round(max_residual, 6)},
        params=params)
    emit_report(report, out=args.out)
    return 0


def cmd_cgp(args):
    points = read_point_file(args.points)
    verdict = cgp_verdict(points, args.C, args.tau, mode=args.mode,
                          budget=args.budget, seed=args.seed)
    report = make_report(verdict.to_json(), files=[args.points],
                         params={"C": args.C, "tau": args.tau,
                                 "mode": args.mode, "budget": args.budget},
                         seed=args.seed)
    emit_report(report, out=args.out)
    return 0


def cmd_construct(args):
    if args.kind == "grid":
        ps = counterexample.grid(args.N)
    elif args.kind == "quaternion-ball":
        G = groups.multiplicative(4, (2, 3, 5, 7))
        d = G.dimension
        g = tuple(tuple(1 if i == j else 0 for j in range(d))
                  for i in range(d))
        ps = sets.quaternion_ball_image(args.N, g, G)
    elif args.kind == "filtration-level":
        with open(args.spec) as fh:
            fspec = FiltrationSpec.from_json(json.load(fh))
        size = filtration_size(fspec, args.n)
        payload = {"kind": "filtration-level", "n": args.n, "size": size}
        if size <= 1000:
            payload["level"] = [str(x) for x in filtration_level(fspec, args.n)]
        report = make_report(payload, files=[args.spec], params={"n": args.n})
        emit_report(report, out=args.out)
        return 0
    elif args.kind == "subgroup":
        with open(args.spec) as fh:
            handle = SubgroupHandle(spec_from_json(json.load(fh)))
        report = make_report(
            {"kind": "subgroup", "rank": handle.rank,
             "dimension": handle.dimension()},
            files=[args.spec], params={})
        emit_report(report, out=args.out)
        return 0
    else:
        raise ValidationError("unknown construct kind %r" % (args.kind,))
    if args.points_out:
        write_point_file(args.points_out, ps)
    report = make_report({"kind": args.kind, "N": args.N, "size": len(ps),
                          "points_out": args.points_out},
                         params={"kind": args.kind, "N": args.N})
    emit_report(report, out=args.out)
    return 0


def cmd_matroid(args):
    with open(args.matroid) as fh:
        oracle = pregeometry.oracle_from_json(json.load(fh))
    check = args.check
    if check == "axioms":
        payload = {"check": check,
                   "verdict": pregeometry.check_rank_axioms(oracle).to_json()}
    elif check == "pregeometry":
        payload = {"check": check,
                   "verdict": pregeometry.check_pregeometry(oracle).to_json()}
    else:
        g = pregeometry.projectivize(oracle)
        if check == "modularity":
            payload = {"check": check,
                       "verdict": pregeometry.check_modularity(g).to_json()}
        elif check == "veblen":
            payload = {"check": check,
                       "verdict": pregeometry.check_veblen(g).to_json()}
        elif check == "decompose":
            classes = pregeometry.decompose_nonorthogonality(g)
            payload = {"check": check,
                       "classes": [sorted(c) for c in classes]}
        else:
            got = pregeometry.recognize_pg(g)
            payload = {"check": "recognize",
                       "result": list(got) if isinstance(got, tuple) else got,
                       "points": g.npoints(), "lines": len(g.lines)}
    report = make_report(payload, files=[args.matroid],
                         params={"check": check})
    emit_report(report, out=args.out)
    return 0


def cmd_counterexample(args):
    payload = counterexample.run_report(args.N, seed=args.seed,
                                        z22_samples=args.z22_samples)
    report = make_report(payload,
                         params={"N": args.N, "z22_samples": args.z22_samples},
                         seed=args.seed)
    emit_report(report, out=args.out)
    return 0


def cmd_sumprod(args):
    if args.family == "integers":
        rep = sumprod.run_sumprod_integers(args.N)
    else:
        rep = sumprod.run_sumprod_elliptic(args.M)
    params = {"family": args.family, "N": args.N, "M": args.M}
    if args.format == "csv":
        emit_report(["|A|,sum1,sum2,max,exponent", rep.csv_row()],
                    fmt="csv", out=args.out)
        return 0
    report = make_report(rep.to_json(), params=params)
    emit_report(report, out=args.out)
    return 0


def _read_lines_file(path):
    lines = []
    with open(path) as fh:
        for raw in fh:
            raw = raw.strip()
            if not raw:
                continue
            parts = raw.split(",")
            if len(parts) != 3:
                raise ValidationError("line file rows must be A,B,C")
            lines.append(tuple(parse_rational(x) for x in parts))
    return lines


def cmd_incidences(args):
    points = read_point_file(args.points)
    lines = _read_lines_file(args.lines)
    count, reference = point_line_incidences(points, lines)
    report = make_report(
        {"count": count, "points": len(points), "lines": len(lines),
         "st_reference_advisory_floating": round(reference, 6)},
        files=[args.points, args.lines], params={})
    emit_report(report, out=args.out)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser():
    parser = Parser(prog="espo", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand")

    p = sub.add_parser("count", help="exact |V cap prod X_i|")
    p.add_argument("--variety", required=True)
    p.add_argument("--sets", nargs="+", required=True)
    p.add_argument("--strategy", default="auto",
                   choices=["auto", "brute", "join"])
    p.add_argument("--workers", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("fit", help="fit a power-law exponent to counts")
    p.add_argument("--sample", action="append", required=True,
                   metavar="N:COUNT")
    p.add_argument("--dim", type=int, required=True,
                   help="trivial-bound exponent for the bound/ratio columns")
    p.add_argument("--format", default="json", choices=["json", "csv"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("cgp", help="coarse general position verdict")
    p.add_argument("--points", required=True)
    p.add_argument("--C", type=int, required=True)
    p.add_argument("--tau", type=int, required=True)
    p.add_argument("--mode", default="exhaustive",
                   choices=["exhaustive", "heuristic"])
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cgp)

    p = sub.add_parser("construct", help="build witness sets and subgroups")
    p.add_argument("--kind", required=True,
                   choices=["grid", "quaternion-ball", "filtration-level",
                            "subgroup"])
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--spec")
    p.add_argument("--points-out")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("matroid", help="pregeometry and geometry checks")
    p.add_argument("--matroid", required=True)
    p.add_argument("--check", default="pregeometry",
                   choices=["axioms", "pregeometry", "modularity", "veblen",
                            "decompose", "recognize"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_matroid)

    p = sub.add_parser("counterexample",
                       help="grid family and z22 identity report")
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--z22-samples", type=int, default=100)
    p.add_argument("--out")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("sumprod", help="sum-product measurements")
    p.add_argument("--family", default="integers",
                   choices=["integers", "elliptic"])
    p.add_argument("--N", type=int, default=10)
    p.add_argument("--M", type=int, default=10)
    p.add_argument("--format", default="json", choices=["json", "csv"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_sumprod)

    p = sub.add_parser("incidences", help="exact point-line incidence count")
    p.add_argument("--points", required=True)
    p.add_argument("--lines", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_incidences)

    return parser


def run_command(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("a subcommand is required")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write("usage error: %s\n" % exc)
        return 64
    except BudgetError as exc:
        sys.stderr.write("budget error: %s\n" % exc)
        return 3
    except ValidationError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except OSError as exc:
        sys.stderr.write("i/o error: %s\n" % exc)
        return 2


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()

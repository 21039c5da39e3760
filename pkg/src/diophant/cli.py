"""Command-line front end.

Exit status: 0 on success, 1 on usage errors, 2 on domain errors.  Every
number in the output is written as a decimal string.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional

from .errors import DiophantError, ParseError
from .groupoid import orbit_explore, orbit_stream
from .parse import format_poly, parse_poly
from .search import (
    DEFAULT_MAX_BITS,
    DEFAULT_SOLUTIONS,
    DEFAULT_WINDOW,
    box_search,
    axis_families,
    classify_sweep,
    count_points,
    count_sweep,
    msolve,
    prove_infinitude,
    smallest_solution,
)
from .surface import (
    BASE,
    CompanionTag,
    LabeledPoint,
    NormalizationRecord,
    Surface,
    TrivialFamilyReport,
    bipoly_eval,
    denormalize,
    normalize,
    verify,
)

THREADS_ENV = "DIOPHANT_THREADS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# argument helpers


def _triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-integer coordinate in {text!r}") from None


def _tag(text: str) -> CompanionTag:
    vals = {"0": False, "false": False, "1": True, "true": True}
    parts = [p.strip().lower() for p in text.split(",")]
    if len(parts) != 2 or any(p not in vals for p in parts):
        raise argparse.ArgumentTypeError(f"expected barA,barB as 0/1 or true/false, got {text!r}")
    return CompanionTag(vals[parts[0]], vals[parts[1]])


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_surface_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("surface (one of)")
    g.add_argument("--surface", metavar="EXPR", help="right-hand side G(x,y) of xyz = G(x,y), e.g. 'x^3+y^3+1-x^2-y^2'")
    g.add_argument("--surface-json", metavar="JSON", help='{"A": [...], "B": [...]} or {"a1":..,"a2":..,"b1":..,"b2":..}; @FILE reads a file')
    for name in ("a1", "a2", "b1", "b2"):
        g.add_argument(f"--{name}", type=int, default=None, help=f"coefficient {name} of the unit cubic")


def _add_format(p: argparse.ArgumentParser, choices: tuple[str, ...]) -> None:
    p.add_argument("--format", choices=choices, default=choices[0])


def _resolve_surface(args) -> tuple[object, NormalizationRecord, Optional[dict]]:
    quad = [getattr(args, n) for n in ("a1", "a2", "b1", "b2")]
    given = [args.surface is not None, args.surface_json is not None, any(v is not None for v in quad)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --surface, --surface-json or --a1/--a2/--b1/--b2")
    if args.surface is not None:
        G = parse_poly(args.surface)
        s, rec = normalize(G)
        return s, rec, G
    if args.surface_json is not None:
        text = args.surface_json
        if text.startswith("@"):
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise UsageError(f"bad --surface-json: {e}") from None
        return Surface.from_json(data), NormalizationRecord(), None
    return Surface.from_quadruple(*(v or 0 for v in quad)), NormalizationRecord(), None


def _surface(args) -> tuple[Surface, NormalizationRecord, Optional[dict]]:
    s, rec, G = _resolve_surface(args)
    if isinstance(s, TrivialFamilyReport):
        raise DiophantError("c = G(0,0) = 0: the equation has the trivial family (0, 0, z); nothing else to do")
    return s, rec, G


def _seed(args) -> LabeledPoint:
    x, y, z = args.seed
    return LabeledPoint(args.tag, x, y, z)


def _jobs(requested: int) -> int:
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            requested = min(requested, max(1, int(cap)))
        except ValueError:
            raise UsageError(f"{THREADS_ENV} must be an integer") from None
    return max(1, requested)


# output helpers


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _points(points, fmt: str) -> str:
    points = list(points)
    if fmt in ("jsonl", "json"):
        if fmt == "json":
            return _dump([p.to_json() for p in points])
        return "".join(json.dumps(p.to_json()) + "\n" for p in points)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["barA", "barB", "x", "y", "z"])
        for p in points:
            w.writerow([int(p.tag.barA), int(p.tag.barB), str(p.x), str(p.y), str(p.z)])
        return buf.getvalue()
    rows = [("tag", "norm", "x", "y", "z")]
    rows += [(f"{int(p.tag.barA)}{int(p.tag.barB)}", str(p.norm), str(p.x), str(p.y), str(p.z)) for p in points]
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in rows)


# commands


def cmd_normalize(args) -> str:
    s, rec, G = _resolve_surface(args)
    out = {}
    if G is not None:
        out["input"] = format_poly(G)
    if isinstance(s, TrivialFamilyReport):
        out.update(s.to_json())
    else:
        out["surface"] = s.to_json()
        out["equation"] = s.format()
        out["unitNormalized"] = s.is_unit_normalized
    out["record"] = rec.to_json()
    return _dump(out)


def cmd_verify(args) -> str:
    s, rec, G = _surface(args)
    p = _seed(args)
    if args.original:
        if G is None:
            raise UsageError("--original needs --surface EXPR")
        ok = p.x * p.y * p.z == bipoly_eval(G, p.x, p.y)
    else:
        ok = verify(s, p)
    return _dump({"point": p.to_json(), "original": args.original, "valid": ok})


def cmd_orbit(args) -> str:
    s, _, _ = _surface(args)
    return _points(orbit_stream(s, _seed(args), args.count), args.format)


def cmd_certify(args) -> str:
    s, _, _ = _surface(args)
    return _dump(orbit_explore(s, _seed(args)).to_json())


def cmd_prove(args) -> str:
    s, rec, G = _resolve_surface(args)
    if isinstance(s, TrivialFamilyReport):
        return _dump({"verdict": "trivial-family", **s.to_json(), "solutions": [["0", "0", str(z)] for z in range(args.k)]})
    cert = prove_infinitude(s, k=args.k)
    out = cert.to_json()
    out["threshold"] = out["verdict"]["threshold"]
    if not rec.is_identity:
        out["record"] = rec.to_json()
        out["original"] = [[str(v) for v in denormalize(p, rec)] for p in cert.solutions if p.tag.is_base]
    return _dump(out)


def cmd_classify(args) -> str:
    res = classify_sweep(args.bound, workers=_jobs(args.jobs))
    if args.format == "table":
        return res.table() + "\n"
    return _dump(res.to_json())


def cmd_search(args) -> str:
    s, _, _ = _surface(args)
    if args.smallest:
        p = smallest_solution(s, args.min_norm, args.C, args.tag)
        if args.format == "json":
            return _dump({"minNorm": str(args.min_norm), "C": str(args.C), "smallest": p.to_json() if p else None})
        return _points([p] if p else [], args.format)
    pts = box_search(s, args.tag, args.C)
    if args.format == "json":
        fams = axis_families(s, args.tag, args.C)
        return _dump({"C": str(args.C), "points": [p.to_json() for p in pts], "axisFamilies": [f.to_json() for f in fams]})
    return _points(pts, args.format)


def cmd_count(args) -> str:
    s, _, _ = _surface(args)
    if args.sweep or args.C_values:
        Cs = args.C_values or list(range(1, args.C + 1))
        rows = count_sweep(s, Cs)
        if args.format == "json":
            return _dump([{"C": str(c), "N": str(n)} for c, n in rows])
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["C", "N"])
        for c, n in rows:
            w.writerow([str(c), str(n)])
        return buf.getvalue()
    n, fams = count_points(s, args.C)
    if args.format == "csv":
        return f"C,N\n{args.C},{n}\n"
    return _dump({"C": str(args.C), "N": str(n), "axisFamilies": [f.to_json() for f in fams]})


def cmd_msolve(args) -> str:
    s, _, _ = _surface(args)
    res = msolve(s, args.m, _seed(args), args.count, window=args.window, max_bits=args.max_bits)
    if args.format == "jsonl":
        return "".join(json.dumps([str(v) for v in t]) + "\n" for t in res.solutions)
    return _dump(res.to_json())


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="diophant", description="Integral points on xyz = A(x) + B(y) - c.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, formats=None):
        p = sub.add_parser(name, help=help_)
        _add_surface_args(p)
        if formats:
            _add_format(p, formats)
        p.set_defaults(func=func)
        return p

    def seeded(p, required=True):
        p.add_argument("--seed", "--point", dest="seed", type=_triple, required=required, metavar="X,Y,Z",
                       help="point coordinates (write --seed=-1,2,3 for a leading minus)")
        p.add_argument("--tag", type=_tag, default=BASE, metavar="BARA,BARB", help="companion tag, default 0,0")

    add("normalize", cmd_normalize, "reduce xyz = G(x,y) to canonical form")
    p = add("verify", cmd_verify, "check a point exactly")
    seeded(p)
    p.add_argument("--original", action="store_true", help="check against xyz = G(x,y) instead of the canonical surface")

    p = add("orbit", cmd_orbit, "stream verified orbit points", ("jsonl", "json", "csv", "table"))
    seeded(p)
    p.add_argument("--count", type=int, default=10)

    p = add("certify", cmd_certify, "orbit verdict for a seed")
    seeded(p)

    p = add("prove", cmd_prove, "certify infinitely many integral points")
    p.add_argument("--k", type=int, default=DEFAULT_SOLUTIONS, help="number of solutions to list")

    p = sub.add_parser("classify", help="sweep all unit cubics with small coefficients")
    p.add_argument("--bound", type=int, default=6)
    p.add_argument("--jobs", type=int, default=1, help=f"worker processes (capped by ${THREADS_ENV})")
    _add_format(p, ("json", "table"))
    p.set_defaults(func=cmd_classify)

    p = add("search", cmd_search, "box search or smallest solution", ("jsonl", "json", "csv", "table"))
    p.add_argument("--C", type=int, required=True)
    p.add_argument("--tag", type=_tag, default=BASE, metavar="BARA,BARB")
    p.add_argument("--smallest", action="store_true")
    p.add_argument("--min-norm", type=int, default=1)

    p = add("count", cmd_count, "N(C), the number of points with |x|,|y| <= C and xy != 0", ("json", "csv"))
    p.add_argument("--C", type=int, required=True)
    p.add_argument("--sweep", action="store_true", help="one CSV row per C' = 1..C")
    p.add_argument("--C-values", type=_int_list, default=None, metavar="C1,C2,...")

    p = add("msolve", cmd_msolve, "solutions of m*xyz = A(x) + B(y) - 1", ("json", "jsonl"))
    seeded(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--max-bits", type=int, default=DEFAULT_MAX_BITS)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1
    try:
        out = args.func(args)
    except (UsageError, ParseError) as e:
        print(f"diophant: error: {e}", file=sys.stderr)
        return 1
    except DiophantError as e:
        print(f"diophant: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"diophant: error: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())

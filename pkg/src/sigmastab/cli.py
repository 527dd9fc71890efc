"""Command-line front end.

Subcommands: factors, construct, distance, decode, simulate, threshold,
table1.  Blueprint JSON (from ``construct``) is the interchange format.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import channel, decoder, distance, manifest, ring
from .blueprint import CodeBlueprint, construct, strategy_select
from .errors import AlgebraError, BudgetExceeded, PreconditionError
from .fields import SplitField


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", ",").split(",") if x]


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> CodeBlueprint:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return CodeBlueprint.from_json(text)


def parse_vector(text: str, n: int, p: int) -> list[int]:
    """Comma-separated digits, a plain digit string, or (p = 2) ``0x`` hex
    with bit i holding position i."""
    text = text.strip()
    if text.lower().startswith("0x"):
        if p != 2:
            raise PreconditionError("hex vectors are only defined for p = 2")
        value = int(text, 16)
        if value >> n:
            raise PreconditionError(f"hex vector has bits beyond position {n - 1}")
        return [(value >> i) & 1 for i in range(n)]
    digits = _int_list(text) if "," in text else [int(c) for c in text]
    if len(digits) != n or any(not 0 <= d < p for d in digits):
        raise PreconditionError(f"expected {n} digits in [0, {p})")
    return digits


# ----------------------------------------------------------------------------
# subcommands


def cmd_factors(args) -> int:
    split = SplitField.build(args.n, args.p)
    out = {
        "n": args.n,
        "p": args.p,
        "mu": {"c0": split.quad.c0, "c1": split.quad.c1},
        "split_field": {"degree": split.degree, "modulus": list(split.ext.modulus), "beta": split.beta},
        "over_Fp": ring.factor_xn_minus_1(split).to_json(),
        "over_Fp2": ring.factor_xn_minus_1(split, over_quad=True).to_json(split.quad),
    }
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return 0


def cmd_construct(args) -> int:
    if args.auto_m:
        m = strategy_select(args.n, args.p).m
    else:
        m = args.m
    h_select = "auto" if args.h_select == "auto" else _int_list(args.h_select)
    bp = construct(args.n, args.p, m, g_extra=_int_list(args.g_extra), h_select=h_select)
    _emit(bp.dumps() + "\n", args.out)
    return 0


def cmd_distance(args) -> int:
    bp = _load(args.code)
    modes = {
        "bch": (),
        "thm8": (),
        "brute-raw": ("raw",),
        "brute-sigma": ("sigma-nonzero", "sigma"),
        "all": ("sigma-nonzero", "sigma", "raw"),
    }[args.mode]
    rep = distance.analyze(bp, modes=modes, budget=args.budget)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(distance.DistanceReport.CSV_COLUMNS)
    w.writerow(rep.csv_row())
    _emit(buf.getvalue(), args.out)
    skipped = [m for m in modes if rep.to_dict()[f"brute_distance_{_field(m)}"] == distance.SKIPPED]
    if skipped:
        print(f"note: {', '.join(skipped)} skipped; needs {rep.required_enumeration} > budget {args.budget}", file=sys.stderr)
    return 0


def _field(mode: str) -> str:
    return {"sigma-nonzero": "nonzero", "sigma": "sigma", "raw": "raw"}[mode]


def cmd_decode(args) -> int:
    bp = _load(args.code)
    e1 = parse_vector(args.e1, bp.n, bp.p)
    e2 = parse_vector(args.e2, bp.n, bp.p)
    res = decoder.decode(bp, e1, e2, args.tau)
    out = {
        "e1": list(res.e1),
        "e2": list(res.e2),
        "success": res.success,
        "recovered": res.success and list(res.e1) == e1 and list(res.e2) == e2,
    }
    if res.reason:
        out["reason"] = res.reason
    _emit(json.dumps(out) + "\n", args.out)
    return 0


def cmd_simulate(args) -> int:
    bp = _load(args.code)
    table = decoder.build_syndrome_table(bp)
    name = args.name or f"[[{bp.n},{bp.k}]]"
    pts = channel.run_qber(
        table, channel.parse_grid(args.probs), trials=args.trials, seed=args.seed, model=args.model, code=name
    )
    _emit(channel.points_to_csv(pts), args.out)
    if args.dat:
        Path(args.dat).write_text(channel.points_to_dat(pts))
    return 0


def cmd_threshold(args) -> int:
    curves = {}
    for path in args.csv:
        for pt in channel.points_from_csv(Path(path).read_text()):
            curves.setdefault(pt.code or path, []).append(pt)
    rep = channel.find_threshold(curves, args.min_separation)
    _emit(rep.describe() + "\n", args.out)
    return 0


def cmd_table1(args) -> int:
    _emit(manifest.table_csv(budget=args.budget), args.out)
    return 0


# ----------------------------------------------------------------------------
# parser


def _budget(text: str) -> int | None:
    if text.lower() in ("none", "inf", "unlimited"):
        return None
    if "^" in text:
        base, exp = text.split("^")
        return int(base) ** int(exp)
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sigmastab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")

    def common(p, code=False):
        if code:
            p.add_argument("--code", required=True, help="blueprint JSON file ('-' for stdin)")
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("factors", help="factor X^n - 1 over F_p and F_{p^2}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_factors)

    p = sub.add_parser("construct", help="build a code and print its blueprint JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=2)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--m", type=int, default=-1)
    g.add_argument("--auto-m", action="store_true", help="choose m from the order of p mod n")
    p.add_argument("--g-extra", default="", help="extra F_p factor names for g, comma-separated")
    p.add_argument("--h-select", default="auto", help="one F_{p^2} factor name per conjugate pair, or 'auto'")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("distance", help="BCH run, bounds and exact distances")
    p.add_argument("--mode", choices=("bch", "thm8", "brute-raw", "brute-sigma", "all"), default="all")
    p.add_argument("--budget", type=_budget, default=distance.DEFAULT_BUDGET, help="max enumeration size, e.g. 2^30")
    common(p, code=True)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("decode", help="run the algebraic decoder on a known error")
    p.add_argument("--e1", required=True, help="digits, comma list, or 0x hex (p = 2)")
    p.add_argument("--e2", required=True)
    p.add_argument("--tau", type=int, default=None)
    common(p, code=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="Monte Carlo QBER with the lookup-table decoder")
    p.add_argument("--probs", default="0.005:0.25:0.005", help="start:stop:step or comma list")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model", choices=channel.MODELS, default="depolarizing-split")
    p.add_argument("--name", help="code label in the CSV")
    p.add_argument("--dat", help="also write a gnuplot data file")
    common(p, code=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("threshold", help="locate QBER crossings between simulate CSVs")
    p.add_argument("csv", nargs="+")
    p.add_argument("--min-separation", type=float, default=0.0, help="ignore differences below this many stderrs")
    common(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("table1", help="rebuild the thirteen-code table as CSV")
    p.add_argument("--budget", type=_budget, default=distance.DEFAULT_BUDGET)
    common(p)
    p.set_defaults(func=cmd_table1)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if not getattr(args, "command", None):
        ap.print_usage(sys.stderr)
        return 2
    if args.command == "threshold" and len(args.csv) < 2 and not _multi_code(args.csv):
        ap.error("threshold needs at least two curves")
    try:
        return args.func(args)
    except (PreconditionError, AlgebraError, BudgetExceeded, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"sigmastab {args.command}: {exc}", file=sys.stderr)
        return 1


def _multi_code(paths) -> bool:
    codes = set()
    for path in paths:
        try:
            codes |= {pt.code for pt in channel.points_from_csv(Path(path).read_text())}
        except OSError:
            return False
    return len(codes) >= 2


if __name__ == "__main__":
    sys.exit(main())

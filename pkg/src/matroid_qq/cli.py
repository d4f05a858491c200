"""Command-line entry point: ``matroid-qq <command> ...``.

Exit status: 0 when the checked property holds (or the command succeeded),
1 when it fails, 2 on any error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import algorithms as alg
from . import enumeration as enum_
from .adversary import RelationKind, bound_row
from .bench import FAMILIES, rows_to_csv, run_bench, summarize
from .matroid import (
    Kind,
    MatroidSpec,
    dumps,
    load,
    oracle_of,
    to_basis_family,
    to_subset_family,
    verify_axioms,
)
from .oracle import QueryReport
from .rng import stream
from .subsets import CapacityError, ParameterError, format_mask, ksubset_masks, parse_elements

PROPERTIES = ("uniform", "paving", "trivial", "loopless", "eulerian", "axioms")
COUNTABLE = ("circuits", "bases", "flats", "hyperplanes")


class UnsupportedModeError(ValueError):
    pass


def parse_range(text: str) -> list[int]:
    """'8..12', '16..64:8', '4' or '4,6,8'."""
    out: list[int] = []
    try:
        for part in text.split(","):
            step = 1
            if ":" in part:
                part, step_text = part.split(":")
                step = int(step_text)
            if ".." in part:
                lo, hi = (int(x) for x in part.split(".."))
                out.extend(range(lo, hi + 1, step))
            else:
                out.append(int(part))
    except ValueError as exc:
        raise ParameterError(f"bad range {text!r}") from exc
    return out


def _emit(record: dict) -> None:
    sys.stdout.write(json.dumps(record, sort_keys=False) + "\n")


def _witness(mask):
    return None if mask is None else format_mask(mask)


def _girth_text(g):
    return "inf" if g == enum_.INFINITY else int(g)


def cmd_gen(args) -> int:
    kind = Kind(args.kind)
    if args.source:
        src = load(args.source)
        if kind is Kind.BASIS_FAMILY:
            spec = to_basis_family(src)
        elif kind is Kind.SUBSET_FAMILY:
            spec = to_subset_family(src)
        else:
            raise ParameterError("--from converts to basisFamily or subsetFamily only")
    else:
        if kind in (Kind.BASIS_FAMILY, Kind.SUBSET_FAMILY):
            raise ParameterError(f"{kind} is generated by materializing another file with --from")
        if args.n is None:
            raise ParameterError("--n is required")
        a_mask = parse_elements(args.A) if args.A is not None else None
        spec = MatroidSpec(args.n, kind, r=args.r, a_mask=a_mask)
    text = dumps(spec)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return 0


def _bruteforce_check(prop: str, oracle, n: int) -> tuple[int, int | None, QueryReport, dict]:
    extra: dict = {}
    if prop in ("trivial", "loopless"):
        loops = enum_.loops(oracle, n)
        report = QueryReport(n, 0)
        if prop == "trivial":
            nonloops = [e for e in range(n) if e not in loops]
            return int(not nonloops), (1 << nonloops[0]) if nonloops else None, report, extra
        return int(not loops), (1 << loops[0]) if loops else None, report, extra
    report = QueryReport(1 << n, 0)
    indep = enum_.tabulate(oracle, n)
    r = int(enum_.rank_table(indep, n)[-1])
    if prop == "eulerian":
        parts = enum_.eulerian_partition(oracle, n)
        if parts is not None:
            extra["partition"] = [format_mask(c) for c in parts]
        return int(parts is not None), None, report, extra
    size = r if prop == "uniform" else r - 1
    if prop == "paving" and r <= 1:
        return 1, None, report, extra
    bad = [int(m) for m in ksubset_masks(n, size) if not indep[int(m)]]
    return int(not bad), (bad[0] if bad else None), report, extra


def cmd_check(args) -> int:
    spec = load(args.file)
    prop = args.property
    mode = args.mode or ("bruteforce" if prop in ("eulerian", "axioms") else "quantum")
    if prop in ("eulerian", "axioms") and mode != "bruteforce":
        raise UnsupportedModeError(f"{prop} has no quantum algorithm; use --mode bruteforce")
    oracle = oracle_of(spec)
    n = spec.n
    record = {"property": prop, "mode": mode}
    if prop == "axioms":
        answer, witness, report, extra = int(verify_axioms(spec)), None, QueryReport(1 << n, 0), {}
    elif mode == "bruteforce":
        answer, witness, report, extra = _bruteforce_check(prop, oracle, n)
    else:
        fn = {
            "uniform": alg.decide_uniform,
            "paving": alg.decide_paving,
            "trivial": alg.decide_trivial,
            "loopless": alg.decide_loopless,
        }[prop]
        res = fn(oracle, n, alg.AmplificationConfig(args.max_repeat), stream(args.seed))
        answer, witness, report, extra = res.answer, res.witness, res.report, {}
    record.update(answer=answer, witness=_witness(witness), queries=report.as_dict(), **extra)
    _emit(record)
    return 0 if answer == 1 else 1


def cmd_girth(args) -> int:
    spec = load(args.file)
    oracle = oracle_of(spec)
    if args.mode == "bruteforce":
        g = enum_.girth_bruteforce(oracle, spec.n)
        _emit({"girth": _girth_text(g), "mode": "bruteforce",
               "queries": QueryReport(1 << spec.n, 0).as_dict()})
        return 0
    res = alg.compute_girth(oracle, spec.n, alg.AmplificationConfig(args.max_repeat), stream(args.seed))
    _emit({"girth": _girth_text(res.girth), "mode": "quantum", "witness": _witness(res.witness),
           "queries": res.report.as_dict()})
    return 0


def cmd_count(args) -> int:
    spec = load(args.file)
    if spec.n > enum_.ENUM_MAX_N:
        raise CapacityError(f"counting is limited to n <= {enum_.ENUM_MAX_N}")
    oracle = oracle_of(spec)
    found = getattr(enum_, args.what)(oracle, spec.n)
    _emit({"what": args.what, "count": len(found), "queries": QueryReport(1 << spec.n, 0).as_dict()})
    return 0


def cmd_bench(args) -> int:
    ns = parse_range(args.n)
    rows = run_bench(args.family, ns, args.trials, args.seed, args.max_repeat,
                     timing=args.timing, n_limit=args.max_n)
    text = rows_to_csv(rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    summary = summarize(args.family, rows)
    # keep stdout a clean CSV when no output file is given
    stream_ = sys.stdout if args.output else sys.stderr
    stream_.write(json.dumps(summary) + "\n")
    return 0


def cmd_bound(args) -> int:
    for n in parse_range(args.n):
        _emit(bound_row(args.kind, n).as_dict())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matroid-qq", description="Matroid property query toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a matroid file")
    g.add_argument("--kind", required=True, choices=[k.value for k in Kind])
    g.add_argument("--n", type=int)
    g.add_argument("--r", type=int)
    g.add_argument("--A", help="comma-separated elements of the excluded set")
    g.add_argument("--from", dest="source", help="materialize this file as basisFamily/subsetFamily")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    def run_flags(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--max-repeat", type=int, default=5)
        sp.add_argument("--mode", choices=("quantum", "bruteforce"))

    c = sub.add_parser("check", help="decide a property")
    c.add_argument("file")
    c.add_argument("property", choices=PROPERTIES)
    run_flags(c)
    c.set_defaults(func=cmd_check)

    gi = sub.add_parser("girth", help="compute the girth")
    gi.add_argument("file")
    run_flags(gi)
    gi.set_defaults(func=cmd_girth)

    co = sub.add_parser("count", help="count circuits, bases, flats or hyperplanes")
    co.add_argument("file")
    co.add_argument("what", choices=COUNTABLE)
    co.set_defaults(func=cmd_count)

    b = sub.add_parser("bench", help="benchmark query counts to CSV")
    b.add_argument("family", choices=FAMILIES)
    b.add_argument("--n", required=True, help="e.g. 8..12 or 16..64:8")
    b.add_argument("--trials", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--max-repeat", type=int, default=5)
    b.add_argument("--max-n", type=int, help="refuse ground sizes above this")
    b.add_argument("--timing", action="store_true", help="record wall time (output is then not reproducible)")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bench)

    bo = sub.add_parser("bound", help="adversary bound table")
    bo.add_argument("kind", choices=[k.value for k in RelationKind])
    bo.add_argument("--n", required=True)
    bo.set_defaults(func=cmd_bound)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, CapacityError, UnsupportedModeError, OSError, ValueError) as exc:
        print(f"matroid-qq: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

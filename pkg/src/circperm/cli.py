"""Command-line front end.

Exit codes: 0 success; 1 internal inconsistency or verification mismatch;
2 budget/size refusal; 3 parse error or degenerate input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .budget import Budget, default_budget
from .circulant import parse_spec
from .corpus import run_corpus
from .errors import (AnnihilationError, BlockStructureError, CollisionError,
                     InconsistencyError, NoRecurrenceError, SizeCapError,
                     SpecSyntaxError, StateBudgetError)
from .extensions import hamiltonian_derive, moments_derive, moments_ratio
from .pipeline import derive, verify
from .report import (SCHEMA, derive_report, num_str, recurrence_dict,
                     render_json, render_table, spec_dict)

PARSE_ERRORS = (SpecSyntaxError, InconsistencyError, CollisionError)
BUDGET_ERRORS = (SizeCapError, StateBudgetError)
INTERNAL_ERRORS = (AnnihilationError, BlockStructureError, NoRecurrenceError)


def _add_spec_args(p: argparse.ArgumentParser, n_max: bool = False):
    p.add_argument("--jumps", required=True,
                   help="comma-separated jump terms, e.g. '0,1,2' or '0,1n+0,2n-1'")
    p.add_argument("--size", help="size law for linear jumps, e.g. '3n' or '3n+1'")
    p.add_argument("--weights", help="comma-separated rational weights, e.g. '2,1,1'")
    p.add_argument("--out", choices=["json", "table"], default="table")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget-bits", type=int,
                   help="override the exponential-work caps (bits)")
    if n_max:
        p.add_argument("--n-max", type=int, required=True)


def _budget(args) -> Budget:
    b = default_budget()
    if getattr(args, "budget_bits", None):
        b = b.with_bits(args.budget_bits)
    return b


def _parse(args):
    return parse_spec(args.jumps, args.size, args.weights)


def cmd_derive(args) -> int:
    result = derive(_parse(args), threads=args.threads)
    if args.out == "json":
        print(render_json(derive_report(result)))
    else:
        print(render_table(result))
    return 0


def cmd_verify(args) -> int:
    spec = _parse(args)
    result = derive(spec, threads=args.threads)
    entries = verify(spec, args.n_max, _budget(args), result)
    if args.out == "json":
        print(render_json(derive_report(result, entries)))
    else:
        print(render_table(result, entries))
    return 0 if all(e.ok for e in entries) else 1


def cmd_eval(args) -> int:
    spec = _parse(args)
    result = derive(spec, threads=args.threads)
    value = result.raw_term(args.n)
    if args.out == "json":
        print(render_json({"schema": SCHEMA, "spec": spec_dict(spec),
                           "n": args.n, "value": num_str(value)}))
    else:
        print(f"T({args.n}) = {value}")
    return 0


def cmd_growth(args) -> int:
    result = derive(_parse(args), threads=args.threads)
    g = result.growth
    if args.out == "json":
        print(render_json({"schema": SCHEMA, "spec": spec_dict(result.spec),
                           "dominant_root": g.dominant_root, "modulus": g.modulus,
                           "error_bound": g.error_bound, "note": g.note}))
    elif g.dominant_root is not None:
        print(f"{g.dominant_root:.9f}")
    else:
        print(f"{g.note}: modulus {g.modulus:.9f}")
    return 0


def cmd_moments(args) -> int:
    spec = _parse(args)
    res = moments_derive(spec, args.order, _budget(args))
    rec = res.recurrences[args.order]
    ratio_n = args.ratio_at
    ratio = moments_ratio(spec, ratio_n, result=res) if args.order >= 1 else None
    if args.out == "json":
        rep = {
            "schema": SCHEMA, "spec": spec_dict(spec), "moment": args.order,
            "n0": res.n0, "pairing_states": res.state_count,
            "recurrence": recurrence_dict(rec),
            "terms": {"start": res.n0,
                      "values": [str(t) for t in res.terms[args.order][:16]]},
        }
        if ratio is not None:
            rep["expected_cycles"] = {"n": ratio_n, "value": num_str(ratio),
                                      "over_n": float(ratio / ratio_n)}
        print(render_json(rep))
    else:
        print(f"spec        {spec.describe()}")
        print(f"TC_{args.order} recurrence  {rec}   (order {rec.order})")
        shown = ", ".join(str(t) for t in res.terms[args.order][:10])
        print(f"terms       {shown}  from n = {res.n0}")
        if ratio is not None:
            print(f"E[#cycles]  at n = {ratio_n}: {ratio} "
                  f"(= {float(ratio / ratio_n):.6f} * n)")
    return 0


def cmd_hamiltonian(args) -> int:
    spec = _parse(args)
    res = hamiltonian_derive(spec, _budget(args))
    if args.out == "json":
        rep = {
            "schema": SCHEMA, "spec": spec_dict(spec), "n0": res.n0,
            "pairing_states": res.state_count,
            "recurrence": recurrence_dict(res.recurrence),
            "terms": {"start": res.n0, "values": [str(t) for t in res.terms[:16]]},
        }
        if res.lattice_cycle_events:
            rep["lattice_hamiltonian_events"] = res.lattice_cycle_events
        print(render_json(rep))
    else:
        print(f"spec        {spec.describe()}")
        print(f"HC recurrence  {res.recurrence}   (order {res.recurrence.order})")
        print(f"terms       {', '.join(map(str, res.terms[:12]))}  from n = {res.n0}")
        if res.lattice_cycle_events:
            print(f"note: lattice-Hamiltonian events at {res.lattice_cycle_events}")
    return 0


def cmd_corpus(args) -> int:
    checks, ok = run_corpus(_budget(args))
    for label, good, detail in checks:
        mark = "PASS" if good else "FAIL"
        extra = f"  ({detail})" if detail and not good else ""
        print(f"[{mark}] {label}{extra}")
    print(f"{sum(1 for _, g, _ in checks if g)}/{len(checks)} corpus checks passed")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circperm",
        description="Exact recurrences for permanents of circulant matrices "
                    "(cycle covers of directed circulant graphs), with "
                    "brute-force cross-validation.")
    parser.add_argument("--corpus", action="store_true",
                        help="replay the pinned regression corpus and exit")
    parser.add_argument("--budget-bits", type=int, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("derive", help="derive the cycle-cover recurrence")
    _add_spec_args(p)
    p.set_defaults(fn=cmd_derive)

    p = sub.add_parser("verify", help="check the recurrence against both oracles")
    _add_spec_args(p, n_max=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("eval", help="evaluate T(n) exactly for arbitrary n")
    _add_spec_args(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("growth", help="dominant growth rate of T(n)")
    _add_spec_args(p)
    p.set_defaults(fn=cmd_growth)

    p = sub.add_parser("moments", help="cycle-count moment recurrences TC_i")
    _add_spec_args(p)
    p.add_argument("--order", type=int, default=1, help="moment order i")
    p.add_argument("--ratio-at", type=int, default=200,
                   help="evaluate E[#cycles] at this n")
    p.set_defaults(fn=cmd_moments)

    p = sub.add_parser("hamiltonian", help="Hamiltonian-cycle recurrence")
    _add_spec_args(p)
    p.set_defaults(fn=cmd_hamiltonian)
    return parser


def _merge_value_flags(argv: list[str]) -> list[str]:
    """Join '--jumps -1,0,1' into '--jumps=-1,0,1' so negative jumps are not
    mistaken for option strings."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--jumps", "--weights", "--size") and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_merge_value_flags(
        list(sys.argv[1:] if argv is None else argv)))
    try:
        if args.corpus:
            return cmd_corpus(args)
        if not getattr(args, "command", None):
            parser.print_help()
            return 0
        return args.fn(args)
    except PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except BUDGET_ERRORS as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except INTERNAL_ERRORS as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

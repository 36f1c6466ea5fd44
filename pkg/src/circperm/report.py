"""Machine- and human-readable run reports.

All numbers serialize as decimal strings (arbitrary precision safe);
table mode may abbreviate long integers with a digit count.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .algebra import GrowthEstimate, Recurrence
from .circulant import CirculantSpec
from .pipeline import DeriveResult, VerificationEntry

SCHEMA = 1


def num_str(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def abbreviate(v, limit: int = 24) -> str:
    s = num_str(v)
    if len(s) <= limit:
        return s
    return f"{s[:8]}…({len(s)} digits)"


def spec_dict(spec: CirculantSpec) -> dict:
    d: dict[str, Any] = {
        "jumps": [{"coeff": p, "offset": s} for p, s in spec.jumps],
        "size": {"coeff": spec.size_coeff, "offset": spec.size_offset},
        "constant": spec.constant,
    }
    if spec.weights is not None:
        d["weights"] = [num_str(w) for w in spec.weights]
    if not spec.trace.trivial:
        d["normalization"] = {"offset_shift": spec.trace.offset_shift,
                              "index_shift": spec.trace.index_shift}
    return d


def spec_strings(spec: CirculantSpec) -> dict:
    """Round-trippable jump/size/weights strings in the CLI grammar."""
    terms = []
    for p, s in spec.jumps:
        if p == 0:
            terms.append(str(s))
        else:
            coeff = "" if p == 1 else str(p)
            terms.append(f"{coeff}n{s:+d}" if s else f"{coeff}n")
    out = {"jumps": ",".join(terms)}
    if not spec.constant:
        s = spec.size_offset
        out["size"] = f"{spec.size_coeff}n{s:+d}" if s else f"{spec.size_coeff}n"
    if spec.weights is not None:
        out["weights"] = ",".join(num_str(w) for w in spec.weights)
    return out


def recurrence_dict(rec: Recurrence) -> dict:
    return {
        "order": rec.order,
        "coeffs": [num_str(c) for c in rec.coeffs],
        "base": rec.base,
        "initials": [num_str(t) for t in rec.initials],
        "convention": "T(n) = sum_j coeffs[j-1]*T(n-j)",
    }


def growth_dict(g: GrowthEstimate) -> dict:
    return {
        "dominant_root": None if g.dominant_root is None else f"{g.dominant_root:.10f}",
        "modulus": f"{g.modulus:.10f}",
        "error_bound": g.error_bound,
        "note": g.note,
    }


def derive_report(result: DeriveResult,
                  verification: Optional[list[VerificationEntry]] = None,
                  terms_shown: int = 16) -> dict:
    rep = {
        "schema": SCHEMA,
        "spec": {**spec_dict(result.spec), **{"text": spec_strings(result.spec)}},
        "normalized": {**spec_dict(result.normalized),
                       **{"text": spec_strings(result.normalized)}},
        "n0": result.n0,
        "transfer": {
            "slot_width": result.system.w,
            "a_bar_dim": result.system.ordering.num_rights,
            "block_sizes": [len(b) for b in result.system.blocks],
            "full_matrix_copies": result.system.multiplicity,
        },
        "annihilator": {
            "degree": result.annihilator.degree,
            "coeffs": [num_str(c) for c in result.annihilator.coeffs],
        },
        "recurrence": recurrence_dict(result.recurrence),
        "terms": {"start": result.n0,
                  "values": [num_str(t) for t in result.terms[:terms_shown]]},
        "growth": growth_dict(result.growth),
        "timings": {k: round(v, 6) for k, v in result.timings.items()},
    }
    if verification is not None:
        rep["verification"] = [
            {"n": e.n, "size": e.size, "recurrence": num_str(e.recurrence_value),
             "ryser": num_str(e.ryser_value),
             "enumeration": None if e.enumeration_value is None else num_str(e.enumeration_value),
             "ok": e.ok, **({"note": e.note} if e.note else {})}
            for e in verification]
    return rep


def render_json(rep: dict) -> str:
    return json.dumps(rep, indent=2, sort_keys=False)


def render_table(result: DeriveResult,
                 verification: Optional[list[VerificationEntry]] = None) -> str:
    rec = result.recurrence
    lines = [
        f"spec        {result.spec.describe()}",
    ]
    if not result.normalized.trace.trivial:
        lines.append(f"normalized  {result.normalized.describe()} "
                     f"(offset shift {result.normalized.trace.offset_shift:+d}, "
                     f"index shift {result.normalized.trace.index_shift:+d})")
    init = ", ".join(abbreviate(t) for t in rec.initials)
    lines += [
        f"recurrence  {rec}   (order {rec.order})",
        f"initials    {init}  for n = {rec.base}..{rec.base + rec.order - 1}",
        f"annihilator degree {result.annihilator.degree}, "
        f"blocks {[len(b) for b in result.system.blocks]}",
    ]
    g = result.growth
    if g.dominant_root is not None:
        lines.append(f"growth      T(n) ~ phi^n, phi = {g.dominant_root:.9f}")
    else:
        lines.append(f"growth      {g.note}: modulus {g.modulus:.9f}")
    if verification is not None:
        lines.append("verification (recurrence vs Ryser vs enumeration):")
        for e in verification:
            if e.note:
                lines.append(f"  n={e.n:<3} {e.note}")
            else:
                enum_part = "-" if e.enumeration_value is None else abbreviate(e.enumeration_value)
                status = "ok" if e.ok else "MISMATCH"
                lines.append(f"  n={e.n:<3} size={e.size:<3} "
                             f"rec={abbreviate(e.recurrence_value)} "
                             f"ryser={abbreviate(e.ryser_value)} enum={enum_part}  {status}")
    return "\n".join(lines)

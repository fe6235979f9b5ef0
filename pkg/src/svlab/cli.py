"""Command-line front end: ``svlab <subcommand> ...``.

Every subcommand writes JSON (default) or CSV to stdout.  Exact values are
printed as strings next to a 53-bit float and an error class.  Exit codes:
0 success, 1 a selftest criterion failed, 2 bad arguments, 3 no exact
formula or volume for the request.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .core_numbers import PiLaurent, default_precision
from .errorclass import ErrorClass
from .strata import (Component, ExactFormulaUnavailable, classify_components,
                     format_stratum, parse_stratum, volume_component_asymptotic,
                     volume_exact_special)
from .sv_engine import VolumeUnavailable


class UsageError(Exception):
    pass


# output helpers

def _exact_record(value: PiLaurent, error: ErrorClass, display: str | None = None) -> dict:
    return {"exact": str(value), "float": float(value), "error_class": error.label,
            "display": display if display is not None else f"{value} ({error.label})"}


def _emit(payload, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, default=str) + "\n")
        return
    rows = payload if isinstance(payload, list) else [payload]
    flat = [_flatten(r) for r in rows]
    cols: list[str] = []
    for r in flat:
        for k in r:
            if k not in cols:
                cols.append(k)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in flat:
        w.writerow(r)
    out.write(buf.getvalue())


def _flatten(d, prefix=""):
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            out[key] = json.dumps(v, default=str)
        else:
            out[key] = v
    return out


# volume

def cmd_volume(a) -> dict:
    sig, comp = parse_stratum(a.stratum)
    if a.component:
        comp = Component.from_tag(a.component)
    rec = {"stratum": format_stratum(sig, comp), "genus": sig.genus, "dimension": sig.dimension}
    cls = classify_components(sig)
    rec["components"] = sorted(c.value for c in cls.components)
    rec["classification_extrapolated"] = cls.extrapolated
    if a.kind in ("exact", "auto"):
        try:
            v = volume_exact_special(sig, comp)
            rec.update(kind="exact", **_exact_record(v.value, v.error, str(v.value)))
            return rec
        except ExactFormulaUnavailable:
            if a.kind == "exact":
                raise
    v = volume_component_asymptotic(sig, comp)
    if v.approximation is not None:
        rec.update(kind="asymptotic", exact=None, float=float(v.approximation),
                   error_class=v.error.label, display=str(v), note=v.note)
    else:
        rec.update(kind="asymptotic", **_exact_record(v.value, v.error), note=v.note)
    return rec


# sv

SV_FAMILIES = ["minimal-loops", "two-distinct", "two-loops-fixed", "two-loops-any",
               "hyp-minimal-loops", "hyp-two-distinct", "hyp-two-loops",
               "distinct-fixed", "loop-fixed", "principal-distinct", "principal-loops", "total"]


def _parse_p(text):
    if text is None:
        return None
    if text == "any":
        return "any"
    try:
        p = int(text)
    except ValueError:
        raise UsageError(f"--p must be a positive integer or 'any', got {text!r}")
    if p < 1:
        raise UsageError("--p must be at least 1")
    return p


def _need(a, *names):
    for n in names:
        if getattr(a, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required for family {a.family}")


def _asym_record(av) -> dict:
    rec = {"value": str(av.value), "leading_coefficient": str(av.coefficient), "g_power": av.g_power,
           "float": float(av.value), "error_class": av.error.label, "formula": av.formula,
           "display": av.render()}
    if av.error is ErrorClass.EXACT:
        rec["exact"] = str(av.value)
    return rec


def cmd_sv(a) -> dict:
    from . import asymptotics as asy
    from .strata import minimal_stratum, two_zero_stratum
    from .sv_engine import sv_hyperelliptic_exact

    p = _parse_p(a.p)
    fam = a.family
    rec = {"family": fam, "p": p, "g": a.g, "mode": a.mode}
    hyp = fam.startswith("hyp-")
    if hyp and isinstance(p, int) and p >= 3:
        # vanishes for every genus
        rec.update(_exact_record(PiLaurent(), ErrorClass.EXACT, "0 (exact)"))
        return rec
    if a.mode == "exact":
        if not hyp:
            raise ExactFormulaUnavailable(f"family {fam} (only the hyperelliptic families are exact)")
        _need(a, "g", "p")
        if p == "any":
            raise UsageError("exact hyperelliptic constants are given per multiplicity")
        H = minimal_stratum(a.g) if fam == "hyp-minimal-loops" else two_zero_stratum(a.g)
        kind = "distinct" if fam == "hyp-two-distinct" else "loop"
        v = sv_hyperelliptic_exact(H, kind, p)
        rec.update(_exact_record(v.value, v.error, f"{v.value} (exact)"))
        rec["provenance"] = v.provenance
        return rec
    _need(a, "g", "p")
    if fam in {f.value for f in asy.Family}:
        av = asy.asym_special_families(fam, p, a.g)
    elif fam == "distinct-fixed":
        _need(a, "m1", "m2", "zeros")
        av = (asy.asym_distinct_any_multiplicity(a.m1, a.m2, g=a.g) if p == "any"
              else asy.asym_distinct_fixed(a.m1, a.m2, p, a.g, a.zeros))
    elif fam == "loop-fixed":
        _need(a, "m", "zeros")
        if p == "any":
            av = asy.asym_loop(a.m, 1, asy.LoopMode.ANY_MULTIPLICITY, a.g, a.zeros)
        else:
            mode = a.loop_mode or ("no_cylinder" if p == 1 else "one_fixed_zero_total")
            av = asy.asym_loop(a.m, p, mode, a.g, a.zeros, a.m2)
    elif fam == "principal-distinct":
        av = asy.asym_principal_distinct(p, a.g)
    elif fam == "principal-loops":
        av = asy.asym_principal_loops(p, a.g)
    else:  # total
        _need(a, "zeros")
        av = asy.asym_total_params(a.g, a.zeros)
    rec.update(_asym_record(av))
    return rec


# table

def cmd_table(a):
    from .asymptotics import generate_table
    if a.format == "csv":
        return generate_table(a.g, "csv")
    return {"g": a.g, "rows": generate_table(a.g, "rows")}


# lemma

LEMMAS = ["factorial-comparison", "product-binomials", "ingredient", "sum-constant",
          "partition-zeta", "double-factorial", "series", "cancelling-factorials", "error-term"]


def cmd_lemma(a) -> dict:
    from . import lemma_lab as lab
    lid = a.lemma
    if lid == "factorial-comparison":
        return lab.sweep_factorial_comparison(a.p_max, a.r_max, a.part_max).to_dict()
    if lid == "product-binomials":
        return lab.sweep_product_binomials(a.p_max, a.r_max, a.part_max).to_dict()
    if lid == "ingredient":
        return lab.sweep_ingredient(a.p_max, a.r_max, a.part_max).to_dict()
    if lid == "sum-constant":
        return lab.sweep_lemma_sum_constant(min(a.p_max, 3), a.total_max, a.variant)
    gs = a.g or [100, 1000, 10000]
    if lid == "partition-zeta":
        ref = float(lab.partition_zeta_limit())
        table = [{"g": g, "value": lab.eval_partition_zeta_sum(g),
                  "error": abs(lab.eval_partition_zeta_sum(g) - ref)} for g in gs]
        return {"lemma": lid, "limit": ref, "table": table, "error_class": "O(1/g^(1/4))"}
    if lid == "double-factorial":
        lims = lab.double_factorial_limits()
        table = []
        for which in a.which or [1, 2, 3]:
            for g in gs:
                v = lab.eval_double_factorial_sums(g, which)
                table.append({"which": which, "g": g, "value": v, "limit": float(lims[which]),
                              "error": abs(v - float(lims[which]))})
        return {"lemma": lid, "table": table, "error_class": "O(1/g^(1/4))"}
    if lid == "series":
        N = a.N or 10**6
        out = []
        for which in ("half_pi", "pi_sq_over_8"):
            v = lab.eval_series(which, N)
            lim = float(lab.series_limit(which))
            out.append({"series": which, "N": N, "partial_sum": v, "limit": lim, "error": lim - v})
        return {"lemma": lid, "table": out}
    if lid == "cancelling-factorials":
        table = [{"g": g, "p": p, "ratio": lab.check_cancelling_factorials(p, g)}
                 for g in gs for p in range(1, min(a.p_max, g) + 1)]
        return {"lemma": lid, "table": table, "error_class": "O(1/g)*O(1)^p"}
    # error-term
    lo, hi = (gs[0], gs[-1]) if a.g else (10, 200)
    return {"lemma": lid, **lab.check_error_term_lemma(range(lo, hi + 1))}


# siegel

def cmd_siegel(a) -> dict:
    from .siegel_mc import siegel_average
    cusp = a.cusp or ("sample" if a.primitive else "exact")
    res = siegel_average(a.samples, a.radius, a.seed, a.primitive, a.workers, cusp)
    return res.to_dict()


# selftest

def cmd_selftest(a, out):
    from .acceptance import run_all
    only = set(int(x) for x in a.only.split(",")) if a.only else None
    results = run_all(only)
    if a.format == "json":
        _emit([r.to_dict() for r in results], "json", out)
    else:
        for r in results:
            out.write(r.line() + "\n")
        n_ok = sum(r.passed for r in results)
        out.write(f"{n_ok}/{len(results)} criteria passed\n")
    return 0 if all(r.passed for r in results) else 1


# parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="svlab", description="Siegel-Veech constants of strata.")
    ap.add_argument("--precision", type=int, default=None,
                    help="bit precision for float conversion (default from SVLAB_PRECISION or 128)")
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p, choices=("json", "csv")):
        p.add_argument("--format", choices=choices, default="json")

    p = sub.add_parser("volume", help="Masur-Veech volume of a stratum or component")
    p.add_argument("--stratum", required=True, help='e.g. "H(4)", "H(2,2)^odd", "H(1^6)"')
    p.add_argument("--component", default=None, help="hyp, odd, even, nonhyp")
    p.add_argument("--kind", choices=("auto", "exact", "asymptotic"), default="auto")
    fmt(p)

    p = sub.add_parser("sv", help="a named Siegel-Veech constant")
    p.add_argument("--family", required=True, choices=SV_FAMILIES)
    p.add_argument("--p", default=None, help="multiplicity or 'any'")
    p.add_argument("--g", type=int, default=None, help="genus")
    p.add_argument("--mode", choices=("asymptotic", "exact"), default="asymptotic")
    p.add_argument("--m1", type=int)
    p.add_argument("--m2", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--zeros", type=int, help="number of zeros l of the stratum")
    p.add_argument("--loop-mode", dest="loop_mode",
                   choices=("no_cylinder", "cylinder_same_zero", "cylinder_other_zero",
                            "one_fixed_zero_total"))
    fmt(p)

    p = sub.add_parser("table", help="the lookup table of constants at genus g")
    p.add_argument("--g", type=int, required=True)
    fmt(p)

    p = sub.add_parser("lemma", help="run a combinatorial-lemma oracle")
    p.add_argument("lemma", choices=LEMMAS)
    p.add_argument("--p-max", dest="p_max", type=int, default=4)
    p.add_argument("--r-max", dest="r_max", type=int, default=3)
    p.add_argument("--part-max", dest="part_max", type=int, default=8)
    p.add_argument("--total-max", dest="total_max", type=int, default=8)
    p.add_argument("--variant", type=int, choices=(1, 2), default=1)
    p.add_argument("--g", type=int, nargs="+")
    p.add_argument("--which", type=int, nargs="+", choices=(1, 2, 3))
    p.add_argument("--N", type=int)
    fmt(p)

    p = sub.add_parser("siegel", help="Monte-Carlo check of the Siegel mean value")
    p.add_argument("--samples", type=int, default=10**4)
    p.add_argument("--radius", type=float, default=30.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--primitive", action="store_true")
    p.add_argument("--cusp", choices=("exact", "sample"), default=None)
    p.add_argument("--workers", type=int, default=1)
    fmt(p)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.add_argument("--only", default=None, help="comma-separated criterion numbers")
    fmt(p, ("text", "json"))
    p.set_defaults(format="text")
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    # --precision applies to this call only
    saved = os.environ.get("SVLAB_PRECISION")
    if a.precision is not None:
        os.environ["SVLAB_PRECISION"] = str(a.precision)
    try:
        return _dispatch(a, ap, out, err)
    finally:
        if a.precision is not None:
            if saved is None:
                os.environ.pop("SVLAB_PRECISION", None)
            else:
                os.environ["SVLAB_PRECISION"] = saved


def _dispatch(a, ap, out, err) -> int:
    try:
        default_precision()
        if a.command == "selftest":
            return cmd_selftest(a, out)
        handler = {"volume": cmd_volume, "sv": cmd_sv, "table": cmd_table,
                   "lemma": cmd_lemma, "siegel": cmd_siegel}[a.command]
        payload = handler(a)
        if isinstance(payload, str):
            out.write(payload)
        else:
            _emit(payload, a.format, out)
        return 0
    except (ExactFormulaUnavailable, VolumeUnavailable) as exc:
        err.write(json.dumps({"error": type(exc).__name__, "message": str(exc),
                              "what": getattr(exc, "what", getattr(exc, "stratum", None))}) + "\n")
        return 3
    except (UsageError, ValueError) as exc:
        ap.print_usage(err)
        err.write(f"svlab: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

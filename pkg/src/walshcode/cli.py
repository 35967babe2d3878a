"""Command-line front end.

Subcommands build catalog functions and codes, dump Walsh spectra, evaluate
bounds, assemble CSS verdicts, and reproduce the built-in reference targets
by identifier, comparing every computed table against its frozen expected
values.  All JSON output is canonically ordered and deterministic across
runs and worker counts; timing is only attached on request so byte-for-byte
reproducibility holds by default.

Exit codes: 0 success / match, 2 reproduction or oracle mismatch,
3 construction-hypothesis failure, 4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .bounds import bound_report, griesmer_check, hamming_check
from .constructions import (
    HypothesisError,
    ScalarTriple,
    VectorialPair,
    build_scalar_triple,
    build_vectorial_pair,
    first_generic_code,
    first_generic_predicted,
    scalar_subfield_distribution,
    second_generic_code,
    vectorial_subfield_distribution,
    weights_scalar_predicted,
    weights_vectorial_predicted,
)
from .functions import CatalogError, FnSpec, fn_invert, parse_fn, parse_scalar, parse_vectorial
from .galois import MID, PRIME, field_new
from .linearcode import (BudgetError, DEFAULT_BUDGET, LinearCode,
                         dual_distance_macwilliams, macwilliams,
                         macwilliams_coeff, subfield_code)
from .quantum import CssError, css_build, css_t_check, phase_moment_check
from .walsh import spectrum_full

OK, MISMATCH, HYPOTHESIS, BUDGET = 0, 2, 3, 4

SCHEMA = "walshcode.report/1"


def _factor_prime_power(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            r = 0
            t = q
            while t % p == 0:
                t //= p
                r += 1
            if t != 1:
                raise ValueError(f"q={q} is not a prime power")
            return p, r
    raise ValueError(f"bad q={q}")


def _budget(args) -> int:
    if getattr(args, "budget", None):
        return args.budget
    env = os.environ.get("WALSHCODE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _emit(args, obj: dict) -> None:
    if getattr(args, "pretty", False):
        _emit_pretty(obj)
    else:
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _emit_pretty(obj: dict, indent: int = 0) -> None:
    pad = "  " * indent
    for key in sorted(obj):
        val = obj[key]
        if isinstance(val, dict):
            print(f"{pad}{key}:")
            _emit_pretty(val, indent + 1)
        elif isinstance(val, list) and val and isinstance(val[0], list):
            print(f"{pad}{key}:")
            for row in val:
                print(f"{pad}  {row[0]}: {row[1]}")
        else:
            print(f"{pad}{key}: {val}")


def _wd_pairs(wd) -> list:
    return [[w, c] for w, c in wd.as_pairs()]


def _provenance(ctx, args) -> dict:
    # worker count deliberately omitted: reports are byte-identical across
    # any parallelism setting
    out = {
        "version": __version__,
        "field": ctx.descriptor(),
        "element_order": "coefficients packed base p, constant term lowest",
    }
    if getattr(args, "timing", False):
        out["wall_ms"] = int((time.time() - args._t0) * 1000)
    return out


# ---------------------------------------------------------------------------
# build
# ---------------------------------------------------------------------------

def cmd_build(args) -> int:
    budget = _budget(args)
    if args.family == "scalar":
        p, r = _factor_prime_power(args.q)
        ctx = field_new(p, r, args.m)
        f = parse_scalar(ctx, args.f)
        g = parse_scalar(ctx, args.g)
        h = parse_scalar(ctx, args.h)
        tri = ScalarTriple(f, g, h)
        top, _D = build_scalar_triple(f, g, h)
        sub = subfield_code(top, MID)
        wd = sub.weight_distribution(budget)
        report = {
            "schema": SCHEMA,
            "construction": {
                "family": "scalar-triple",
                "f": args.f, "g": args.g, "h": args.h,
                "q": args.q, "m": args.m,
            },
            "top_code": [top.n, top.k],
            "parameters": [wd.n, wd.k, wd.d()],
            "weight_table": _wd_pairs(wd),
            "dual": _dual_section(wd),
            "bounds": bound_report(sub, wd, _dual_info(wd)[1]).as_dict(),
            "provenance": _provenance(ctx, args),
        }
        match = None
        if args.oracle:
            pred = weights_scalar_predicted(f, g, h, generic=args.generic)
            brute = scalar_subfield_distribution(tri, workers=args.workers)
            report["predicted_table"] = sorted(
                [w, c] for w, c in pred.counts().items())
            report["theorem"] = pred.theorem
            match = (pred.counts() == wd.counts == brute.counts)
            report["predicted_matches_observed"] = match
        _emit(args, report)
        return OK if match in (None, True) else MISMATCH

    # vectorial
    p, r = _factor_prime_power(args.q)
    ctx = field_new(p, r, args.m)
    f = parse_vectorial(ctx, args.f)
    g = parse_vectorial(ctx, args.g)
    pair = VectorialPair(f, g)
    top, _D = build_vectorial_pair(f, g)
    sub = subfield_code(top.puncture(0), MID)
    wd = sub.weight_distribution(budget)
    report = {
        "schema": SCHEMA,
        "construction": {
            "family": "vectorial-pair-punctured",
            "f": args.f, "g": args.g, "q": args.q, "m": args.m,
        },
        "top_code": [top.n, top.k],
        "parameters": [wd.n, wd.k, wd.d()],
        "weight_table": _wd_pairs(wd),
        "dual": _dual_section(wd),
        "bounds": bound_report(sub, wd, _dual_info(wd)[1]).as_dict(),
        "provenance": _provenance(ctx, args),
    }
    match = None
    if args.oracle:
        pred = weights_vectorial_predicted(f, g)
        brute = vectorial_subfield_distribution(pair, workers=args.workers,
                                                punctured=True)
        report["predicted_table"] = sorted([w, c] for w, c in pred.counts().items())
        report["theorem"] = pred.theorem
        match = (pred.counts() == wd.counts == brute.counts)
        report["predicted_matches_observed"] = match
    _emit(args, report)
    return OK if match in (None, True) else MISMATCH


def _dual_info(wd):
    """Dual [n, k, d] plus the low dual counts (B1, B2, B3), all via the
    exact MacWilliams coefficients (partial transform: only the counts the
    distance and the power moments need)."""
    b123 = tuple(macwilliams_coeff(wd, j) for j in (1, 2, 3))
    d_dual = dual_distance_macwilliams(wd)
    return [wd.n, wd.n - wd.k, d_dual], b123


def _dual_section(wd) -> dict:
    params, _ = _dual_info(wd)
    return {
        "parameters": params,
        "via": "macwilliams",
    }


# ---------------------------------------------------------------------------
# walsh
# ---------------------------------------------------------------------------

def cmd_walsh(args) -> int:
    p, r = _factor_prime_power(args.q)
    ctx = field_new(p, r, args.m)
    fn = parse_fn(ctx, args.descriptor)
    spec = spectrum_full(fn)
    report = {
        "schema": SCHEMA,
        "descriptor": args.descriptor,
        "kind": fn.kind,
        "class": spec.amplitude_class,
        "s": spec.s,
        "histogram": {str(k): v for k, v in sorted(spec.hist.items())},
        "support_count": spec.support_count,
        "provenance": _provenance(ctx, args),
    }
    _emit(args, report)
    return OK


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

def cmd_bounds(args) -> int:
    ham = hamming_check(args.n, args.k, args.d, args.q)
    gri = griesmer_check(args.n, args.k, args.d, args.q)
    report = {
        "schema": SCHEMA,
        "parameters": [args.n, args.k, args.d],
        "q": args.q,
        "hamming": ham.as_dict(),
        "griesmer": gri.as_dict(),
        "singleton_ok": args.d <= args.n - args.k + 1,
    }
    _emit(args, report)
    return OK


# ---------------------------------------------------------------------------
# css
# ---------------------------------------------------------------------------

def _parse_code_ref(ref: str, budget: int) -> LinearCode:
    """[dual:]cf:<descriptor>@<p>,<n>  or  [dual:]file:<path>."""
    want_dual = False
    body = ref
    if body.startswith("dual:"):
        want_dual = True
        body = body[len("dual:"):]
    if body.startswith("file:"):
        with open(body[len("file:"):], "r", encoding="utf-8") as fh:
            code = LinearCode.from_json(fh.read())
    elif body.startswith("cf:"):
        spec_part = body[len("cf:"):]
        if "@" not in spec_part:
            raise CatalogError(
                f"code ref {ref!r} needs '@p,n' (position {len(ref)})")
        desc, at = spec_part.rsplit("@", 1)
        p_str, n_str = at.split(",")
        ctx = field_new(int(p_str), 1, int(n_str))
        fn = parse_vectorial(ctx, desc)
        code = second_generic_code(fn)
    else:
        raise CatalogError(f"unknown code ref {ref!r} (position 0)")
    return code.dual() if want_dual else code


def cmd_css(args) -> int:
    budget = _budget(args)
    cx = _parse_code_ref(args.cx, budget)
    cz = _parse_code_ref(args.cz, budget)
    css = css_build(cx, cz, budget)
    report = {
        "schema": SCHEMA,
        "css_valid": True,
        "N": css.n_phys,
        "k": css.k_logical,
        "d_or_bound": css.d,
        "d_is_bound": css.d_is_bound,
    }
    if args.check:
        if args.check == "t":
            report["t_transversal"] = css_t_check(cx, budget)
        elif args.check.startswith("phase:"):
            k_exp = int(args.check.split(":", 1)[1])
            report["phase_transversal"] = phase_moment_check(
                cx, k_exp, cx.ctx.p, budget)
        else:
            raise CatalogError(f"unknown check {args.check!r}")
    _emit(args, report)
    return OK


# ---------------------------------------------------------------------------
# reproduce targets
# ---------------------------------------------------------------------------

def _scalar_target(p, r, m, h_desc, expect, args):
    ctx = field_new(p, r, m)
    f = parse_scalar(ctx, "tr")
    g = parse_scalar(ctx, "tr_square")
    h = parse_scalar(ctx, h_desc)
    tri = ScalarTriple(f, g, h)
    top, _ = build_scalar_triple(f, g, h)
    sub = subfield_code(top, MID)
    wd = sub.weight_distribution(_budget(args))
    punc_wd = sub.puncture(0).weight_distribution(_budget(args))
    pred = weights_scalar_predicted(f, g, h)
    pred_punc = weights_scalar_predicted(f, g, h, punctured=True)
    brute = scalar_subfield_distribution(tri, workers=args.workers)
    brute_punc = scalar_subfield_distribution(tri, workers=args.workers,
                                              punctured=True)
    dual_params, dual_b123 = _dual_info(wd)
    dual_punc_params, _ = _dual_info(punc_wd)
    observed = {
        "top_code": [top.n, top.k],
        "parameters": [wd.n, wd.k, wd.d()],
        "weight_table": _wd_pairs(wd),
        "punctured_parameters": [punc_wd.n, punc_wd.k, punc_wd.d()],
        "punctured_weight_table": _wd_pairs(punc_wd),
        "dual_parameters": dual_params,
        "punctured_dual_parameters": dual_punc_params,
        "predicted_matches_observed": (
            pred.counts() == wd.counts == brute.counts
            and pred_punc.counts() == punc_wd.counts == brute_punc.counts
        ),
        "theorem": pred.theorem,
    }
    bounds_dict = bound_report(sub, wd, dual_b123).as_dict()
    return ctx, sub, observed, bounds_dict, expect


def _reproduce_prop43(args):
    expect = {
        "top_code": [33, 4],
        "parameters": [33, 7, 8],
        "weight_table": [[0, 1], [8, 4], [16, 54], [17, 64], [24, 4], [32, 1]],
        "punctured_parameters": [32, 7, 8],
        "punctured_weight_table": [[0, 1], [8, 4], [16, 118], [24, 4], [32, 1]],
        "dual_parameters": [33, 26, 3],
        "punctured_dual_parameters": [32, 25, 4],
        "predicted_matches_observed": True,
    }
    return _scalar_target(2, 1, 2, "norm", expect, args)


def _reproduce_thm47_m2(args):
    expect = {
        "parameters": [33, 7, 8],
        "weight_table": [[0, 1], [8, 4], [16, 54], [17, 64], [24, 4], [32, 1]],
        "dual_parameters": [33, 26, 3],
        "predicted_matches_observed": True,
        "theorem": "bent-case",
    }
    ctx, sub, observed, bounds_dict, expect = _scalar_target(
        2, 1, 2, "bent:monomial", expect, args)
    # codeword-by-codeword: character-sum formula vs direct Hamming weight
    f = parse_scalar(ctx, "tr")
    g = parse_scalar(ctx, "tr_square")
    h = parse_scalar(ctx, "bent:monomial")
    tri = ScalarTriple(f, g, h)
    from .constructions import scalar_trace_codeword

    per_word_ok = True
    for a in (0, 1):
        for b in ctx.elements():
            for c in ctx.elements():
                for d in ctx.elements():
                    cw = scalar_trace_codeword(tri, a, b, c, d)
                    if sum(1 for x in cw if x) != tri.weight_formula(a, b, c, d):
                        per_word_ok = False
    observed["per_codeword_formula_ok"] = per_word_ok
    expect["per_codeword_formula_ok"] = True
    return ctx, sub, observed, bounds_dict, expect


def _reproduce_thm49(args):
    expect = {
        "parameters": [2049, 13, 512],
        "weight_table": [[0, 1], [512, 4], [1024, 4086], [1025, 4096],
                         [1536, 4], [2048, 1]],
        "dual_parameters": [2049, 2036, 3],
        "punctured_dual_parameters": [2048, 2035, 4],
        "predicted_matches_observed": True,
        "theorem": "plateaued-even-m",
    }
    return _scalar_target(2, 1, 4, "tr_pow:d=3", expect, args)


def _reproduce_thm410(args):
    expect = {
        "parameters": [257, 10, 65],
        "weight_table": [[0, 1], [65, 4], [128, 510], [129, 504],
                         [193, 4], [256, 1]],
        "dual_parameters": [257, 247, 4],
        "predicted_matches_observed": True,
        "theorem": "plateaued-odd-m",
    }
    return _scalar_target(2, 1, 3, "tr_pow:d=3", expect, args)


def _vectorial_target(m, g_desc, expect, args):
    ctx = field_new(2, 1, m)
    f = parse_vectorial(ctx, "id")
    g = parse_vectorial(ctx, g_desc)
    pair = VectorialPair(f, g)
    top, _ = build_vectorial_pair(f, g)
    sub = subfield_code(top.puncture(0), MID)
    wd = sub.weight_distribution(_budget(args))
    pred = weights_vectorial_predicted(f, g)
    brute = vectorial_subfield_distribution(pair, workers=args.workers,
                                            punctured=True)
    dual_params, dual_b123 = _dual_info(wd)
    observed = {
        "parameters": [wd.n, wd.k, wd.d()],
        "weight_table": _wd_pairs(wd),
        "dual_parameters": dual_params,
        "predicted_matches_observed": (pred.counts() == wd.counts == brute.counts),
        "theorem": pred.theorem,
    }
    bounds_dict = bound_report(sub, wd, dual_b123).as_dict()
    observed["doubly_even"] = bounds_dict["doubly_even"]
    observed["self_orthogonal"] = bounds_dict["self_orthogonal"]
    return ctx, sub, observed, bounds_dict, expect


def _reproduce_thm54_m5(args):
    expect = {
        "parameters": [32, 11, 12],
        "weight_table": [[0, 1], [12, 496], [16, 1054], [20, 496], [32, 1]],
        "dual_parameters": [32, 21, 6],
        "predicted_matches_observed": True,
        "doubly_even": True,
        "self_orthogonal": True,
    }
    return _vectorial_target(5, "gold:i=1", expect, args)


def _reproduce_cor55_m5(args):
    expect = {
        "parameters": [32, 11, 12],
        "weight_table": [[0, 1], [12, 496], [16, 1054], [20, 496], [32, 1]],
        "dual_parameters": [32, 21, 6],
        "predicted_matches_observed": True,
        "theorem": "plateaued-pair:s=1",
    }
    ctx, sub, observed, bounds_dict, expect = _vectorial_target(
        5, "kasami:i=2", expect, args)
    h = parse_vectorial(ctx, "kasami:i=2")
    observed["h_class"] = spectrum_full(h).amplitude_class
    expect["h_class"] = "almost_bent"
    return ctx, sub, observed, bounds_dict, expect


def _reproduce_first_generic(args):
    ctx = field_new(2, 1, 5)
    g = parse_vectorial(ctx, "gold:i=1")
    code = first_generic_code(fn_invert(g))
    wd = code.weight_distribution(_budget(args))
    pred = first_generic_predicted(g)
    pair = VectorialPair(parse_vectorial(ctx, "id"), g)
    sub_a0 = vectorial_subfield_distribution(pair, workers=args.workers,
                                             punctured=True,
                                             restrict_a_zero=True)
    # row-space equality with the a = 0 subcode of the punctured pair code
    rows = []
    for t in range(ctx.m):
        beta = ctx.pow(2, t)
        rows.append(tuple(ctx.trace(ctx.mul(beta, x), PRIME)
                          for (x, _) in pair.D.tuples))
        rows.append(tuple(ctx.trace(ctx.mul(beta, y), PRIME)
                          for (_, y) in pair.D.tuples))
    a0_code = LinearCode(ctx, PRIME, rows)
    _dual_params, dual_b123 = _dual_info(wd)
    bounds_dict = bound_report(code, wd, dual_b123).as_dict()
    observed = {
        "parameters": [wd.n, wd.k, wd.d()],
        "weight_table": _wd_pairs(wd),
        "row_space_equals_a0_subcode": a0_code.same_row_space(code),
        "a0_distribution_matches": sub_a0.counts == wd.counts,
        "predicted_matches_observed": pred.counts() == wd.counts,
        "minimal_ab": bounds_dict["minimal_ab"],
        "minimal_exact": bounds_dict["minimal_exact"],
        "doubly_even": bounds_dict["doubly_even"],
    }
    expect = {
        "parameters": [32, 10, 12],
        "weight_table": [[0, 1], [12, 310], [16, 527], [20, 186]],
        "row_space_equals_a0_subcode": True,
        "a0_distribution_matches": True,
        "predicted_matches_observed": True,
        "minimal_ab": True,
        "minimal_exact": True,
        "doubly_even": True,
    }
    return ctx, code, observed, bounds_dict, expect


def _reproduce_css_t(args):
    ctx5 = field_new(2, 1, 5)
    ctx3 = field_new(2, 1, 3)
    cf5 = second_generic_code(parse_vectorial(ctx5, "gold:i=1"))
    cf3 = second_generic_code(parse_vectorial(ctx3, "gold:i=1"))
    css = css_build(cf5, cf5.dual(), _budget(args))
    observed = {
        "css_t_pass_n5": css_t_check(cf5, _budget(args)),
        "css_t_fail_n3": css_t_check(cf3, _budget(args)),
        "css_valid": True,
        "k_logical": css.k_logical,
    }
    expect = {
        "css_t_pass_n5": True,
        "css_t_fail_n3": False,
        "css_valid": True,
        "k_logical": 0,
    }
    wd = cf5.weight_distribution(_budget(args))
    bounds_dict = bound_report(cf5, wd, _dual_info(wd)[1]).as_dict()
    return ctx5, cf5, observed, bounds_dict, expect


def _reproduce_css_ternary(args):
    ctx = field_new(3, 1, 3)
    cf = second_generic_code(parse_vectorial(ctx, "power:d=2"))
    css = css_build(cf, cf.dual(), _budget(args))
    wd = cf.weight_distribution(_budget(args))
    observed = {
        "phase_moment_ok": phase_moment_check(cf, 2, 3, _budget(args)),
        "weights_divisible_by_3": all(
            w % 3 == 0 for w, c in wd.counts.items() if c and w),
        "css_valid": True,
        "k_logical": css.k_logical,
    }
    expect = {
        "phase_moment_ok": True,
        "weights_divisible_by_3": True,
        "css_valid": True,
        "k_logical": 0,
    }
    bounds_dict = bound_report(cf, wd, _dual_info(wd)[1]).as_dict()
    return ctx, cf, observed, bounds_dict, expect


REPRODUCE_REGISTRY = {
    "prop4.3": _reproduce_prop43,
    "thm4.7:m=2": _reproduce_thm47_m2,
    "thm4.9:m=4:s=2": _reproduce_thm49,
    "thm4.10:m=3:s=1": _reproduce_thm410,
    "thm5.4:m=5:s=1": _reproduce_thm54_m5,
    "cor5.5:m=5": _reproduce_cor55_m5,
    "cor-first-generic:m=5": _reproduce_first_generic,
    "css-t:n=5": _reproduce_css_t,
    "css-ternary:n=3": _reproduce_css_ternary,
}


def cmd_reproduce(args) -> int:
    target = args.target
    if target not in REPRODUCE_REGISTRY:
        known = ", ".join(sorted(REPRODUCE_REGISTRY))
        print(f"unknown reproduce target {target!r}; known: {known}",
              file=sys.stderr)
        return MISMATCH
    ctx, _code, observed, bounds_dict, expect = REPRODUCE_REGISTRY[target](args)
    mismatches = sorted(
        key for key in expect if observed.get(key) != expect[key]
    )
    report = {
        "schema": SCHEMA,
        "target": target,
        "observed": observed,
        "expected": expect,
        "bounds": bounds_dict,
        "match": not mismatches,
        "mismatches": mismatches,
        "provenance": _provenance(ctx, args),
    }
    _emit(args, report)
    return OK if not mismatches else MISMATCH


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="walshcode",
        description="Exact linear codes from bent/plateaued functions: "
                    "builders, Walsh spectra, bounds, CSS verdicts.",
    )
    top.add_argument("--workers", type=int, default=1)
    top.add_argument("--budget", type=int, default=None,
                     help="enumeration budget (env WALSHCODE_BUDGET)")
    top.add_argument("--pretty", action="store_true")
    top.add_argument("--timing", action="store_true",
                     help="attach wall-clock timing (breaks byte-identical output)")
    sub = top.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a code and report it")
    b.add_argument("family", choices=["scalar", "vectorial"])
    b.add_argument("--f", required=True)
    b.add_argument("--g", required=True)
    b.add_argument("--h", default=None)
    b.add_argument("--q", type=int, default=2)
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--oracle", action="store_true",
                   help="compare predicted and brute-force tables; exit 2 on drift")
    b.add_argument("--generic", action="store_true",
                   help="use the per-codeword character-sum predictor")
    b.set_defaults(fn=cmd_build)

    w = sub.add_parser("walsh", help="dump a function's spectrum histogram")
    w.add_argument("descriptor")
    w.add_argument("--q", type=int, default=2)
    w.add_argument("--m", type=int, required=True)
    w.set_defaults(fn=cmd_walsh)

    bd = sub.add_parser("bounds", help="bound verdicts for [n,k,d] over GF(q)")
    bd.add_argument("--n", type=int, required=True)
    bd.add_argument("--k", type=int, required=True)
    bd.add_argument("--d", type=int, required=True)
    bd.add_argument("--q", type=int, required=True)
    bd.set_defaults(fn=cmd_bounds)

    c = sub.add_parser("css", help="assemble and check a CSS pair")
    c.add_argument("--cx", required=True,
                   help="code ref: [dual:]cf:<descriptor>@<p>,<n> or [dual:]file:<path>")
    c.add_argument("--cz", required=True)
    c.add_argument("--check", default=None, help="t | phase:<k>")
    c.set_defaults(fn=cmd_css)

    r = sub.add_parser("reproduce", help="rebuild a reference target and verify it")
    r.add_argument("target")
    r.set_defaults(fn=cmd_reproduce)
    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    args._t0 = time.time()
    if args.command == "build" and args.family == "scalar" and not args.h:
        print("scalar build needs --h", file=sys.stderr)
        return MISMATCH
    try:
        return args.fn(args)
    except (HypothesisError, CatalogError, CssError) as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return HYPOTHESIS
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET


if __name__ == "__main__":
    sys.exit(main())

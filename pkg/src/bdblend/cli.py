"""Experiment runner: moment validation sweeps, convergence studies,
theorem-bound audits, and figure-data emission (CSV + SVG).

Every command writes CSV (17-significant-digit floats, LF endings) plus a
JSON summary of the shape::

    {command, params, max_abs_err, max_rel_err, pass, per_item}

validated by ``docs/summary.schema.json``. Exit codes: 0 success, 1 usage
error, 2 numeric failure (partial reports still written), 3 check failed.
"""

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import bounds as bounds_mod
from . import functions, moments, svgplot
from .basis import OperatorParams, basis_weights
from .operator import (apply_grid, apply_with_moments, classical_durrmeyer_grid,
                       sup_error, weighted_moments)
from .quadrature import ConvergenceError

MOMENT_SWEEP = {
    "n": (2, 5, 10, 20, 50),
    "rho": (0.5, 1.0, 2.0, 4.0),
    "alpha": (0.0, 0.3, 0.7, 1.0),
    "x": tuple(round(0.1 * i, 1) for i in range(11)),
}

BOUND_SWEEP = {
    "n": (10, 20, 50),
    "alpha": (0.2, 0.3),
    "rho": (1.0, 4.0),
    "x": tuple(round(0.1 * i, 1) for i in range(1, 10)),
    "functions": functions.SWEEP_FIVE,
}

#: Suspected transcription errors in the printed raw-moment formulas,
#: with the re-derived corrections (flagged when the oracle disagrees).
PRINTED_TYPO_NOTES = {
    2: "x-term printed with an extra factor rho; outer factor should be x",
    3: "x^2-term printed with a spurious leading factor 3",
    4: "x^3-bracket term n^2(12a-1)rho should enter with a minus sign",
}


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _write_csv(path: Path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([v if isinstance(v, str) else _fmt(v) for v in row])


def _write_summary(path: Path, command, params, per_item, ok,
                   max_abs_err=None, max_rel_err=None):
    doc = {
        "command": command,
        "params": params,
        "max_abs_err": max_abs_err,
        "max_rel_err": max_rel_err,
        "pass": bool(ok),
        "per_item": per_item,
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return doc


# ---------------------------------------------------------------- commands

def cmd_eval(args, out: Path) -> int:
    f = functions.by_name(args.fn)
    params = OperatorParams(args.n[0], args.alpha, args.rho)
    xs = np.linspace(0.0, 1.0, args.grid)
    g = apply_grid(params, f, xs)
    fx = np.asarray(f(xs), dtype=float)
    _write_csv(out / "eval.csv", ["x", "f", "g"], zip(xs, fx, g))
    dev = float(np.max(np.abs(g - fx)))
    _write_summary(out / "eval_summary.json", "eval",
                   {"fn": args.fn, "n": params.n, "alpha": params.alpha,
                    "rho": params.rho, "grid": args.grid},
                   [{"kind": "max_deviation_from_f", "value": dev}],
                   ok=True, max_abs_err=dev)
    return 0


def cmd_moments_check(args, out: Path) -> int:
    sweep = MOMENT_SWEEP
    rows = []
    per_item = []
    worst_validated = [0.0] * 5
    worst_printed = [0.0] * 5
    for n in sweep["n"]:
        for rho in sweep["rho"]:
            base = OperatorParams(n, 0.0, rho)
            slot_oracle = {i: moments.oracle_raw_moments(base, i) for i in range(5)}
            for alpha in sweep["alpha"]:
                params = OperatorParams(n, alpha, rho)
                weights = {x: basis_weights(params, x) for x in sweep["x"]}
                for i in range(5):
                    for x in sweep["x"]:
                        oracle = float(np.dot(weights[x], slot_oracle[i]))
                        closed = moments.raw_moment(params, i, x)
                        printed = moments.raw_moment_printed(params, i, x)
                        abs_err = abs(closed - oracle)
                        rel_err = abs_err / max(abs(oracle), 1e-300)
                        worst_validated[i] = max(worst_validated[i], rel_err)
                        worst_printed[i] = max(
                            worst_printed[i],
                            abs(printed - oracle) / max(abs(oracle), 1e-300))
                        rows.append((n, alpha, rho, i, x, closed, oracle, abs_err, rel_err))
    _write_csv(out / "moments_check.csv",
               ["n", "alpha", "rho", "order", "x", "closed_form", "oracle",
                "abs_err", "rel_err"], rows)

    ok = True
    for i in range(5):
        deviates = worst_printed[i] > 1e-8
        per_item.append({
            "kind": "moment_validation", "order": i,
            "max_rel_err": worst_validated[i],
            "printed_max_rel_err": worst_printed[i],
            "printed_deviates": deviates,
            "suspected_typo": PRINTED_TYPO_NOTES.get(i) if deviates else None,
        })
        ok = ok and worst_validated[i] <= 1e-8

    # central-moment consistency: published closed forms vs expansion
    worst_central = 0.0
    for n in sweep["n"]:
        for rho in sweep["rho"]:
            for alpha in sweep["alpha"]:
                params = OperatorParams(n, alpha, rho)
                for x in sweep["x"]:
                    for m in (1, 2):
                        worst_central = max(worst_central, abs(
                            moments.central_moment(params, m, x)
                            - moments.central_moment_expanded(params, m, x)))
    per_item.append({"kind": "central_consistency", "max_abs_err": worst_central})
    ok = ok and worst_central <= 1e-10

    # negative control: the interior-style second-moment bound fails at the
    # endpoints; report the blow-up factor at x = 1e-3 for each (alpha, rho)
    for rho in sweep["rho"]:
        for alpha in sweep["alpha"]:
            ratio, interior, factor = moments.second_moment_endpoint_gap(alpha, rho)
            per_item.append({
                "kind": "second_moment_endpoint", "alpha": alpha, "rho": rho,
                "x": 1e-3, "endpoint_ratio": ratio,
                "interior_constant": interior,
                "ratio_of_ratios": factor,
                "exceeds_10x": factor > 10.0,
            })
            ok = ok and factor > 10.0

    doc = _write_summary(out / "moments_check_summary.json", "moments-check",
                         {"sweep": {k: list(v) for k, v in sweep.items()}},
                         per_item, ok,
                         max_rel_err=max(worst_validated))
    return 0 if doc["pass"] else 3


def cmd_converge(args, out: Path) -> int:
    f = functions.by_name(args.fn)
    ns = sorted(set(args.n))
    summaries = [sup_error(OperatorParams(n, args.alpha, args.rho), f, args.grid)
                 for n in ns]
    rows = []
    for i, (n, s) in enumerate(zip(ns, summaries)):
        if i + 1 < len(ns) and summaries[i + 1].sup_error > 0 and s.sup_error > 0:
            rate = (math.log(s.sup_error / summaries[i + 1].sup_error)
                    / math.log(ns[i + 1] / n))
            rate_s = _fmt(rate)
        else:
            rate_s = ""
        rows.append((n, s.sup_error, s.argmax_x, rate_s))
    _write_csv(out / "converge.csv", ["n", "sup_error", "argmax_x", "order"], rows)
    errs = [s.sup_error for s in summaries]
    decreasing = all(b < a for a, b in zip(errs, errs[1:]))
    _write_summary(out / "converge_summary.json", "converge",
                   {"fn": args.fn, "alpha": args.alpha, "rho": args.rho,
                    "n_list": ns, "grid": args.grid},
                   [{"kind": "sup_error", "n": n, "value": e} for n, e in zip(ns, errs)],
                   ok=decreasing, max_abs_err=max(errs))
    return 0 if decreasing else 3


def _bounds_reports(mspec=None):
    """All BoundReports of the standard sweep plus the weighted-modulus ratio audits."""
    sweep = BOUND_SWEEP
    reports = []
    ratio_items = []
    x_constants = {(a, r): moments.empirical_second_moment_constant(a, r)
                   for a in sweep["alpha"] for r in sweep["rho"]}
    kw = {} if mspec is None else {"mspec": mspec}
    for fname in sweep["functions"]:
        f = functions.CORPUS[fname]
        for rho in sweep["rho"]:
            mom = {n: weighted_moments(OperatorParams(n, 0.0, rho), f)
                   for n in (*sweep["n"], 100)}
            for alpha in sweep["alpha"]:
                X = x_constants[(alpha, rho)]
                for n in sweep["n"]:
                    params = OperatorParams(n, alpha, rho)
                    for x in sweep["x"]:
                        lhs = abs(apply_with_moments(params, x, mom[n])
                                  - float(np.asarray(f(np.array([x])))[0]))
                        reports.append(bounds_mod.local_smoothness_bound(
                            params, f, x, lhs=lhs, **kw))
                        if fname == "e1":
                            for k1, k2 in ((0.0, 1.0), (1.0, 1.0)):
                                reports.append(bounds_mod.lipschitz_bound(
                                    params, f, math.sqrt(1 + k1 + k2), 1.0,
                                    k1, k2, x, lhs=lhs))
                        if f.d1 is not None and fname != "abs_half":
                            reports.append(bounds_mod.c1_bound(
                                params, f, x, lhs=lhs, **kw))
                        reports.append(bounds_mod.dbv_bound(
                            params, f, x, empirical_X=X, lhs=lhs))
                # weighted-modulus ratio audit over the n sweep
                for x in (0.25, 0.5, 0.75):
                    ratios = []
                    for n in (*sweep["n"], 100):
                        params = OperatorParams(n, alpha, rho)
                        lhs = abs(apply_with_moments(params, x, mom[n])
                                  - float(np.asarray(f(np.array([x])))[0]))
                        rep = bounds_mod.global_weighted_bound(params, f, x, X,
                                                          lhs=lhs, **kw)
                        reports.append(rep)
                        ratios.append(rep.extras["ratio"])
                    tail = ratios[1:]  # entries with n >= 20
                    # the 1e-9 floor absorbs quadrature noise where the lhs
                    # vanishes analytically (e.g. e1 at x = 1/2)
                    mono = all(b <= a * 1.10 + 1e-9 for a, b in zip(tail, tail[1:]))
                    ratio_items.append({
                        "kind": "global_ratio_audit", "fn": fname, "alpha": alpha,
                        "rho": rho, "x": x, "ratios": ratios,
                        "non_increasing_after_20": mono,
                    })
    return reports, ratio_items


def _tail_audit_items():
    items = []
    one = functions.CORPUS["one"]
    for alpha in BOUND_SWEEP["alpha"]:
        for rho in BOUND_SWEEP["rho"]:
            X = moments.empirical_second_moment_constant(alpha, rho)
            for n in (16, 64):
                params = OperatorParams(n, alpha, rho)
                for x in (0.05, 0.5, 0.95):
                    rootn = math.sqrt(n)
                    tau2 = moments.central_moment(params, 2, x)
                    for side in ("lower", "upper"):
                        if side == "lower":
                            cut = x - x / rootn
                            if not 0.0 <= cut < x:
                                continue
                        else:
                            cut = x + (1 - x) / rootn
                            if not x < cut < 1.0:
                                continue
                        mass = moments.kernel_tail(params, x, cut, side)
                        cheb = tau2 / (x - cut) ** 2
                        moment_bound = X * x * (1 - x) / ((1 + params.nrho) * (x - cut) ** 2)
                        items.append({
                            "kind": "kernel_tail", "alpha": alpha, "rho": rho,
                            "n": n, "x": x, "side": side, "cut": cut,
                            "mass": mass, "chebyshev_rhs": cheb,
                            "moment_bound_rhs": moment_bound,
                            "ok": mass <= cheb * (1 + 1e-9) and mass <= moment_bound * (1 + 1e-9),
                        })
    return items


def cmd_bounds_check(args, out: Path) -> int:
    reports, ratio_items = _bounds_reports()
    rows = [(r.theorem_id, r.params.n, r.params.alpha, r.params.rho, r.x,
             r.lhs, r.rhs, str(r.satisfied).lower(),
             json.dumps(r.extras, sort_keys=True))
            for r in reports]
    _write_csv(out / "bounds_check.csv",
               ["theorem_id", "n", "alpha", "rho", "x", "lhs", "rhs",
                "satisfied", "extras"], rows)
    with open(out / "bounds_check.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        for r in reports:
            json.dump(r.as_dict(), fh, sort_keys=True)
            fh.write("\n")
    per_item = []
    ok = True
    for tid in bounds_mod.THEOREM_IDS:
        sub = [r for r in reports if r.theorem_id == tid]
        if not sub:
            continue
        n_ok = sum(r.satisfied for r in sub)
        per_item.append({"kind": "theorem_audit", "theorem_id": tid,
                         "reports": len(sub), "satisfied": n_ok})
        ok = ok and n_ok == len(sub)
    for item in ratio_items:
        per_item.append(item)
        ok = ok and item["non_increasing_after_20"]
    tail_items = _tail_audit_items()
    for item in tail_items:
        per_item.append(item)
        ok = ok and item["ok"]
    doc = _write_summary(out / "bounds_check_summary.json", "bounds-check",
                         {"sweep": {k: list(v) for k, v in BOUND_SWEEP.items()}},
                         per_item, ok)
    return 0 if doc["pass"] else 3


def _figure(out: Path, stem, title, f, curves, claims, params_doc, grid):
    xs = np.linspace(0.0, 1.0, grid)
    fx = np.asarray(f(xs), dtype=float)
    cols = [("x", xs), ("f", fx)]
    svg_curves = [("f", "gold", xs, fx)]
    for label, color, ys in curves:
        cols.append((label, ys))
        svg_curves.append((label, color, xs, ys))
    _write_csv(out / f"{stem}.csv", [c[0] for c in cols],
               zip(*(c[1] for c in cols)))
    svgplot.line_chart(out / f"{stem}.svg", title, svg_curves)
    return _write_summary(out / f"{stem}_summary.json", stem, params_doc,
                          claims, ok=all(c.get("ok", True) for c in claims))


def cmd_figure1(args, out: Path) -> int:
    grid = args.grid
    xs = np.linspace(0.0, 1.0, grid)
    passes = []
    for stem, fname in (("figure1", "x2_sin_2x_over_pi"),
                        *((("figure1_alt", "x2_sin_2pi_x"),) if args.alt else ())):
        f = functions.CORPUS[fname]
        params = OperatorParams(20, 0.3, 4.0)
        g = apply_grid(params, f, xs)
        d = classical_durrmeyer_grid(20, f, xs)
        fx = np.asarray(f(xs), dtype=float)
        err_g = float(np.max(np.abs(g - fx)))
        err_d = float(np.max(np.abs(d - fx)))
        claims = [{"kind": "sup_error", "operator": "blend_n20_a0.3_r4", "value": err_g},
                  {"kind": "sup_error", "operator": "classical_durrmeyer_n20", "value": err_d},
                  {"kind": "better_than_classical", "ok": err_g < err_d,
                   "margin": err_d - err_g}]
        doc = _figure(out, stem, f"n=20, alpha=0.3, rho=4: {fname}", f,
                      [("G_blend", "blue", g), ("D_classical", "red", d)],
                      claims, {"fn": fname, "n": 20, "alpha": 0.3, "rho": 4.0,
                               "grid": grid}, grid)
        if stem == "figure1":
            passes.append(doc["pass"])
    return 0 if all(passes) else 3


def cmd_figure2(args, out: Path) -> int:
    grid = args.grid
    xs = np.linspace(0.0, 1.0, grid)
    f = functions.CORPUS["poly7"]
    fx = np.asarray(f(xs), dtype=float)
    curves = []
    errs = {}
    for n, color in ((10, "green"), (20, "red"), (50, "blue")):
        g = apply_grid(OperatorParams(n, 0.2, 4.0), f, xs)
        curves.append((f"G_n{n}", color, g))
        errs[n] = float(np.max(np.abs(g - fx)))
    claims = [{"kind": "sup_error", "n": n, "value": errs[n]} for n in (10, 20, 50)]
    claims.append({"kind": "errors_strictly_decreasing",
                   "ok": errs[10] > errs[20] > errs[50]})
    doc = _figure(out, "figure2", "alpha=0.2, rho=4: x^7 + 10x^5 + x", f,
                  curves, claims, {"fn": "poly7", "alpha": 0.2, "rho": 4.0,
                                   "n_list": [10, 20, 50], "grid": grid}, grid)
    return 0 if doc["pass"] else 3


# ---------------------------------------------------------------- plumbing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        self.print_usage(sys.stderr)
        raise SystemExit(1)


def _build_parser():
    p = _Parser(prog="bdblend",
                description="Blending-type Bernstein-Durrmeyer experiment runner")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fn=False, nlist=False, grid=True):
        sp.add_argument("--out", default="out", help="output directory")
        if grid:
            sp.add_argument("--grid", type=int, default=257, help="x grid size")
        if fn:
            sp.add_argument("--fn", default="x2_sin_2x_over_pi",
                            help="corpus function name or poly:c0,c1,...")
            sp.add_argument("--alpha", type=float, default=0.3)
            sp.add_argument("--rho", type=float, default=4.0)
        if nlist:
            sp.add_argument("--n", type=int, action="append",
                            help="sample count (repeatable)")

    sp = sub.add_parser("eval", help="tabulate f and G f on a grid")
    common(sp, fn=True, nlist=True)
    sp.set_defaults(func=cmd_eval, default_n=[20])

    sp = sub.add_parser("moments-check", help="validate moment formulas vs quadrature")
    common(sp, grid=False)
    sp.set_defaults(func=cmd_moments_check)

    sp = sub.add_parser("converge", help="sup-error vs n study")
    common(sp, fn=True, nlist=True)
    sp.set_defaults(func=cmd_converge, default_n=[10, 20, 50])

    sp = sub.add_parser("bounds-check", help="audit every theorem bound")
    common(sp, grid=False)
    sp.set_defaults(func=cmd_bounds_check)

    sp = sub.add_parser("figure1", help="blend vs classical Durrmeyer comparison data")
    common(sp)
    sp.add_argument("--no-alt", dest="alt", action="store_false",
                    help="skip the sin(2 pi x) variant dataset")
    sp.set_defaults(func=cmd_figure1, alt=True)

    sp = sub.add_parser("figure2", help="convergence of the blend operator in n")
    common(sp)
    sp.set_defaults(func=cmd_figure2)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is None and hasattr(args, "default_n"):
        args.n = args.default_n
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        return args.func(args, out)
    except ConvergenceError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: per-n invariant sweeps, quasi-polynomial fitting,
Betti numbers, the unbounded-Betti family checks, and formula evaluation.

Output is deterministic for a fixed configuration: rows are assembled in
order of n regardless of the worker pool, rationals are printed as p/q
strings, and floats never appear.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import eqp, factor, homology, numsg, polyfam, presburger
from .errors import EqpsgError

SCHEMA_VERSION = 1

BOOLEAN_INVARIANTS = ("numerical", "symmetric", "irreducible")
SIMPLE_INVARIANTS = (
    "numerical",
    "frobenius",
    "genus",
    "type",
    "fg_count",
    "delta_count",
    "symmetric",
    "irreducible",
)


def _parse_invariant(token: str):
    """Split an invariant token into (kind, parameter)."""
    if token in SIMPLE_INVARIANTS:
        return (token, None)
    if token.startswith("apery_") and token[6:].isdigit():
        return ("apery", int(token[6:]))
    if token.startswith("betti_") and token[6:].isdigit():
        i = int(token[6:])
        if i >= 1:
            return ("betti", i)
    if token.startswith("length_count:"):
        return ("length_count", polyfam.parse_poly(token.split(":", 1)[1]))
    if token.startswith("delta_elem_count:"):
        return ("delta_elem_count", polyfam.parse_poly(token.split(":", 1)[1]))
    raise argparse.ArgumentTypeError(
        f"unknown invariant {token!r}; known: {', '.join(SIMPLE_INVARIANTS)}, "
        "apery_<i>, betti_<i>, length_count:<poly>, delta_elem_count:<poly>"
    )


def _load_family(spec: str) -> polyfam.ParametricFamily:
    path = Path(spec)
    if path.exists():
        return polyfam.parse_family(path.read_text(encoding="utf-8"), label=path.stem)
    return polyfam.parse_family_inline(spec)


def _parse_range(spec: str) -> tuple[int, int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        lo_i, hi_i = int(lo), int(hi)
    else:
        lo_i = hi_i = int(spec)
    if lo_i > hi_i:
        raise argparse.ArgumentTypeError(f"empty range {spec!r}")
    if lo_i < 0:
        raise argparse.ArgumentTypeError("n must be >= 0")
    return lo_i, hi_i


def _row_for_n(fam, n, invariants, normalize, delta_bound):
    row = {"n": n}
    values = polyfam.instantiate_scalars(fam, n)
    view = numsg.build(values)
    if normalize and not view.is_numerical:
        view = numsg.build([g // view.gcd_d for g in view.gens])
    numerical = view.is_numerical
    for kind, param in invariants:
        key = _invariant_key(kind, param)
        if kind == "numerical":
            row[key] = numerical
            continue
        if not numerical:
            row[key] = None
            if kind == "delta_count":
                row["delta_count_complete"] = None
            continue
        if kind == "frobenius":
            row[key] = view.frobenius
        elif kind == "genus":
            row[key] = numsg.genus(view)
        elif kind == "type":
            row[key] = numsg.semigroup_type(view)
        elif kind == "fg_count":
            row[key] = len(numsg.fundamental_gaps(view))
        elif kind == "delta_count":
            deltas, complete = factor.delta_of_semigroup(view, delta_bound)
            row[key] = len(deltas)
            row["delta_count_complete"] = complete
        elif kind == "symmetric":
            row[key] = numsg.is_symmetric(view)
        elif kind == "irreducible":
            row[key] = numsg.is_irreducible(view)
        elif kind == "apery":
            if param > view.multiplicity:
                row[key] = None
            else:
                row[key] = numsg.ith_apery_element(view, param)
        elif kind == "betti":
            row[key] = homology.coarse_betti(view.gens, param)[0]
        elif kind == "length_count":
            a = param(n)
            row[key] = len(factor.length_set(view, a)) if a >= 0 else None
        elif kind == "delta_elem_count":
            a = param(n)
            row[key] = len(factor.delta_of_element(view, a)) if a >= 0 else None
        else:
            raise EqpsgError(f"unhandled invariant kind {kind}")
    return row


def _invariant_key(kind, param):
    if kind == "apery":
        return f"apery_{param}"
    if kind == "betti":
        return f"betti_{param}"
    if kind in ("length_count", "delta_elem_count"):
        return f"{kind}:{polyfam.render_poly(param)}"
    return kind


def _compute_rows(fam, n_lo, n_hi, invariants, normalize, delta_bound, threads):
    ns = list(range(n_lo, n_hi + 1))
    work = lambda n: _row_for_n(fam, n, invariants, normalize, delta_bound)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(work, ns))
    return [work(n) for n in ns]


def _family_json(fam):
    return {
        "label": fam.label,
        "dim": fam.ambient_dim,
        "generators": [
            [polyfam.render_poly(p) for p in vec] for vec in fam.generators
        ],
    }


def _cell_text(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _emit(report: dict, rows_key: str, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(report, out, indent=2)
        out.write("\n")
        return
    rows = report.get(rows_key, [])
    if not rows:
        out.write("(no rows)\n")
        return
    header = list(rows[0].keys())
    if fmt == "csv":
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(_cell_text(row.get(h)) for h in header) + "\n")
        return
    widths = [
        max(len(h), max(len(_cell_text(r.get(h))) for r in rows)) for h in header
    ]
    line = "  ".join(h.ljust(w) for h, w in zip(header, widths))
    out.write(line.rstrip() + "\n")
    for row in rows:
        cells = [
            (_cell_text(row.get(h)) or "-").ljust(w) for h, w in zip(header, widths)
        ]
        out.write("  ".join(cells).rstrip() + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_invariants(args, out) -> int:
    fam = _load_family(args.family)
    if fam.ambient_dim != 1:
        raise EqpsgError("the invariants command needs a one-dimensional family")
    n_lo, n_hi = args.n
    rows = _compute_rows(
        fam, n_lo, n_hi, args.invariants, args.normalize, args.delta_bound, args.threads
    )
    report = {
        "schema": SCHEMA_VERSION,
        "command": "invariants",
        "family": _family_json(fam),
        "n_lo": n_lo,
        "n_hi": n_hi,
        "rows": rows,
    }
    _emit(report, "rows", args.format, out)
    return 0


def cmd_eqp_fit(args, out) -> int:
    fam = _load_family(args.family)
    if fam.ambient_dim != 1:
        raise EqpsgError("the eqp-fit command needs a one-dimensional family")
    n_lo, n_hi = args.n
    rows = _compute_rows(
        fam, n_lo, n_hi, args.invariants, args.normalize, args.delta_bound, args.threads
    )
    d_max = args.dmax if args.dmax is not None else 1 + fam.degree_sum()
    defined_flags = {}
    for row in rows:
        gens = polyfam.instantiate_scalars(fam, row["n"])
        view_gcd = math.gcd(*gens) if len(gens) > 1 else gens[0]
        defined_flags[row["n"]] = view_gcd == 1
    definedness = eqp.eventually_periodic_set(defined_flags, p_max=args.pmax, holdout=args.holdout)
    fits = {}
    exit_code = 0
    for kind, param in args.invariants:
        key = _invariant_key(kind, param)
        samples = {r["n"]: r[key] for r in rows if r[key] is not None}
        undefined = [r["n"] for r in rows if r[key] is None]
        if not samples:
            fits[key] = {"nofit": "no defined points"}
            continue
        try:
            if kind in BOOLEAN_INVARIANTS:
                result = eqp.eventually_periodic_set(
                    {n: bool(v) for n, v in samples.items()},
                    p_max=args.pmax,
                    holdout=args.holdout,
                )
                if result is None:
                    fits[key] = {"nofit": "no eventually periodic pattern in range"}
                    continue
                period, onset, pattern = result
                fits[key] = {
                    "kind": "eventually-periodic",
                    "period": period,
                    "onset": onset,
                    "pattern": list(pattern),
                }
            else:
                series = eqp.SampleSeries.from_values(samples, undefined)
                qp = eqp.fit(series, p_max=args.pmax, d_max=d_max, holdout=args.holdout)
                if qp is None:
                    fits[key] = {"nofit": "no exact quasi-polynomial in range"}
                    continue
                defined = series.defined_ns()
                n_hold = max(1, math.ceil(len(defined) * args.holdout)) if args.holdout > 0 else 0
                holdout_ns = defined[len(defined) - n_hold :]
                fits[key] = {
                    "kind": "quasi-polynomial",
                    **qp.to_json_dict(),
                    "holdout_n": holdout_ns,
                    "holdout_exact": True,
                }
        except EqpsgError as exc:
            fits[key] = {"nofit": str(exc)}
    report = {
        "schema": SCHEMA_VERSION,
        "command": "eqp-fit",
        "family": _family_json(fam),
        "n_lo": n_lo,
        "n_hi": n_hi,
        "pmax": args.pmax,
        "dmax": d_max,
        "holdout": f"{args.holdout}",
        "note": "fits are consistent with the sampled window; onsets are empirical",
        "defined_set_fit": (
            None
            if definedness is None
            else {
                "period": definedness[0],
                "onset": definedness[1],
                "pattern": list(definedness[2]),
            }
        ),
        "fits": fits,
    }
    if args.format == "json":
        _emit(report, "", args.format, out)
    else:
        rows_out = []
        for key, info in fits.items():
            if "nofit" in info:
                rows_out.append({"invariant": key, "status": f"nofit: {info['nofit']}"})
            elif info["kind"] == "eventually-periodic":
                rows_out.append(
                    {
                        "invariant": key,
                        "status": "periodic",
                        "period": info["period"],
                        "onset": info["onset"],
                        "detail": "".join("T" if b else "F" for b in info["pattern"]),
                    }
                )
            else:
                rows_out.append(
                    {
                        "invariant": key,
                        "status": "eqp",
                        "period": info["period"],
                        "onset": info["onset"],
                        "detail": f"degree={info['degree']}",
                    }
                )
        _emit({"rows": rows_out}, "rows", args.format, out)
    return exit_code


def cmd_betti(args, out) -> int:
    fam = _load_family(args.family)
    n_lo, n_hi = args.n
    fieldspec = homology.parse_field(args.field)
    rows = []
    for n in range(n_lo, n_hi + 1):
        gens = polyfam.instantiate(fam, n)
        value, complete = homology.coarse_betti(
            gens, args.index, fieldspec, degree_cap=args.degree_cap
        )
        rows.append(
            {"n": n, f"betti_{args.index}": value, "complete": complete}
        )
    report = {
        "schema": SCHEMA_VERSION,
        "command": "betti",
        "family": _family_json(fam),
        "i": args.index,
        "field": str(fieldspec),
        "rows": rows,
    }
    if args.graded:
        tables = {}
        for n in range(n_lo, n_hi + 1):
            gens = polyfam.instantiate(fam, n)
            table = homology.graded_betti_table(
                gens, args.index, fieldspec, degree_cap=args.degree_cap
            )
            tables[str(n)] = table.to_text()
        report["graded"] = tables
    _emit(report, "rows", args.format, out)
    return 0


def cmd_bresinsky(args, out) -> int:
    n_lo, n_hi = args.n
    rows = []
    failures = 0
    for n in range(n_lo, n_hi + 1):
        try:
            rep = homology.verify_bresinsky(args.d, n, compute_beta1=args.beta1)
            rows.append(
                {
                    "n": n,
                    "gens": "/".join(str(g) for g in rep.gens),
                    "M": rep.step,
                    "beta1_lower": rep.beta1_lower_bound,
                    "beta1": rep.beta1,
                    "beta1_complete": rep.beta1_complete if rep.beta1 is not None else None,
                    "verified": True,
                }
            )
        except EqpsgError as exc:
            failures += 1
            rows.append({"n": n, "verified": False, "error": str(exc)})
    report = {
        "schema": SCHEMA_VERSION,
        "command": "bresinsky",
        "d": args.d,
        "rows": rows,
    }
    _emit(report, "rows", args.format, out)
    return 1 if failures else 0


def cmd_ppa(args, out) -> int:
    if args.file:
        text = Path(args.file).read_text(encoding="utf-8")
    else:
        text = args.formula
    formula = presburger.parse_formula(text)
    free = sorted(presburger.free_vars(formula))
    n_lo, n_hi = args.n
    rows = []
    for n in range(n_lo, n_hi + 1):
        window = args.window or presburger.suggested_window(formula, n)
        if free:
            points = presburger.define_set(formula, n, free, window)
            shown = sorted(points)
            rows.append(
                {
                    "n": n,
                    "free": ",".join(free),
                    "window": window,
                    "count": len(points),
                    "set": ";".join(str(p) for p in shown),
                }
            )
        else:
            value, flag = presburger.evaluate(formula, n, {}, window)
            rows.append({"n": n, "window": window, "value": value, "flag": flag})
    report = {
        "schema": SCHEMA_VERSION,
        "command": "ppa",
        "formula": presburger.render(formula),
        "rows": rows,
    }
    _emit(report, "rows", args.format, out)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqpsg",
        description="parametric numerical/affine semigroup invariants and fits",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    default_threads = int(os.environ.get("EQPSG_THREADS", "1"))

    def common(p, family=True):
        if family:
            p.add_argument("--family", required=True, help="family file or inline spec")
        p.add_argument("--n", required=True, type=_parse_range, help="n range lo..hi")
        p.add_argument("--format", choices=("json", "csv", "table"), default="table")
        p.add_argument("--threads", type=int, default=default_threads)

    p_inv = sub.add_parser("invariants", help="per-n invariant table")
    common(p_inv)
    p_inv.add_argument(
        "--invariants",
        required=True,
        type=lambda s: [_parse_invariant(t) for t in s.split(",") if t],
        help="comma-separated invariant names",
    )
    p_inv.add_argument("--delta-bound", type=int, default=None)
    p_inv.add_argument("--normalize", action="store_true")
    p_inv.set_defaults(func=cmd_invariants)

    p_fit = sub.add_parser("eqp-fit", help="fit quasi-polynomials to invariants")
    common(p_fit)
    p_fit.add_argument(
        "--invariants",
        required=True,
        type=lambda s: [_parse_invariant(t) for t in s.split(",") if t],
    )
    p_fit.add_argument("--pmax", type=int, default=12)
    p_fit.add_argument("--dmax", type=int, default=None)
    p_fit.add_argument("--holdout", type=float, default=0.2)
    p_fit.add_argument("--delta-bound", type=int, default=None)
    p_fit.add_argument("--normalize", action="store_true")
    p_fit.set_defaults(func=cmd_eqp_fit)

    p_betti = sub.add_parser("betti", help="coarse (and graded) Betti numbers")
    common(p_betti)
    p_betti.add_argument("--i", dest="index", type=int, default=1)
    p_betti.add_argument("--field", default="q")
    p_betti.add_argument("--degree-cap", type=int, default=None)
    p_betti.add_argument("--graded", action="store_true")
    p_betti.set_defaults(func=cmd_betti)

    p_bres = sub.add_parser("bresinsky", help="verify the unbounded-Betti family")
    p_bres.add_argument("--d", type=int, required=True)
    p_bres.add_argument("--n", required=True, type=_parse_range)
    p_bres.add_argument("--beta1", action=argparse.BooleanOptionalAction, default=None)
    p_bres.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p_bres.set_defaults(func=cmd_bresinsky)

    p_ppa = sub.add_parser("ppa", help="evaluate a formula or its defined set")
    p_ppa.add_argument("--formula", help="inline formula text")
    p_ppa.add_argument("--file", help="file containing the formula (.ppa)")
    p_ppa.add_argument("--n", required=True, type=_parse_range)
    p_ppa.add_argument("--window", type=int, default=None)
    p_ppa.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p_ppa.set_defaults(func=cmd_ppa)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "ppa" and not (args.formula or args.file):
        parser.error("ppa needs --formula or --file")
    try:
        return args.func(args, sys.stdout)
    except EqpsgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Five subcommands: premium, hg, dual-verify, conjugate, properties.
Output is a deterministic JSON envelope {command, inputs, result,
diagnostics} with sorted keys, so runs are byte-identical given the
same inputs.  Exit codes: 0 ok, 1 computation failed, 2 bad input,
3 property suite reported failures.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from .base import OrliczError
from .duality import dual_search
from .functions import (
    Expectile,
    GeometricExpectile,
    GeometricMean,
    LpQuantile,
    LpqQuantile,
    OrliczFunction,
    Power,
    QuantileStep,
    conjugate,
    piecewise_linear_from_text,
    validate,
)
from .hg import hg_risk_measure
from .premium import orlicz_premium
from .prob import DiscreteDistribution, as_random_variable, rv
from .properties import DEFAULT_TRIALS, SUITES, run_suite


class InputError(Exception):
    pass


PHI_GRAMMAR = (
    "gm | power:P | quantile:A | expectile:A | lp:A,P | lpq:A,B,P,Q | "
    "gexpectile:A,B | pwl:PATH"
)


def parse_phi_spec(text: str) -> OrliczFunction:
    """Build a function family from its compact spec string."""
    head, _, tail = text.strip().partition(":")
    try:
        if head == "gm":
            if tail:
                raise InputError("gm takes no parameters")
            return GeometricMean()
        if head == "pwl":
            with open(tail) as fh:
                return piecewise_linear_from_text(fh.read())
        args = [float(a) for a in tail.split(",")] if tail else []
        if head == "power" and len(args) == 1:
            return Power(args[0])
        if head == "quantile" and len(args) == 1:
            return QuantileStep(args[0])
        if head == "expectile" and len(args) == 1:
            return Expectile(args[0])
        if head == "lp" and len(args) == 2:
            return LpQuantile(args[0], args[1])
        if head == "lpq" and len(args) == 4:
            return LpqQuantile(args[0], args[1], args[2], args[3])
        if head == "gexpectile" and len(args) == 2:
            return GeometricExpectile(args[0], args[1])
    except InputError:
        raise
    except (ValueError, OSError) as exc:
        raise InputError(f"bad phi spec {text!r}: {exc}") from None
    raise InputError(f"bad phi spec {text!r}; grammar: {PHI_GRAMMAR}")


def _numeric(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def load_data(path: str, fmt: str = "auto"):
    """Read a CSV of outcomes.

    dist format has value,probability rows; sample format has one value
    per row (uniform weights).  auto picks by column count.  A single
    non-numeric header row is skipped.
    """
    try:
        with open(path, newline="") as fh:
            rows = [
                [c.strip() for c in row if c.strip()]
                for row in csv.reader(fh)
            ]
    except OSError as exc:
        raise InputError(f"cannot read {path!r}: {exc}") from None
    rows = [r for r in rows if r]
    if rows and not _numeric(rows[0][0]):
        rows = rows[1:]
    if not rows:
        raise InputError(f"{path!r} holds no data rows")
    if fmt == "auto":
        fmt = "dist" if len(rows[0]) >= 2 else "sample"
    try:
        if fmt == "dist":
            pairs = []
            for r in rows:
                if len(r) < 2:
                    raise InputError(f"dist rows need value,probability: {r!r}")
                pairs.append((float(r[0]), float(r[1])))
            return as_random_variable(DiscreteDistribution.from_pairs(pairs))
        return rv([float(r[0]) for r in rows])
    except InputError:
        raise
    except (ValueError, OrliczError) as exc:
        raise InputError(f"bad data in {path!r}: {exc}") from None


def _jsonable(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return obj
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit(command: str, inputs: dict, result: dict, diagnostics: Optional[dict] = None) -> None:
    envelope = {
        "command": command,
        "inputs": _jsonable(inputs),
        "result": _jsonable(result),
        "diagnostics": _jsonable(diagnostics or {}),
    }
    print(json.dumps(envelope, sort_keys=True, indent=2))


def _cmd_premium(args) -> int:
    phi = parse_phi_spec(args.phi)
    X = load_data(args.data, args.format)
    res = orlicz_premium(phi, X, tol=args.tol)
    _emit(
        "premium",
        {"phi": phi.spec_string(), "data": args.data, "tol": args.tol},
        {
            "value": res.value,
            "bracket": list(res.bracket),
            "route": res.route,
            "g_at_value": res.g_at_value,
        },
        {"iterations": res.iterations, "n": X.space.n},
    )
    return 0


def _cmd_hg(args) -> int:
    phi = parse_phi_spec(args.phi)
    X = load_data(args.data, args.format)
    res = hg_risk_measure(phi, X, tol=args.tol)
    if args.profile:
        with open(args.profile, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "g"])
            for x, g in res.profile:
                w.writerow([repr(x), repr(g)])
    _emit(
        "hg",
        {"phi": phi.spec_string(), "data": args.data, "tol": args.tol},
        {"value": res.value, "minimizer_x": res.minimizer_x},
        {
            "evaluations": res.evaluations,
            "extensions": res.extensions,
            "floor_active": res.floor_active,
            "profile_written": args.profile or None,
        },
    )
    return 0


def _cmd_dual_verify(args) -> int:
    phi = parse_phi_spec(args.phi)
    X = load_data(args.data, args.format)
    kind = "arithmetic" if args.kind == "arith" else "geometric"
    cert = dual_search(phi, X, kind=kind, grid_step=args.grid_step)
    primal = orlicz_premium(phi, X).value
    _emit(
        "dual-verify",
        {
            "phi": phi.spec_string(),
            "data": args.data,
            "kind": args.kind,
            "grid_step": args.grid_step,
        },
        {
            "primal": primal,
            "best_bound": cert.lower_bound,
            "gap": primal - cert.lower_bound,
            "argmax_density": list(cert.measure.density),
            "penalty": cert.penalty,
        },
        {"n": X.space.n},
    )
    return 0


def _cmd_conjugate(args) -> int:
    phi = parse_phi_spec(args.phi)
    if args.at:
        try:
            ys = [float(y) for y in args.at.split(",")]
        except ValueError as exc:
            raise InputError(f"bad --at list: {exc}") from None
    else:
        ys = [0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0]
    if any(y < 0 for y in ys):
        raise InputError("conjugate arguments must be nonnegative")
    table = [[y, conjugate(phi, y)] for y in ys]
    _emit(
        "conjugate",
        {"phi": phi.spec_string(), "at": ys},
        {"pairs": table},
        {"convex_flag": phi.convex_flag},
    )
    return 0


def _cmd_properties(args) -> int:
    names = [args.suite] if args.suite else list(SUITES)
    for nm in names:
        if nm not in SUITES:
            raise InputError(f"unknown suite {nm!r}; choices: {sorted(SUITES)}")
    workers = int(os.environ.get("ORLICZ_THREADS", "1") or "1")

    def run(nm: str):
        return run_suite(nm, trials=args.trials, seed=args.seed)

    if workers > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=min(workers, len(names))) as pool:
            reports = list(pool.map(run, names))
    else:
        reports = [run(nm) for nm in names]
    result = {
        "suites": [
            {
                "suite": r.suite,
                "trials": r.trials,
                "passed": r.passed,
                "failures": [str(f) for f in r.failures],
                "notes": list(r.notes),
            }
            for r in reports
        ],
        "all_passed": all(r.passed for r in reports),
    }
    _emit(
        "properties",
        {"suite": args.suite, "trials": args.trials, "seed": args.seed},
        result,
        {"defaults": DEFAULT_TRIALS, "workers": workers},
    )
    return 0 if result["all_passed"] else 3


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="orlicz",
        description="Premia and risk measures for finite distributions.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, data=True):
        p.add_argument("--phi", required=True, help=f"function spec: {PHI_GRAMMAR}")
        if data:
            p.add_argument("--data", required=True, help="CSV of outcomes")
            p.add_argument(
                "--format",
                choices=["auto", "dist", "sample"],
                default="auto",
                help="dist: value,probability rows; sample: one value per row",
            )

    p = sub.add_parser("premium", help="smallest scale k with E[Phi(X/k)] <= 1")
    add_common(p)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_premium)

    p = sub.add_parser("hg", help="translated-premium risk measure inf_x x + H((X-x)+)")
    add_common(p)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--profile", help="write the coarse x,g sweep to this CSV")
    p.set_defaults(func=_cmd_hg)

    p = sub.add_parser("dual-verify", help="best dual lower bound vs the primal")
    add_common(p)
    p.add_argument("--kind", choices=["arith", "geom"], default="arith")
    p.add_argument("--grid-step", type=float, default=None)
    p.set_defaults(func=_cmd_dual_verify)

    p = sub.add_parser("conjugate", help="evaluate the convex conjugate")
    add_common(p, data=False)
    p.add_argument("--at", help="comma-separated y values")
    p.set_defaults(func=_cmd_conjugate)

    p = sub.add_parser("properties", help="run the structural-law suites")
    p.add_argument("--suite", choices=sorted(SUITES), default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_properties)

    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except OrliczError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

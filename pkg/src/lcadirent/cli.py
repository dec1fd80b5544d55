"""Command-line front end: ``lcadirent <subcommand> ...``.

Exit status is 0 on success, 1 on domain errors (non-invertible rule,
invalid matrix, enumeration budget exceeded) and 2 on usage errors
(bad flags, malformed rule text).  Relative output paths are resolved
against ``$LCADIRENT_OUTDIR`` when it is set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import io
from .estimator import BudgetExceeded, estimate_tde
from .measures import (InvalidMeasure, MarkovMeasure, StochasticMatrix, as_prob_vector,
                       bernoulli_bound, entropy_rate, markov_bound, markov_directional)
from .mtde import Direction, mtde_case_theorem, mtde_circle_curve, mtde_uniform, sector_boundaries
from .rule import (NotInvertible, RuleSyntaxError, as_rule, invert, is_invertible,
                   permutivity_report, unit_positions)
from .tde import closed_form_report, sample_curve, tde_curve, topological_entropy

OUTDIR_ENV = "LCADIRENT_OUTDIR"


class UsageError(Exception):
    pass


def _path(p: str | None):
    if p is None or p == "-":
        return sys.stdout
    path = Path(p)
    base = os.environ.get(OUTDIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _pair(text: str, kind=float) -> tuple:
    try:
        a, b = (kind(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected two comma-separated numbers, got {text!r}") from exc
    return a, b


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise InvalidMeasure(f"{path}: {exc}") from exc


def _load_matrix(path: str) -> StochasticMatrix:
    data = _load_json(path)
    try:
        io.validate(data, io.MATRIX_SCHEMA)
    except Exception as exc:
        raise InvalidMeasure(f"{path}: {exc}") from exc
    return StochasticMatrix.from_json(data)


def _num(x: float, scale: float) -> float:
    return x / scale


# -- subcommands --------------------------------------------------------------

def cmd_analyze(args) -> int:
    rule = as_rule(args.rule)
    scale = io.log_scale(args.log_base, rule.m)
    rep = permutivity_report(rule)
    report = {
        "rule": str(rule),
        "modulus": rule.m,
        "factorization": [list(f) for f in rule.modulus.factors],
        "span": [rule.l, rule.r],
        "coefficients": list(rule.coeffs),
        "permutivity": {
            "factors": [{"p": f.p, "k": f.k, "P": list(f.P), "L": f.L, "R": f.R,
                         "theta_L": f.theta_L, "theta_R": f.theta_R}
                        for f in rep.factors],
            "leftmost": rep.leftmost,
            "rightmost": rep.rightmost,
            "bipermutative": rep.bipermutative,
        },
        "invertible": is_invertible(rule),
        "inverse": str(invert(rule)) if is_invertible(rule) else None,
        "non_invertible_primes": [p for p in rule.modulus.primes
                                  if len(unit_positions(rule, p)) != 1],
        "topological_entropy": _num(topological_entropy(rule), scale),
        "log_base": args.log_base,
        "curve": tde_curve(rule).to_json(),
    }
    io.dump_json(report, _path(args.out))
    return 0


def cmd_tde(args) -> int:
    rule = as_rule(args.rule)
    scale = io.log_scale(args.log_base, rule.m)
    curve = tde_curve(rule)
    samples = sample_curve(curve, args.samples)
    io.emit_csv(samples, _path(args.out), scale)
    if args.svg:
        io.emit_svg(samples, _path(args.svg), curve.breakpoints, scale,
                    title=f"TDE of {rule}")
    if args.json:
        data = curve.to_json()
        data["sectors"] = [s.to_json() for s in closed_form_report(curve)]
        data["rule"] = str(rule)
        data["log_base"] = args.log_base
        data["topological_entropy"] = _num(topological_entropy(rule), scale)
        io.dump_json(data, _path(args.json))
    return 0


def cmd_mtde(args) -> int:
    rule = as_rule(args.rule)
    scale = io.log_scale(args.log_base, rule.m)
    if args.direction:
        v = Direction(*_pair(args.direction))
        case = mtde_case_theorem(rule, v)
        io.dump_json({
            "kind": "mtde", "rule": str(rule), "direction": [v.x, v.y],
            "z_l": v.z(rule)[0], "z_r": v.z(rule)[1],
            "value": _num(mtde_uniform(rule, v), scale),
            "case": case.case,
            "case_value": None if case.value is None else _num(case.value, scale),
            "log_base": args.log_base,
        }, _path(args.out))
        return 0
    samples = mtde_circle_curve(rule, args.samples)
    io.emit_csv(samples, _path(args.out), scale)
    if args.svg:
        io.emit_svg(samples, _path(args.svg), sector_boundaries(rule), scale,
                    title=f"MTDE of {rule}")
    return 0


def cmd_bounds(args) -> int:
    rule = as_rule(args.rule)
    scale = io.log_scale(args.log_base, rule.m)
    v = _pair(args.direction)
    out = {"rule": str(rule), "direction": list(v), "log_base": args.log_base}
    if args.bernoulli:
        p_vec = as_prob_vector(args.bernoulli.split(","))
        out["measure"] = "bernoulli"
        out["vector"] = [str(x) if not isinstance(x, float) else x for x in p_vec]
        out["bound"] = _num(bernoulli_bound(rule, p_vec, v), scale)
    elif args.matrix:
        mu = MarkovMeasure.from_matrix(_load_matrix(args.matrix))
        out["measure"] = "markov"
        out["entropy_rate"] = _num(entropy_rate(mu).rate, scale)
        out["bound"] = _num(markov_bound(rule, mu, v), scale)
    else:
        raise UsageError("bounds needs --bernoulli or --matrix")
    io.dump_json(out, _path(args.out))
    return 0


def cmd_markov(args) -> int:
    T = _load_matrix(args.matrix)
    mu = MarkovMeasure.from_matrix(T)
    scale = io.log_scale(args.log_base, T.n)
    rate = entropy_rate(mu)
    report = mu.to_json()
    report["entropy_rate"] = _num(rate.rate, scale)
    report["row_entropies"] = [_num(h, scale) for h in rate.row_entropies]
    report["log_base"] = args.log_base
    if args.direction:
        d = _pair(args.direction, int)
        report["direction"] = list(d)
        report["directional_entropy"] = _num(markov_directional(mu, d), scale)
    io.dump_json(report, _path(args.out))
    return 0


def cmd_estimate(args) -> int:
    rule = as_rule(args.rule)
    scale = io.log_scale(args.log_base, rule.m)
    est = estimate_tde(rule, args.theta, args.half_width, args.rows, args.mode,
                       args.budget, args.seed)
    rec = est.to_json()
    for key in ("nats_per_row", "nats_per_site", "nats_per_length"):
        rec[key] = _num(rec[key], scale)
    rec["log_base"] = args.log_base
    io.dump_json(rec, _path(args.out))
    return 0


def cmd_invert(args) -> int:
    rule = as_rule(args.rule)
    g = invert(rule)
    if args.json:
        io.dump_json({"rule": str(rule), "inverse": str(g)}, _path(args.out))
    else:
        fh = _path(args.out)
        text = str(g) + "\n"
        if hasattr(fh, "write"):
            fh.write(text)
        else:
            fh.write_text(text, encoding="utf-8")
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcadirent",
        description="Directional entropy of linear cellular automata with the shift.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, rule=True):
        p = sub.add_parser(name, help=help)
        if rule:
            p.add_argument("rule", help='rule text, e.g. "2x[-1]+2x[0]+3x[1] % 4"')
        p.add_argument("--out", "-o", help="output file (default: stdout)")
        p.add_argument("--log-base", choices=["e", "2", "10", "m"], default="e")
        p.set_defaults(func=func)
        return p

    add("analyze", cmd_analyze, "factorization, permutivity, inverse and entropy")

    p = add("tde", cmd_tde, "topological directional entropy curve on [0, pi]")
    p.add_argument("--samples", type=int, default=721)
    p.add_argument("--svg", help="also write an SVG plot")
    p.add_argument("--json", help="also write the curve and sector report as JSON")

    p = add("mtde", cmd_mtde, "uniform-measure directional entropy on [0, 2 pi]")
    p.add_argument("--samples", type=int, default=721)
    p.add_argument("--svg", help="also write an SVG plot")
    p.add_argument("--direction", help="single direction x,y instead of a curve")

    p = add("bounds", cmd_bounds, "Bernoulli or Markov directional entropy bound")
    p.add_argument("--direction", required=True, help="s,q")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--bernoulli", help="comma-separated probabilities, e.g. 1/2,1/8,1/8,1/4")
    g.add_argument("--matrix", help="stochastic matrix JSON file")

    p = add("markov", cmd_markov, "stationary vector and entropy rate", rule=False)
    p.add_argument("--matrix", required=True, help="stochastic matrix JSON file")
    p.add_argument("--direction", help="integer direction a,b")

    p = add("estimate", cmd_estimate, "pattern-counting estimate of the TDE")
    p.add_argument("--theta", type=float, default=math.pi / 2)
    p.add_argument("--half-width", type=int, default=2)
    p.add_argument("--rows", type=int, default=4)
    p.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    p.add_argument("--budget", type=int, default=2**24)
    p.add_argument("--seed", type=int, default=0)

    p = add("invert", cmd_invert, "inverse of an invertible rule")
    p.add_argument("--json", action="store_true", help="print a JSON record")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, RuleSyntaxError) as exc:
        print(f"lcadirent {args.command}: {exc}", file=sys.stderr)
        return 2
    except (NotInvertible, InvalidMeasure, BudgetExceeded, ValueError) as exc:
        print(f"lcadirent {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

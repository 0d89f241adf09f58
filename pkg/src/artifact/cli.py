"""Command-line entry point: ``artifact <command> [options]``.

Exit codes: 0 success, 1 domain error (bad config, failed identity, singular
parameters), 2 usage error (argparse).
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from . import detident
from .correlation import omega_hat
from .coupling import MIN_GRID, p_exact, p_numeric
from .exactnum import ring_eval_float
from .holes import HoleConfig, MultiholeSpec
from .predictions import EvenTriangle, SuperpositionPredictor, ratio_experiment
from .torus import omega1_estimate
from .ucoef import u_coef, u_remainder

PRECISION_ENV = "ARTIFACT_PRECISION"
ORACLE_HEADER = ["N", "count_with_holes", "count_free", "ratio", "reference_value"]
RATIO_HEADER = ["R", "exact", "predicted", "ratio", "abs_err"]


class DomainError(Exception):
    """Input that parses but is rejected by the model."""


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return 53
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None


def _fmt(v, precision: int) -> str:
    return mpmath.nstr(v, max(6, int(precision * 0.30103)))


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON ({exc.msg})") from None
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def parse_config(path: str) -> HoleConfig:
    """Read a hole configuration; triangle entries are expanded to side-2 holes."""
    try:
        return HoleConfig.from_json(_load_json(path))
    except ValueError as exc:
        raise DomainError(f"{path}: {exc}") from None


def parse_multiholes(path: str) -> list[MultiholeSpec]:
    """Read ``{"multiholes": [...]}`` and/or ``{"triangles": [...]}`` for predictions."""
    data = _load_json(path)
    if not isinstance(data, dict):
        raise DomainError(f"{path}: expected a JSON object")
    specs: list[MultiholeSpec] = []
    try:
        for idx, item in enumerate(data.get("multiholes", [])):
            specs.append(MultiholeSpec(item["orientation"], Fraction(str(item.get("q", 1))),
                                       tuple(item["positions"]), tuple(item.get("offset", (0, 0)))))
        for idx, item in enumerate(data.get("triangles", [])):
            specs.append(EvenTriangle(item["orientation"], int(item["side"]),
                                      tuple(item.get("offset", (0, 0)))).as_multihole())
    except KeyError as exc:
        raise DomainError(f"{path}: entry {idx} is missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{path}: entry {idx}: {exc}") from None
    if not specs:
        raise DomainError(f"{path}: no multiholes or triangles given")
    return specs


def _writer(args):
    if args.output:
        fh = open(args.output, "w", newline="", encoding="utf-8")
        return fh, True
    return sys.stdout, False


def _emit_csv(args, header: Sequence[str], rows: list[list]) -> None:
    fh, close = _writer(args)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    finally:
        if close:
            fh.close()


def _emit_text(args, text: str) -> None:
    fh, close = _writer(args)
    try:
        fh.write(text + "\n")
    finally:
        if close:
            fh.close()


def cmd_p(args) -> int:
    val = p_exact(args.x, args.y)
    line = f"{val.format(min_degree=1)} ≈ {_fmt(ring_eval_float(val, args.precision), args.precision)}"
    if args.grid is not None:
        if args.grid < MIN_GRID:
            raise DomainError(f"grid must be at least {MIN_GRID}")
        line += f"  (quadrature, grid {args.grid}: {p_numeric(args.x, args.y, args.grid):.12g})"
    _emit_text(args, line)
    return 0


def cmd_ucoef(args) -> int:
    if args.s < 0:
        raise DomainError("order s must be nonnegative")
    val = u_coef(args.s, args.a, args.b)
    _emit_text(args, f"{val.format()} ≈ {_fmt(ring_eval_float(val, args.precision), args.precision)}")
    return 0


def cmd_omega(args) -> int:
    exact, approx = omega_hat(parse_config(args.config), args.precision)
    _emit_text(args, f"{exact.format()} ≈ {_fmt(approx, args.precision)}")
    return 0


def cmd_predict(args) -> int:
    model = SuperpositionPredictor(args.method, args.precision).fit(parse_multiholes(args.config))
    rows = [[R, _fmt(v, args.precision)] for R, v in zip(args.R, model.predict(args.R))]
    _emit_csv(args, ["R", "predicted"], rows)
    return 0


def cmd_ratio(args) -> int:
    table = ratio_experiment(parse_multiholes(args.config), args.R, args.method, args.precision)
    rows = [[r["R"]] + [_fmt(r[k], args.precision) for k in RATIO_HEADER[1:]] for r in table]
    _emit_csv(args, RATIO_HEADER, rows)
    return 0


def cmd_verify(args) -> int:
    reports = detident.run_suite(args.suite, args.trials, args.seed)
    fh, close = _writer(args)
    try:
        json.dump(reports, fh, indent=2)
        fh.write("\n")
    finally:
        if close:
            fh.close()
    return 1 if any(r["failures"] for r in reports) else 0


def cmd_oracle(args) -> int:
    config = parse_config(args.config)
    if sum(h.charge for h in config.holes) != 0:
        raise DomainError("the torus oracle needs total charge zero")
    ref = omega_hat(config, args.precision)[1] if config.holes else mpmath.mpf(1)
    rows = []
    for N, with_holes, free, ratio in omega1_estimate(config, args.N, args.method):
        rows.append([N, with_holes, free, _fmt(mpmath.mpf(ratio.numerator) / ratio.denominator, args.precision),
                     _fmt(ref, args.precision)])
    _emit_csv(args, ORACLE_HEADER, rows)
    return 0


def cmd_convergence(args) -> int:
    if args.n < 0:
        raise DomainError("n must be nonnegative")
    rows = []
    for r in args.r:
        rem = u_remainder(args.a, args.b, args.n, r, max(args.precision, 200))
        rows.append([r, _fmt(rem, args.precision), _fmt(rem * mpmath.mpf(3 * r) ** args.n, args.precision)])
    _emit_csv(args, ["r", "remainder", "scaled_remainder"], rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artifact", description="Exact hole correlations in lozenge tilings.")
    parser.add_argument("--precision", type=int, default=None,
                        help=f"float precision in bits (default ${PRECISION_ENV} or 53)")
    parser.add_argument("--output", "-o", default=None, help="write output here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("p", help="exact coupling value P(x, y)")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--grid", type=int, default=None, help="also evaluate by quadrature on this grid")
    p.set_defaults(func=cmd_p)

    u = sub.add_parser("ucoef", help="asymptotic coefficient U_s(a, b)")
    u.add_argument("--s", type=int, required=True)
    u.add_argument("--a", type=int, required=True)
    u.add_argument("--b", type=int, required=True)
    u.set_defaults(func=cmd_ucoef)

    o = sub.add_parser("omega", help="exact correlation of a hole configuration")
    o.add_argument("--config", required=True)
    o.set_defaults(func=cmd_omega)

    for name, func, helptext in (("predict", cmd_predict, "asymptotic prediction at scales R"),
                                 ("ratio-exp", cmd_ratio, "exact / predicted over scales R")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--config", required=True, help="JSON with 'multiholes' and/or 'triangles'")
        sp.add_argument("--R", type=int, nargs="+", required=True)
        sp.add_argument("--method", choices=["parallel", "superposition"], default="parallel")
        sp.set_defaults(func=func)

    v = sub.add_parser("verify-identities", help="randomized exact determinant and series identities")
    v.add_argument("--suite", choices=list(detident.SUITES) + ["all"], default="all")
    v.add_argument("--trials", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("oracle", help="torus tiling-count ratios for a zero-charge configuration")
    t.add_argument("--config", required=True)
    t.add_argument("--N", type=int, nargs="+", required=True)
    t.add_argument("--method", choices=["ryser", "kasteleyn", "frontier"], default="ryser")
    t.set_defaults(func=cmd_oracle)

    c = sub.add_parser("convergence", help="remainder of the truncated asymptotic series of P")
    c.add_argument("--a", type=int, default=0)
    c.add_argument("--b", type=int, default=0)
    c.add_argument("--n", type=int, default=1)
    c.add_argument("--r", type=int, nargs="+", default=[8, 16, 32, 64])
    c.set_defaults(func=cmd_convergence)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.precision is None:
            args.precision = default_precision()
        if args.precision < 53:
            raise DomainError("precision must be at least 53 bits")
        return args.func(args)
    except (DomainError, ValueError, ZeroDivisionError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

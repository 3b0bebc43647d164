"""Command-line driver: ``voa ope|bracket|screen|suite|dims|parse``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebras import ConfigError, CriticalLevelError
from .core import AlgebraMismatchError, BracketSpecError, LambdaPolynomial, State, ope_singular
from .parser import NameResolutionError, ParseError, Sum, render_expression
from .registry import default_registry, load_config, screenings_for
from .scalar import ParameterMixError, PoleError
from .screening import ScreeningError, WeightBoundError, apply_screening
from .settings import Settings

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

USER_ERRORS = (ParseError, NameResolutionError, AlgebraMismatchError, BracketSpecError, ConfigError,
               CriticalLevelError, ScreeningError, WeightBoundError, PoleError, ParameterMixError,
               json.JSONDecodeError, OSError, KeyError, ValueError)

# coset coefficients read more naturally in the level l
_SCOPE_SYMBOL = {"coset": "l"}


def _registry(args):
    return load_config(args.config) if getattr(args, "config", None) else default_registry()


def _state(reg, text) -> tuple[State, object]:
    value, scope = reg.evaluate_text(text)
    if isinstance(value, LambdaPolynomial):
        raise NameResolutionError("expected a state, got a λ-bracket")
    return value, scope


def _pair(reg, left, right):
    """Evaluate both operands in one algebra, resolving bare generators jointly."""
    a_node, b_node = reg.parse(left), reg.parse(right)
    joint = reg.scope_of(Sum(((1, a_node), (1, b_node))))
    a, _ = reg.evaluate(a_node, joint)
    b, _ = reg.evaluate(b_node, joint)
    if isinstance(a, LambdaPolynomial) or isinstance(b, LambdaPolynomial):
        raise NameResolutionError("operands must be states, not λ-brackets")
    return a, b, joint


def cmd_ope(args) -> int:
    reg = _registry(args)
    a, b, scope = _pair(reg, args.left, args.right)
    symbol = args.symbol or _SCOPE_SYMBOL.get(scope.name)
    names = {k: v for k, v in reg.named_fields(scope).items() if v}
    names.update({f":{k}{k}:": v.nop(v) for k, v in list(names.items())
                  if v.weights2() == {2} and not v.parity})
    names.update({f"D({k})": v.derivative() for k, v in list(names.items())})
    br = a.bracket(b)
    if args.json:
        doc = {"left": args.left, "right": args.right, "algebra": a.algebra.name,
               "poles": {str(n + 1): br[n].render("colon", symbol) for n in sorted(br.coeffs, reverse=True)}}
        print(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(f"{args.left}(z) {args.right}(w) ~ {ope_singular(a, b, names, symbol)}")
    return EXIT_OK


def cmd_bracket(args) -> int:
    reg = _registry(args)
    a, b, scope = _pair(reg, args.left, args.right)
    symbol = args.symbol or _SCOPE_SYMBOL.get(scope.name)
    br = a.bracket(b)
    if args.json:
        doc = {"left": args.left, "right": args.right, "algebra": a.algebra.name,
               "coefficients": {str(n): br[n].render("colon", symbol) for n in sorted(br.coeffs)}}
        print(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(br.render("colon", symbol))
    return EXIT_OK


def cmd_screen(args) -> int:
    reg = _registry(args)
    v, scope = _state(reg, args.expr)
    charges = {Q.index: Q for Q in screenings_for(v.algebra)}
    if args.index not in charges:
        raise ScreeningError(f"no screening Q{args.index}; available: {sorted(charges)}")
    img = apply_screening(charges[args.index], v)
    text = "0" if not img else img.render("colon", args.symbol)
    if args.json:
        print(json.dumps({"screening": args.index, "input": args.expr, "image": text,
                          "in_kernel": not img}, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)
    return EXIT_OK


def cmd_suite(args) -> int:
    from .suites import run_suite, validate_report
    settings = Settings.from_env(workers=args.workers, timings=args.timings)
    report = run_suite(args.name, workers=settings.workers)
    validate_report(report.to_dict(settings.timings))
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.to_json(settings.timings))
    for rec in report.checks:
        line = f"{rec.status.upper():5} {rec.id}"
        if rec.status != "pass":
            line += f"  expected: {rec.expected}  computed: {rec.computed}"
        print(line)
    s = report.summary
    print(f"{report.suite}: {s['pass']}/{s['total']} pass, {s['fail']} fail, {s['error']} error")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_dims(args) -> int:
    from .screening import graded_kernel_dimension, sl_fermion_charges
    from .wsuper import free_field_data
    top = Fraction(args.max_weight)
    bound = Settings.from_env().max_weight
    if top > bound:
        raise WeightBoundError(f"--max-weight {top} exceeds VOA_MAX_WEIGHT={bound}")
    data = free_field_data(2)
    rows = []
    for w2 in range(0, int(2 * top) + 1):
        w = Fraction(w2, 2)
        rows.append((w, graded_kernel_dimension(data.screenings(), w, data.algebra, sl_fermion_charges(2))))
    if args.json:
        print(json.dumps([{"weight": str(w), "dimension": d} for w, d in rows], indent=2))
    else:
        for w, d in rows:
            print(f"{str(w):>5} {d}")
    return EXIT_OK


def cmd_parse(args) -> int:
    reg = _registry(args)
    print(render_expression(reg.parse(args.expr)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    from .suites import SUITES
    p = argparse.ArgumentParser(prog="voa", description="Exact vertex superalgebra calculator.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, json_flag=True):
        sp.add_argument("--config", help="JSON algebra configuration")
        sp.add_argument("--symbol", help="parameter used when rendering coefficients (k, l, t, s)")
        if json_flag:
            sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("ope", help="singular part of A(z)B(w)")
    sp.add_argument("left")
    sp.add_argument("right")
    common(sp)
    sp.set_defaults(func=cmd_ope)

    sp = sub.add_parser("bracket", help="λ-bracket [A λ B] in divided powers")
    sp.add_argument("left")
    sp.add_argument("right")
    common(sp)
    sp.set_defaults(func=cmd_bracket)

    sp = sub.add_parser("screen", help="apply the screening charge Q_i")
    sp.add_argument("index", type=int)
    sp.add_argument("expr")
    common(sp)
    sp.set_defaults(func=cmd_screen)

    sp = sub.add_parser("suite", help="run a verification suite")
    sp.add_argument("name", choices=sorted(SUITES))
    sp.add_argument("--json", metavar="OUT", help="write the JSON report to OUT")
    sp.add_argument("--timings", action="store_true", help="include per-check wall time in the report")
    sp.add_argument("--workers", type=int, default=1, help="worker threads")
    sp.set_defaults(func=cmd_suite)

    sp = sub.add_parser("dims", help="graded dimensions of the joint screening kernel")
    sp.add_argument("--max-weight", required=True, help="largest conformal weight, e.g. 3 or 5/2")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("parse", help="print the canonical form of an expression")
    sp.add_argument("expr")
    sp.add_argument("--config")
    sp.set_defaults(func=cmd_parse)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except USER_ERRORS as exc:
        print(f"voa: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # internal errors share exit status 2
        print(f"voa: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

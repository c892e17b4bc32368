"""``todaforms`` command line entry point."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from ..congruence import EMPTY, IndeterminacySpec, class_eq, fingerprint, order
from ..errors import Infeasible, LevelError, NotPTorsion, NoVirtualWeight, PrecisionTooLow
from ..modforms import GradedForm
from ..qseries import DEFAULT_PREC, Series1
from ..toda import (EInvariant, FInvariantClass, element, toda3_center_p, toda3_odd, toda3_with_p, toda4)
from . import suite
from .evaluator import as_congruence, evaluate, evaluate_bracket
from .parser import Bracket, ParseError, parse

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


def _pair(r: Fraction) -> list[str]:
    r = Fraction(r)
    return [str(r.numerator), str(r.denominator)]


def _fingerprint_json(fp) -> dict:
    return {"n": fp.n, "positions": list(fp.positions), "tail": [_pair(t) for t in fp.tail]}


def _series_text(s: Series1, limit: int | None = None) -> str:
    coeffs = s.coeffs if limit is None else s.coeffs[:limit + 1]
    return "\n".join(f"q^{i}: {c}" for i, c in enumerate(coeffs))


def _value_json(v, args) -> dict:
    out = {"expr": args.expr, "level": args.level, "prec": args.prec}
    if isinstance(v, Fraction):
        out["value"] = _pair(v)
    elif isinstance(v, Series1):
        out["coeffs"] = [_pair(c) for c in v.coeffs]
    else:
        out["coeffs2"] = [[_pair(c) for c in row] for row in v.coeffs]
    return out


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


def _congruence(text: str, args):
    return as_congruence(evaluate(text, args.level, args.prec), args.level, args.prec)


def _indet(args) -> IndeterminacySpec:
    if not args.indet:
        return EMPTY
    return IndeterminacySpec.of([_congruence(t, args) for t in args.indet], labels=args.indet)


def cmd_expand(args) -> int:
    v = evaluate(args.expr, args.level, args.prec)
    if isinstance(v, Fraction):
        text = str(v)
    elif isinstance(v, Series1):
        text = _series_text(v)
    else:
        text = "\n".join(f"q_L^{i}: " + " ".join(map(str, row)) for i, row in enumerate(v.coeffs))
    _emit(args, _value_json(v, args), text)
    return EXIT_OK


def cmd_bracket(args) -> int:
    node = Bracket(parse(args.expr), args.n)
    form = evaluate_bracket(node, args.level, args.prec)
    payload = {"expr": args.expr, "level": args.level, "prec": args.prec, "n": args.n}
    if isinstance(form, GradedForm):
        coords = form.parts.get(args.n, ())
        payload.update(coords=[_pair(c) for c in coords], q0=_pair(form.q0()),
                       coeffs=[_pair(c) for c in form.expansion().coeffs])
        text = f"[{args.expr}]_{args.n} in echelon coordinates: ({', '.join(map(str, coords))})\nq0 = {form.q0()}"
    else:
        payload["terms"] = [{"w": w, "left": u, "right": v, "c": _pair(c)} for (w, u, v), c in sorted(form.terms.items())]
        lines = [f"M_{w}[{u}] (x) M_{args.n - w}[{v}]: {c}" for (w, u, v), c in sorted(form.terms.items())]
        text = "\n".join(lines) if lines else "0"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_fingerprint(args) -> int:
    fp = fingerprint(_congruence(args.expr, args), args.n)
    nz = fp.nonzero()
    text = "zero class" if not nz else "\n".join(f"q^{i}: {t}" for i, t in nz.items())
    _emit(args, {"expr": args.expr, "level": args.level, "prec": args.prec, "fingerprint": _fingerprint_json(fp)},
          text)
    return EXIT_OK


def cmd_order(args) -> int:
    x = _congruence(args.expr, args)
    m = order(x, args.n, _indet(args))
    _emit(args, {"expr": args.expr, "level": args.level, "prec": args.prec, "n": args.n, "order": m,
                 "fingerprint": _fingerprint_json(fingerprint(x, args.n))}, str(m))
    return EXIT_OK


def cmd_eq(args) -> int:
    x, y = _congruence(args.expr1, args), _congruence(args.expr2, args)
    same = class_eq(x, y, args.n, _indet(args))
    payload = {"expr1": args.expr1, "expr2": args.expr2, "level": args.level, "prec": args.prec, "n": args.n,
               "equal": same, "fingerprints": [_fingerprint_json(fingerprint(x, args.n)),
                                               _fingerprint_json(fingerprint(y, args.n))]}
    _emit(args, payload, "equal" if same else "not equal")
    return EXIT_OK


def _split_spec(spec: str, prec: int) -> list:
    return [element(s, prec) for s in spec.split(",")]


def _toda3(items: list) -> FInvariantClass:
    a, b, c = items
    kinds = "".join("p" if isinstance(x, int) else "e" if isinstance(x, EInvariant) else "f" for x in items)
    table = {
        "eee": lambda: toda3_odd(a, b, c),
        "fpe": lambda: toda3_center_p(a, b, c, "left"),
        "epf": lambda: toda3_center_p(c, b, a, "right"),
        "fep": lambda: toda3_with_p("ii", a, b, c),
        "pef": lambda: toda3_with_p("iii", b, c, a),
        "efp": lambda: toda3_with_p("iv", a, b, c),
        "pfe": lambda: toda3_with_p("v", b, c, a),
    }
    if kinds not in table:
        raise ValueError(f"no bracket formula for the pattern {kinds!r} (e=odd, f=even, p=integer)")
    return table[kinds]()


def _report(args, result: FInvariantClass) -> int:
    fp = fingerprint(result.representative, result.weight)
    payload = {"spec": args.spec, "name": result.name, "stem": result.dim, "weight": result.weight,
               "level": result.level, "prec": result.representative.prec,
               "coeffs": [_pair(c) for c in result.representative.expansion.coeffs],
               "fingerprint": _fingerprint_json(fp), "order": fp.order()}
    shown = [f"{result.name}: stem {result.dim}, weight {result.weight}, level {result.level}",
             f"order {fp.order()}",
             "fingerprint: " + (", ".join(f"q^{i}: {t}" for i, t in list(fp.nonzero().items())[:8]) or "zero")]
    _emit(args, payload, "\n".join(shown))
    return EXIT_OK


def cmd_toda3(args) -> int:
    items = _split_spec(args.spec, args.prec)
    if len(items) != 3:
        raise ValueError("toda3 takes three comma-separated entries")
    return _report(args, _toda3(items))


def cmd_toda4(args) -> int:
    items = _split_spec(args.spec, args.prec)
    if len(items) != 4:
        raise ValueError("toda4 takes four comma-separated entries")
    if isinstance(items[0], int) and items[0] == items[2] and not isinstance(items[1], int):
        p, fa, fb = items[0], items[1], items[3]
    elif isinstance(items[1], int) and items[1] == items[3] and not isinstance(items[0], int):
        p, fa, fb = items[1], items[0], items[2]
    else:
        raise ValueError("toda4 expects p,a,p,b or a,p,b,p")
    if not (isinstance(fa, FInvariantClass) and isinstance(fb, FInvariantClass)):
        raise ValueError("toda4 needs two even classes")
    return _report(args, toda4(fa, fb, p))


def _run_checks(args, checks) -> int:
    results = list(suite.run(checks, args.prec))
    if args.format == "json":
        print(json.dumps([{"check": label, "pass": ok, "error": err} for label, ok, err in results]))
    else:
        for label, ok, err in results:
            print(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({err})" if err else ""))
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_INFEASIBLE


def cmd_examples(args) -> int:
    return _run_checks(args, suite.EXAMPLES)


def cmd_selftest(args) -> int:
    return _run_checks(args, suite.SELFTEST)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="todaforms", description="f-invariants of Toda brackets from q-expansions")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", type=int, choices=(1, 3), default=1)
    common.add_argument("--prec", type=int, default=DEFAULT_PREC)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="print q-expansion coefficients")
    p.add_argument("expr")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("bracket", parents=[common], help="virtual weight bracket [EXPR]_N")
    p.add_argument("expr")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("fingerprint", parents=[common], help="canonical Q/Z tail of a class")
    p.add_argument("expr")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_fingerprint)

    for name, func, nargs in (("order", cmd_order, ("expr",)), ("eq", cmd_eq, ("expr1", "expr2"))):
        p = sub.add_parser(name, parents=[common])
        for a in nargs:
            p.add_argument(a)
        p.add_argument("n", type=int)
        p.add_argument("--indet", nargs="*", default=[], metavar="EXPR",
                       help="indeterminacy generators (integer multiples)")
        p.set_defaults(func=func)

    p = sub.add_parser("toda3", parents=[common], help="three-fold bracket, e.g. sigma,2sigma,eta")
    p.add_argument("spec")
    p.set_defaults(func=cmd_toda3)
    p = sub.add_parser("toda4", parents=[common], help="four-fold bracket, e.g. 2,sigma^2,2,sigma^2")
    p.add_argument("spec")
    p.set_defaults(func=cmd_toda4)

    p = sub.add_parser("examples", parents=[common], help="run the worked examples")
    p.set_defaults(func=cmd_examples)
    p = sub.add_parser("selftest", parents=[common], help="run invariant checks")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (Infeasible, NoVirtualWeight, NotPTorsion) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except PrecisionTooLow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ParseError, LevelError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands: ``derive``, ``eval``, ``rate``, ``integrate``, ``accelerate``,
``verify``, ``list``.  Results go to stdout as JSON; diagnostics go to
stderr.  Exit status: 0 success, 1 verification/evaluation failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import catalog as catalog_mod
from .derive import SeedIntegral, solve_seed, solve_seed_param
from .engine import evaluate_derived, evaluate_expr, predicted_rate
from .hyper import GroupedSeries, eval_hyp, group, hyp_rate
from .polynomials import ParamPolynomial, Polynomial, rational
from .quadrature import KernelForm, QuadratureProblem, integrate
from .wire import (
    float_str,
    hyp_spec_from_dict,
    hyp_spec_to_dict,
    param_series_to_dict,
    series_spec_from_dict,
    series_spec_to_dict,
)


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _parse_rat_list(text: str):
    return [rational(part) for part in text.split(",") if part.strip() != ""]


def _parse_param_poly(text: str) -> ParamPolynomial:
    # one w-polynomial per x-degree, w-coefficients colon-separated:
    # "0:1,-1,1" means (0 + 1*w) + (-1)*x + (1)*x^2
    xcoeffs = []
    for chunk in text.split(","):
        xcoeffs.append(Polynomial(rational(c) for c in chunk.split(":")))
    return ParamPolynomial(xcoeffs)


def _cmd_derive(args) -> int:
    if args.param:
        p = _parse_param_poly(args.p)
        pds = solve_seed_param(
            p, args.k, args.s, a=rational(args.a), b=rational(args.b)
        )
        _emit(param_series_to_dict(pds))
        return 0
    seed = SeedIntegral(
        a=rational(args.a), b=rational(args.b), p=Polynomial(_parse_rat_list(args.p))
    )
    ds = solve_seed(seed, args.k, args.s)
    _emit(series_spec_to_dict(ds))
    return 0


def _load_spec_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _cmd_eval(args) -> int:
    if args.expr is not None:
        result = evaluate_expr(args.expr, args.digits)
    else:
        doc = _load_spec_file(args.spec)
        if "expr" in doc:
            result = evaluate_expr(doc["expr"], args.digits)
        elif "upper" in doc:
            result = eval_hyp(hyp_spec_from_dict(doc), args.digits)
        else:
            result = evaluate_derived(series_spec_from_dict(doc), args.digits)
    _emit(
        {
            "value": float_str(result.value, args.digits),
            "digits": args.digits,
            "terms": result.terms_used,
            "tail_bound": float_str(result.tail_bound, 5),
            "measured_rate": None
            if result.measured_rate is None
            else round(result.measured_rate, 4),
        }
    )
    return 0


def _cmd_rate(args) -> int:
    doc = _load_spec_file(args.spec)
    if "upper" in doc:
        spec = hyp_spec_from_dict(doc)
        _emit({"predicted_rate": round(hyp_rate(spec), 4)})
        return 0
    ds = series_spec_from_dict(doc)
    _emit({"predicted_rate": round(predicted_rate(ds), 4)})
    return 0


def _cmd_integrate(args, parser) -> int:
    if args.p is not None and args.kernel is not None:
        parser.error("integrate takes at most one of --p or --kernel")
    if args.kernel is not None:
        parts = args.kernel.split(",")
        if len(parts) != 3:
            parser.error("--kernel takes z,k,s")
        denominator = KernelForm(
            z=rational(parts[0]), k=int(parts[1]), s=int(parts[2])
        )
    elif args.p is not None:
        denominator = Polynomial(_parse_rat_list(args.p))
    else:
        denominator = None
    numerator = (
        Polynomial(_parse_rat_list(args.num))
        if args.num is not None
        else Polynomial((1,))
    )
    problem = QuadratureProblem(
        a=rational(args.a),
        b=rational(args.b),
        numerator=numerator,
        denominator=denominator,
    )
    value = integrate(problem, args.digits)
    _emit({"value": float_str(value, args.digits), "digits": args.digits})
    return 0


def _cmd_accelerate(args) -> int:
    doc = _load_spec_file(args.hyp)
    spec = hyp_spec_from_dict(doc)
    base = spec.base if isinstance(spec, GroupedSeries) else spec
    grouped = group(base, args.m)
    _emit(hyp_spec_to_dict(grouped))
    return 0


def _cmd_verify(args, parser) -> int:
    if (args.id is None) == (not args.all):
        parser.error("verify needs exactly one of --id or --all")
    if args.all:
        summary = catalog_mod.run_all(digits=args.digits, only=args.only)
        _emit(summary)
        return 0 if summary["failed"] == 0 else 1
    report = catalog_mod.verify(args.id, digits=args.digits)
    doc = report.summary()
    if report.detail:
        doc["detail"] = report.detail
    _emit(doc)
    return 0 if report.passed else 1


def _cmd_list(_args) -> int:
    records = catalog_mod.load_catalog()
    _emit(
        [
            {
                "id": r.id,
                "kind": r.kind,
                "digits": r.digits,
                "provenance": r.provenance,
            }
            for r in records
        ]
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="betaseries",
        description="Derive, evaluate, and verify rapidly converging series "
        "for mathematical constants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("derive", help="solve a seed denominator for z and Q")
    d.add_argument("--p", required=True, help="seed denominator coefficients, ascending degree, e.g. 1,1/3 (with --param: colon-separated w-coefficients per x-degree, e.g. 0:1,-1,1)")
    d.add_argument("--a", default="0", help="exponent of x (rational)")
    d.add_argument("--b", default="0", help="exponent of 1-x (rational)")
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--s", type=int, required=True)
    d.add_argument("--param", action="store_true", help="treat P as P(x, w)")

    e = sub.add_parser("eval", help="evaluate a series to target digits")
    e.add_argument("--spec", help="JSON series spec file")
    e.add_argument("--expr", help="term expression text")
    e.add_argument("--digits", type=int, required=True)

    r = sub.add_parser("rate", help="predicted digits per term of a spec")
    r.add_argument("--spec", required=True)

    i = sub.add_parser("integrate", help="quadrature of x^a (1-x)^b N/D on [0,1]")
    i.add_argument("--a", required=True)
    i.add_argument("--b", required=True)
    i.add_argument("--num", help="numerator coefficients, ascending")
    i.add_argument("--p", help="denominator polynomial coefficients, ascending")
    i.add_argument("--kernel", help="kernel denominator as z,k,s")
    i.add_argument("--digits", type=int, required=True)

    a = sub.add_parser("accelerate", help="m-step grouping of a series spec")
    a.add_argument("--hyp", required=True, help="JSON spec file")
    a.add_argument("--m", type=int, required=True)

    v = sub.add_parser("verify", help="verify catalog identities")
    v.add_argument("--id", help="identity id, e.g. eq-1.1")
    v.add_argument("--all", action="store_true")
    v.add_argument("--only", help="wildcard filter with --all, e.g. 'eq-5.*'")
    v.add_argument("--digits", type=int, help="override per-record precision")

    sub.add_parser("list", help="list catalog records")
    return parser


_VALUE_FLAGS = {
    "--p", "--a", "--b", "--k", "--s", "--num", "--kernel", "--digits",
    "--spec", "--expr", "--hyp", "--m", "--id", "--only",
}
_NEG_VALUE = re.compile(r"^-\d[\d/,.:]*$")


def _merge_negative_values(argv):
    """Join ``--a -1/2`` into ``--a=-1/2`` so argparse accepts the value."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (
            tok in _VALUE_FLAGS
            and i + 1 < len(argv)
            and _NEG_VALUE.match(argv[i + 1])
        ):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_negative_values(list(argv)))
    try:
        if args.command == "derive":
            return _cmd_derive(args)
        if args.command == "eval":
            if (args.expr is None) == (args.spec is None):
                parser.error("eval needs exactly one of --spec or --expr")
            return _cmd_eval(args)
        if args.command == "rate":
            return _cmd_rate(args)
        if args.command == "integrate":
            return _cmd_integrate(args, parser)
        if args.command == "accelerate":
            return _cmd_accelerate(args)
        if args.command == "verify":
            return _cmd_verify(args, parser)
        if args.command == "list":
            return _cmd_list(args)
        parser.error(f"unknown command {args.command!r}")
    except (ValueError, ArithmeticError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands take expressions in the grammar of :mod:`eulerops.parsing` and
print canonical renderings (or JSON term records with --format json).
``check`` runs the named verification suites; ``check all`` runs every one.

Exit codes: 0 success, 1 verification failure, 2 usage/parse/input error,
3 internal invariant violation.  Identical argv and seed produce
byte-identical stdout; timing goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import (
    EuleropsError,
    JetNotZeroError,
    ModelMismatchError,
    NotAFunctionError,
    NotFilteredError,
    ParseError,
    UndefinedSymbolError,
)
from .operators import DiffOp
from .parsing import parse_function, parse_operator, parse_symbol
from .poly import BundleModel, FiberPoly, Point
from .records import function_object, operator_object, symbol_object
from .structure import (
    AlgebraMorphism,
    Derivation,
    JetSpec,
    extend_derivation,
    graded_part,
    jet_factorize,
    non_singularity_witness,
)
from .suites import SUITES, run_all, run_suite

ENV_SEED = "EULEROPS_SEED"

_ERROR_NAMES = {
    ParseError: "parse error",
    ModelMismatchError: "model-mismatch error",
    UndefinedSymbolError: "undefined-symbol error",
    NotAFunctionError: "not-a-function error",
    JetNotZeroError: "jet-nonzero error",
    NotFilteredError: "not-filtered error",
}


def _default_seed() -> int:
    raw = os.environ.get(ENV_SEED)
    try:
        return int(raw) if raw is not None else 0
    except ValueError:
        return 0


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, default=2, help="base dimension (default 2)")
    common.add_argument("--n", type=int, default=2, help="fiber rank (default 2)")
    common.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    common.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"seed for randomized suites (default: ${ENV_SEED} or 0)",
    )
    common.add_argument(
        "--degree-bound",
        type=int,
        default=4,
        help="x- and xi-degree bound for filtration checks (default 4)",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="eulerops",
        description="exact computer algebra for Euler-graded differential operators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apply", parents=[common], help="apply an operator to a function")
    p.add_argument("operator")
    p.add_argument("function")

    p = sub.add_parser("compose", parents=[common], help="normal-ordered operator product")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("bracket", parents=[common], help="operator commutator")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("weights", parents=[common], help="Euler-weight decomposition")
    p.add_argument("operator")

    p = sub.add_parser("symbol", parents=[common], help="principal symbol of an operator")
    p.add_argument("operator")

    p = sub.add_parser("poisson", parents=[common], help="canonical Poisson bracket")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("jet-factor", parents=[common], help="factor a function with vanishing jet")
    p.add_argument("function")
    p.add_argument("--point", default="", help='point, e.g. "x1=1,xi1=-1/2" (missing = 0)')
    p.add_argument("--order", type=int, default=0, help="jet order (default 0)")

    p = sub.add_parser(
        "extend-derivation",
        parents=[common],
        help='extend a derivation record like "x1=0; xi1=x1*xi2" to an operator',
    )
    p.add_argument("record")

    p = sub.add_parser(
        "witness-nonsingular",
        parents=[common],
        help="commutator certificate for a function",
    )
    p.add_argument("function")

    p = sub.add_parser(
        "graded-part",
        parents=[common],
        help='weight-preserving part of a morphism record like "xi1=xi1+x1^2"',
    )
    p.add_argument("record")
    p.add_argument("--inverse", required=True, help="record of the inverse morphism")

    p = sub.add_parser("check", parents=[common], help="run verification suites")
    p.add_argument("suite", help="suite name or 'all': " + ", ".join(SUITES))
    return parser


# ---------------------------------------------------------------------------
# input records


def _parse_point(text: str, model: BundleModel) -> Point:
    base = [Fraction(0)] * model.m
    fiber = [Fraction(0)] * model.n
    if text.strip():
        for item in text.split(","):
            name, _, value = item.partition("=")
            name = name.strip()
            if not value:
                raise ParseError(f"point assignment {item!r} needs name=value", 0)
            try:
                coord = Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad coordinate {value.strip()!r}: {exc}", 0)
            if name.startswith("xi"):
                index, bank, size = name[2:], fiber, model.n
            elif name.startswith("x"):
                index, bank, size = name[1:], base, model.m
            else:
                raise ParseError(f"unknown coordinate {name!r}", 0)
            if not index.isdigit() or not 1 <= int(index) <= size:
                raise ParseError(f"coordinate {name!r} out of range", 0)
            bank[int(index) - 1] = coord
    return Point(tuple(base), tuple(fiber))


def _parse_images(record: str, model: BundleModel, default: str):
    """Generator images from "x1=...; xi2=..."; missing ones default to
    the generator itself ("identity") or to zero ("zero")."""
    if default == "identity":
        base = [model.x(i) for i in range(model.m)]
        fiber = [model.xi(j) for j in range(model.n)]
    else:
        base = [model.zero()] * model.m
        fiber = [model.zero()] * model.n
    for item in record.split(";"):
        if not item.strip():
            continue
        name, eq, value = item.partition("=")
        name = name.strip()
        if not eq:
            raise ParseError(f"assignment {item.strip()!r} needs generator=expression", 0)
        image = parse_function(value, model)
        if name.startswith("xi"):
            index, bank, size = name[2:], fiber, model.n
        elif name.startswith("x"):
            index, bank, size = name[1:], base, model.m
        else:
            raise ParseError(f"unknown generator {name!r}", 0)
        if not index.isdigit() or not 1 <= int(index) <= size:
            raise ParseError(f"generator {name!r} out of range", 0)
        bank[int(index) - 1] = image
    return base, fiber


def _morphism_record(psi: AlgebraMorphism) -> str:
    parts = [f"x{i + 1} = {img}" for i, img in enumerate(psi.base_images)]
    parts += [f"xi{j + 1} = {img}" for j, img in enumerate(psi.fiber_images)]
    return "; ".join(parts)


# ---------------------------------------------------------------------------
# command implementations


def _emit(args, text_lines: list[str], json_object) -> None:
    if args.format == "json":
        print(json.dumps(json_object))
    else:
        for line in text_lines:
            print(line)


def _cmd_apply(args, model):
    op = parse_operator(args.operator, model)
    u = parse_function(args.function, model)
    result = op.apply(u)
    _emit(args, [str(result)], function_object(result))
    return 0


def _cmd_compose(args, model):
    result = parse_operator(args.left, model).compose(parse_operator(args.right, model))
    _emit(args, [str(result)], operator_object(result))
    return 0


def _cmd_bracket(args, model):
    result = parse_operator(args.left, model).bracket(parse_operator(args.right, model))
    _emit(args, [str(result)], operator_object(result))
    return 0


def _cmd_weights(args, model):
    parts = parse_operator(args.operator, model).weight_decompose()
    text = "{" + ", ".join(f"{w}: {op}" for w, op in parts.items()) + "}"
    payload = {
        "kind": "weight-decomposition",
        "weights": [{"weight": w, "operator": operator_object(op)} for w, op in parts.items()],
    }
    _emit(args, [text], payload)
    return 0


def _cmd_symbol(args, model):
    from .symbols import principal_symbol

    result = principal_symbol(parse_operator(args.operator, model))
    _emit(args, [str(result)], symbol_object(result))
    return 0


def _cmd_poisson(args, model):
    from .symbols import poisson_bracket

    result = poisson_bracket(parse_symbol(args.left, model), parse_symbol(args.right, model))
    _emit(args, [str(result)], symbol_object(result))
    return 0


def _cmd_jet_factor(args, model):
    u = parse_function(args.function, model)
    spec = JetSpec(_parse_point(args.point, model), args.order)
    tuples = jet_factorize(u, spec)
    text = "[" + ", ".join("(" + ", ".join(str(f) for f in t) + ")" for t in tuples) + "]"
    payload = {
        "kind": "jet-factorization",
        "order": spec.order,
        "factors": [[function_object(f) for f in t] for t in tuples],
    }
    _emit(args, [text], payload)
    return 0


def _cmd_extend_derivation(args, model):
    base, fiber = _parse_images(args.record, model, default="zero")
    result = extend_derivation(Derivation(model, base, fiber))
    _emit(args, [str(result)], operator_object(result))
    return 0


def _cmd_witness_nonsingular(args, model):
    cert = non_singularity_witness(parse_function(args.function, model))
    lines = [f"({op}, {v})" for op, v in cert.pairs]
    verified = cert.verify() and cert.first_order()
    lines.append(f"verified: {'true' if verified else 'false'}")
    payload = {
        "kind": "certificate",
        "pairs": [
            {"operator": operator_object(op), "function": function_object(v)}
            for op, v in cert.pairs
        ],
        "verified": verified,
    }
    _emit(args, lines, payload)
    return 0 if verified else 3


def _cmd_graded_part(args, model):
    base, fiber = _parse_images(args.record, model, default="identity")
    inv_base, inv_fiber = _parse_images(args.inverse, model, default="identity")
    try:
        psi = AlgebraMorphism(
            model, base, fiber, inverse=AlgebraMorphism(model, inv_base, inv_fiber)
        )
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    tilde = graded_part(psi, args.degree_bound)
    payload = {
        "kind": "morphism",
        "base": [function_object(img) for img in tilde.base_images],
        "fiber": [function_object(img) for img in tilde.fiber_images],
    }
    _emit(args, [_morphism_record(tilde)], payload)
    return 0


def _cmd_check(args, model, seed):
    if args.suite == "all":
        reports = run_all(model, seed, args.degree_bound)
    else:
        try:
            reports = [run_suite(args.suite, model, seed, args.degree_bound)]
        except KeyError as exc:
            print(f"usage error: {exc.args[0]}", file=sys.stderr)
            return 2
    lines = []
    for report in reports:
        if report.passed:
            lines.append(f"ok {report.name} ({report.cases} cases)")
        else:
            lines.append(f"FAIL {report.name} ({report.cases} cases, {len(report.failures)} failures)")
            for failure in report.failures[:5]:
                lines.append(f"  {failure.case}")
                lines.append(f"    expected: {failure.expected}")
                lines.append(f"    actual:   {failure.actual}")
        print(f"# {report.name}: {report.wall_time_s:.2f}s", file=sys.stderr)
    passed = all(r.passed for r in reports)
    lines.append(
        f"{'passed' if passed else 'FAILED'} {sum(r.passed for r in reports)}/{len(reports)} suites, "
        f"{sum(r.cases for r in reports)} cases"
    )
    payload = {
        "kind": "report",
        "suites": [
            {
                "name": r.name,
                "cases": r.cases,
                "failures": [
                    {"case": f.case, "expected": f.expected, "actual": f.actual}
                    for f in r.failures
                ],
            }
            for r in reports
        ],
        "passed": passed,
    }
    _emit(args, lines, payload)
    return 0 if passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        model = BundleModel(args.m, args.n)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    seed = args.seed if args.seed is not None else _default_seed()
    handlers = {
        "apply": lambda: _cmd_apply(args, model),
        "compose": lambda: _cmd_compose(args, model),
        "bracket": lambda: _cmd_bracket(args, model),
        "weights": lambda: _cmd_weights(args, model),
        "symbol": lambda: _cmd_symbol(args, model),
        "poisson": lambda: _cmd_poisson(args, model),
        "jet-factor": lambda: _cmd_jet_factor(args, model),
        "extend-derivation": lambda: _cmd_extend_derivation(args, model),
        "witness-nonsingular": lambda: _cmd_witness_nonsingular(args, model),
        "graded-part": lambda: _cmd_graded_part(args, model),
        "check": lambda: _cmd_check(args, model, seed),
    }
    try:
        return handlers[args.command]()
    except EuleropsError as exc:
        name = _ERROR_NAMES.get(type(exc), "error")
        print(f"{name}: {exc}", file=sys.stderr)
        return 2
    except IndexError as exc:
        print(f"index error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - invariant violations
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

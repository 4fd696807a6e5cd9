"""gamma-sing command line: invariants, Hilbert-Samuel data, gamma searches and the verification batch.

Every command prints one document. JSON output is canonical: sorted keys,
rationals as "num/den" strings, integers bare, so equal inputs and seeds give
byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import replace
from fractions import Fraction
from typing import Optional

from .gamma import (
    GammaQuery, GammaReport, Interval, SearchBudget, closed_form_gamma, gamma_alpha_ideal,
    gamma_star_search, tau_ci_search,
)
from .invariants import (
    SingularitySpec, UnsupportedClass, equisingularity_ideal, invariant_record, tjurina_ideal,
)
from .poly import MonomialOrdering, ParseError, Polynomial, format_polynomial, parse, parse_list
from .stdbasis import (
    DEFAULT_MAX_DEGREE, Ideal, NotCompleteIntersection, NotZeroDimensional,
    iarrobino_lower_bound, is_complete_intersection, min_generators,
)
from .verify import VerificationReport, verify_paper

SCHEMA = "gamma-sing/1"

EXIT_OK, EXIT_COMPUTATION, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- serialization

def _fraction_str(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def to_jsonable(obj):
    """Plain JSON data for the report objects used by the commands."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return _fraction_str(obj)
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf"
        return _fraction_str(Fraction(obj))
    if isinstance(obj, Polynomial):
        return format_polynomial(obj)
    if isinstance(obj, Ideal):
        return [format_polynomial(g) for g in obj.generators]
    if isinstance(obj, Interval):
        return {"lo": to_jsonable(obj.lo), "hi": to_jsonable(obj.hi)}
    if isinstance(obj, SingularitySpec):
        return obj.name
    if isinstance(obj, GammaReport):
        return {
            "alpha": to_jsonable(obj.alpha),
            "gamma": to_jsonable(obj.gamma_value),
            "witness_ideal": to_jsonable(obj.witness_ideal),
            "witness_g": to_jsonable(obj.witness_g),
            "lambda": to_jsonable(obj.lam),
            "colength": obj.colength,
            "intersection": to_jsonable(obj.intersection),
            "closed_form": to_jsonable(obj.closed_form),
            "status": obj.status,
            "source": obj.source,
            "candidates": obj.candidates,
        }
    if isinstance(obj, VerificationReport):
        return {
            "seed": obj.seed,
            "passed": sum(c.passed for c in obj.checks),
            "failed": len(obj.failures),
            "checks": [{"name": c.name, "passed": c.passed, "value": to_jsonable(c.value),
                        "expected": to_jsonable(c.expected), "witness": to_jsonable(c.witness)}
                       for c in obj.checks],
        }
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def serialize(document: dict) -> str:
    return json.dumps(to_jsonable(document), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


_RATIONAL = re.compile(r"-?\d+(/\d+)?")


def _decode(v):
    if isinstance(v, str) and _RATIONAL.fullmatch(v):
        return Fraction(v)
    if isinstance(v, list):
        return [_decode(u) for u in v]
    if isinstance(v, dict):
        return {k: _decode(u) for k, u in v.items()}
    return v


def deserialize(text: str) -> dict:
    """Inverse of serialize on documents: rational strings come back as Fractions."""
    return _decode(json.loads(text))


# ---------------------------------------------------------------- argument parsing

def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _weights(text: str) -> tuple:
    m = re.fullmatch(r"\s*(\d+)\s*,\s*(\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected P,Q, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _ordering(text: str) -> MonomialOrdering:
    try:
        return MonomialOrdering.from_string(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--budget", type=int, default=None,
                        help="number of random generator pairs tried by the search")
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE,
                        help="largest truncation degree tried when certifying zero-dimensionality")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--order", type=_ordering, default=MonomialOrdering("ls"),
                        help="ls, ds or w:P,Q (used for staircases and standard bases)")

    spec = argparse.ArgumentParser(add_help=False)
    spec.add_argument("--type", dest="kind", choices=("Ak", "Dk", "Ek", "Mk", "sqh"))
    spec.add_argument("--k", type=int)
    spec.add_argument("--weights", type=_weights)
    spec.add_argument("--poly")
    spec.add_argument("--flavor", choices=("ea", "es"), default="es")

    p = argparse.ArgumentParser(prog="gamma-sing", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("invariants", parents=[common, spec], help="mu, tau, tau_es, kappa, delta, branches")
    h = sub.add_parser("hilbert", parents=[common, spec], help="Hilbert-Samuel data of an ideal")
    h.add_argument("--ideal", help='comma separated generators, e.g. "x^3, x^2*y, y^3"')
    g = sub.add_parser("gamma-ideal", parents=[common, spec], help="gamma_alpha(f; I) for a given ideal")
    g.add_argument("--ideal", required=True)
    g.add_argument("--alpha", type=_rational, default=Fraction(0))
    s = sub.add_parser("gamma-search", parents=[common, spec], help="searched lower bound for gamma*_alpha")
    s.add_argument("--alpha", type=_rational, default=Fraction(0))
    sub.add_parser("tau-ci", parents=[common, spec], help="largest colength of a candidate complete intersection")
    sub.add_parser("verify-paper", parents=[common], help="re-derive all registered tables and examples")
    return p


def _spec_from(args, required: bool = True) -> Optional[SingularitySpec]:
    kind = args.kind
    if kind is None:
        if required:
            raise UsageError("a class is required: --type Ak|Dk|Ek|Mk|sqh")
        return None
    if kind == "sqh":
        if args.weights is None or args.poly is None:
            raise UsageError("--type sqh needs --weights P,Q and --poly")
        return SingularitySpec.sqh(args.weights[0], args.weights[1], parse(args.poly))
    if args.k is None:
        raise UsageError(f"--type {kind} needs --k")
    return SingularitySpec(kind[0], args.k)


def _budget(args) -> SearchBudget:
    b = SearchBudget(seed=args.seed)
    if args.budget is not None:
        if args.budget < 0:
            raise UsageError("--budget must be non-negative")
        b = replace(b, random_pairs=args.budget)
    return b


def _alpha(args) -> Fraction:
    if not 0 <= args.alpha <= 1:
        raise UsageError(f"--alpha must lie in [0, 1], got {args.alpha}")
    return args.alpha


# ---------------------------------------------------------------- commands

def _cmd_invariants(args) -> dict:
    s = _spec_from(args)
    return {"spec": s, "invariants": invariant_record(s, args.seed).as_dict()}


def _ideal_from(args) -> Ideal:
    if args.ideal is not None:
        return Ideal(parse_list(args.ideal), args.order, args.max_degree)
    s = _spec_from(args, required=False)
    if s is None:
        raise UsageError("hilbert needs --ideal or a class selector")
    I = tjurina_ideal(s.representative) if args.flavor == "ea" else equisingularity_ideal(s)
    return Ideal(I.generators, args.order, args.max_degree)


def _cmd_hilbert(args) -> dict:
    I = _ideal_from(args)
    hs = I.hilbert_samuel
    return {
        "ideal": I,
        "order": str(args.order),
        "h0": list(hs.h0),
        "h1": list(hs.h1),
        "mult": hs.mult,
        "degbound": hs.degbound,
        "colength": I.colength,
        "staircase": [[m[0], m[1]] for m in I.staircase],
        "standard_basis": I.standard_basis,
        "min_generators": min_generators(I),
        "iarrobino_lower_bound": iarrobino_lower_bound(I),
        "complete_intersection": is_complete_intersection(I),
    }


def _cmd_gamma_ideal(args) -> dict:
    s = _spec_from(args, required=False)
    if s is not None:
        f = s.representative
    elif args.poly is not None:
        f = parse(args.poly)
    else:
        raise UsageError("gamma-ideal needs --poly or a class selector")
    I = Ideal(parse_list(args.ideal), args.order, args.max_degree)
    rep = gamma_alpha_ideal(f, I, _alpha(args), _budget(args))
    return {"f": f, "spec": s, "report": rep}


def _cmd_gamma_search(args) -> dict:
    s = _spec_from(args)
    q = GammaQuery(_alpha(args), s, args.flavor, _budget(args))
    return {"spec": s, "flavor": args.flavor, "report": gamma_star_search(q)}


def _cmd_tau_ci(args) -> dict:
    s = _spec_from(args)
    tau, I = tau_ci_search(GammaQuery(0, s, args.flavor, _budget(args)))
    return {"spec": s, "flavor": args.flavor, "tau_ci": tau, "witness_ideal": I}


def _cmd_verify(args) -> dict:
    b = _budget(args)
    return {"report": verify_paper(b, args.seed)}


COMMANDS = {
    "invariants": _cmd_invariants,
    "hilbert": _cmd_hilbert,
    "gamma-ideal": _cmd_gamma_ideal,
    "gamma-search": _cmd_gamma_search,
    "tau-ci": _cmd_tau_ci,
    "verify-paper": _cmd_verify,
}


def _input_echo(args) -> dict:
    keep = ("kind", "k", "weights", "poly", "flavor", "alpha", "ideal", "seed", "budget",
            "max_degree", "order")
    out = {}
    for key in keep:
        v = getattr(args, key, None)
        if v is None:
            continue
        if isinstance(v, MonomialOrdering):
            v = str(v)
        elif isinstance(v, tuple):
            v = list(v)
        out[key] = v
    return out


def _flatten(prefix: str, v, rows: list) -> None:
    if isinstance(v, dict):
        for k in sorted(v):
            _flatten(f"{prefix}.{k}" if prefix else k, v[k], rows)
    elif isinstance(v, list) and v and all(isinstance(u, dict) for u in v):
        for i, u in enumerate(v):
            _flatten(f"{prefix}[{i}]", u, rows)
    else:
        rows.append((prefix, json.dumps(v, ensure_ascii=False) if isinstance(v, list) else
                     ("null" if v is None else str(v))))


def format_table(document: dict) -> str:
    rows: list = []
    _flatten("", to_jsonable(document), rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        result = COMMANDS[args.command](args)
    except (UsageError, ParseError, UnsupportedClass) as exc:
        print(f"gamma-sing: usage error: {exc}", file=err)
        return EXIT_USAGE
    except (NotZeroDimensional, NotCompleteIntersection, ValueError, ArithmeticError,
            AssertionError) as exc:
        print(f"gamma-sing: computation failed: {type(exc).__name__}: {exc}", file=err)
        return EXIT_COMPUTATION
    document = {"schema": SCHEMA, "command": args.command, "input": _input_echo(args),
                "result": result}
    out.write(serialize(document) if args.format == "json" else format_table(document))
    if args.command == "verify-paper" and not result["report"].ok:
        for c in result["report"].failures:
            print(f"gamma-sing: failed: {c.name}", file=err)
        return EXIT_VERIFY
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end: ``python -m monsterlie <subcommand> ...``.

Exit status: 0 on success, 1 when a verification finds a nonzero residual,
2 on malformed arguments or expressions.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import re
import sys
from fractions import Fraction

from . import algebra as alg_mod
from .algebra import MonsterAlgebra, WindowError, check_triple
from .cartan import (
    BorcherdsCartanMatrix,
    InvalidIndexError,
    dynkin_edges,
    rank_truncated,
    validate_borcherds_conditions,
)
from .freelie import fricke_generators, graded_dimension
from .moonshine import (
    UnknownClassError,
    fricke_transform,
    get_class,
    mckay_thompson,
    monster_multiplicity,
    root_multiplicity,
    verify_2b_inverse_identity,
    verify_2b_routes,
    verify_denominator_identity,
    verify_fricke_p0_consistency,
    verify_theta_identity,
)
from .parser import ParseError, evaluate, parse_bracket_expression
from .qseries import UncertifiedRegionError

log = logging.getLogger("monsterlie")


class UsageError(Exception):
    pass


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers 'a,b', got {text!r}") from None
    return a, b


def _override(text: str) -> tuple:
    try:
        i1, i2, value = text.split(":")
        return _pair(i1), _pair(i2), int(value)
    except (ValueError, argparse.ArgumentTypeError):
        raise argparse.ArgumentTypeError(f"expected 'j,k:p,q:value', got {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("bound must be positive")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("bound must be non-negative")
    return v


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


def cmd_series(args) -> int:
    s = mckay_thompson(args.cls, Fraction(args.trunc))
    _emit(args, {"class": get_class(args.cls).label, "series": s.to_dict()}, s.to_text().rstrip())
    return 0


def cmd_transform(args) -> int:
    s = fricke_transform(get_class(args.cls).label, Fraction(args.trunc))
    _emit(args, {"class": get_class(args.cls).label, "series": s.to_dict()}, s.to_text().rstrip())
    return 0


def cmd_cartan(args) -> int:
    a = BorcherdsCartanMatrix(args.cls)
    for i1, i2, value in args.override:
        a = a.with_override(i1, i2, value)
    rep = validate_borcherds_conditions(a, args.blocks, args.per_block)
    rank = rank_truncated(a, args.blocks, args.per_block)
    sl = a.slice(args.blocks, args.per_block)
    payload = {"class": a.label, **sl, "conditions": rep.to_dict(), "rank": rank, "pass": rep.ok}
    width = max(len(r) for r in sl["rows"])
    lines = ["".ljust(width) + " " + " ".join(c.rjust(4) for c in sl["cols"])]
    for r, row in zip(sl["rows"], sl["entries"]):
        lines.append(r.ljust(width) + " " + " ".join(str(v).rjust(max(4, len(c))) for v, c in zip(row, sl["cols"])))
    lines.append(f"B1={rep.symmetric} B2={rep.off_diagonal_nonpositive} B3={rep.integrality} rank={rank}")
    _emit(args, payload, "\n".join(lines))
    return 0 if rep.ok else 1


def cmd_mult(args) -> int:
    c = get_class(args.cls)
    n = Fraction(args.n)
    try:
        v = root_multiplicity(c.label, args.m, n)
    except UncertifiedRegionError as exc:
        _emit(args, {"class": c.label, "root": [args.m, str(n)], "status": "uncertified", "reason": str(exc)},
              f"uncertified: {exc}")
        return 0
    _emit(args, {"class": c.label, "root": [args.m, str(n)], "status": "ok", "multiplicity": str(v)}, str(v))
    return 0


def cmd_denom(args) -> int:
    c = get_class(args.cls)
    exponent = None
    if args.perturb:
        pm, pn, delta = args.perturb
        if c.label == "1A":
            exponent = lambda m, n: monster_multiplicity(m, int(n)) + (delta if (m, n) == (pm, pn) else 0)
        else:
            exponent = lambda m, n: root_multiplicity(c.label, m, n) + (delta if (m, n) == (pm, Fraction(pn, c.level)) else 0)
    if c.label == "1A":
        reports = [verify_denominator_identity("1A", args.p, args.q, exponent)]
    elif c.fricke:
        reports = [verify_fricke_p0_consistency(c.label, args.q, exponent)]
    else:
        reports = [verify_theta_identity(args.q), verify_2b_inverse_identity(args.q), verify_2b_routes(args.q)]
    ok = all(r.passed for r in reports)
    payload = {"class": c.label, "reports": [r.to_dict() for r in reports], "pass": ok}
    lines = []
    for r in reports:
        lines.append(f"{'pass' if r.passed else 'FAIL'}: {r.identity} {r.bounds}")
        for t in r.residual_terms()[:20]:
            lines.append("  residual " + "\t".join(map(str, t)))
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def cmd_bracket(args) -> int:
    tree = parse_bracket_expression(args.expr)
    a = MonsterAlgebra(args.cls, window=args.window)
    x = evaluate(tree, a)
    payload = {"class": a.label, "input": args.expr, "result": str(x),
               "terms": [[alg_mod.key_text(k), str(c), list(alg_mod.key_degree(k))] for k, c in x.terms.items()]}
    _emit(args, payload, str(x))
    return 0


def cmd_dynkin(args) -> int:
    a = BorcherdsCartanMatrix(args.cls)
    edges = dynkin_edges(a, args.blocks, args.per_block)
    _emit(args, {"class": a.label, "edges": edges},
          "\n".join(f"{e['from']} -- {e['to']}: {e['multiplicity']}" for e in edges))
    return 0


def cmd_witt(args) -> int:
    c = get_class(args.cls)
    if not c.fricke:
        raise UncertifiedRegionError(f"{c.label} is not Fricke")
    g = fricke_generators(c.label, (args.m, args.n))
    d = graded_dimension(g, (args.m, args.n))
    payload = {"class": c.label, "degree": [args.m, args.n], "dimension": str(d)}
    if c.label == "1A":
        payload["c(mn)"] = str(monster_multiplicity(args.m, args.n))
    _emit(args, payload, str(d))
    return 0


def cmd_triple(args) -> int:
    c = get_class(args.cls)
    j, k = args.index
    if c.fricke:
        a = MonsterAlgebra(c.label, window=(max(1, j + 1), max(1, j + 1)))
        rep = check_triple((j, k), args.a_ii, algebra=a)
    else:
        # norm-zero simple roots (m, 0) of a non-Fricke algebra give Heisenberg triples
        from .moonshine import multiplicity_2B_row0

        size = multiplicity_2B_row0(j) if j >= 1 else 0
        if not 1 <= k <= size:
            raise InvalidIndexError(f"no norm-zero simple root ({j},0) copy {k} in {c.label}")
        rep = check_triple((j, k), 0 if args.a_ii is None else args.a_ii)
    _emit(args, rep.to_dict(), "\n".join([f"{rep.kind} triple at {rep.index} (a_ii={rep.a_ii})"] +
                                           [f"  {n}: {v}" for n, v in rep.residuals.items()]))
    return 0 if rep.ok else 1


def cmd_jacobi(args) -> int:
    a = MonsterAlgebra(args.cls, window=args.window)
    rng = random.Random(args.seed)
    failures = [[str(x) for x in t] for t in alg_mod.jacobi_failures(a, args.trials, rng)]
    _emit(args, {"class": a.label, "trials": args.trials, "seed": args.seed, "failures": failures,
                 "pass": not failures},
          f"{args.trials - len(failures)}/{args.trials} Jacobi triples vanish")
    return 0 if not failures else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monsterlie", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("series", help="McKay-Thompson series of a class")
    s.add_argument("cls")
    s.add_argument("--trunc", type=Fraction, default=Fraction(10))
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("transform", help="series of T_g(-1/tau)")
    s.add_argument("cls")
    s.add_argument("--trunc", type=Fraction, default=Fraction(10))
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("cartan", help="Cartan matrix slice with (B1)-(B3) and rank")
    s.add_argument("cls")
    s.add_argument("--blocks", type=_positive, default=4)
    s.add_argument("--per-block", type=_positive, default=2)
    s.add_argument("--override", type=_override, action="append", default=[],
                   help="j,k:p,q:value replaces one entry (repeatable)")
    s.set_defaults(func=cmd_cartan)

    s = sub.add_parser("mult", help="root multiplicity c(m, n)")
    s.add_argument("cls")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=Fraction, required=True)
    s.set_defaults(func=cmd_mult)

    s = sub.add_parser("denom-check", help="denominator identity residual")
    s.add_argument("cls")
    s.add_argument("--p", type=_nonneg, default=4)
    s.add_argument("--q", type=_nonneg, default=4)
    s.add_argument("--perturb", type=lambda t: tuple(int(x) for x in t.split(",")),
                   help="m,n,delta: add delta to one exponent (n in units of 1/N)")
    s.set_defaults(func=cmd_denom)

    s = sub.add_parser("bracket", help="evaluate a bracket expression")
    s.add_argument("expr")
    s.add_argument("--class", dest="cls", default="1A")
    s.add_argument("--window", type=_pair, default=(6, 6))
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("dynkin", help="Dynkin edge multiplicities")
    s.add_argument("cls")
    s.add_argument("--blocks", type=_positive, default=3)
    s.add_argument("--per-block", type=_positive, default=1)
    s.set_defaults(func=cmd_dynkin)

    s = sub.add_parser("witt", help="graded dimension of the free algebra u+")
    s.add_argument("cls")
    s.add_argument("--m", type=_positive, required=True)
    s.add_argument("--n", type=_positive, required=True)
    s.set_defaults(func=cmd_witt)

    s = sub.add_parser("triple", help="sl2 / Heisenberg triple check")
    s.add_argument("cls")
    s.add_argument("--index", type=_pair, required=True)
    s.add_argument("--a-ii", type=int, default=None)
    s.set_defaults(func=cmd_triple)

    s = sub.add_parser("jacobi", help="randomized Jacobi identity check")
    s.add_argument("cls")
    s.add_argument("--trials", type=_positive, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--window", type=_pair, default=(4, 4))
    s.set_defaults(func=cmd_jacobi)
    return p


_NEGATIVE_VALUE = re.compile(r"^-\d[\d,/:-]*$")


def _glue_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "--index -1,1" as two options; glue such values onto their flag
    out = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE_VALUE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def run(argv=None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ParseError as exc:
        print(exc.annotated(), file=sys.stderr)
        return 2
    except (UnknownClassError, InvalidIndexError, WindowError, UncertifiedRegionError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())

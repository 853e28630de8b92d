# pycharsub - Characteristic subspaces and ideal series of finite-dimensional algebras
# Copyright (C) 2026 pycharsub contributors
#
# This program is free software: you can redistribute it and/or modify it
# under the terms of the GNU General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option)
# any later version. This program is distributed in the hope that it will be
# useful, but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General
# Public License for more details. You should have received a copy of the
# GNU General Public License along with this program. If not, see
# <https://www.gnu.org/licenses/>.

"""Contains the ``pycharsub`` command line interface.

Exit codes: 0 success, 1 I/O or input format error, 2 validation or
hypothesis failure, 3 resource cap hit, 4 internal theorem violation,
5 law failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Any, Callable, Sequence, TextIO

from typing_extensions import Final

from pycharsub.algebra import is_ideal
from pycharsub.certificate import (
    char_payload,
    dump_document,
    make_document,
    read_document,
    render_table,
    series_payload,
)
from pycharsub.characteristic import (
    CharSubspaceRequest,
    Mode,
    find_characteristic_family,
    solve,
)
from pycharsub.exactla import Subspace
from pycharsub.exceptions import (
    BoundOverflow,
    CapExceeded,
    Error,
    HypothesisFailed,
    NotAnIdeal,
    NotInvertible,
    NotMultiplicative,
    SchemaError,
    TheoremViolation,
)
from pycharsub.lattice import OrdinaryCodim, check_codim_laws, sublattice_closure
from pycharsub.laws import Law, LawReport
from pycharsub.limits import ENVIRONMENT, Limits
from pycharsub.morphisms import MorphismSet, orbit
from pycharsub.predicates import (
    CLASSES,
    check_law,
    check_two_line_laws,
    extend_C,
    get_class,
    pred_A,
    pred_B,
    zero_predicate,
)
from pycharsub.problem import Problem, corpus_names, load_problem
from pycharsub.series import Route, build_series_predicate, class_laws, find_characteristic_series
from pycharsub.verify import verify_document
from pycharsub.words import parse_word

__all__ = ["main", "build_parser", "exit_code"]

logger = logging.getLogger(__name__)

EXIT_OK: Final = 0
EXIT_INPUT: Final = 1
EXIT_INVALID: Final = 2
EXIT_CAP: Final = 3
EXIT_VIOLATION: Final = 4
EXIT_LAW: Final = 5

_DEFAULT_WORD: Final = "(* x1 x2)"


def exit_code(exc: BaseException) -> int:
    """Maps an exception to the exit code contract."""
    if isinstance(exc, TheoremViolation):
        return EXIT_VIOLATION
    if isinstance(exc, (CapExceeded, BoundOverflow)):
        return EXIT_CAP
    if isinstance(exc, (NotMultiplicative, NotInvertible, HypothesisFailed, NotAnIdeal)):
        return EXIT_INVALID
    # I/O and input format errors
    return EXIT_INPUT


def _names(text: str | None) -> list[str]:
    return [name.strip() for name in text.split(",") if name.strip()] if text else []


def _limits(args: argparse.Namespace) -> Limits:
    return Limits.from_env(
        closure_cap=getattr(args, "closure_cap", None),
        exhaustive_bound=getattr(args, "exhaustive_bound", None),
    )


def _emit(document: dict[str, Any], args: argparse.Namespace, out: TextIO) -> None:
    text = dump_document(document, args.out)
    if args.out is None:
        out.write(text)
    else:
        print(f"certificate written to {args.out}", file=out)


def _fmt(obj: Any) -> str:
    if isinstance(obj, Subspace):
        return str(obj)
    if isinstance(obj, (tuple, list)):
        return "(" + ", ".join(_fmt(x) for x in obj) + ")"
    return str(obj)


# * Commands


def cmd_validate(args: argparse.Namespace, out: TextIO) -> int:
    problem = load_problem(args.input)
    findings = list(problem.findings())
    print(f"{problem.algebra} (fingerprint {problem.fingerprint[:16]})", file=out)
    for name, space in problem.subspaces.items():
        print(f"  subspace {name}: {space} (codim {space.codim})", file=out)
    for name in problem.matrices:
        print(f"  automorphism {name}", file=out)
    for name, word in problem.words.items():
        print(f"  word {name}: {word} (degree {word.degree})", file=out)
    for finding in findings:
        print(f"FAIL {finding}", file=out)
    if findings:
        return EXIT_INVALID
    print("ok", file=out)
    return EXIT_OK


def cmd_char_subspace(args: argparse.Namespace, out: TextIO) -> int:
    problem = load_problem(args.input)
    limits = _limits(args)
    phis = problem.morphism_set(limits)
    mode = Mode(args.mode)
    words = [problem.word(name) for name in _names(args.words)] or None
    target = problem.word(args.target_word) if args.target_word else None
    if mode is not Mode.GENERAL and target is None:
        raise SchemaError("--target-word", f"mode {mode} needs a target word")
    request = CharSubspaceRequest(
        problem.algebra,
        problem.subspace(args.subspace),
        phis,
        args.t,
        tuple(words) if words else None,
        mode,
        target,
        limits,
    )

    started = time.perf_counter()
    if args.family:
        family = find_characteristic_family(request)
        rows = [
            (f"H_{c.request.t}", f"codim {c.codim_H} <= {c.bound}  {c.H}") for c in family
        ]
        print(render_table(rows), file=out)
        cert = family[-1]
    else:
        cert = solve(request)
    elapsed = time.perf_counter() - started

    command = {
        "subspace": args.subspace,
        "t": args.t,
        "mode": str(mode),
        "words": _names(args.words) or None,
        "target_word": args.target_word,
        "closure_cap": limits.closure_cap,
        "morphism_cap": limits.morphism_cap,
    }
    print(render_table(cert.summary()), file=out)
    document = make_document(
        char_payload(cert, problem, command), timing=elapsed if args.timing else None
    )
    _emit(document, args, out)
    return EXIT_OK


def cmd_series(args: argparse.Namespace, out: TextIO) -> int:
    problem = load_problem(args.input)
    if problem.series is None:
        raise SchemaError("$.series", "the input has no series block")
    limits = _limits(args)
    phis = problem.morphism_set(limits)
    block = problem.series

    started = time.perf_counter()
    cert = find_characteristic_series(
        problem.algebra, block.top, block.witness, block.spec, phis, limits, Route(args.route)
    )
    elapsed = time.perf_counter() - started

    command = {
        "route": args.route,
        "closure_cap": limits.closure_cap,
        "morphism_cap": limits.morphism_cap,
    }
    print(render_table(cert.summary()), file=out)
    document = make_document(
        series_payload(cert, problem, command), timing=elapsed if args.timing else None
    )
    _emit(document, args, out)
    return EXIT_OK


def _law_pool(problem: Problem, phis: MorphismSet, limits: Limits) -> list[Subspace]:
    """Sublattice generated by the orbits of the named ideals, with ``0`` and ``G``."""
    algebra = problem.algebra
    seeds = [algebra.zero(), algebra.full()]
    for space in problem.subspaces.values():
        if is_ideal(algebra, space):
            seeds.extend(orbit(space, phis))
    closure = sublattice_closure(seeds, limits.closure_cap)
    return list(closure)


def cmd_laws(args: argparse.Namespace, out: TextIO) -> int:
    problem = load_problem(args.input)
    findings = list(problem.findings())
    if findings:
        for finding in findings:
            print(f"FAIL {finding}", file=out)
        return EXIT_INVALID

    limits = _limits(args)
    phis = problem.morphism_set(limits)
    algebra = problem.algebra
    pool = _law_pool(problem, phis, limits)
    options = dict(bound=limits.exhaustive_bound, trials=limits.random_trials, seed=limits.seed)
    words = list(problem.words.values()) or [parse_word(_DEFAULT_WORD, algebra.field)]
    cls = get_class(args.cls)
    selected = args.predicate
    reports: list[LawReport] = []

    if selected in (None, "A"):
        for word in words:
            reports.extend(check_two_line_laws(pred_A(word, algebra), pool, **options))
    if selected in (None, "B"):
        reports.extend(check_two_line_laws(pred_B(cls, algebra), pool, **options))
    if selected in (None, "composed"):
        if problem.series is not None:
            composed = build_series_predicate(algebra, problem.series.spec, pool)
        else:
            composed = extend_C(words[0], zero_predicate(), pool, algebra)
        for law in (Law.MONOTONE, Law.MULTILINEAR, Law.PHI_INVARIANT):
            reports.append(check_law(composed, law, pool, phis=phis, **options))
    if selected is None:
        reports.extend(check_codim_laws(OrdinaryCodim(), pool, phis, **options))
        reports.extend(class_laws(cls, [algebra], **options))

    for report in reports:
        if not report.ok:
            status = f"FAIL {_fmt(report.witness)} {report.detail}".rstrip()
        else:
            status = "pass" if report.exercised else "not exercised"
        mode = "exhaustive" if report.exhaustive else "sampled"
        print(f"{report.subject:<32} {report.law!s:<18} {mode:<10} {status}", file=out)
    return EXIT_OK if all(reports) else EXIT_LAW


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    problem = load_problem(args.input)
    try:
        document = read_document(args.cert)
    except json.JSONDecodeError as exc:
        raise SchemaError(str(args.cert), exc.msg) from exc
    report = verify_document(document, problem)
    print(report, file=out)
    return EXIT_OK if report else EXIT_INVALID


# * Parser


def _epilog() -> str:
    lines = ["environment variables (optional, flags take precedence):"]
    lines += [f"  {var:<28} default {name.replace('_', ' ')}" for name, var in ENVIRONMENT.items()]
    lines.append(f"bundled inputs: {', '.join(corpus_names())}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pycharsub",
        description="Characteristic subspaces and ideal series of finite-dimensional algebras.",
        epilog=_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logs"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, func: Callable[[argparse.Namespace, TextIO], int], helptext: str):
        p = sub.add_parser(name, help=helptext, description=helptext)
        p.add_argument(
            "--input", required=True, help="problem JSON file, or a bundled input by name"
        )
        p.set_defaults(func=func)
        return p

    command("validate", cmd_validate, "Check structure constants, flavor and morphism laws.")

    p = command("char-subspace", cmd_char_subspace, "Find a characteristic subspace H.")
    p.add_argument("--subspace", required=True, help="name of N in the input")
    p.add_argument("--t", type=int, required=True, help="degree bound t >= 1")
    p.add_argument("--words", help="comma separated word names (default: all monomials)")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.GENERAL.value)
    p.add_argument("--target-word", help="word for the identity and bounded-image modes")
    p.add_argument("--closure-cap", type=int)
    p.add_argument("--family", action="store_true", help="also report H_1 ... H_t")
    p.add_argument("--out", help="write the certificate here instead of stdout")
    p.add_argument("--timing", action="store_true", help="add wall-clock timing")

    p = command("series", cmd_series, "Find a characteristic ideal with a matching series.")
    p.add_argument("--closure-cap", type=int)
    p.add_argument("--route", choices=[r.value for r in Route], default=Route.DIRECT.value)
    p.add_argument("--out", help="write the certificate here instead of stdout")
    p.add_argument("--timing", action="store_true", help="add wall-clock timing")

    p = command("laws", cmd_laws, "Check predicate, codimension and class laws.")
    p.add_argument("--predicate", choices=["A", "B", "composed"])
    p.add_argument("--class", dest="cls", choices=sorted(CLASSES), default="nilpotent")
    p.add_argument("--exhaustive-bound", type=int)

    p = command("verify", cmd_verify, "Re-validate a certificate without searching.")
    p.add_argument("--cert", required=True, help="certificate document")
    return parser


def _report(exc: BaseException, err: TextIO) -> None:
    print(f"error: {exc}", file=err)
    witness = getattr(exc, "witness", None)
    if witness is not None:
        print(f"witness: {_fmt(witness)}", file=err)
    dump = getattr(exc, "dump", None)
    if dump:
        print(json.dumps(dump, indent=2, sort_keys=True, default=str), file=err)


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )
    out = out or sys.stdout
    try:
        return args.func(args, out)
    except (Error, OSError) as exc:
        _report(exc, sys.stderr)
        return exit_code(exc)
    except ValueError as exc:
        # bad caps from flags or the environment
        _report(exc, sys.stderr)
        return EXIT_INPUT

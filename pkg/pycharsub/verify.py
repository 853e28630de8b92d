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

"""Contains the independent certificate verifier.

Nothing here searches: every claim of a certificate is recomputed directly
from the problem with exact linear algebra, the product table, word
evaluation and morphism closure. Membership in the generated sublattice is
checked by replaying the recorded derivation over the recomputed orbit.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from pycharsub.algebra import StructureAlgebra, is_ideal, nilpotency_index, quotient
from pycharsub.exactla import Subspace, rref
from pycharsub.exceptions import Error
from pycharsub.morphisms import (
    Morphism,
    MorphismSet,
    apply,
    closure,
    identity,
    orbit,
    validate_morphism,
)
from pycharsub.problem import Problem
from pycharsub.words import eval_span, parse_word, words_up_to

__all__ = ["VerifyReport", "verify_document"]

logger = logging.getLogger(__name__)

_COMMUTATOR = "(- (* x1 x2) (* x2 x1))"


@dataclass
class VerifyReport:
    kind: str = ""
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def expect(self, cond: bool, desc: str) -> bool:
        self.checks += 1
        if not cond:
            logger.debug("Verification failure: %s", desc)
            self.failures.append(desc)
        return cond

    def __str__(self) -> str:
        if self.ok:
            return f"{self.kind} certificate verified ({self.checks} checks)"
        return f"{self.kind} certificate REJECTED: " + "; ".join(self.failures)


def _digest(payload: Mapping[str, Any]) -> str:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _replay(program: Sequence[Sequence[Any]], seed: Sequence[Subspace]) -> Subspace | None:
    values: list[Subspace] = []
    for op, *args in program:
        if op == "seed":
            values.append(seed[args[0]])
        elif op == "sum":
            values.append(values[args[0]] + values[args[1]])
        elif op == "meet":
            values.append(values[args[0]] & values[args[1]])
        else:
            return None
    return values[-1] if values else None


def _bases(spaces: Sequence[Subspace]) -> list[list[list[int]]]:
    return [[list(row) for row in v.basis] for v in spaces]


class _Context:
    def __init__(self, problem: Problem, payload: Mapping[str, Any], report: VerifyReport) -> None:
        self.problem = problem
        self.payload = payload
        self.report = report
        self.algebra: StructureAlgebra = problem.algebra

    def space(self, rows: Sequence[Sequence[int]], what: str) -> Subspace:
        space = rref(self.algebra.field, rows, self.algebra.dim)
        self.report.expect(
            [list(r) for r in space.basis] == [list(r) for r in rows],
            f"{what} basis is not canonical",
        )
        return space

    def phis(self) -> tuple[list[Morphism], MorphismSet]:
        names = self.payload["phi"]["generators"]
        if names == ["id"] and not self.problem.matrices:
            gens = [identity(self.algebra.field, self.algebra.dim)]
        else:
            gens = [validate_morphism(self.algebra, self.problem.matrices[n]) for n in names]
        cap = self.payload["command"].get("morphism_cap", 10_000)
        return gens, closure(gens, cap)


def _verify_char(ctx: _Context) -> None:
    payload, report, algebra = ctx.payload, ctx.report, ctx.algebra
    expect = report.expect
    command = payload["command"]
    n = ctx.space(payload["N"]["basis"], "N")
    expect(n == ctx.problem.subspace(command["subspace"]), "N differs from the input subspace")
    gens, phis = ctx.phis()
    expect(len(phis) == payload["phi"]["size"], "closure of Φ has a different size")

    images = orbit(n, phis)
    expect(_bases(images) == payload["orbit"], "orbit of N differs")
    expect(payload["closure"]["complete"] is True, "closure was incomplete")
    h = ctx.space(payload["H"]["basis"], "H")
    expect(_replay(payload["derivation"], images) == h, "derivation does not rebuild H")
    expect(h.codim == payload["H"]["codim"], "codim H differs")
    expect(n.codim == payload["N"]["codim"], "codim N differs")

    for g, entry in zip(gens, payload["invariance"]):
        image = apply(g, h)
        expect(image <= h, f"H is not invariant under {entry['generator']}")
        expect(_bases([image])[0] == entry["image"], f"image under {entry['generator']} differs")
    expect(len(payload["invariance"]) == len(gens), "invariance record misses generators")

    t = payload["bound"]["t"]
    expected = []
    if command.get("words"):
        expected = [ctx.problem.word(name).to_sexpr() for name in command["words"]]
    else:
        expected = [w.to_sexpr() for w in words_up_to(t, algebra.field, max(t, 1))]
    if command.get("target_word"):
        expected.append(ctx.problem.word(command["target_word"]).to_sexpr())
    recorded = [entry["sexpr"] for entry in payload["words"]]
    expect(list(dict.fromkeys(expected)) == recorded, "word set differs from the command")

    for entry in payload["words"]:
        word = parse_word(entry["sexpr"], algebra.field)
        expect(word.degree <= t, f"{entry['sexpr']} has degree above t")
        lhs = eval_span(word, algebra, (h,) * word.degree)
        base = eval_span(word, algebra, (n,) * word.degree)
        rhs = Subspace.zero(algebra.field, algebra.dim)
        for phi in phis:
            rhs = rhs + apply(phi, base)
        expect(_bases([lhs])[0] == entry["lhs"], f"w(H..H) differs for {entry['sexpr']}")
        expect(_bases([rhs])[0] == entry["rhs"], f"target differs for {entry['sexpr']}")
        expect(lhs <= rhs, f"w(H..H) is not contained in the target for {entry['sexpr']}")

    trace = [n.codim]
    for _ in range(t - 1):
        trace.append(trace[-1] * (trace[-1] + 1))
    expect(trace == payload["bound"]["trace"], "f trace differs")
    expect(trace[-1] == payload["bound"]["value"], "bound differs")
    expect(h.codim <= trace[-1], "codim H exceeds the bound")

    corollary = payload.get("corollary")
    if corollary is not None:
        word = parse_word(corollary["target"], algebra.field)
        dim_n = eval_span(word, algebra, (n,) * word.degree).rank
        dim_h = eval_span(word, algebra, (h,) * word.degree).rank
        expect(dim_n == corollary["dim_w_N"], "dim w(N..N) differs")
        expect(dim_h == corollary["dim_w_H"], "dim w(H..H) differs")
        if payload["mode"] == "identity":
            expect(dim_n == 0 and dim_h == 0, "identity does not vanish on N and H")
        else:
            expect(dim_h <= len(phis) * dim_n, "image dimension bound fails")


def _level_holds(ctx: _Context, level: Mapping[str, str], below: Subspace, above: Subspace) -> bool:
    factor = quotient(ctx.algebra, below)
    image = factor.project_subspace(above)
    if level["kind"] == "identity":
        word = ctx.problem.word(level["word"])
        return eval_span(word, factor.quotient, (image,) * word.degree).is_zero()
    checks: dict[str, Callable[[], bool]] = {
        "nilpotent": lambda: nilpotency_index(factor.quotient, image) is not None,
        "abelian": lambda: eval_span(
            parse_word(_COMMUTATOR, ctx.algebra.field), factor.quotient, (image, image)
        ).is_zero(),
    }
    check = checks.get(level["tag"])
    ctx.report.expect(check is not None, f"no verifier for class {level['tag']!r}")
    return check is not None and check()


def _verify_series(ctx: _Context) -> None:
    payload, expect = ctx.payload, ctx.report.expect
    series = ctx.problem.series
    if not expect(series is not None, "the input has no series block"):
        return
    assert series is not None
    expect(
        payload["levels"] == [dict(s) for s in series.level_sources], "levels differ from the input"
    )
    gens, phis = ctx.phis()
    zero = Subspace.zero(ctx.algebra.field, ctx.algebra.dim)
    input_chain = (zero,) + series.witness
    expect(_bases(input_chain) == payload["input_chain"], "input chain differs")

    seed = tuple(dict.fromkeys(v for a in input_chain for v in orbit(a, phis)))
    expect(_bases(seed) == payload["seed"], "pool seed differs")
    expect(payload["pool"]["complete"] is True, "pool closure was incomplete")

    chain = []
    for i, entry in enumerate(payload["chain"]):
        b = ctx.space(entry["basis"], f"B_{i}")
        expect(_replay(entry["derivation"], seed) == b, f"derivation does not rebuild B_{i}")
        expect(is_ideal(ctx.algebra, b), f"B_{i} is not an ideal")
        for g in gens:
            expect(apply(g, b) <= b, f"B_{i} is not invariant")
        chain.append(b)

    levels = payload["levels"]
    if not expect(len(chain) == len(levels) + 1, "chain length differs from the levels"):
        return
    expect(chain[0].is_zero(), "the chain does not start at 0")
    expect(chain[-1] == ctx.space(payload["M"]["basis"], "M"), "the chain does not end at M")
    expect(chain[-1].codim == payload["M"]["codim"], "codim M differs")
    for i, level in enumerate(levels, 1):
        if expect(chain[i - 1] <= chain[i], f"B_{i - 1} is not contained in B_{i}"):
            expect(_level_holds(ctx, level, chain[i - 1], chain[i]), f"level {i} fails")

    codims = set(payload["routes"].values())
    expect(len(codims) == 1 and chain[-1].codim in codims, "route codimensions disagree")


def verify_document(document: Mapping[str, Any], problem: Problem) -> VerifyReport:
    """Re-validates a certificate document against the problem it was made from."""
    report = VerifyReport()
    payload = document.get("certificate")
    if not report.expect(isinstance(payload, Mapping), "no certificate payload"):
        return report
    assert isinstance(payload, Mapping)
    report.kind = str(payload.get("kind", "?"))
    report.expect(document.get("digest") == _digest(payload), "payload digest mismatch")
    report.expect(
        payload.get("input", {}).get("fingerprint") == problem.fingerprint,
        "certificate was made for a different input",
    )

    ctx = _Context(problem, payload, report)
    try:
        if report.kind == "char-subspace":
            _verify_char(ctx)
        elif report.kind == "series":
            _verify_series(ctx)
        else:
            report.expect(False, f"unknown certificate kind {report.kind!r}")
    except (Error, KeyError, IndexError, TypeError) as exc:
        report.expect(False, f"malformed certificate: {exc!r}")
    return report

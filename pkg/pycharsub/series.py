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

"""Contains the characteristic series engine.

An ideal ``N`` with a series ``0 = A_0 ⊆ … ⊆ A_n = N`` whose factors satisfy
prescribed identities or lie in prescribed classes yields an invariant ideal
``M`` with a series of the same shape. Two routes find ``M``:

* ``direct``: a depth-first search for invariant chains in the ideal pool;
* ``predicate``: the series property assembled from :func:`~pycharsub.predicates.extend_C`,
  :func:`~pycharsub.predicates.extend_D` and evaluated on invariant pool elements.
"""

from __future__ import annotations

import dataclasses
import enum
import functools
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

from sortedcontainers import SortedKeyList

from pycharsub.algebra import QuotientPresentation, StructureAlgebra, is_ideal, quotient
from pycharsub.exactla import SUBSPACE_ENUMERATION_CAP, Subspace, enumerate_subspaces
from pycharsub.exceptions import (
    ClosureIncomplete,
    HypothesisFailed,
    RouteDisagreement,
    TheoremViolation,
)
from pycharsub.lattice import (
    Step,
    SublatticeClosure,
    derivation,
    invariant_elements,
    sublattice_closure,
)
from pycharsub.laws import EXHAUSTIVE_BOUND, RANDOM_TRIALS, Law, LawReport, law_cases
from pycharsub.limits import Limits
from pycharsub.morphisms import MorphismSet, apply, orbit
from pycharsub.predicates import (
    AlgebraClass,
    Predicate,
    extend_C,
    extend_D,
    get_class,
    zero_predicate,
)
from pycharsub.words import MultilinearElement, eval_span, nonvanishing_witness

__all__ = [
    "LevelKind",
    "Level",
    "SeriesSpec",
    "SeriesWitness",
    "SeriesReport",
    "SeriesCertificate",
    "Route",
    "check_series",
    "build_series_predicate",
    "find_characteristic_series",
    "enumerate_ideals",
    "class_laws",
]

logger = logging.getLogger(__name__)


class LevelKind(str, enum.Enum):
    IDENTITY = "identity"
    CLASS = "class"

    def __str__(self) -> str:
        return self.value


class Route(str, enum.Enum):
    DIRECT = "direct"
    PREDICATE = "predicate"
    BOTH = "both"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Level:
    """Requirement on one factor ``A_i / A_{i-1}``: an identity ``w = 0`` or a class."""

    kind: LevelKind
    word: MultilinearElement | None = None
    algebra_class: AlgebraClass | None = field(default=None, compare=False)
    tag: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", LevelKind(self.kind))
        if self.kind is LevelKind.IDENTITY and self.word is None:
            raise ValueError("An identity level needs a word")
        if self.kind is LevelKind.CLASS:
            if self.algebra_class is None:
                object.__setattr__(self, "algebra_class", get_class(self.tag))
            if not self.tag:
                object.__setattr__(self, "tag", str(self.algebra_class))

    @classmethod
    def identity(cls, word: MultilinearElement) -> Level:
        return cls(LevelKind.IDENTITY, word=word)

    @classmethod
    def of_class(cls, tag_or_class: str | AlgebraClass) -> Level:
        if isinstance(tag_or_class, AlgebraClass):
            return cls(LevelKind.CLASS, algebra_class=tag_or_class)
        return cls(LevelKind.CLASS, tag=tag_or_class)

    @property
    def arity(self) -> int:
        """Degree of the word; class levels count as 1."""
        return self.word.degree if self.word is not None else 1

    def holds(self, factor: QuotientPresentation, top: Subspace) -> bool:
        """Whether the image of ``top`` in ``factor`` meets the requirement."""
        image = factor.project_subspace(top)
        if self.word is not None:
            return eval_span(self.word, factor.quotient, (image,) * self.word.degree).is_zero()
        assert self.algebra_class is not None
        return self.algebra_class.contains(factor.quotient, image)

    def evidence(self, factor: QuotientPresentation, top: Subspace) -> dict[str, Any]:
        image = factor.project_subspace(top)
        if self.word is not None:
            args = (image,) * self.word.degree
            witness = nonvanishing_witness(self.word, factor.quotient, args)
            span = eval_span(self.word, factor.quotient, args)
            evidence: dict[str, Any] = {"identity_span_rank": span.rank}
            if witness is not None:
                evidence["witness"] = [list(v) for v in witness]
            return evidence
        assert self.algebra_class is not None
        return self.algebra_class.evidence(factor.quotient, image)

    def __str__(self) -> str:
        if self.word is not None:
            return f"identity {self.word.to_sexpr()}"
        return f"class {self.tag}"


@dataclass(frozen=True)
class SeriesSpec:
    levels: tuple[Level, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(self.levels))
        if not self.levels:
            raise ValueError("A series needs at least one level")

    @property
    def length(self) -> int:
        return len(self.levels)

    @property
    def arity(self) -> int:
        """``Π t_i`` with ``t_i`` the degree of an identity level and 1 for a class level."""
        return math.prod(level.arity for level in self.levels)


@dataclass(frozen=True)
class SeriesWitness:
    """``0 = B_0 ⊆ B_1 ⊆ … ⊆ B_n``, with one evidence record per level."""

    chain: tuple[Subspace, ...]
    evidence: tuple[dict[str, Any], ...] = ()

    @property
    def top(self) -> Subspace:
        return self.chain[-1]


@dataclass(frozen=True)
class SeriesReport:
    ok: bool
    level: int | None = None
    """1-based level of the first failure, ``0`` for a problem with the chain ends."""

    reason: str = ""
    evidence: tuple[dict[str, Any], ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "series ok"
        return f"series fails at level {self.level}: {self.reason}"


def _chain(chain: Sequence[Subspace], spec: SeriesSpec) -> tuple[Subspace, ...]:
    chain = tuple(chain)
    if len(chain) == spec.length and chain:
        chain = (Subspace.zero(chain[0].field, chain[0].ambient_dim),) + chain
    return chain


def check_series(
    algebra: StructureAlgebra,
    n: Subspace,
    chain: Sequence[Subspace],
    spec: SeriesSpec,
) -> SeriesReport:
    """Checks that ``chain`` is a series of ideals ending at ``n`` with the factors of ``spec``.

    ``chain`` lists either ``A_1 … A_n`` or ``A_0 … A_n``.
    """
    chain = _chain(chain, spec)
    if len(chain) != spec.length + 1:
        return SeriesReport(False, 0, f"expected {spec.length} terms, got {len(chain) - 1}")
    if not chain[0].is_zero():
        return SeriesReport(False, 0, "the series does not start at 0")
    if chain[-1] != n:
        return SeriesReport(False, spec.length, f"the series ends at {chain[-1]}, not {n}")

    evidence: list[dict[str, Any]] = []
    for i, level in enumerate(spec.levels, 1):
        below, above = chain[i - 1], chain[i]
        if not is_ideal(algebra, above):
            return SeriesReport(False, i, f"{above} is not an ideal", tuple(evidence))
        if not below <= above:
            return SeriesReport(False, i, f"{below} is not contained in {above}", tuple(evidence))
        factor = quotient(algebra, below)
        record = {"level": i, "requirement": str(level), **level.evidence(factor, above)}
        evidence.append(record)
        if not level.holds(factor, above):
            return SeriesReport(False, i, f"factor fails {level}", tuple(evidence))
    return SeriesReport(True, evidence=tuple(evidence))


def build_series_predicate(
    algebra: StructureAlgebra, spec: SeriesSpec, pool: Sequence[Subspace]
) -> Predicate:
    """``U_n``: starts from ``M = 0`` and extends once per level, bottom level first.

    The result has arity :attr:`SeriesSpec.arity`; ``U_n(N, …, N)`` says that
    ``N`` has a series of the required shape through ideals of ``pool``.
    """
    pred = zero_predicate()
    for level in spec.levels:
        if level.word is not None:
            pred = extend_C(level.word, pred, pool, algebra)
        else:
            assert level.algebra_class is not None
            pred = extend_D(level.algebra_class, pred, pool, algebra)
    return pred


@dataclass(frozen=True)
class SeriesCertificate:
    spec: SeriesSpec
    n: Subspace
    input_chain: tuple[Subspace, ...]
    witness: SeriesWitness
    route: Route
    route_codims: dict[str, int]
    seed: tuple[Subspace, ...]
    closure: SublatticeClosure
    invariant_count: int
    derivations: tuple[tuple[Step, ...], ...]
    """One program per chain term, over :attr:`seed`."""

    invariance: tuple[tuple[tuple[tuple[int, ...], ...], tuple[Subspace, ...]], ...]
    """``(φ, (φ(B_0), …, φ(B_n)))`` per generator."""

    predicate_arity: int

    @property
    def m(self) -> Subspace:
        return self.witness.top

    @property
    def codim_M(self) -> int:
        return self.m.codim

    def summary(self) -> list[tuple[str, str]]:
        return [
            ("route", str(self.route)),
            ("levels", ", ".join(map(str, self.spec.levels))),
            ("codim N", str(self.n.codim)),
            ("codim M", str(self.codim_M)),
            ("pool size", str(len(self.closure))),
            ("invariant", str(self.invariant_count)),
            ("U arity", str(self.predicate_arity)),
            ("chain", " <= ".join(map(str, self.witness.chain))),
        ]


class _ChainSearch:
    """Depth-first search for invariant chains ``0 = B_0 ⊆ … ⊆ B_n = X``."""

    def __init__(
        self, algebra: StructureAlgebra, spec: SeriesSpec, invariant: Sequence[Subspace]
    ) -> None:
        self.algebra = algebra
        self.spec = spec
        self.ranked = sorted(invariant, key=lambda v: (v.rank, v.key))
        self._factors: dict[Subspace, QuotientPresentation] = {}
        self._memo: dict[tuple[int, Subspace], tuple[Subspace, ...] | None] = {}

    def factor(self, ideal: Subspace) -> QuotientPresentation:
        if ideal not in self._factors:
            self._factors[ideal] = quotient(self.algebra, ideal)
        return self._factors[ideal]

    def reach(self, level: int, top: Subspace) -> tuple[Subspace, ...] | None:
        """A chain ``B_0 … B_level = top`` satisfying the first ``level`` requirements."""
        if level == 0:
            return (top,) if top.is_zero() else None
        key = (level, top)
        if key not in self._memo:
            self._memo[key] = None
            requirement = self.spec.levels[level - 1]
            for below in self.ranked:
                if below <= top and requirement.holds(self.factor(below), top):
                    rest = self.reach(level - 1, below)
                    if rest is not None:
                        self._memo[key] = rest + (top,)
                        break
        return self._memo[key]


def _direct(search: _ChainSearch, invariant: Sequence[Subspace]) -> tuple[Subspace, ...] | None:
    candidates = SortedKeyList(invariant, key=lambda v: (v.codim, v.key))
    for top in candidates:
        chain = search.reach(search.spec.length, top)
        if chain is not None:
            return chain
    return None


def _by_predicate(pred: Predicate, invariant: Sequence[Subspace]) -> Subspace | None:
    qualifying = [v for v in invariant if pred.diagonal(v)]
    return min(qualifying, key=lambda v: (v.codim, v.key), default=None)


def find_characteristic_series(
    algebra: StructureAlgebra,
    n: Subspace,
    chain: Sequence[Subspace],
    spec: SeriesSpec,
    phis: MorphismSet,
    limits: Limits = Limits(),
    route: Route | str = Route.DIRECT,
) -> SeriesCertificate:
    """An invariant ideal ``M`` of least codimension with a series of shape ``spec``.

    The pool is the sublattice generated by the images of every ``A_i``;
    every term of the returned chain is invariant, not only ``M``.

    Raises:
        HypothesisFailed: When the input series does not check.
        ClosureIncomplete: When the pool hits the closure cap.
        TheoremViolation: When a complete pool yields no chain, or holds a non-ideal.
        RouteDisagreement: When both routes run and disagree on the codimension.
    """
    route = Route(route)
    chain = _chain(chain, spec)
    report = check_series(algebra, n, chain, spec)
    if not report:
        raise HypothesisFailed(str(report), report.level)

    seed = tuple(dict.fromkeys(itertools.chain.from_iterable(orbit(a, phis) for a in chain)))
    closure = sublattice_closure(seed, limits.closure_cap)
    if not closure.complete:
        raise ClosureIncomplete("ideal pool", closure.cap, len(closure))
    for element in closure:
        if not is_ideal(algebra, element):
            raise TheoremViolation(f"pool element {element} is not an ideal")
    invariant = invariant_elements(closure, phis)
    logger.debug("Ideal pool of %d elements, %d invariant", len(closure), len(invariant))

    search = _ChainSearch(algebra, spec, invariant)
    pred = build_series_predicate(algebra, spec, list(closure))
    codims: dict[str, int] = {}
    found: tuple[Subspace, ...] | None = None

    if route in (Route.DIRECT, Route.BOTH):
        found = _direct(search, invariant)
        if found is not None:
            codims[str(Route.DIRECT)] = found[-1].codim
    if route in (Route.PREDICATE, Route.BOTH):
        top = _by_predicate(pred, invariant)
        if top is not None:
            codims[str(Route.PREDICATE)] = top.codim
            if found is None:
                found = search.reach(spec.length, top)
                if found is None:
                    raise TheoremViolation(f"U accepts {top} but no invariant chain ends there")

    if route is Route.BOTH and len(set(codims.values())) > 1:
        raise RouteDisagreement(f"routes disagree on codim M: {codims}", dict(codims))
    if found is None or (route is Route.BOTH and len(codims) < 2):
        raise TheoremViolation(
            "no invariant series found in a complete pool",
            {"pool_size": len(closure), "routes": dict(codims)},
        )

    final = check_series(algebra, found[-1], found, spec)
    if not final:
        raise TheoremViolation(f"the constructed series fails: {final}")
    m = found[-1]
    logger.info("M = %s with codim %d", m, m.codim)
    return SeriesCertificate(
        spec=spec,
        n=n,
        input_chain=chain,
        witness=SeriesWitness(found, final.evidence),
        route=route,
        route_codims=codims,
        seed=seed,
        closure=closure,
        invariant_count=len(invariant),
        derivations=tuple(derivation(closure, b) for b in found),
        invariance=tuple(
            (g.matrix, tuple(apply(g, b) for b in found)) for g in phis.generators
        ),
        predicate_arity=pred.arity,
    )


# * Class laws


def enumerate_ideals(
    algebra: StructureAlgebra, cap: int = SUBSPACE_ENUMERATION_CAP
) -> list[Subspace]:
    """Every two-sided ideal, for desk-scale algebras."""
    return [v for v in enumerate_subspaces(algebra.field, algebra.dim, cap) if is_ideal(algebra, v)]


def class_laws(
    cls: str | AlgebraClass,
    corpus: Sequence[StructureAlgebra],
    *,
    bound: int = EXHAUSTIVE_BOUND,
    trials: int = RANDOM_TRIALS,
    seed: int = 0,
) -> list[LawReport]:
    """Checks the radical and coradical laws of ``cls`` on every algebra of ``corpus``.

    * an ideal ``J`` of ``A`` inside a member ideal ``I`` is a member;
    * a sum of two member ideals is a member;
    * ``I/J`` is a member for those same pairs;
    * ``A/I₁`` and ``A/I₂`` members imply ``A/(I₁ ∩ I₂)`` is one.

    Witnesses are ``(corpus index, ideal bases…)``.
    """
    if isinstance(cls, str):
        cls = get_class(cls)
    subject = str(cls)
    counts = dict.fromkeys((Law.IDEAL_CLOSED, Law.IDEAL_SUM, Law.QUOTIENT_CLOSED, Law.SUBDIRECT), 0)
    witnesses: dict[Law, Any] = {}
    exhaustive = True

    def record(law: Law, ok: bool, witness: Any) -> None:
        counts[law] += 1
        if not ok and law not in witnesses:
            witnesses[law] = witness

    for idx, algebra in enumerate(corpus):
        ideals = enumerate_ideals(algebra)
        factors = {i: quotient(algebra, i) for i in ideals}

        @functools.lru_cache(maxsize=None)
        def member(ideal: Subspace) -> bool:
            return cls.contains(algebra, ideal)  # type: ignore[union-attr]

        @functools.lru_cache(maxsize=None)
        def quotient_member(ideal: Subspace) -> bool:
            factor = factors[ideal].quotient
            return cls.contains(factor, factor.full())  # type: ignore[union-attr]

        def factor_member(top: Subspace, ideal: Subspace) -> bool:
            presentation = factors[ideal]
            image = presentation.project_subspace(top)
            return cls.contains(presentation.quotient, image)  # type: ignore[union-attr]

        # I ranges over member ideals, J over the ideals of A inside I
        for top in filter(member, ideals):
            for ideal in ideals:
                if not ideal <= top:
                    continue
                witness = (idx, top.basis, ideal.basis)
                record(Law.IDEAL_CLOSED, member(ideal), witness)
                record(Law.QUOTIENT_CLOSED, factor_member(top, ideal), witness)

        pairs, complete = law_cases(ideals, 2, bound=bound, trials=trials, seed=seed)
        exhaustive = exhaustive and complete
        for first, second in pairs:
            if member(first) and member(second):
                total = first + second
                record(Law.IDEAL_SUM, member(total), (idx, first.basis, second.basis))
            if quotient_member(first) and quotient_member(second):
                meet = first & second
                record(Law.SUBDIRECT, quotient_member(meet), (idx, first.basis, second.basis))

    return [
        LawReport(law, subject, checked, exhaustive, witnesses.get(law))
        for law, checked in counts.items()
    ]

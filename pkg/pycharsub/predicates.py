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

"""Contains the predicate framework: lattice predicates, their combinators and law checkers.

A :class:`Predicate` takes a tuple of subspaces; a :class:`TwoLinePredicate`
takes a tuple (its *first line*) and one more subspace (its *second line*).
Existential quantifiers always range over an explicit, finite ``pool``.

    >>> Q = zero_predicate()                    # "M = 0"
    >>> U1 = extend_D(Nilpotent(), Q, pool, algebra)
    >>> U1(ideal)                               # ideal is nilpotent
    True
"""

from __future__ import annotations

import abc
import functools
import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, ClassVar, Iterable, Sequence

from typing_extensions import Final, final

from pycharsub.algebra import (
    StructureAlgebra,
    is_ideal,
    nilpotency_index,
    quotient,
)
from pycharsub.exactla import Subspace
from pycharsub.exceptions import DimensionMismatch, NotAnIdeal
from pycharsub.laws import EXHAUSTIVE_BOUND, RANDOM_TRIALS, Law, LawReport, law_cases
from pycharsub.morphisms import Morphism, MorphismSet, apply
from pycharsub.words import MultilinearElement, eval_span, nonvanishing_witness

__all__ = [
    "EXHAUSTIVE_BOUND",
    "RANDOM_TRIALS",
    "LINE_LAWS",
    "Predicate",
    "TwoLinePredicate",
    "AlgebraClass",
    "Nilpotent",
    "Abelian",
    "SatisfiesIdentity",
    "CLASSES",
    "register_class",
    "get_class",
    "pred_A",
    "pred_B",
    "compose",
    "extend_C",
    "extend_D",
    "zero_predicate",
    "constant_true",
    "first_line",
    "second_line",
    "check_law",
    "check_two_line_laws",
]

logger = logging.getLogger(__name__)

Args = Sequence[Subspace]

LINE_LAWS: Final = (Law.MONOTONE, Law.MULTILINEAR, Law.COMONOTONE, Law.COLINEAR)
"""First-line laws, then second-line laws, as checked by :func:`check_two_line_laws`."""


@dataclass(frozen=True, eq=False)
class Predicate:
    """A deterministic ``arity``-place predicate on subspaces of one ambient."""

    arity: int
    evaluator: Callable[[tuple[Subspace, ...]], bool]
    name: str = "P"
    declared_laws: frozenset[Law] = field(default_factory=frozenset)

    def __call__(self, *args: Subspace) -> bool:
        if len(args) != self.arity:
            raise DimensionMismatch(f"arity of {self.name}", self.arity, len(args))
        return bool(self.evaluator(tuple(args)))

    def diagonal(self, space: Subspace) -> bool:
        """``P(N, …, N)``."""
        return self(*(space,) * self.arity)

    def __str__(self) -> str:
        return f"{self.name}/{self.arity}"


@dataclass(frozen=True, eq=False)
class TwoLinePredicate:
    """``R(X_1, …, X_l | Y)``; the top line has ``top_arity`` places, the bottom one."""

    top_arity: int
    evaluator: Callable[[tuple[Subspace, ...], Subspace], bool]
    name: str = "R"
    declared_laws: frozenset[Law] = frozenset(LINE_LAWS)

    def __call__(self, top: Args, bottom: Subspace) -> bool:
        if len(top) != self.top_arity:
            raise DimensionMismatch(f"top arity of {self.name}", self.top_arity, len(top))
        return bool(self.evaluator(tuple(top), bottom))

    def __str__(self) -> str:
        return f"{self.name}/{self.top_arity}"


# * Algebra classes


class AlgebraClass(abc.ABC):
    """An abstract class of algebras, tested on a subalgebra of a given algebra.

    :meth:`contains` receives the algebra ``A`` and a subalgebra ``V ≤ A``
    and decides whether ``V``, with the product of ``A``, is a member.
    """

    tag: ClassVar[str] = ""

    @abc.abstractmethod
    def contains(self, algebra: StructureAlgebra, space: Subspace) -> bool:
        ...

    def evidence(self, algebra: StructureAlgebra, space: Subspace) -> dict[str, object]:
        """Replayable facts behind :meth:`contains`; goes into certificates."""
        return {"member": self.contains(algebra, space)}

    @final
    def __contains__(self, algebra: object) -> bool:
        if not isinstance(algebra, StructureAlgebra):
            return False
        return self.contains(algebra, algebra.full())

    def __str__(self) -> str:
        return self.tag or type(self).__name__


CLASSES: dict[str, type[AlgebraClass]] = {}
"""Radical and coradical classes available to series specifications, by tag."""


def register_class(cls: type[AlgebraClass]) -> type[AlgebraClass]:
    if not cls.tag:
        raise ValueError(f"{cls.__name__} needs a tag to be registered")
    CLASSES[cls.tag] = cls
    return cls


def get_class(tag: str) -> AlgebraClass:
    try:
        return CLASSES[tag.lower()]()
    except KeyError:
        raise KeyError(f"Unknown class {tag!r}; expected one of {sorted(CLASSES)}") from None


@register_class
class Nilpotent(AlgebraClass):
    tag = "nilpotent"

    def contains(self, algebra: StructureAlgebra, space: Subspace) -> bool:
        return nilpotency_index(algebra, space) is not None

    def evidence(self, algebra: StructureAlgebra, space: Subspace) -> dict[str, object]:
        index = nilpotency_index(algebra, space)
        return {"member": index is not None, "nilpotency_index": index}


@register_class
class Abelian(AlgebraClass):
    """Commutative: ``x₁x₂ - x₂x₁ = 0``."""

    tag = "abelian"

    @staticmethod
    def _witness(algebra: StructureAlgebra, space: Subspace) -> tuple[int, int] | None:
        if space.is_zero():
            return None
        mat = space.matrix
        n = len(mat)
        forward = algebra.products(mat, mat).reshape(n, n, -1)
        for i, j in itertools.combinations(range(n), 2):
            if (forward[i, j] != forward[j, i]).any():
                return i, j
        return None

    def contains(self, algebra: StructureAlgebra, space: Subspace) -> bool:
        return self._witness(algebra, space) is None

    def evidence(self, algebra: StructureAlgebra, space: Subspace) -> dict[str, object]:
        pair = self._witness(algebra, space)
        if pair is None:
            return {"member": True}
        return {"member": False, "noncommuting": [list(space.basis[k]) for k in pair]}


class SatisfiesIdentity(AlgebraClass):
    """The variety ``w = 0``; radical and coradical for every multilinear ``w``."""

    tag = ""

    def __init__(self, word: MultilinearElement) -> None:
        self.word = word

    def contains(self, algebra: StructureAlgebra, space: Subspace) -> bool:
        return eval_span(self.word, algebra, (space,) * self.word.degree).is_zero()

    def evidence(self, algebra: StructureAlgebra, space: Subspace) -> dict[str, object]:
        witness = nonvanishing_witness(self.word, algebra, (space,) * self.word.degree)
        if witness is None:
            return {"member": True}
        return {"member": False, "witness": [list(v) for v in witness]}

    def __str__(self) -> str:
        return f"identity {self.word.to_sexpr()}"


# * Concrete predicates


def _check_ideals(algebra: StructureAlgebra, spaces: Iterable[Subspace], context: str) -> None:
    for space in spaces:
        if not is_ideal(algebra, space):
            raise NotAnIdeal(space.basis, context)


def pred_A(word: MultilinearElement, algebra: StructureAlgebra) -> TwoLinePredicate:
    """``w(X_1, …, X_t) ⊆ Y``: on the diagonal, ``X/(X ∩ Y)`` satisfies ``w = 0``."""

    @functools.lru_cache(maxsize=None)
    def image(top: tuple[Subspace, ...]) -> Subspace:
        return eval_span(word, algebra, top)

    return TwoLinePredicate(
        word.degree, lambda top, bottom: image(top) <= bottom, f"A[{word.to_sexpr()}]"
    )


def pred_B(cls: AlgebraClass, algebra: StructureAlgebra) -> TwoLinePredicate:
    """``X/(X ∩ Y)`` belongs to ``cls``.

    Decided in ``A/Y``: the image of ``X`` there is isomorphic to
    ``X/(X ∩ Y)``.

    Raises:
        NotAnIdeal: At evaluation time, when ``X`` or ``Y`` is not an ideal.
    """

    @functools.lru_cache(maxsize=None)
    def member(top: Subspace, bottom: Subspace) -> bool:
        _check_ideals(algebra, (top, bottom), f"class test {cls}")
        factor = quotient(algebra, bottom)
        return cls.contains(factor.quotient, factor.project_subspace(top))

    return TwoLinePredicate(1, lambda top, bottom: member(top[0], bottom), f"B[{cls}]")


# * Combinators


def zero_predicate() -> Predicate:
    """``M = 0``: the series predicate of length zero."""
    return Predicate(
        1,
        lambda args: args[0].is_zero(),
        "zero",
        frozenset({Law.MONOTONE, Law.MULTILINEAR, Law.PHI_INVARIANT}),
    )


def constant_true(arity: int) -> Predicate:
    return Predicate(
        arity,
        lambda args: True,
        "true",
        frozenset({Law.MONOTONE, Law.MULTILINEAR, Law.COMONOTONE, Law.COLINEAR}),
    )


def compose(q: Predicate, rs: Sequence[TwoLinePredicate], pool: Sequence[Subspace]) -> Predicate:
    """``Q ∘ R``: arity ``k·l`` for ``k = Q.arity`` and common top arity ``l``.

    ``(Q ∘ R)(N_1, …, N_kl)`` holds when some ``M_1, …, M_k`` from ``pool``
    satisfy ``Q(M_1, …, M_k)`` and ``R_i(N_{(i-1)l+1}, …, N_{il} | M_i)``.

    Raises:
        DimensionMismatch: When ``len(rs) != Q.arity`` or top arities differ.
        ValueError: When ``pool`` is empty.
    """
    if len(rs) != q.arity:
        raise DimensionMismatch(f"relations composed with {q.name}", q.arity, len(rs))
    if not pool:
        raise ValueError("compose() needs a nonempty pool")
    width = rs[0].top_arity
    for r in rs:
        if r.top_arity != width:
            raise DimensionMismatch(f"top arity of {r.name}", width, r.top_arity)
    # least rank first
    ranked = sorted(dict.fromkeys(pool), key=lambda v: (v.rank, v.key))

    @functools.lru_cache(maxsize=None)
    def evaluate(args: tuple[Subspace, ...]) -> bool:
        choices = []
        for i, r in enumerate(rs):
            top = args[i * width : (i + 1) * width]
            admissible = [m for m in ranked if r(top, m)]
            if not admissible:
                return False
            choices.append(admissible)
        return any(q(*ms) for ms in itertools.product(*choices))

    return Predicate(
        q.arity * width,
        evaluate,
        f"{q.name}∘[{', '.join(r.name for r in rs)}]",
        frozenset({Law.MONOTONE, Law.MULTILINEAR}),
    )


def extend_C(
    word: MultilinearElement, q: Predicate, pool: Sequence[Subspace], algebra: StructureAlgebra
) -> Predicate:
    """Exists an ideal ``M ⊆ N`` with ``Q(M, …, M)`` and ``N/M`` satisfying ``w = 0``.

    Built as ``Q ∘ (A_w, …, A_w)``; arity ``Q.arity · deg w``.

    Raises:
        NotAnIdeal: When a pool element is not an ideal.
    """
    _check_ideals(algebra, pool, "extension pool")
    return compose(q, [pred_A(word, algebra)] * q.arity, pool)


def extend_D(
    cls: AlgebraClass, q: Predicate, pool: Sequence[Subspace], algebra: StructureAlgebra
) -> Predicate:
    """Exists an ideal ``M ⊆ N`` with ``Q(M, …, M)`` and ``N/M`` in ``cls``.

    Same arity as ``Q``.

    Raises:
        NotAnIdeal: When a pool element is not an ideal.
    """
    _check_ideals(algebra, pool, "extension pool")
    return compose(q, [pred_B(cls, algebra)] * q.arity, pool)


def first_line(r: TwoLinePredicate, bottom: Subspace) -> Predicate:
    """``R(· | bottom)`` as an ordinary predicate of the top line."""
    return Predicate(r.top_arity, lambda args: r(args, bottom), f"{r.name}(·|{bottom})")


def second_line(r: TwoLinePredicate, top: Args) -> Predicate:
    """``R(top | ·)`` as a one-place predicate."""
    top = tuple(top)
    return Predicate(1, lambda args: r(top, args[0]), f"{r.name}({len(top)} fixed|·)")


# * Law checking


def _substituted(args: Args, i: int, value: Subspace) -> tuple[Subspace, ...]:
    return tuple(args[:i]) + (value,) + tuple(args[i + 1 :])


def check_law(
    pred: Predicate,
    law: Law,
    pool: Sequence[Subspace],
    *,
    phis: MorphismSet | Sequence[Morphism] = (),
    bound: int = EXHAUSTIVE_BOUND,
    trials: int = RANDOM_TRIALS,
    seed: int = 0,
) -> LawReport:
    """Searches ``pool`` for a counterexample to ``law``.

    Arguments are drawn from ``pool``; every tuple is tried when the pool has
    at most ``bound`` elements, otherwise ``trials`` seeded samples.
    The witness is ``(args, i, value)`` for substitution laws and
    ``(args, i, first, second)`` for the two-value laws.

    A pool element that is not an ideal, fed to a predicate defined on
    ideals, ends the search: the witness is its basis and ``detail`` the
    :class:`NotAnIdeal` message.
    """
    law = Law(law)
    t = pred.arity
    cached = functools.lru_cache(maxsize=None)(lambda args: pred(*args))
    witness: object = None
    checked = 0
    pool = list(dict.fromkeys(pool))
    exhaustive = True
    detail = ""

    try:
        if law is Law.PHI_INVARIANT:
            cases, exhaustive = law_cases(pool, t, bound=bound, trials=trials, seed=seed)
            maps = list(phis)
            for args in cases:
                checked += 1
                if not cached(args):
                    continue
                for phi in maps:
                    image = tuple(apply(phi, a) for a in args)
                    if not cached(image):
                        witness = (args, phi.matrix)
                        break
                if witness is not None:
                    break

        elif law in (Law.MONOTONE, Law.COMONOTONE):
            cases, exhaustive = law_cases(pool, t + 1, bound=bound, trials=trials, seed=seed)
            for case in cases:
                checked += 1
                args, value = case[:t], case[t]
                if not cached(args):
                    continue
                for i in range(t):
                    related = value <= args[i] if law is Law.MONOTONE else value >= args[i]
                    if related and not cached(_substituted(args, i, value)):
                        witness = (args, i, value)
                        break
                if witness is not None:
                    break

        elif law in (Law.MULTILINEAR, Law.COLINEAR):
            cases, exhaustive = law_cases(pool, t + 2, bound=bound, trials=trials, seed=seed)
            for case in cases:
                checked += 1
                args, first, second = case[:t], case[t], case[t + 1]
                for i in range(t):
                    holds = cached(_substituted(args, i, first))
                    if not (holds and cached(_substituted(args, i, second))):
                        continue
                    joined = first + second if law is Law.MULTILINEAR else first & second
                    if not cached(_substituted(args, i, joined)):
                        witness = (args, i, first, second)
                        break
                if witness is not None:
                    break

        else:
            raise ValueError(f"{law} is not a predicate law")
    except NotAnIdeal as exc:
        witness, detail = exc.basis, str(exc)

    report = LawReport(law, pred.name, checked, exhaustive, witness, detail)
    logger.debug("%s", report)
    return report


def check_two_line_laws(
    r: TwoLinePredicate,
    pool: Sequence[Subspace],
    *,
    bound: int = EXHAUSTIVE_BOUND,
    trials: int = RANDOM_TRIALS,
    seed: int = 0,
) -> list[LawReport]:
    """Monotone and multilinear on the first line, comonotone and colinear on the second.

    Each line law is checked for every fixed value of the other line (all of
    them, or seeded samples above ``bound``) and the first failure is kept.
    """
    pool = list(dict.fromkeys(pool))
    options = dict(bound=bound, trials=trials, seed=seed)
    reports = []
    for law in LINE_LAWS:
        top_line = law in (Law.MONOTONE, Law.MULTILINEAR)
        if top_line:
            fixed, exhaustive = law_cases(pool, 1, **options)
            lines = [first_line(r, bottom) for (bottom,) in fixed]
        else:
            fixed, exhaustive = law_cases(pool, r.top_arity, **options)
            lines = [second_line(r, top) for top in fixed]
        checked = 0
        failure = None
        for line in lines:
            report = check_law(line, law, pool, **options)
            checked += report.checked
            exhaustive = exhaustive and report.exhaustive
            if not report.ok:
                failure = report
                break
        detail = "" if failure is None else f"{failure.detail} with {failure.subject} fixed"
        reports.append(
            LawReport(
                law,
                r.name,
                checked,
                exhaustive,
                None if failure is None else failure.witness,
                detail.lstrip(),
            )
        )
    return reports

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

"""Contains the finite sublattice machinery behind both engines.

A :class:`SublatticeClosure` is the least family of subspaces containing a
seed and closed under sums and intersections. Every element remembers how it
was produced, so membership can later be proven by a short
:func:`derivation` instead of a fresh closure computation.
"""

from __future__ import annotations

import abc
import functools
import logging
from typing import ClassVar, Iterator, NamedTuple, Sequence

from sortedcontainers import SortedKeyList
from typing_extensions import Final, Literal

from pycharsub._models import ModelReprMixin, supports_slice
from pycharsub.exactla import Subspace, sum_and_intersection
from pycharsub.exceptions import BoundOverflow, ClosureIncomplete, DimensionMismatch
from pycharsub.laws import EXHAUSTIVE_BOUND, RANDOM_TRIALS, Law, LawReport, law_cases
from pycharsub.morphisms import Morphism, MorphismSet, apply

__all__ = [
    "CLOSURE_CAP",
    "F_ITERATE_LIMIT",
    "Step",
    "SublatticeClosure",
    "CodimFunction",
    "OrdinaryCodim",
    "sublattice_closure",
    "invariant_elements",
    "is_invariant",
    "phi_sum",
    "phi_core",
    "f_iterate",
    "f_trace",
    "greedy_sup_selection",
    "longest_chain",
    "derivation",
    "replay",
    "check_codim_laws",
]

CLOSURE_CAP: Final = 50_000
F_ITERATE_LIMIT: Final = 2**63 - 1

logger = logging.getLogger(__name__)


class Step(NamedTuple):
    """One instruction of a straight-line program over subspaces.

    ``seed`` reads ``args[0]`` from the seed list; ``sum`` and ``meet`` combine
    the values of two earlier instructions.
    """

    op: Literal["seed", "sum", "meet"]
    args: tuple[int, ...]


class SublatticeClosure(ModelReprMixin):
    """Elements in insertion order; ``provenance[i]`` tells how element ``i`` arose."""

    def __init__(
        self,
        seed: Sequence[Subspace],
        elements: Sequence[Subspace],
        provenance: Sequence[Step],
        cap: int,
        complete: bool,
    ) -> None:
        self._seed = tuple(seed)
        self._elements = tuple(elements)
        self._provenance = tuple(provenance)
        self._index = {v: i for i, v in enumerate(self._elements)}
        self._cap = cap
        self._complete = complete

    @property
    def seed(self) -> tuple[Subspace, ...]:
        return self._seed

    @property
    def provenance(self) -> tuple[Step, ...]:
        return self._provenance

    @property
    def cap(self) -> int:
        return self._cap

    @property
    def complete(self) -> bool:
        """Whether every pairwise sum and intersection is known to be an element."""
        return self._complete

    @property
    def size(self) -> int:
        return len(self._elements)

    def index(self, space: Subspace) -> int:
        return self._index[space]

    def __contains__(self, space: object) -> bool:
        return space in self._index

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    @supports_slice  # type: ignore[arg-type]
    def __getitem__(self, i: int) -> Subspace:
        return self._elements[i]


def sublattice_closure(seed: Sequence[Subspace], cap: int = CLOSURE_CAP) -> SublatticeClosure:
    """Closes ``seed`` under sum and intersection.

    Every pair ``(j, i)`` with ``j <= i`` is combined exactly once, in
    insertion order, so the result is deterministic. Hitting ``cap`` stops
    the iteration and returns a partial closure with ``complete = False``.

    Raises:
        ValueError: When ``seed`` is empty.
        DimensionMismatch: When the seed subspaces live in different ambients.
    """
    if not seed:
        raise ValueError("sublattice_closure() needs a nonempty seed")
    first = seed[0]
    for space in seed:
        if space.ambient_dim != first.ambient_dim or space.field != first.field:
            raise DimensionMismatch("ambient dimension", first.ambient_dim, space.ambient_dim)

    unique = tuple(dict.fromkeys(seed))
    elements: list[Subspace] = []
    provenance: list[Step] = []
    index: dict[Subspace, int] = {}

    def add(space: Subspace, step: Step) -> bool:
        if space in index:
            return True
        if len(elements) >= cap:
            return False
        index[space] = len(elements)
        elements.append(space)
        provenance.append(step)
        return True

    complete = all(add(space, Step("seed", (k,))) for k, space in enumerate(unique))
    i = 0
    while complete and i < len(elements):
        for j in range(i + 1):
            total, meet = sum_and_intersection(elements[j], elements[i])
            if not (add(total, Step("sum", (j, i))) and add(meet, Step("meet", (j, i)))):
                complete = False
                break
        i += 1

    if complete:
        logger.debug("Closure of %d seeds has %d elements", len(unique), len(elements))
    else:
        logger.warning("Sublattice closure stopped at the cap of %d elements", cap)
    return SublatticeClosure(unique, elements, provenance, cap, complete)


def is_invariant(space: Subspace, phis: MorphismSet | Sequence[Morphism]) -> bool:
    """``φ(V) ≤ V`` for every ``φ``.

    For a :class:`MorphismSet` only the generators are tried: linear maps
    preserve containment, so invariance under generators propagates to every
    composite.
    """
    maps = phis.generators if isinstance(phis, MorphismSet) else phis
    return all(apply(phi, space) <= space for phi in maps)


def invariant_elements(
    closure: SublatticeClosure, phis: MorphismSet | Sequence[Morphism]
) -> tuple[Subspace, ...]:
    """Elements ``V`` with ``φ(V) ≤ V`` for all ``φ``, in closure order.

    Raises:
        ClosureIncomplete: When the closure stopped at its cap.
    """
    if not closure.complete:
        raise ClosureIncomplete("sublattice closure", closure.cap, len(closure))
    found = tuple(v for v in closure if is_invariant(v, phis))
    logger.debug("%d of %d closure elements are invariant", len(found), len(closure))
    return found


def phi_sum(space: Subspace, phis: MorphismSet | Sequence[Morphism]) -> Subspace:
    """``Σ φ(V)``: the least invariant subspace above every image of ``V``."""
    zero = Subspace.zero(space.field, space.ambient_dim)
    return functools.reduce(Subspace.__add__, (apply(phi, space) for phi in phis), zero)


def phi_core(space: Subspace, phis: MorphismSet | Sequence[Morphism]) -> Subspace:
    """``∩ φ(V)``."""
    images = [apply(phi, space) for phi in phis]
    if not images:
        return space
    return functools.reduce(Subspace.__and__, images)


def f_iterate(k: int, x: int, limit: int = F_ITERATE_LIMIT) -> int:
    """``f^k(x)`` for ``f(x) = x(x + 1)``.

    Raises:
        ValueError: On negative arguments.
        BoundOverflow: When a value exceeds ``limit``.
    """
    return f_trace(k, x, limit)[-1]


def f_trace(k: int, x: int, limit: int = F_ITERATE_LIMIT) -> list[int]:
    """``[f⁰(x), f¹(x), …, f^k(x)]``."""
    if k < 0 or x < 0:
        raise ValueError(f"f_iterate() needs k, x >= 0, got k={k}, x={x}")
    trace = [x]
    for _ in range(k):
        value = trace[-1] * (trace[-1] + 1)
        if value > limit:
            raise BoundOverflow(k, x, limit)
        trace.append(value)
    return trace


def _ranked(family: Sequence[Subspace]) -> SortedKeyList:
    return SortedKeyList(dict.fromkeys(family), key=lambda v: (v.codim, v.key))


def greedy_sup_selection(family: Sequence[Subspace]) -> list[Subspace]:
    """Few members of ``family`` whose sum is the sum of all of them.

    Starts from a member of least codimension and keeps adding the member that
    raises the rank most; each step gains at least one dimension, so at most
    ``max codim + 1`` members are chosen.
    """
    if not family:
        raise ValueError("greedy_sup_selection() needs a nonempty family")
    ranked = _ranked(family)
    total = functools.reduce(Subspace.__add__, ranked)
    chosen = [ranked[0]]
    current = ranked[0]
    while current != total:
        best = max(ranked, key=lambda v: (current + v).rank)
        chosen.append(best)
        current = current + best
    return chosen


def longest_chain(closure: SublatticeClosure | Sequence[Subspace]) -> list[Subspace]:
    """A longest strictly ascending chain; never longer than ``d + 1``."""
    ordered = sorted(closure, key=lambda v: (v.rank, v.key))
    best: list[list[Subspace]] = []
    for v in ordered:
        below = [chain for chain, u in zip(best, ordered) if u < v]
        best.append(max(below, key=len, default=[]) + [v])
    return max(best, key=len, default=[])


def derivation(closure: SublatticeClosure, space: Subspace) -> tuple[Step, ...]:
    """A straight-line program that rebuilds ``space`` from the seed.

    Arguments of ``sum`` / ``meet`` steps refer to earlier steps of the
    program; the last step evaluates to ``space``.

    Raises:
        KeyError: When ``space`` is not an element of ``closure``.
    """
    needed: set[int] = set()
    stack = [closure.index(space)]
    while stack:
        idx = stack.pop()
        if idx in needed:
            continue
        needed.add(idx)
        step = closure.provenance[idx]
        if step.op != "seed":
            stack.extend(step.args)

    renumber: dict[int, int] = {}
    program: list[Step] = []
    for idx in sorted(needed):
        step = closure.provenance[idx]
        args = step.args if step.op == "seed" else tuple(renumber[a] for a in step.args)
        renumber[idx] = len(program)
        program.append(Step(step.op, args))
    return tuple(program)


def replay(program: Sequence[Step], seed: Sequence[Subspace]) -> Subspace:
    """Evaluates a :func:`derivation` program."""
    values: list[Subspace] = []
    for step in program:
        if step.op == "seed":
            values.append(seed[step.args[0]])
        elif step.op == "sum":
            values.append(values[step.args[0]] + values[step.args[1]])
        elif step.op == "meet":
            values.append(values[step.args[0]] & values[step.args[1]])
        else:
            raise ValueError(f"Unknown derivation step {step.op!r}")
    if not values:
        raise ValueError("Empty derivation")
    return values[-1]


class CodimFunction(abc.ABC):
    """A real-valued function on the lattice, candidate generalized codimension."""

    name: ClassVar[str]

    @abc.abstractmethod
    def __call__(self, space: Subspace) -> float:
        ...


class OrdinaryCodim(CodimFunction):
    name = "codim"

    def __call__(self, space: Subspace) -> float:
        return space.codim


def check_codim_laws(
    codim: CodimFunction,
    closure: SublatticeClosure | Sequence[Subspace],
    phis: MorphismSet | Sequence[Morphism],
    *,
    bound: int = EXHAUSTIVE_BOUND,
    trials: int = RANDOM_TRIALS,
    seed: int = 0,
) -> list[LawReport]:
    """Checks the four generalized-codimension laws on the elements of ``closure``.

    The selection law is tried on the whole closure and on the orbit of each
    element.
    """
    pool = list(closure)
    reports: list[LawReport] = []

    generated, exhaustive = law_cases(pool, 2, bound=bound, trials=trials, seed=seed)
    cases = list(generated)
    witness = next(
        ((a, b) for a, b in cases if b <= a and codim(a) > codim(b)),
        None,
    )
    reports.append(LawReport(Law.ANTITONE, codim.name, len(cases), exhaustive, witness))

    maps = list(phis)
    witness = next(
        ((v, phi.matrix) for v in pool for phi in maps if codim(apply(phi, v)) > codim(v)),
        None,
    )
    reports.append(
        LawReport(Law.PHI_NONINCREASING, codim.name, len(pool) * len(maps), True, witness)
    )

    witness = next(
        ((a, b) for a, b in cases if codim(a & b) > codim(a) + codim(b)),
        None,
    )
    reports.append(LawReport(Law.MEET_SUBADDITIVE, codim.name, len(cases), exhaustive, witness))

    families = [pool] + [[apply(phi, v) for phi in maps] for v in pool]
    witness = None
    for family in families:
        if not family:
            continue
        chosen = greedy_sup_selection(family)
        total = functools.reduce(Subspace.__add__, family)
        top = functools.reduce(Subspace.__add__, chosen)
        if top != total or len(chosen) > max(codim(v) for v in family) + 1:
            witness = tuple(family)
            break
    reports.append(LawReport(Law.SUP_SELECTION, codim.name, len(families), True, witness))
    return reports

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

"""Contains :class:`Law` and :class:`LawReport`, shared by every law checker."""

from __future__ import annotations

import enum
import itertools
import warnings
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np
from typing_extensions import Final

from pycharsub.types import T

__all__ = ["EXHAUSTIVE_BOUND", "RANDOM_TRIALS", "Law", "LawReport", "law_cases"]

EXHAUSTIVE_BOUND: Final = 64
RANDOM_TRIALS: Final = 2_000


class Law(str, enum.Enum):
    """Named algebraic laws that predicates, codimensions and classes may satisfy."""

    # predicates
    MONOTONE = "monotone"
    MULTILINEAR = "multilinear"
    COMONOTONE = "comonotone"
    COLINEAR = "colinear"
    PHI_INVARIANT = "phi_invariant"

    # generalized codimension
    ANTITONE = "antitone"
    PHI_NONINCREASING = "phi_nonincreasing"
    MEET_SUBADDITIVE = "meet_subadditive"
    SUP_SELECTION = "sup_selection"

    # radical / coradical classes
    IDEAL_CLOSED = "ideal_closed"
    IDEAL_SUM = "ideal_sum"
    QUOTIENT_CLOSED = "quotient_closed"
    SUBDIRECT = "subdirect"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class LawReport:
    """Outcome of checking one law; ``witness`` replays the first counterexample."""

    law: Law
    subject: str
    checked: int
    exhaustive: bool = True
    witness: Any = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.witness is None

    @property
    def exercised(self) -> bool:
        """False when no case met the law's premise, so nothing was tested."""
        return self.checked > 0

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        mode = "exhaustive" if self.exhaustive else "sampled"
        head = f"{self.subject}: {self.law} ({self.checked} {mode} cases)"
        if not self.exercised:
            return f"{head} not exercised"
        if self.ok:
            return f"{head} pass"
        return f"{head} FAIL at {self.witness}" + (f" ({self.detail})" if self.detail else "")


def law_cases(
    pool: Sequence[T],
    arity: int,
    *,
    bound: int = EXHAUSTIVE_BOUND,
    trials: int = RANDOM_TRIALS,
    seed: int = 0,
) -> tuple[Iterable[tuple[T, ...]], bool]:
    """Tuples of ``arity`` pool elements to check a law on, and whether they are all of them.

    Every tuple is produced when the pool has at most ``bound`` elements;
    otherwise ``trials`` tuples are drawn with a seeded generator, so a
    reported counterexample is replayable.
    """
    if len(pool) <= bound:
        return itertools.product(pool, repeat=arity), True
    warnings.warn(
        f"{len(pool)} elements exceed the exhaustive bound {bound}; sampling {trials} cases",
        RuntimeWarning,
        stacklevel=3,
    )
    rng = np.random.default_rng(seed)
    picks = rng.integers(len(pool), size=(trials, arity))
    return [tuple(pool[int(i)] for i in row) for row in picks], False

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

"""Contains the exceptions used by and shared across pycharsub."""

from __future__ import annotations

from typing import Any, Sequence

__all__ = [
    "Error",
    "FieldError",
    "DimensionMismatch",
    "SchemaError",
    "WordSyntaxError",
    "NotMultilinear",
    "NotAnIdeal",
    "NotMultiplicative",
    "NotInvertible",
    "CapExceeded",
    "DegreeCapExceeded",
    "MorphismCapExceeded",
    "ClosureIncomplete",
    "HypothesisFailed",
    "TheoremViolation",
    "RouteDisagreement",
    "BoundOverflow",
]


class Error(Exception):
    """Base class for pycharsub exceptions.

    Some exceptions derive from standard Python exceptions to ease handling.
    The command line maps each subclass to an exit code.
    """


class FieldError(Error, ValueError):
    """The modulus is not a prime in the supported range."""

    def __init__(self, p: int, reason: str = "not a prime") -> None:
        super().__init__(f"Invalid field modulus {p!r}: {reason}")


class DimensionMismatch(Error, ValueError):
    """Vectors, rows, subspaces or argument tuples of incompatible sizes."""

    def __init__(self, what: str, expected: int, got: int) -> None:
        super().__init__(f"{what}: expected {expected}, got {got}")
        self.expected = expected
        self.got = got


class SchemaError(Error, ValueError):
    """A problem document failed to parse or validate.

    Args:
        location: A JSON path like ``$.subspaces.N[1]``.
        desc: What is wrong at that location.
    """

    def __init__(self, location: str, desc: str) -> None:
        super().__init__(f"{location}: {desc}")
        self.location = location


class WordSyntaxError(Error, ValueError):
    def __init__(self, text: str, offset: int, desc: str) -> None:
        super().__init__(f"Syntax error at offset {offset} in {text!r}: {desc}")
        self.offset = offset


class NotMultilinear(Error, ValueError):
    """An expanded monomial repeats a variable or misses one."""


class NotAnIdeal(Error, ValueError):
    def __init__(self, basis: Sequence[Sequence[int]], context: str = "") -> None:
        rows = [list(row) for row in basis]
        suffix = f" ({context})" if context else ""
        super().__init__(f"Subspace with basis {rows} is not an ideal{suffix}")
        self.basis = rows


class NotMultiplicative(Error, ValueError):
    """A matrix does not respect the product on the basis pair ``(i, j)``."""

    def __init__(self, i: int, j: int) -> None:
        super().__init__(f"Not multiplicative on basis pair (e{i + 1}, e{j + 1})")
        self.pair = (i, j)


class NotInvertible(Error, ValueError):
    def __init__(self, rank: int, dim: int) -> None:
        super().__init__(f"Matrix of rank {rank} is not invertible in dimension {dim}")


class CapExceeded(Error, RuntimeError):
    """A configurable resource cap was hit; no guarantee is claimed.

    Args:
        what: Name of the capped resource.
        cap: The configured limit.
        partial: How far the computation got before stopping.
    """

    def __init__(self, what: str, cap: int, partial: int) -> None:
        super().__init__(f"{what} exceeded cap {cap} (partial size {partial})")
        self.cap = cap
        self.partial = partial


class DegreeCapExceeded(CapExceeded):
    pass


class MorphismCapExceeded(CapExceeded):
    pass


class ClosureIncomplete(CapExceeded):
    pass


class HypothesisFailed(Error, ValueError):
    """The input does not satisfy an engine precondition.

    Args:
        desc: Which hypothesis failed.
        witness: A replayable witness (basis tuple, level index, ...).
    """

    def __init__(self, desc: str, witness: Any = None) -> None:
        message = desc if witness is None else f"{desc}; witness: {witness!r}"
        super().__init__(message)
        self.witness = witness


class TheoremViolation(Error, AssertionError):
    """An engine result contradicts a proven guarantee, i.e. an implementation defect."""

    def __init__(self, desc: str, dump: dict[str, Any] | None = None) -> None:
        super().__init__(desc)
        self.dump = dump or {}


class RouteDisagreement(TheoremViolation):
    pass


class BoundOverflow(Error, OverflowError):
    def __init__(self, k: int, x: int, limit: int) -> None:
        super().__init__(f"f^{k}({x}) exceeds the limit {limit}")

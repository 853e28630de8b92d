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

"""Contains exact linear algebra over GF(p) and the subspace lattice operations.

Every :class:`Subspace` stores its basis in reduced row echelon form, so two
subspaces are equal as sets exactly when their stored bases are identical.
Entries are kept in ``numpy.int64`` arrays; with ``p < 2**31`` every product
of two residues fits, and sums are reduced before they can overflow.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np
from typing_extensions import Final

from pycharsub.exceptions import CapExceeded, DimensionMismatch, FieldError
from pycharsub.types import IntArray, Row, Rows

__all__ = [
    "MAX_MODULUS",
    "FieldPrime",
    "Subspace",
    "is_prime",
    "rref",
    "span",
    "subspace_sum",
    "subspace_intersect",
    "sum_and_intersection",
    "contains",
    "subspace_leq",
    "codim",
    "matmul",
    "matrix_rank",
    "matrix_inverse",
    "enumerate_subspaces",
]

MAX_MODULUS: Final = 2**31
SUBSPACE_ENUMERATION_CAP: Final = 100_000

_MR_BASES: Final = (2, 3, 5, 7)  # deterministic below 3_215_031_751


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin test, exact for every ``n < MAX_MODULUS``."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldPrime:
    """The prime field GF(p).

    Raises:
        FieldError: When ``p`` is not a prime in ``[2, 2**31)``.
    """

    p: int

    def __post_init__(self) -> None:
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise FieldError(self.p, "not an integer")
        if not 2 <= self.p < MAX_MODULUS:
            raise FieldError(self.p, "outside [2, 2**31)")
        if not is_prime(self.p):
            raise FieldError(self.p)

    def __str__(self) -> str:
        return f"GF({self.p})"

    def inv(self, a: int) -> int:
        a %= self.p
        if not a:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        return pow(a, self.p - 2, self.p)

    def vector(self, coords: Iterable[int]) -> Row:
        return tuple(int(c) % self.p for c in coords)

    def array(self, rows: Sequence[Sequence[int]], width: int) -> IntArray:
        """Reduces ``rows`` mod p into an ``int64`` matrix with ``width`` columns.

        Raises:
            DimensionMismatch: When a row has a different length.
        """
        reduced = []
        for row in rows:
            if len(row) != width:
                raise DimensionMismatch("row length", width, len(row))
            reduced.append([int(c) % self.p for c in row])
        if not reduced:
            return np.zeros((0, width), dtype=np.int64)
        return np.array(reduced, dtype=np.int64)

    @functools.cached_property
    def primitive_root(self) -> int:
        """Least generator of the multiplicative group."""
        if self.p == 2:
            return 1
        order = self.p - 1
        factors = {q for q in range(2, order + 1) if order % q == 0 and is_prime(q)}
        for g in range(2, self.p):
            if all(pow(g, order // q, self.p) != 1 for q in factors):
                return g
        raise AssertionError("unreachable: every prime field has a primitive root")


def matmul(a: IntArray, b: IntArray, p: int) -> IntArray:
    """Matrix product mod p without int64 overflow."""
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if (p - 1) ** 2 * inner < 2**63:
        return (a @ b) % p

    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(inner):
        out = (out + np.outer(a[:, k], b[k, :]) % p) % p
    return out


def _eliminate(mat: IntArray, p: int) -> tuple[IntArray, list[int]]:
    """Gauss-Jordan elimination; returns the nonzero RREF rows and pivot columns."""
    mat = mat.copy()
    nrows, ncols = mat.shape
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nonzero = np.flatnonzero(mat[r:, col])
        if not nonzero.size:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            mat[[r, pivot]] = mat[[pivot, r]]
        mat[r] = mat[r] * pow(int(mat[r, col]), p - 2, p) % p
        factors = mat[:, col].copy()
        factors[r] = 0
        if factors.any():
            mat = (mat - np.outer(factors, mat[r]) % p) % p
        pivots.append(col)
        r += 1
    return mat[:r], pivots


def _rows(mat: IntArray) -> Rows:
    return tuple(tuple(row) for row in mat.tolist())


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(p)^d stored by its canonical (RREF) basis.

    Build instances with :func:`rref` / :func:`span`, or the :meth:`zero` and
    :meth:`full` shortcuts; the constructor only accepts canonical bases.

    Operators: ``A + B`` is the sum, ``A & B`` the intersection, ``A <= B``
    containment and ``v in A`` membership of a vector.
    """

    field: FieldPrime
    ambient_dim: int
    basis: Rows

    def __post_init__(self) -> None:
        last = -1
        for idx, row in enumerate(self.basis):
            if len(row) != self.ambient_dim:
                raise DimensionMismatch("basis row length", self.ambient_dim, len(row))
            col = next((c for c, x in enumerate(row) if x), None)
            if col is None or col <= last or row[col] != 1:
                raise ValueError(f"Basis row {idx} breaks reduced row echelon form")
            if any(other[col] for k, other in enumerate(self.basis) if k != idx):
                raise ValueError(f"Pivot column {col} is not cleared in other rows")
            last = col

    @classmethod
    def zero(cls, field: FieldPrime, dim: int) -> Subspace:
        return cls(field, dim, ())

    @classmethod
    def full(cls, field: FieldPrime, dim: int) -> Subspace:
        return cls(field, dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.rank

    @functools.cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(c for c, x in enumerate(row) if x) for row in self.basis)

    @functools.cached_property
    def matrix(self) -> IntArray:
        """Basis rows as a read-only ``int64`` array of shape ``(rank, d)``."""
        mat = np.array(self.basis, dtype=np.int64).reshape(self.rank, self.ambient_dim)
        mat.setflags(write=False)
        return mat

    @property
    def key(self) -> Rows:
        """Lexicographic tie-break key among equal codimensions."""
        return self.basis

    def is_zero(self) -> bool:
        return not self.basis

    def reduce(self, vector: Sequence[int]) -> IntArray:
        """Remainder of ``vector`` after elimination against the basis.

        The remainder vanishes on every pivot column and is zero exactly when
        ``vector`` lies in the subspace.
        """
        if len(vector) != self.ambient_dim:
            raise DimensionMismatch("vector length", self.ambient_dim, len(vector))
        p = self.field.p
        vec = np.array([int(c) % p for c in vector], dtype=np.int64)
        for row, col in zip(self.matrix, self.pivots):
            if vec[col]:
                vec = (vec - vec[col] * row) % p
        return vec

    def vectors(self) -> Iterator[Row]:
        """Every vector of the subspace; ``p ** rank`` of them, for oracles only."""
        p = self.field.p
        for coeffs in itertools.product(range(p), repeat=self.rank):
            if not coeffs:
                yield (0,) * self.ambient_dim
                continue
            combo = np.array(coeffs, dtype=np.int64) @ self.matrix % p
            yield tuple(combo.tolist())

    def __str__(self) -> str:
        rows = ", ".join("(" + ",".join(map(str, row)) + ")" for row in self.basis)
        return f"span{{{rows}}}"

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def __and__(self, other: Subspace) -> Subspace:
        return subspace_intersect(self, other)

    def __le__(self, other: Subspace) -> bool:
        return subspace_leq(self, other)

    def __lt__(self, other: Subspace) -> bool:
        return self.rank < other.rank and subspace_leq(self, other)

    def __ge__(self, other: Subspace) -> bool:
        return subspace_leq(other, self)

    def __gt__(self, other: Subspace) -> bool:
        return other < self

    def __contains__(self, vector: Sequence[int]) -> bool:
        return contains(self, vector)


def rref(field: FieldPrime, rows: Sequence[Sequence[int]], dim: int) -> Subspace:
    """Canonical subspace spanned by ``rows``.

    Raises:
        DimensionMismatch: A row's length is not ``dim``.
    """
    mat = field.array(rows, dim)
    if not mat.shape[0]:
        return Subspace.zero(field, dim)
    reduced, _ = _eliminate(mat, field.p)
    return Subspace(field, dim, _rows(reduced))


span = rref


def _check_compatible(a: Subspace, b: Subspace) -> None:
    if a.field != b.field:
        raise DimensionMismatch(f"field of {b.field} vs", a.field.p, b.field.p)
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimension", a.ambient_dim, b.ambient_dim)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    if b.is_zero() or a == b:
        return a
    if a.is_zero():
        return b
    reduced, _ = _eliminate(np.vstack([a.matrix, b.matrix]), a.field.p)
    return Subspace(a.field, a.ambient_dim, _rows(reduced))


def sum_and_intersection(a: Subspace, b: Subspace) -> tuple[Subspace, Subspace]:
    """Zassenhaus block reduction: one elimination yields ``A + B`` and ``A ∩ B``.

    The block matrix ``[[A, A], [B, 0]]`` is reduced; rows with a pivot in the
    left half span the sum, the right halves of the remaining rows span the
    intersection.
    """
    _check_compatible(a, b)
    d, p = a.ambient_dim, a.field.p
    if a.is_zero() or b.is_zero():
        return (b if a.is_zero() else a), Subspace.zero(a.field, d)

    block = np.vstack(
        [
            np.hstack([a.matrix, a.matrix]),
            np.hstack([b.matrix, np.zeros_like(b.matrix)]),
        ]
    )
    reduced, pivots = _eliminate(block, p)
    split = sum(1 for col in pivots if col < d)
    total = Subspace(a.field, d, _rows(reduced[:split, :d]))
    meet = Subspace(a.field, d, _rows(reduced[split:, d:]))
    return total, meet


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    if a == b:
        return a
    if a.rank == a.ambient_dim:
        return b
    if b.rank == b.ambient_dim:
        return a
    return sum_and_intersection(a, b)[1]


def contains(a: Subspace, vector: Sequence[int]) -> bool:
    return not a.reduce(vector).any()


def subspace_leq(a: Subspace, b: Subspace) -> bool:
    _check_compatible(a, b)
    if a.rank > b.rank:
        return False
    if a.is_zero() or b.rank == b.ambient_dim:
        return True
    return all(contains(b, row) for row in a.basis)


def codim(a: Subspace) -> int:
    return a.codim


def matrix_rank(field: FieldPrime, rows: Sequence[Sequence[int]], width: int) -> int:
    return rref(field, rows, width).rank


def enumerate_subspaces(
    field: FieldPrime, dim: int, cap: int = SUBSPACE_ENUMERATION_CAP
) -> list[Subspace]:
    """Every subspace of GF(p)^dim exactly once, by rank, pivot set, free entries.

    Raises:
        CapExceeded: When there are more than ``cap`` subspaces.
    """
    p = field.p
    found: list[Subspace] = []
    for rank in range(dim + 1):
        for pivots in itertools.combinations(range(dim), rank):
            free = [
                (r, col)
                for r, pivot in enumerate(pivots)
                for col in range(pivot + 1, dim)
                if col not in pivots
            ]
            for values in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * dim for _ in pivots]
                for r, pivot in enumerate(pivots):
                    rows[r][pivot] = 1
                for (r, col), value in zip(free, values):
                    rows[r][col] = value
                found.append(Subspace(field, dim, tuple(tuple(row) for row in rows)))
                if len(found) > cap:
                    raise CapExceeded("subspace enumeration", cap, len(found))
    return found


def matrix_inverse(field: FieldPrime, rows: Sequence[Sequence[int]]) -> Rows | None:
    """Inverse of a square matrix mod p, or ``None`` when it is singular."""
    n = len(rows)
    mat = field.array(rows, n)
    reduced, pivots = _eliminate(np.hstack([mat, np.eye(n, dtype=np.int64)]), field.p)
    if pivots[:n] != list(range(n)):
        return None
    return _rows(reduced[:, n:])

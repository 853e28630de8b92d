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

"""Contains :class:`StructureAlgebra` and the ideal / quotient / nilpotency toolkit.

An algebra is fixed by its structure constants ``e_i · e_j = Σ_k c[i][j][k] e_k``;
no associativity is assumed unless the flavor says so.

    >>> from pycharsub.exactla import FieldPrime
    >>> dual = StructureAlgebra(FieldPrime(2), 2, ((0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)))
    >>> dual.multiply((0, 1), (0, 1))
    (0, 0)
"""

from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import construct_typed as ct
import numpy as np

from pycharsub.exactla import FieldPrime, Subspace, matmul, rref
from pycharsub.exceptions import DimensionMismatch, NotAnIdeal
from pycharsub.types import IntArray, ProductEntry, Row, as_row

__all__ = [
    "Flavor",
    "FlavorReport",
    "StructureAlgebra",
    "QuotientPresentation",
    "multiply",
    "validate_flavor",
    "is_ideal",
    "is_left_ideal",
    "is_subalgebra",
    "product_span",
    "subalgebra_closure",
    "nilpotency_index",
    "quotient",
]

logger = logging.getLogger(__name__)


class Flavor(ct.EnumBase):
    """Which laws the structure constants are claimed to satisfy."""

    GENERAL = 0
    ASSOCIATIVE = 1
    LIE = 2

    @classmethod
    def parse(cls, text: str) -> Flavor:
        try:
            return cls[text.strip().upper()]
        except KeyError:
            choices = ", ".join(member.name.lower() for member in cls)
            raise ValueError(f"Unknown flavor {text!r}; expected one of {choices}") from None

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class FlavorReport:
    """Outcome of :func:`validate_flavor`; falsy when a law fails."""

    flavor: Flavor
    law: str | None = None
    basis: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.law is None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"{self.flavor} laws hold"
        where = ", ".join(f"e{i + 1}" for i in self.basis)
        return f"{self.flavor}: {self.law} fails on ({where})"


@dataclass(frozen=True)
class StructureAlgebra:
    """A finite-dimensional algebra over GF(p) given by sparse structure constants.

    Entries are normalized on construction: duplicates are summed, coefficients
    reduced mod p, zeros dropped and the rest sorted, so equal tables compare
    (and hash) equal.

    Raises:
        DimensionMismatch: When an entry's index is outside ``[0, dim)``.
    """

    field: FieldPrime
    dim: int
    entries: tuple[ProductEntry, ...] = ()
    flavor: Flavor = Flavor.GENERAL

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise DimensionMismatch("algebra dimension", 0, self.dim)
        merged: dict[tuple[int, int, int], int] = {}
        for entry in self.entries:
            if len(entry) != 4:
                raise DimensionMismatch("product entry length", 4, len(entry))
            i, j, k, coeff = (int(x) for x in entry)
            for idx in (i, j, k):
                if not 0 <= idx < self.dim:
                    raise DimensionMismatch("basis index bound", self.dim, idx)
            merged[i, j, k] = (merged.get((i, j, k), 0) + coeff) % self.field.p
        normalized = tuple(
            ProductEntry(i, j, k, c) for (i, j, k), c in sorted(merged.items()) if c
        )
        object.__setattr__(self, "entries", normalized)
        object.__setattr__(self, "flavor", Flavor(self.flavor))

    @classmethod
    def zero_algebra(cls, field: FieldPrime, dim: int) -> StructureAlgebra:
        """The algebra with identically zero product; associative and Lie at once."""
        return cls(field, dim, (), Flavor.ASSOCIATIVE)

    @functools.cached_property
    def tensor(self) -> IntArray:
        """Dense ``c[i][j][k]`` as a read-only ``(d, d, d)`` array."""
        d = self.dim
        tensor = np.zeros((d, d, d), dtype=np.int64)
        for i, j, k, c in self.entries:
            tensor[i, j, k] = c
        tensor.setflags(write=False)
        return tensor

    @functools.cached_property
    def _flat(self) -> IntArray:
        return self.tensor.reshape(self.dim, self.dim * self.dim)

    def basis_product(self, i: int, j: int) -> Row:
        return as_row(self.tensor[i, j])

    def products(self, left: IntArray, right: IntArray) -> IntArray:
        """All products ``u·v`` for rows ``u`` of ``left`` and ``v`` of ``right``.

        Returns an array of shape ``(len(left) * len(right), d)``, ordered with
        the ``left`` index outermost.
        """
        d, p = self.dim, self.field.p
        if not len(left) or not len(right):
            return np.zeros((0, d), dtype=np.int64)
        partial = matmul(left, self._flat, p).reshape(len(left), d, d)
        return np.vstack([matmul(right, partial[a], p) for a in range(len(left))])

    def multiply(self, u: Sequence[int], v: Sequence[int]) -> Row:
        return multiply(self, u, v)

    def vector(self, coords: Iterable[int]) -> IntArray:
        vec = np.array([int(c) % self.field.p for c in coords], dtype=np.int64)
        if vec.shape != (self.dim,):
            raise DimensionMismatch("vector length", self.dim, vec.size)
        return vec

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def span(self, rows: Sequence[Sequence[int]]) -> Subspace:
        return rref(self.field, rows, self.dim)

    def __str__(self) -> str:
        return f"{self.flavor} algebra of dimension {self.dim} over {self.field}"


def multiply(algebra: StructureAlgebra, u: Sequence[int], v: Sequence[int]) -> Row:
    """Bilinear product of two coordinate vectors.

    Raises:
        DimensionMismatch: A vector does not have ``algebra.dim`` coordinates.
    """
    left = algebra.vector(u).reshape(1, -1)
    right = algebra.vector(v).reshape(1, -1)
    return as_row(algebra.products(left, right)[0])


def _check_ambient(algebra: StructureAlgebra, *spaces: Subspace) -> None:
    for space in spaces:
        if space.field != algebra.field:
            raise DimensionMismatch(f"field {space.field} vs", algebra.field.p, space.field.p)
        if space.ambient_dim != algebra.dim:
            raise DimensionMismatch("ambient dimension", algebra.dim, space.ambient_dim)


def validate_flavor(algebra: StructureAlgebra) -> FlavorReport:
    """Checks the flavor's laws on basis elements and reports the first failure.

    Lie algebras are checked for the alternating law ``e_i e_i = 0`` first
    (anticommutativity alone is too weak in characteristic 2), then
    anticommutativity, then the Jacobi identity.
    """
    flavor = algebra.flavor
    d, p = algebra.dim, algebra.field.p
    basis = np.eye(d, dtype=np.int64)

    def mul(u: IntArray, v: IntArray) -> IntArray:
        return algebra.products(u.reshape(1, -1), v.reshape(1, -1))[0]

    if flavor is Flavor.ASSOCIATIVE:
        for i, j, k in itertools.product(range(d), repeat=3):
            left = mul(algebra.tensor[i, j], basis[k])
            right = mul(basis[i], algebra.tensor[j, k])
            if not np.array_equal(left, right):
                return FlavorReport(flavor, "associativity", (i, j, k))

    elif flavor is Flavor.LIE:
        for i in range(d):
            if algebra.tensor[i, i].any():
                return FlavorReport(flavor, "alternating law", (i, i))
        for i, j in itertools.combinations(range(d), 2):
            if ((algebra.tensor[i, j] + algebra.tensor[j, i]) % p).any():
                return FlavorReport(flavor, "anticommutativity", (i, j))
        for i, j, k in itertools.product(range(d), repeat=3):
            jacobi = (
                mul(basis[i], algebra.tensor[j, k])
                + mul(basis[j], algebra.tensor[k, i])
                + mul(basis[k], algebra.tensor[i, j])
            ) % p
            if jacobi.any():
                return FlavorReport(flavor, "Jacobi identity", (i, j, k))

    return FlavorReport(flavor)


def product_span(algebra: StructureAlgebra, v: Subspace, w: Subspace) -> Subspace:
    """Span of all products of a basis vector of ``v`` with one of ``w``."""
    _check_ambient(algebra, v, w)
    if v.is_zero() or w.is_zero():
        return algebra.zero()
    return algebra.span(algebra.products(v.matrix, w.matrix).tolist())


def is_left_ideal(algebra: StructureAlgebra, v: Subspace) -> bool:
    """``G·V ⊆ V``."""
    return product_span(algebra, algebra.full(), v) <= v


def is_ideal(algebra: StructureAlgebra, v: Subspace) -> bool:
    """``G·V ⊆ V`` and ``V·G ⊆ V``, checked on basis pairs."""
    full = algebra.full()
    return product_span(algebra, full, v) <= v and product_span(algebra, v, full) <= v


def is_subalgebra(algebra: StructureAlgebra, v: Subspace) -> bool:
    return product_span(algebra, v, v) <= v


def subalgebra_closure(algebra: StructureAlgebra, v: Subspace) -> Subspace:
    """Least subalgebra containing ``v``."""
    current = v
    while True:
        grown = current + product_span(algebra, current, current)
        if grown == current:
            return current
        current = grown


def nilpotency_index(algebra: StructureAlgebra, v: Subspace) -> int | None:
    """Least ``m`` with ``P_m = 0`` for the split-sum power chain, or ``None``.

    ``P_1 = V`` and ``P_{m+1} = Σ_{i+j=m+1} P_i·P_j``. ``V`` is closed under
    products first. Nilpotency itself is decided on the chain
    ``W_0 = V``, ``W_{r+1} = V·W_r + W_r·V``: it is non-increasing and depends
    only on its last value, so a repeat proves that ``V`` is not nilpotent,
    while ``W_r = 0`` forces ``P_m = 0`` for ``m ≥ 2**r``.
    """
    v = subalgebra_closure(algebra, v)
    if v.is_zero():
        return 1

    w = v
    while not w.is_zero():
        nxt = product_span(algebra, v, w) + product_span(algebra, w, v)
        if nxt == w:
            logger.debug("Chain stalls at rank %d; not nilpotent", w.rank)
            return None
        w = nxt

    powers = [algebra.zero(), v]
    while not powers[-1].is_zero():
        m = len(powers)
        power = algebra.zero()
        for i in range(1, m):
            power = power + product_span(algebra, powers[i], powers[m - i])
        powers.append(power)
    return len(powers) - 1


@dataclass(frozen=True)
class QuotientPresentation:
    """``parent / ideal`` presented on the standard basis vectors off the pivots.

    The complement consists of the standard basis vectors ``e_c`` for the
    non-pivot columns ``c`` of the ideal's canonical basis, in index order.
    """

    parent: StructureAlgebra
    ideal: Subspace
    complement: tuple[int, ...]
    quotient: StructureAlgebra

    @property
    def complement_basis(self) -> tuple[Row, ...]:
        d = self.parent.dim
        return tuple(tuple(int(c == col) for c in range(d)) for col in self.complement)

    @functools.cached_property
    def projection(self) -> IntArray:
        """The ``(q, d)`` matrix of the projection; its kernel is the ideal."""
        d = self.parent.dim
        columns = [self.project(tuple(int(c == j) for c in range(d))) for j in range(d)]
        return np.array(columns, dtype=np.int64).reshape(d, len(self.complement)).T

    def project(self, vector: Sequence[int]) -> Row:
        remainder = self.ideal.reduce(vector)
        return tuple(int(remainder[c]) for c in self.complement)

    def project_subspace(self, v: Subspace) -> Subspace:
        _check_ambient(self.parent, v)
        return self.quotient.span([self.project(row) for row in v.basis])

    def lift(self, coords: Sequence[int]) -> Row:
        if len(coords) != len(self.complement):
            raise DimensionMismatch("quotient vector length", len(self.complement), len(coords))
        lifted = [0] * self.parent.dim
        for col, value in zip(self.complement, coords):
            lifted[col] = int(value) % self.parent.field.p
        return tuple(lifted)


def quotient(algebra: StructureAlgebra, ideal: Subspace) -> QuotientPresentation:
    """Factor algebra by a two-sided ideal.

    Raises:
        NotAnIdeal: When ``ideal`` is not a two-sided ideal.
    """
    _check_ambient(algebra, ideal)
    if not is_ideal(algebra, ideal):
        raise NotAnIdeal(ideal.basis, "quotient")

    pivots = set(ideal.pivots)
    complement = tuple(c for c in range(algebra.dim) if c not in pivots)
    entries: list[ProductEntry] = []
    for a, col_a in enumerate(complement):
        for b, col_b in enumerate(complement):
            remainder = ideal.reduce(algebra.tensor[col_a, col_b])
            for k, col_k in enumerate(complement):
                if remainder[col_k]:
                    entries.append(ProductEntry(a, b, k, int(remainder[col_k])))

    factor = StructureAlgebra(algebra.field, len(complement), tuple(entries), algebra.flavor)
    return QuotientPresentation(algebra, ideal, complement, factor)

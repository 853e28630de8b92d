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

"""Contains validated endomorphisms / automorphisms and their closures.

A morphism is stored row-major; column ``j`` of the matrix is the image of
the basis vector ``e_j``.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

import construct_typed as ct
import numpy as np
from typing_extensions import Final

from pycharsub._models import ModelReprMixin, supports_slice
from pycharsub.algebra import StructureAlgebra
from pycharsub.exactla import FieldPrime, Subspace, matmul, matrix_inverse, rref
from pycharsub.exceptions import (
    DimensionMismatch,
    MorphismCapExceeded,
    NotInvertible,
    NotMultiplicative,
)
from pycharsub.types import IntArray, Row, Rows, as_row

__all__ = [
    "MORPHISM_CAP",
    "MorphismKind",
    "Morphism",
    "MorphismSet",
    "validate_morphism",
    "identity",
    "compose",
    "inverse",
    "closure",
    "apply",
    "orbit",
    "general_linear_generators",
]

MORPHISM_CAP: Final = 10_000

logger = logging.getLogger(__name__)


class MorphismKind(ct.EnumBase):
    ENDOMORPHISM = 0
    AUTOMORPHISM = 1

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class Morphism:
    """A matrix known to respect the product (and to be invertible, for automorphisms).

    Obtain instances from :func:`validate_morphism`, :func:`identity` or by
    composing validated morphisms.
    """

    field: FieldPrime
    matrix: Rows
    kind: MorphismKind = MorphismKind.AUTOMORPHISM

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @functools.cached_property
    def array(self) -> IntArray:
        mat = np.array(self.matrix, dtype=np.int64).reshape(self.dim, self.dim)
        mat.setflags(write=False)
        return mat

    def image(self, vector: Sequence[int]) -> Row:
        if len(vector) != self.dim:
            raise DimensionMismatch("vector length", self.dim, len(vector))
        column = self.field.array([vector], self.dim).T
        return as_row(matmul(self.array, column, self.field.p)[:, 0])

    def is_identity(self) -> bool:
        return all(
            value == int(i == j) for i, row in enumerate(self.matrix) for j, value in enumerate(row)
        )

    def __call__(self, space: Subspace) -> Subspace:
        return apply(self, space)

    def __matmul__(self, other: Morphism) -> Morphism:
        return compose(self, other)


def identity(field: FieldPrime, dim: int) -> Morphism:
    rows = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))
    return Morphism(field, rows, MorphismKind.AUTOMORPHISM)


def validate_morphism(
    algebra: StructureAlgebra,
    matrix: Sequence[Sequence[int]],
    kind: MorphismKind = MorphismKind.AUTOMORPHISM,
) -> Morphism:
    """Checks that ``matrix`` defines a morphism of ``algebra``.

    Raises:
        DimensionMismatch: When the matrix is not ``d × d``.
        NotMultiplicative: With the first basis pair ``(i, j)`` (row-major order)
            on which ``M(e_i e_j) != M(e_i) M(e_j)``.
        NotInvertible: When ``kind`` is automorphism and the matrix is singular.
    """
    d, p = algebra.dim, algebra.field.p
    if len(matrix) != d:
        raise DimensionMismatch("matrix rows", d, len(matrix))
    mat = algebra.field.array(matrix, d)

    images = mat.T  # row i = image of e_i
    lhs = matmul(algebra.tensor.reshape(d * d, d), mat.T, p)
    rhs = algebra.products(images, images)
    for idx in np.flatnonzero((lhs != rhs).any(axis=1)):
        raise NotMultiplicative(*divmod(int(idx), d))

    kind = MorphismKind(kind)
    if kind is MorphismKind.AUTOMORPHISM:
        rank = rref(algebra.field, mat.tolist(), d).rank
        if rank != d:
            raise NotInvertible(rank, d)
    return Morphism(algebra.field, tuple(map(tuple, mat.tolist())), kind)


def compose(phi: Morphism, psi: Morphism) -> Morphism:
    """``phi ∘ psi``; an automorphism only when both are."""
    if phi.dim != psi.dim:
        raise DimensionMismatch("morphism dimension", phi.dim, psi.dim)
    product = matmul(phi.array, psi.array, phi.field.p)
    kind = (
        MorphismKind.AUTOMORPHISM
        if phi.kind is psi.kind is MorphismKind.AUTOMORPHISM
        else MorphismKind.ENDOMORPHISM
    )
    return Morphism(phi.field, tuple(map(tuple, product.tolist())), kind)


def inverse(phi: Morphism) -> Morphism:
    inv = matrix_inverse(phi.field, phi.matrix)
    if inv is None:
        raise NotInvertible(rref(phi.field, phi.matrix, phi.dim).rank, phi.dim)
    return Morphism(phi.field, inv, MorphismKind.AUTOMORPHISM)


class MorphismSet(ModelReprMixin):
    """A finite set of morphisms closed under composition, in discovery order."""

    def __init__(self, elements: Sequence[Morphism], generators: Sequence[Morphism]) -> None:
        self._elements = tuple(elements)
        self._generators = tuple(generators)
        self._index = {m.matrix: i for i, m in enumerate(self._elements)}

    @property
    def generators(self) -> tuple[Morphism, ...]:
        return self._generators

    @property
    def kind(self) -> MorphismKind:
        if all(m.kind is MorphismKind.AUTOMORPHISM for m in self._elements):
            return MorphismKind.AUTOMORPHISM
        return MorphismKind.ENDOMORPHISM

    @property
    def contains_identity(self) -> bool:
        return any(m.is_identity() for m in self._elements)

    @property
    def size(self) -> int:
        return len(self._elements)

    def is_group(self) -> bool:
        """Every element is invertible and its inverse belongs to the set."""
        if self.kind is not MorphismKind.AUTOMORPHISM:
            return False
        return all(inverse(m).matrix in self._index for m in self._elements)

    def index(self, morphism: Morphism) -> int:
        return self._index[morphism.matrix]

    def __contains__(self, morphism: object) -> bool:
        return isinstance(morphism, Morphism) and morphism.matrix in self._index

    def __iter__(self) -> Iterator[Morphism]:
        return iter(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    @supports_slice  # type: ignore[arg-type]
    def __getitem__(self, i: int) -> Morphism:
        return self._elements[i]


def closure(generators: Sequence[Morphism], cap: int = MORPHISM_CAP) -> MorphismSet:
    """Breadth-first composition closure of ``generators``.

    The identity is always included when every generator is an automorphism.

    Raises:
        ValueError: When no generator is given.
        MorphismCapExceeded: When more than ``cap`` elements appear.
    """
    if not generators:
        raise ValueError("closure() needs at least one generator")
    gens = list(generators)
    elements: list[Morphism] = []
    seen: set[Rows] = set()

    def add(m: Morphism) -> bool:
        if m.matrix in seen:
            return False
        if len(elements) >= cap:
            raise MorphismCapExceeded("morphism closure", cap, len(elements))
        seen.add(m.matrix)
        elements.append(m)
        return True

    if all(g.kind is MorphismKind.AUTOMORPHISM for g in gens):
        add(identity(gens[0].field, gens[0].dim))
    for g in gens:
        add(g)

    frontier = list(elements)
    while frontier:
        grown: list[Morphism] = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if add(y):
                    grown.append(y)
        frontier = grown

    logger.debug("Closure of %d generators has %d elements", len(gens), len(elements))
    return MorphismSet(elements, gens)


def apply(phi: Morphism, space: Subspace) -> Subspace:
    """Canonical span of the images of the basis rows of ``space``."""
    if space.ambient_dim != phi.dim:
        raise DimensionMismatch("ambient dimension", phi.dim, space.ambient_dim)
    if space.is_zero():
        return space
    images = matmul(space.matrix, phi.array.T, phi.field.p)
    return rref(space.field, images.tolist(), space.ambient_dim)


def orbit(space: Subspace, phis: MorphismSet | Sequence[Morphism]) -> tuple[Subspace, ...]:
    """Distinct images ``φ(V)`` in the order of first appearance."""
    return tuple(dict.fromkeys(apply(phi, space) for phi in phis))


def general_linear_generators(field: FieldPrime, dim: int) -> list[Rows]:
    """Generators of GL(dim, p): all elementary transvections ``I + E_ij`` and
    ``diag(ω, 1, …, 1)`` for the primitive root ``ω`` (omitted when ``p = 2``)."""
    eye = [[int(i == j) for j in range(dim)] for i in range(dim)]
    gens: list[Rows] = []
    for i in range(dim):
        for j in range(dim):
            if i != j:
                rows = [row[:] for row in eye]
                rows[i][j] = 1
                gens.append(tuple(map(tuple, rows)))
    if field.p > 2 and dim:
        rows = [row[:] for row in eye]
        rows[0][0] = field.primitive_root
        gens.append(tuple(map(tuple, rows)))
    if not gens:
        gens.append(tuple(map(tuple, eye)))
    return gens

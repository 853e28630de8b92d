from __future__ import annotations

from hypothesis import strategies as st

from pycharsub.exactla import FieldPrime, Subspace, rref

fields = st.sampled_from([FieldPrime(2), FieldPrime(3), FieldPrime(5), FieldPrime(7)])


@st.composite
def rows(draw, field: FieldPrime, dim: int, max_rows: int = 4) -> list[list[int]]:
    count = draw(st.integers(0, max_rows))
    coord = st.integers(0, field.p - 1)
    row = st.lists(coord, min_size=dim, max_size=dim)
    return draw(st.lists(row, min_size=count, max_size=count))


@st.composite
def subspaces(draw, field: FieldPrime, dim: int) -> Subspace:
    return rref(field, draw(rows(field, dim)), dim)


@st.composite
def subspace_pairs(draw, max_dim: int = 5) -> tuple[Subspace, Subspace]:
    field = draw(fields)
    dim = draw(st.integers(1, max_dim))
    return draw(subspaces(field, dim)), draw(subspaces(field, dim))


@st.composite
def square_matrices(draw, field: FieldPrime, dim: int) -> list[list[int]]:
    coord = st.integers(0, field.p - 1)
    return draw(st.lists(st.lists(coord, min_size=dim, max_size=dim), min_size=dim, max_size=dim))

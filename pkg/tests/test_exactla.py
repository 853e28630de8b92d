from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings

from pycharsub.exactla import (
    FieldPrime,
    Subspace,
    enumerate_subspaces,
    is_prime,
    matmul,
    matrix_inverse,
    rref,
    sum_and_intersection,
)
from pycharsub.exceptions import CapExceeded, DimensionMismatch, FieldError

from .strategies import subspace_pairs

GF2, GF3 = FieldPrime(2), FieldPrime(3)


def test_field_modulus():
    for bad in (0, 1, 4, 9, 2**31, 2**31 + 11):
        with pytest.raises(FieldError):
            FieldPrime(bad)

    with pytest.raises(FieldError, match="not an integer"):
        FieldPrime(True)

    assert is_prime(2**31 - 1)
    assert FieldPrime(5).primitive_root == 2
    assert FieldPrime(7).primitive_root == 3
    assert FieldPrime(7).inv(3) == 5
    with pytest.raises(ZeroDivisionError):
        FieldPrime(7).inv(0)


def test_rref_is_canonical():
    a = rref(GF3, [[2, 1, 0], [1, 2, 0]], 3)
    assert a.basis == ((1, 2, 0),)
    assert a == rref(GF3, [[1, 2, 0]], 3)
    assert rref(GF3, [[0, 0, 0]], 3).is_zero()
    assert rref(GF2, [[1, 1], [0, 1]], 2) == Subspace.full(GF2, 2)

    with pytest.raises(ValueError, match="echelon"):
        Subspace(GF2, 2, ((0, 1), (1, 0)))

    with pytest.raises(DimensionMismatch):
        rref(GF2, [[1, 0, 1]], 2)


def test_operators():
    a = rref(GF2, [[1, 0, 0]], 3)
    b = rref(GF2, [[0, 1, 0]], 3)
    assert (a + b).rank == 2
    assert (a & b).is_zero()
    assert a <= a + b and a < a + b and not a < a
    assert (1, 1, 0) in a + b
    assert (1, 1, 1) not in a + b
    assert a.codim == 2
    assert str(a) == "span{(1,0,0)}"

    with pytest.raises(DimensionMismatch):
        a + rref(GF2, [[1, 0]], 2)


@given(subspace_pairs())
@settings(max_examples=60, deadline=None)
def test_zassenhaus(pair: tuple[Subspace, Subspace]):
    a, b = pair
    total, meet = sum_and_intersection(a, b)
    assert total.rank + meet.rank == a.rank + b.rank
    assert meet <= a and meet <= b
    assert a <= total and b <= total
    assert total == a + b


def test_intersection_matches_vectors():
    a = rref(GF3, [[1, 1, 0], [0, 0, 1]], 3)
    b = rref(GF3, [[1, 2, 1], [0, 1, 1]], 3)
    expected = set(a.vectors()) & set(b.vectors())
    assert set((a & b).vectors()) == expected


@pytest.mark.parametrize("dim", [1, 2, 3, 4])
def test_lattice_operations_match_vector_sets(dim: int):
    rng = np.random.default_rng(dim)
    drawn = [
        rref(GF2, rng.integers(0, 2, size=(int(rng.integers(0, dim + 1)), dim)).tolist(), dim)
        for _ in range(250)
    ]
    pool = list(dict.fromkeys(drawn))
    sets = {v: frozenset(v.vectors()) for v in pool}
    for a in pool:
        for b in pool:
            total = {tuple((x + y) % 2 for x, y in zip(u, w)) for u in sets[a] for w in sets[b]}
            assert set((a + b).vectors()) == total
            assert set((a & b).vectors()) == sets[a] & sets[b]
            assert (a <= b) == (sets[a] <= sets[b])


def test_enumerate_subspaces():
    assert len(enumerate_subspaces(GF2, 3)) == 16
    assert len(enumerate_subspaces(GF3, 2)) == 6
    assert len(set(enumerate_subspaces(GF2, 4))) == 67

    with pytest.raises(CapExceeded, match="cap 10"):
        enumerate_subspaces(GF2, 4, cap=10)


def test_matrix_inverse():
    gf5 = FieldPrime(5)
    m = [[1, 2, 0], [0, 1, 3], [4, 0, 2]]
    inv = matrix_inverse(gf5, m)
    assert inv is not None
    product = matmul(np.array(m), np.array(inv), 5)
    assert np.array_equal(product, np.eye(3, dtype=np.int64))
    assert matrix_inverse(gf5, [[1, 2], [2, 4]]) is None


def test_matmul_large_modulus():
    p = 2**31 - 1
    a = np.array([[p - 1, p - 2], [p - 3, 1]], dtype=np.int64)
    b = np.array([[p - 1, 5], [7, p - 1]], dtype=np.int64)
    expected = [
        [sum(int(a[i, k]) * int(b[k, j]) for k in range(2)) % p for j in range(2)]
        for i in range(2)
    ]
    assert matmul(a, b, p).tolist() == expected

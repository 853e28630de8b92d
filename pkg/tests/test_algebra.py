from __future__ import annotations

import pytest

from pycharsub.algebra import (
    Flavor,
    StructureAlgebra,
    is_ideal,
    is_left_ideal,
    is_subalgebra,
    multiply,
    nilpotency_index,
    product_span,
    quotient,
    subalgebra_closure,
    validate_flavor,
)
from pycharsub.exceptions import DimensionMismatch, NotAnIdeal
from pycharsub.problem import Problem, load_problem

from .conftest import ASSETS, GF2, GF5, space


def test_entries_are_normalized():
    a = StructureAlgebra(GF5, 2, ((0, 0, 1, 2), (0, 0, 1, 3), (1, 1, 0, 1)))
    b = StructureAlgebra(GF5, 2, ((1, 1, 0, 6),))
    assert a == b
    assert a.entries == ((1, 1, 0, 1),)

    with pytest.raises(DimensionMismatch, match="basis index"):
        StructureAlgebra(GF2, 2, ((0, 2, 0, 1),))


def test_multiply(tri2: Problem):
    algebra = tri2.algebra
    assert multiply(algebra, (1, 0, 0), (0, 0, 1)) == (0, 0, 1)
    assert multiply(algebra, (0, 0, 1), (1, 0, 0)) == (0, 0, 0)
    assert algebra.multiply((1, 1, 1), (1, 1, 1)) == (1, 1, 0)
    assert algebra.products(algebra.full().matrix, algebra.full().matrix).shape == (9, 3)

    with pytest.raises(DimensionMismatch):
        multiply(algebra, (1, 0), (1, 0, 0))


def test_validate_flavor(tri2: Problem, heis: Problem):
    assert validate_flavor(tri2.algebra)
    assert validate_flavor(heis.algebra)
    assert validate_flavor(load_problem("sl2_gf5").algebra)

    broken = StructureAlgebra(GF2, 2, ((0, 0, 1, 1), (1, 0, 0, 1)), Flavor.ASSOCIATIVE)
    report = validate_flavor(broken)
    assert not report
    assert report.law == "associativity" and report.basis == (0, 0, 0)


def test_lie_alternating_law():
    problem = load_problem(ASSETS / "lie_not_alternating.json")
    report = validate_flavor(problem.algebra)
    assert report.law == "alternating law"
    assert any("alternating" in finding for finding in problem.findings())


def test_ideals(tri2: Problem):
    algebra = tri2.algebra
    e1, e3 = space(tri2, (1, 0, 0)), space(tri2, (0, 0, 1))
    assert is_ideal(algebra, e3)
    assert is_ideal(algebra, algebra.full()) and is_ideal(algebra, algebra.zero())
    assert not is_ideal(algebra, e1)
    assert not is_left_ideal(algebra, e1)
    assert is_subalgebra(algebra, e1)
    assert product_span(algebra, e1, e3) == e3
    assert subalgebra_closure(algebra, space(tri2, (1, 0, 0), (0, 0, 1))).rank == 2


def test_nilpotency_index(tri2: Problem, strict3: Problem):
    assert nilpotency_index(strict3.algebra, strict3.algebra.full()) == 3
    assert nilpotency_index(tri2.algebra, space(tri2, (0, 0, 1))) == 2
    assert nilpotency_index(tri2.algebra, tri2.algebra.zero()) == 1
    assert nilpotency_index(tri2.algebra, space(tri2, (1, 0, 0))) is None
    assert nilpotency_index(tri2.algebra, tri2.algebra.full()) is None


def test_quotient(tri2: Problem):
    algebra = tri2.algebra
    factor = quotient(algebra, space(tri2, (0, 0, 1)))
    assert factor.complement == (0, 1)
    assert factor.quotient.dim == 2
    assert factor.project((1, 1, 1)) == (1, 1)
    assert factor.lift((1, 0)) == (1, 0, 0)
    assert factor.projection.shape == (2, 3)
    assert factor.project_subspace(algebra.full()) == factor.quotient.full()
    assert multiply(factor.quotient, (1, 0), (0, 1)) == (0, 0)
    assert multiply(factor.quotient, (1, 0), (1, 0)) == (1, 0)

    with pytest.raises(NotAnIdeal, match="quotient"):
        quotient(algebra, space(tri2, (1, 0, 0)))

from __future__ import annotations

import pytest

from pycharsub.exceptions import DimensionMismatch, NotAnIdeal
from pycharsub.laws import Law
from pycharsub.predicates import (
    Abelian,
    AlgebraClass,
    Nilpotent,
    Predicate,
    SatisfiesIdentity,
    check_law,
    check_two_line_laws,
    compose,
    constant_true,
    extend_C,
    extend_D,
    first_line,
    get_class,
    pred_A,
    pred_B,
    register_class,
    second_line,
    zero_predicate,
)
from pycharsub.problem import Problem
from pycharsub.series import enumerate_ideals

from .conftest import space


@pytest.fixture(scope="module")
def ideals(tri2: Problem):
    return enumerate_ideals(tri2.algebra)


def test_ideals_of_tri2(tri2: Problem, ideals):
    assert len(ideals) == 5
    assert space(tri2, (0, 0, 1)) in ideals
    assert space(tri2, (1, 0, 0)) not in ideals


def test_pred_A(tri2: Problem, ideals):
    algebra = tri2.algebra
    full, e3 = algebra.full(), space(tri2, (0, 0, 1))
    comm = pred_A(tri2.word("comm"), algebra)
    assert comm.top_arity == 2
    assert comm((full, full), e3)
    assert not comm((full, full), algebra.zero())
    assert first_line(comm, e3)(full, full)
    assert second_line(comm, (full, full))(e3)
    assert not second_line(comm, (full, full))(algebra.zero())

    reports = check_two_line_laws(comm, ideals)
    assert [r.law for r in reports] == [
        Law.MONOTONE,
        Law.MULTILINEAR,
        Law.COMONOTONE,
        Law.COLINEAR,
    ]
    assert all(reports) and all(r.exhaustive for r in reports)

    with pytest.raises(DimensionMismatch, match="top arity"):
        comm((full,), e3)


def test_pred_B(tri2: Problem, ideals):
    algebra = tri2.algebra
    e3 = space(tri2, (0, 0, 1))
    nil = pred_B(Nilpotent(), algebra)
    assert nil((e3,), algebra.zero())
    assert not nil((algebra.full(),), e3)
    assert nil((algebra.full(),), algebra.full())
    assert all(check_two_line_laws(nil, ideals))

    with pytest.raises(NotAnIdeal):
        nil((space(tri2, (1, 0, 0)),), algebra.zero())


def test_non_ideals_fail_the_law_check(tri2: Problem, ideals):
    algebra = tri2.algebra
    mixed = [*ideals, space(tri2, (1, 0, 0))]
    nil = pred_B(Nilpotent(), algebra)

    report = check_law(first_line(nil, algebra.zero()), Law.MONOTONE, mixed)
    assert not report
    assert report.witness == [[1, 0, 0]]
    assert "not an ideal" in report.detail

    reports = check_two_line_laws(nil, mixed)
    assert not any(reports)
    assert all("not an ideal" in r.detail for r in reports)


def test_broken_predicate_is_caught(ideals):
    even = Predicate(1, lambda args: args[0].rank % 2 == 0, "even rank")
    report = check_law(even, Law.MONOTONE, ideals)
    assert not report
    args, i, value = report.witness
    assert args[0].rank % 2 == 0 and value <= args[0] and value.rank % 2 == 1
    assert "FAIL" in str(report)

    assert check_law(constant_true(2), Law.MULTILINEAR, ideals)
    with pytest.raises(ValueError, match="not a predicate law"):
        check_law(even, Law.ANTITONE, ideals)


def test_extensions(tri2: Problem, ideals, tri2_phis):
    algebra = tri2.algebra
    full, e3 = algebra.full(), space(tri2, (0, 0, 1))
    commutative = extend_C(tri2.word("comm"), zero_predicate(), ideals, algebra)
    assert commutative.arity == 2
    assert commutative(e3, e3)
    assert not commutative(full, full)
    assert check_law(commutative, Law.PHI_INVARIANT, ideals, phis=tri2_phis)

    nilpotent = extend_D(Nilpotent(), zero_predicate(), ideals, algebra)
    assert nilpotent.arity == 1
    assert nilpotent(e3) and not nilpotent(full)

    series = extend_C(tri2.word("comm"), nilpotent, ideals, algebra)
    assert series.arity == 2 and series(full, full)
    assert check_law(series, Law.MONOTONE, ideals)

    with pytest.raises(NotAnIdeal, match="extension pool"):
        extend_C(tri2.word("comm"), zero_predicate(), [space(tri2, (1, 0, 0))], algebra)
    with pytest.raises(DimensionMismatch):
        compose(constant_true(2), [pred_A(tri2.word("comm"), algebra)], ideals)


def test_classes(tri2: Problem, strict3: Problem):
    assert isinstance(get_class("Nilpotent"), Nilpotent)
    assert isinstance(get_class("abelian"), Abelian)
    with pytest.raises(KeyError, match="expected one of"):
        get_class("solvable")

    assert strict3.algebra in Nilpotent()
    assert tri2.algebra not in Nilpotent()
    assert tri2.algebra not in Abelian()
    assert "noncommuting" in Abelian().evidence(tri2.algebra, tri2.algebra.full())
    assert Nilpotent().evidence(strict3.algebra, strict3.algebra.full())["nilpotency_index"] == 3

    identity = SatisfiesIdentity(tri2.word("comm"))
    assert identity.contains(tri2.algebra, space(tri2, (1, 0, 0)))
    assert identity.evidence(tri2.algebra, tri2.algebra.full())["member"] is False

    class Untagged(AlgebraClass):
        def contains(self, algebra, v):
            return True

    with pytest.raises(ValueError, match="needs a tag"):
        register_class(Untagged)

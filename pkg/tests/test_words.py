from __future__ import annotations

import pytest
from hypothesis import given, settings

from pycharsub.algebra import product_span
from pycharsub.exactla import Subspace
from pycharsub.exceptions import (
    DegreeCapExceeded,
    DimensionMismatch,
    NotMultilinear,
    WordSyntaxError,
)
from pycharsub.problem import Problem, load_problem
from pycharsub.words import (
    enumerate_monomials,
    eval_span,
    evaluate,
    nonvanishing_witness,
    parse_word,
    words_up_to,
)

from .conftest import GF2, GF3, space
from .strategies import subspaces

TRI2 = load_problem("tri2_gf2").algebra
COMM = "(- (* x1 x2) (* x2 x1))"


def test_parse_normalizes():
    comm2 = parse_word(COMM, GF2)
    assert comm2.to_sexpr() == "(+ (* x1 x2) (* x2 x1))"
    assert parse_word(comm2.to_sexpr(), GF2) == comm2
    assert comm2.degree == 2 and not comm2.is_monomial()

    scaled = parse_word("(s 4 (* (* x1 x3) x2))", GF3)
    assert scaled.terms[0][0] == 1
    assert parse_word(scaled.to_sexpr(), GF3) == scaled

    zero = parse_word("(- (* x1 x2) (* x1 x2))", GF3)
    assert zero.is_zero()
    assert parse_word(zero.to_sexpr(), GF3).is_zero()
    assert str(zero) == "0"


@pytest.mark.parametrize(
    "text, match",
    [
        ("(* x1", "end of input"),
        ("(^ x1 x2)", "unknown operator"),
        ("(* x1 x2 x3)", "binary"),
        ("(* x0 x1)", "expected a variable"),
        ("(s two x1)", "expected an integer"),
        ("(* x1 x2))", "trailing input"),
        ("(* x1 x2) $", "trailing input"),
    ],
)
def test_syntax_errors(text: str, match: str):
    with pytest.raises(WordSyntaxError, match=match):
        parse_word(text, GF2)


@pytest.mark.parametrize(
    "text, match",
    [
        ("(* x1 x1)", "repeated"),
        ("(+ x1 (* x1 x2))", "only one summand"),
        ("(* x2 x3)", "x1 missing"),
    ],
)
def test_not_multilinear(text: str, match: str):
    with pytest.raises(NotMultilinear, match=match):
        parse_word(text, GF2)


def test_enumeration_counts():
    assert [len(enumerate_monomials(t)) for t in range(1, 5)] == [1, 2, 12, 120]
    assert len(words_up_to(3, GF2)) == 15
    assert len({m.key for m in enumerate_monomials(4)}) == 120
    assert str(enumerate_monomials(2)[1]) == "x2·x1"

    with pytest.raises(DegreeCapExceeded):
        enumerate_monomials(6)
    with pytest.raises(ValueError):
        enumerate_monomials(0)


def test_eval_span(tri2: Problem):
    algebra = tri2.algebra
    full, n = algebra.full(), space(tri2, (1, 0, 0))
    prod, comm = tri2.word("prod"), tri2.word("comm")
    assert eval_span(prod, algebra, (full, full)) == full
    assert eval_span(comm, algebra, (full, full)) == space(tri2, (0, 0, 1))
    assert eval_span(comm, algebra, (n, n)).is_zero()
    assert evaluate(comm, algebra, [(1, 0, 0), (0, 0, 1)]) == (0, 0, 1)

    witness = nonvanishing_witness(comm, algebra, (full, full))
    assert witness is not None and any(evaluate(comm, algebra, witness))
    assert nonvanishing_witness(comm, algebra, (n, n)) is None

    with pytest.raises(DimensionMismatch, match="word arity"):
        eval_span(comm, algebra, (full,))


@given(subspaces(GF2, 3), subspaces(GF2, 3), subspaces(GF2, 3))
@settings(max_examples=40, deadline=None)
def test_eval_span_is_bilinear(u: Subspace, u2: Subspace, v: Subspace):
    prod = parse_word("(* x1 x2)", GF2)
    comm = parse_word(COMM, GF2)
    assert eval_span(prod, TRI2, (u, v)) == product_span(TRI2, u, v)
    joined = eval_span(comm, TRI2, (u + u2, v))
    assert joined == eval_span(comm, TRI2, (u, v)) + eval_span(comm, TRI2, (u2, v))

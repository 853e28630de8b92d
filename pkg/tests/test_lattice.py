from __future__ import annotations

import logging

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pycharsub.exactla import Subspace
from pycharsub.exceptions import BoundOverflow, ClosureIncomplete
from pycharsub.lattice import (
    CodimFunction,
    OrdinaryCodim,
    Step,
    check_codim_laws,
    derivation,
    f_iterate,
    f_trace,
    greedy_sup_selection,
    invariant_elements,
    is_invariant,
    longest_chain,
    phi_core,
    phi_sum,
    replay,
    sublattice_closure,
)
from pycharsub.laws import Law
from pycharsub.morphisms import orbit
from pycharsub.problem import Problem

from .conftest import GF2, space
from .strategies import subspaces


class CodimParity(CodimFunction):
    name = "parity"

    def __call__(self, v: Subspace) -> float:
        return v.codim % 2


@pytest.fixture(scope="module")
def tri2_closure(tri2: Problem, tri2_phis):
    return sublattice_closure(orbit(tri2.subspace("N"), tri2_phis))


def test_closure_of_an_orbit(tri2: Problem, tri2_closure, tri2_phis):
    e1, e13 = space(tri2, (1, 0, 0)), space(tri2, (1, 0, 1))
    both = space(tri2, (1, 0, 0), (0, 0, 1))
    assert list(tri2_closure) == [e1, e13, both, tri2.algebra.zero()]
    assert tri2_closure.complete and tri2_closure.size == 4
    assert both in tri2_closure and tri2_closure.index(both) == 2
    assert invariant_elements(tri2_closure, tri2_phis) == (both, tri2.algebra.zero())
    assert not is_invariant(e1, tri2_phis)
    assert phi_sum(e1, tri2_phis) == both
    assert phi_core(both, tri2_phis) == both
    assert phi_core(e1, tri2_phis).is_zero()


def test_closure_cap(tri2: Problem, tri2_phis, caplog):
    with caplog.at_level(logging.WARNING, logger="pycharsub.lattice"):
        partial = sublattice_closure(orbit(tri2.subspace("N"), tri2_phis), cap=2)
    assert not partial.complete and len(partial) == 2
    assert "cap of 2" in caplog.text
    with pytest.raises(ClosureIncomplete):
        invariant_elements(partial, tri2_phis)

    with pytest.raises(ValueError):
        sublattice_closure([])


@given(st.lists(subspaces(GF2, 4), min_size=1, max_size=3))
@settings(max_examples=30, deadline=None)
def test_closure_is_a_sublattice(seed: list[Subspace]):
    closure = sublattice_closure(seed)
    elements = set(closure)
    assert set(seed) <= elements
    for a in closure:
        for b in closure:
            assert a + b in elements and a & b in elements
    for v in closure:
        assert replay(derivation(closure, v), closure.seed) == v


def test_derivation_is_straight_line(tri2_closure):
    both = tri2_closure[2]
    program = derivation(tri2_closure, both)
    assert [step.op for step in program] == ["seed", "seed", "sum"]
    assert program[-1].args == (0, 1)
    assert replay(program, tri2_closure.seed) == both

    with pytest.raises(ValueError, match="Unknown"):
        replay([Step("join", (0,))], tri2_closure.seed)


def test_f_iterate():
    assert f_trace(2, 2) == [2, 6, 42]
    assert f_iterate(0, 7) == 7
    assert f_iterate(3, 1) == 42
    assert f_iterate(5, 2) == 1806 * 1807 * (1806 * 1807 + 1)
    with pytest.raises(BoundOverflow):
        f_iterate(6, 2)
    with pytest.raises(ValueError):
        f_iterate(-1, 2)


def test_selection_and_chains(tri2: Problem, tri2_closure, tri2_phis):
    family = list(orbit(tri2.subspace("N"), tri2_phis))
    chosen = greedy_sup_selection(family)
    assert len(chosen) == 2
    assert chosen[0] + chosen[1] == space(tri2, (1, 0, 0), (0, 0, 1))
    chain = longest_chain(tri2_closure)
    assert [v.rank for v in chain] == [0, 1, 2]


def test_codim_laws(tri2_closure, tri2_phis):
    reports = check_codim_laws(OrdinaryCodim(), tri2_closure, tri2_phis)
    assert [r.law for r in reports] == [
        Law.ANTITONE,
        Law.PHI_NONINCREASING,
        Law.MEET_SUBADDITIVE,
        Law.SUP_SELECTION,
    ]
    assert all(reports)

    broken = {r.law: r for r in check_codim_laws(CodimParity(), tri2_closure, tri2_phis)}
    assert not broken[Law.ANTITONE]
    a, b = broken[Law.ANTITONE].witness
    assert b <= a

from __future__ import annotations

import pytest

from pycharsub.characteristic import (
    CharSubspaceRequest,
    Mode,
    corollary_bounded_image,
    corollary_identity,
    find_characteristic_family,
    find_characteristic_subspace,
    property_P,
    solve,
)
from pycharsub.exceptions import ClosureIncomplete, DimensionMismatch, HypothesisFailed
from pycharsub.lattice import is_invariant, replay
from pycharsub.limits import Limits
from pycharsub.morphisms import MorphismSet, validate_morphism
from pycharsub.problem import Problem
from pycharsub.words import parse_word

from .conftest import GF2, all_subspaces, space


def request_for(problem: Problem, t: int = 2, name: str = "N", **kwargs) -> CharSubspaceRequest:
    return CharSubspaceRequest(
        problem.algebra, problem.subspace(name), problem.morphism_set(), t, **kwargs
    )


def test_tri2(tri2: Problem):
    cert = find_characteristic_subspace(request_for(tri2))
    assert cert.H == space(tri2, (1, 0, 0), (0, 0, 1))
    assert (cert.codim_N, cert.codim_H, cert.bound) == (2, 1, 6)
    assert cert.trace == (2, 6)
    assert cert.closure_size == 4
    assert (cert.invariant_count, cert.qualifying_count) == (2, 2)
    assert replay(cert.derivation, cert.orbit) == cert.H
    assert all(w.lhs <= w.rhs for w in cert.witnesses)
    assert all(image <= cert.H for _, image in cert.invariance)
    assert ("codim H", "1") in cert.summary()


def test_tri2_word_choice(tri2: Problem):
    comm = find_characteristic_subspace(request_for(tri2, words=(tri2.word("comm"),)))
    assert comm.H.is_zero() and comm.codim_H == 3

    linear = find_characteristic_subspace(request_for(tri2, t=1))
    assert linear.bound == 2 and linear.codim_H == 1


def test_modes(tri2: Problem):
    identity = solve(request_for(tri2, mode=Mode.IDENTITY, target=tri2.word("comm")))
    assert identity.H.is_zero()
    assert identity.image_dims == (0, 0)

    bounded = solve(request_for(tri2, mode="bounded-image", target=tri2.word("prod")))
    assert bounded.image_dims == (1, 2)
    assert bounded.image_dims[1] <= bounded.phi_size * bounded.image_dims[0]

    with pytest.raises(HypothesisFailed, match="does not vanish"):
        solve(request_for(tri2, name="G", mode=Mode.IDENTITY, target=tri2.word("comm")))


def test_corollaries_reject_other_modes(tri2: Problem):
    comm = tri2.word("comm")
    assert corollary_identity(request_for(tri2, mode=Mode.IDENTITY, target=comm)).H.is_zero()
    bounded = corollary_bounded_image(
        request_for(tri2, mode=Mode.BOUNDED_IMAGE, target=tri2.word("prod"))
    )
    assert bounded.image_dims == (1, 2)

    with pytest.raises(ValueError, match="identity-mode"):
        corollary_identity(request_for(tri2))
    with pytest.raises(ValueError, match="bounded-image request"):
        corollary_bounded_image(request_for(tri2, mode=Mode.IDENTITY, target=comm))


def test_request_validation(tri2: Problem, heis: Problem):
    with pytest.raises(ValueError, match="t must be"):
        request_for(tri2, t=0)
    with pytest.raises(ValueError, match="needs a target"):
        request_for(tri2, mode=Mode.IDENTITY)
    cubic = parse_word("(* (* x1 x2) x3)", GF2)
    with pytest.raises(ValueError, match="degree 3 > t = 2"):
        request_for(tri2, words=(cubic,))
    with pytest.raises(DimensionMismatch):
        CharSubspaceRequest(tri2.algebra, space(tri2, (1, 0, 0)), heis.morphism_set(), 1)


def test_hypothesis_needs_identity(tri2: Problem):
    phi = validate_morphism(tri2.algebra, tri2.matrices["phi"])
    request = CharSubspaceRequest(
        tri2.algebra, tri2.subspace("N"), MorphismSet([phi], [phi]), 1
    )
    with pytest.raises(HypothesisFailed, match="P"):
        find_characteristic_subspace(request)


def test_closure_cap(tri2: Problem):
    with pytest.raises(ClosureIncomplete):
        find_characteristic_subspace(request_for(tri2, limits=Limits(closure_cap=2)))


def test_against_brute_force(tri2: Problem):
    request = request_for(tri2)
    cert = find_characteristic_subspace(request)
    best = min(
        v.codim
        for v in all_subspaces(tri2.algebra)
        if is_invariant(v, request.phis) and property_P((v,) * request.t, request)
    )
    assert best <= cert.codim_H <= cert.bound


def test_zero_algebra_under_gl(zero3: Problem):
    phis = zero3.morphism_set()
    for n in all_subspaces(zero3.algebra):
        cert = find_characteristic_subspace(CharSubspaceRequest(zero3.algebra, n, phis, 2))
        assert is_invariant(cert.H, phis)
        assert cert.codim_H == (3 if n.is_zero() else 0)


def test_tri3(tri3: Problem):
    cert = find_characteristic_subspace(request_for(tri3, t=3))
    assert cert.codim_H <= cert.bound == 930
    assert is_invariant(cert.H, cert.request.phis)
    assert property_P((cert.H,) * 3, cert.request)


def test_family(tri2: Problem):
    family = find_characteristic_family(request_for(tri2, t=3))
    assert [c.request.t for c in family] == [1, 2, 3]
    assert [c.bound for c in family] == [2, 6, 42]
    assert all(c.codim_H <= c.bound for c in family)

from __future__ import annotations

import pytest

import pycharsub
from pycharsub import series as series_module
from pycharsub.algebra import StructureAlgebra
from pycharsub.exactla import Subspace
from pycharsub.exceptions import HypothesisFailed, RouteDisagreement
from pycharsub.laws import Law, LawReport
from pycharsub.lattice import is_invariant, replay
from pycharsub.predicates import AlgebraClass, Nilpotent
from pycharsub.problem import Problem
from pycharsub.series import (
    Level,
    Route,
    SeriesSpec,
    build_series_predicate,
    check_series,
    class_laws,
    enumerate_ideals,
    find_characteristic_series,
)

from .conftest import SERIES_INPUTS, space


class DimensionAtMost(AlgebraClass):
    """Not closed under sums; exercises class plug-ins and the class law checks."""

    def __init__(self, k: int) -> None:
        self.k = k

    def contains(self, algebra: StructureAlgebra, v: Subspace) -> bool:
        return v.rank <= self.k

    def __str__(self) -> str:
        return f"dim<={self.k}"


class EvenDimension(AlgebraClass):
    def contains(self, algebra: StructureAlgebra, v: Subspace) -> bool:
        return v.rank % 2 == 0


def run(problem: Problem, route: Route = Route.DIRECT):
    block = problem.series
    assert block is not None
    return find_characteristic_series(
        problem.algebra, block.top, block.witness, block.spec, problem.morphism_set(), route=route
    )


def test_spec(tri2: Problem):
    spec = tri2.series.spec
    assert spec.length == 2 and spec.arity == 2
    assert [str(level) for level in spec.levels] == [
        "class nilpotent",
        "identity (+ (* x1 x2) (* x2 x1))",
    ]
    with pytest.raises(ValueError):
        SeriesSpec(())
    with pytest.raises(ValueError, match="needs a word"):
        Level("identity")


def test_check_series(tri2: Problem):
    spec = tri2.series.spec
    full, e3 = tri2.algebra.full(), space(tri2, (0, 0, 1))
    assert check_series(tri2.algebra, full, [e3, full], spec)

    reversed_spec = SeriesSpec(tuple(reversed(spec.levels)))
    swapped = check_series(tri2.algebra, full, [e3, full], reversed_spec)
    assert not swapped and swapped.level == 2

    not_ideal = check_series(tri2.algebra, full, [space(tri2, (1, 0, 0)), full], spec)
    assert not_ideal.level == 1 and "not an ideal" in not_ideal.reason

    assert check_series(tri2.algebra, full, [e3], spec).level == 0
    assert check_series(tri2.algebra, e3, [e3, full], spec).level == 2


def test_tri2_series(tri2: Problem):
    cert = run(tri2, Route.BOTH)
    e3 = space(tri2, (0, 0, 1))
    assert cert.m == tri2.algebra.full() and cert.codim_M == 0
    assert cert.witness.chain == (tri2.algebra.zero(), e3, tri2.algebra.full())
    assert cert.route_codims == {"direct": 0, "predicate": 0}
    assert cert.predicate_arity == 2
    phis = tri2.morphism_set()
    assert all(is_invariant(b, phis) for b in cert.witness.chain)
    assert len(cert.invariance) == len(phis.generators)
    for b, program in zip(cert.witness.chain, cert.derivations):
        assert replay(program, cert.seed) == b
    assert cert.witness.evidence[0]["nilpotency_index"] == 2


@pytest.mark.parametrize("name", ["heis_gf5", "tri3_gf2", "borel_gf5", "dual_gf2", "strict3_gf2"])
def test_corpus_series(name: str):
    problem = pycharsub.load(name)
    cert = run(problem, Route.BOTH)
    assert cert.codim_M <= problem.series.top.codim
    assert check_series(problem.algebra, cert.m, cert.witness.chain, problem.series.spec)
    phis = problem.morphism_set()
    assert all(is_invariant(b, phis) for b in cert.witness.chain)


def test_input_series_must_check(tri2: Problem):
    full = tri2.algebra.full()
    with pytest.raises(HypothesisFailed):
        find_characteristic_series(
            tri2.algebra,
            full,
            [space(tri2, (0, 1, 0), (0, 0, 1)), full],
            tri2.series.spec,
            tri2.morphism_set(),
        )


def test_routes_must_agree(tri2: Problem, monkeypatch):
    monkeypatch.setattr(series_module, "_by_predicate", lambda pred, invariant: invariant[0])
    with pytest.raises(RouteDisagreement, match="disagree"):
        run(tri2, Route.BOTH)


def test_series_predicate(tri2: Problem):
    pool = enumerate_ideals(tri2.algebra)
    pred = build_series_predicate(tri2.algebra, tri2.series.spec, pool)
    assert pred.arity == 2
    assert pred.diagonal(tri2.algebra.full())


def test_plugin_class(tri2: Problem, zero3: Problem):
    spec = SeriesSpec((Level.of_class(DimensionAtMost(1)), Level.identity(tri2.word("comm"))))
    full, e3 = tri2.algebra.full(), space(tri2, (0, 0, 1))
    assert check_series(tri2.algebra, full, [e3, full], spec)
    assert str(spec.levels[0]) == "class dim<=1"

    reports = {r.law: r for r in class_laws(DimensionAtMost(1), [zero3.algebra])}
    assert not reports[Law.IDEAL_SUM]
    assert not reports[Law.SUBDIRECT]


def test_registered_class_laws(tri2: Problem, strict3: Problem, heis: Problem):
    corpus = [tri2.algebra, strict3.algebra, heis.algebra]
    assert all(class_laws(Nilpotent(), corpus))
    with pytest.warns(RuntimeWarning, match="exhaustive bound"):
        sampled = class_laws(Nilpotent(), corpus[1:], bound=8)
    assert all(sampled) and not any(r.exhaustive for r in sampled)

    # abelian ideals of a nilpotent algebra can sum to a non-abelian one
    abelian = {r.law: r for r in class_laws("abelian", corpus)}
    assert not abelian[Law.IDEAL_SUM]
    assert abelian[Law.QUOTIENT_CLOSED] and abelian[Law.SUBDIRECT]


def test_class_laws_reach_member_ideals(tri2: Problem, heis: Problem, zero3: Problem):
    for problem in (tri2, heis):
        reports = class_laws(Nilpotent(), [problem.algebra])
        assert all(reports) and all(r.exercised for r in reports), [str(r) for r in reports]

    # tri2 is not nilpotent; 0 and E3 are its nilpotent ideals
    counts = {r.law: r.checked for r in class_laws("nilpotent", [tri2.algebra])}
    assert counts[Law.IDEAL_CLOSED] == counts[Law.QUOTIENT_CLOSED] == 3

    even = {r.law: r for r in class_laws(EvenDimension(), [zero3.algebra])}
    assert not even[Law.IDEAL_CLOSED] and not even[Law.QUOTIENT_CLOSED]

    idle = LawReport(Law.SUBDIRECT, "nothing", 0)
    assert idle and not idle.exercised
    assert str(idle).endswith("not exercised")


def test_nilpotent_laws_on_sampled_ideal_pairs():
    corpus = [pycharsub.load(name).algebra for name in SERIES_INPUTS]
    sums = 0
    for seed in range(3):
        with pytest.warns(RuntimeWarning, match="exhaustive bound"):
            reports = class_laws(Nilpotent(), corpus, bound=4, trials=40, seed=seed)
        assert all(reports), [str(r) for r in reports]
        sums += next(r.checked for r in reports if r.law is Law.IDEAL_SUM)
    assert sums >= 100

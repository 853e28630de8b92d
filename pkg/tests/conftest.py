from __future__ import annotations

import itertools
import json
import pathlib
from typing import Any, Iterator

import numpy as np
import pytest

import pycharsub
from pycharsub.algebra import StructureAlgebra
from pycharsub.exactla import FieldPrime, Subspace, enumerate_subspaces, matrix_rank, rref
from pycharsub.morphisms import MorphismSet
from pycharsub.problem import CORPUS, Problem, parse_problem
from pycharsub.series import Level, SeriesSpec, check_series, enumerate_ideals
from pycharsub.words import MultilinearElement, enumerate_monomials

ASSETS = pathlib.Path(__file__).parent / "assets"

GF2 = FieldPrime(2)
GF3 = FieldPrime(3)
GF5 = FieldPrime(5)


@pytest.fixture(scope="session")
def tri2() -> Problem:
    return pycharsub.load("tri2_gf2")


@pytest.fixture(scope="session")
def tri2_phis(tri2: Problem) -> MorphismSet:
    return tri2.morphism_set()


@pytest.fixture(scope="session")
def strict3() -> Problem:
    return pycharsub.load("strict3_gf2")


@pytest.fixture(scope="session")
def tri3() -> Problem:
    return pycharsub.load("tri3_gf2")


@pytest.fixture(scope="session")
def heis() -> Problem:
    return pycharsub.load("heis_gf5")


@pytest.fixture(scope="session")
def zero3() -> Problem:
    return pycharsub.load("zero3_gf2")


def space(problem_or_algebra: Problem | StructureAlgebra, *rows: tuple[int, ...]) -> Subspace:
    algebra = getattr(problem_or_algebra, "algebra", problem_or_algebra)
    return algebra.span(list(rows))


def automorphisms_by_search(algebra: StructureAlgebra) -> list[tuple[tuple[int, ...], ...]]:
    """Every invertible multiplicative matrix, by brute force; tiny algebras only."""
    d, p = algebra.dim, algebra.field.p
    found = []
    for flat in itertools.product(range(p), repeat=d * d):
        m = np.array(flat, dtype=np.int64).reshape(d, d)
        if matrix_rank(algebra.field, m.tolist(), d) != d:
            continue
        lhs = algebra.tensor.reshape(d * d, d) @ m.T % p
        rhs = algebra.products(m.T, m.T)
        if np.array_equal(lhs, rhs):
            found.append(tuple(map(tuple, m.tolist())))
    return found


def all_subspaces(algebra: StructureAlgebra) -> list[Subspace]:
    return enumerate_subspaces(algebra.field, algebra.dim)


def _rows(v: Subspace) -> list[list[int]]:
    return [list(row) for row in v.basis]


def random_char_sources(seed: int) -> Iterator[dict[str, Any]]:
    """Endless seeded inputs over GF(2), GF(3), GF(5) of dimension at most 4, ``codim N <= 2``.

    Even draws double a random product table as ``B ⊕ B`` under the swap of
    the two copies; odd draws are zero algebras under one or two random
    invertible matrices. Closures are not capped here.
    """
    rng = np.random.default_rng(seed)
    drawn = 0
    while True:
        p = int(rng.choice([2, 3, 5]))
        field = FieldPrime(p)
        if drawn % 2 == 0:
            half = int(rng.integers(1, 3))
            d = 2 * half
            product = []
            for i, j, k in itertools.product(range(half), repeat=3):
                c = int(rng.integers(0, p))
                if c:
                    product += [[i, j, k, c], [i + half, j + half, k + half, c]]
            swap = [[int(j == (i + half) % d) for j in range(d)] for i in range(d)]
            automorphisms = {"swap": swap}
        else:
            d = int(rng.integers(1, 5))
            product = []
            drafts = [rng.integers(0, p, size=(d, d)).tolist() for _ in range(rng.integers(1, 3))]
            automorphisms = {
                f"g{i}": m for i, m in enumerate(drafts) if matrix_rank(field, m, d) == d
            }
            if not automorphisms:
                continue

        count = max(1, d - int(rng.integers(0, 3)))
        n = rref(field, rng.integers(0, p, size=(count, d)).tolist(), d)
        if n.is_zero() or n.codim > 2:
            continue
        drawn += 1
        yield {
            "description": f"random draw {drawn}",
            "field": {"p": p},
            "dimension": d,
            "flavor": "general",
            "product": product,
            "subspaces": {"N": _rows(n)},
            "automorphisms": automorphisms,
        }


SERIES_INPUTS = [
    "tri2_gf2",
    "strict3_gf2",
    "heis_gf5",
    "borel_gf5",
    "dual_gf2",
    "sl2_gf5",
    "zero2_gf3",
    "zero3_gf2",
]


def random_series_sources(seed: int) -> Iterator[dict[str, Any]]:
    """Endless bundled inputs rewritten to carry a random two-level series.

    The lower level asks for a nilpotent factor, the upper one for a random
    identity of degree 1 or 2; the witness chain is drawn among the ideals
    that satisfy it.
    """
    rng = np.random.default_rng(seed)
    ideals = {name: enumerate_ideals(pycharsub.load(name).algebra) for name in SERIES_INPUTS}
    while True:
        name = SERIES_INPUTS[int(rng.integers(len(SERIES_INPUTS)))]
        source = json.loads((CORPUS / f"{name}.json").read_text(encoding="utf-8"))
        algebra = parse_problem(source).algebra
        p = algebra.field.p

        degree = int(rng.integers(1, 3))
        terms = tuple((int(rng.integers(0, p)), m) for m in enumerate_monomials(degree))
        word = MultilinearElement(algebra.field, degree, terms)
        if word.is_zero():
            continue
        spec = SeriesSpec((Level.of_class("nilpotent"), Level.identity(word)))

        pool = ideals[name]
        top = pool[int(rng.integers(len(pool)))]
        lower = [v for v in pool if v <= top and check_series(algebra, top, [v, top], spec)]
        if not lower:
            continue
        below = lower[int(rng.integers(len(lower)))]

        source.setdefault("subspaces", {}).update({"S1": _rows(below), "S2": _rows(top)})
        source.setdefault("words", {})["level_word"] = word.to_sexpr()
        source["series"] = {
            "levels": [
                {"kind": "class", "tag": "nilpotent"},
                {"kind": "identity", "word": "level_word"},
            ],
            "witness": ["S1", "S2"],
        }
        yield source

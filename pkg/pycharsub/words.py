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

"""Contains multilinear elements of the free non-associative algebra.

Words are written as s-expressions over the variables ``x1 … xN``:

* ``(* w w)`` product, ``(+ w w)`` sum, ``(- w w)`` difference,
* ``(s c w)`` scalar multiple by the integer ``c``.

    >>> from pycharsub.exactla import FieldPrime
    >>> comm = parse_word("(- (* x1 x2) (* x2 x1))", FieldPrime(2))
    >>> comm.to_sexpr()
    '(+ (* x1 x2) (* x2 x1))'
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, Sequence, Tuple, Union

import numpy as np
from typing_extensions import Final, TypeAlias

from pycharsub.algebra import StructureAlgebra, product_span
from pycharsub.exactla import FieldPrime, Subspace, matmul
from pycharsub.exceptions import (
    DegreeCapExceeded,
    DimensionMismatch,
    NotMultilinear,
    WordSyntaxError,
)
from pycharsub.types import IntArray, Row, as_row

__all__ = [
    "DEGREE_CAP",
    "Tree",
    "Monomial",
    "MultilinearElement",
    "parse_word",
    "enumerate_monomials",
    "words_up_to",
    "eval_span",
    "evaluate",
    "nonvanishing_witness",
]

DEGREE_CAP: Final = 5

Tree: TypeAlias = Union[int, Tuple["Tree", "Tree"]]
"""A leaf is a 1-based variable index; a node is a ``(left, right)`` pair."""

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")
_VARIABLE = re.compile(r"x([1-9][0-9]*)")


def _leaves(tree: Tree) -> Iterator[int]:
    if isinstance(tree, int):
        yield tree
    else:
        yield from _leaves(tree[0])
        yield from _leaves(tree[1])


def _tree_key(tree: Tree) -> tuple:
    if isinstance(tree, int):
        return (0, tree)
    return (1, _tree_key(tree[0]), _tree_key(tree[1]))


def _tree_sexpr(tree: Tree) -> str:
    if isinstance(tree, int):
        return f"x{tree}"
    return f"(* {_tree_sexpr(tree[0])} {_tree_sexpr(tree[1])})"


def _left_normed(t: int) -> Tree:
    tree: Tree = 1
    for var in range(2, t + 1):
        tree = (tree, var)
    return tree


def _tree_str(tree: Tree, top: bool = True) -> str:
    if isinstance(tree, int):
        return f"x{tree}"
    inner = f"{_tree_str(tree[0], False)}·{_tree_str(tree[1], False)}"
    return inner if top else f"({inner})"


@dataclass(frozen=True)
class Monomial:
    """A bracketed product in which each of ``x1 … xt`` occurs exactly once."""

    tree: Tree

    def __post_init__(self) -> None:
        leaves = list(_leaves(self.tree))
        if sorted(leaves) != list(range(1, len(leaves) + 1)):
            raise NotMultilinear(f"Leaves {leaves} are not a permutation of x1..x{len(leaves)}")

    @functools.cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(_leaves(self.tree))

    @property
    def degree(self) -> int:
        return len(self.leaves)

    @functools.cached_property
    def key(self) -> tuple:
        return _tree_key(self.tree)

    def to_sexpr(self) -> str:
        return _tree_sexpr(self.tree)

    def __str__(self) -> str:
        return _tree_str(self.tree)


@dataclass(frozen=True)
class MultilinearElement:
    """A GF(p)-combination of monomials of one common degree.

    Terms are normalized on construction (merged, reduced mod p, zeros dropped,
    sorted by monomial), so the element with no terms is the zero element.
    """

    field: FieldPrime
    degree: int
    terms: Tuple[Tuple[int, Monomial], ...] = ()

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise NotMultilinear(f"Degree must be at least 1, got {self.degree}")
        merged: dict[Monomial, int] = {}
        for coeff, monomial in self.terms:
            if monomial.degree != self.degree:
                raise NotMultilinear(
                    f"Monomial {monomial} has degree {monomial.degree}, expected {self.degree}"
                )
            merged[monomial] = (merged.get(monomial, 0) + int(coeff)) % self.field.p
        ordered = sorted(((c, m) for m, c in merged.items() if c), key=lambda term: term[1].key)
        object.__setattr__(self, "terms", tuple(ordered))

    @classmethod
    def of(cls, monomial: Monomial, field: FieldPrime, coeff: int = 1) -> MultilinearElement:
        return cls(field, monomial.degree, ((coeff, monomial),))

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def to_sexpr(self) -> str:
        """Text that :func:`parse_word` maps back to this element."""
        if not self.terms:
            return f"(s 0 {_tree_sexpr(_left_normed(self.degree))})"
        parts = [
            monomial.to_sexpr() if coeff == 1 else f"(s {coeff} {monomial.to_sexpr()})"
            for coeff, monomial in self.terms
        ]
        sexpr = parts[0]
        for part in parts[1:]:
            sexpr = f"(+ {sexpr} {part})"
        return sexpr

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            str(monomial) if coeff == 1 else f"{coeff}·({monomial})"
            for coeff, monomial in self.terms
        )


# * Parsing

_Expansion: TypeAlias = Tuple[FrozenSet[int], Dict[Tree, int]]


def _tokenize(text: str) -> list[tuple[int, str]]:
    tokens: list[tuple[int, str]] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            if text[pos:].strip():
                raise WordSyntaxError(text, pos, "unexpected character")
            break
        tokens.append((match.start(match.lastindex or 0), match.group(match.lastindex or 0)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str, field: FieldPrime) -> None:
        self.text = text
        self.p = field.p
        self.tokens = _tokenize(text)
        self.pos = 0

    def _next(self) -> tuple[int, str]:
        if self.pos >= len(self.tokens):
            raise WordSyntaxError(self.text, len(self.text), "unexpected end of input")
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def parse(self) -> _Expansion:
        result = self._expr()
        if self.pos != len(self.tokens):
            raise WordSyntaxError(self.text, self.tokens[self.pos][0], "trailing input")
        return result

    def _expr(self) -> _Expansion:
        offset, token = self._next()
        if token == ")":
            raise WordSyntaxError(self.text, offset, "unexpected ')'")
        if token != "(":
            match = _VARIABLE.fullmatch(token)
            if match is None:
                raise WordSyntaxError(self.text, offset, f"expected a variable, got {token!r}")
            var = int(match.group(1))
            return frozenset((var,)), {var: 1}

        offset, op = self._next()
        if op == "s":
            coeff_offset, literal = self._next()
            try:
                coeff = int(literal)
            except ValueError:
                raise WordSyntaxError(self.text, coeff_offset, "expected an integer") from None
            variables, terms = self._expr()
            result: _Expansion = (variables, {m: c * coeff % self.p for m, c in terms.items()})
        elif op in ("*", "+", "-"):
            left, right = self._expr(), self._expr()
            result = self._combine(op, left, right)
        else:
            raise WordSyntaxError(self.text, offset, f"unknown operator {op!r}")

        offset, closing = self._next()
        if closing != ")":
            raise WordSyntaxError(self.text, offset, "expected ')' (operators are binary)")
        return result

    def _combine(self, op: str, left: _Expansion, right: _Expansion) -> _Expansion:
        (lvars, lterms), (rvars, rterms) = left, right
        if op == "*":
            repeated = sorted(lvars & rvars)
            if repeated:
                raise NotMultilinear(f"variable x{repeated[0]} repeated")
            product = {
                (lm, rm): lc * rc % self.p for lm, lc in lterms.items() for rm, rc in rterms.items()
            }
            return lvars | rvars, product

        if lvars != rvars:
            odd = sorted(lvars ^ rvars)[0]
            raise NotMultilinear(f"variable x{odd} appears in only one summand")
        sign = 1 if op == "+" else -1
        total = dict(lterms)
        for monomial, coeff in rterms.items():
            total[monomial] = (total.get(monomial, 0) + sign * coeff) % self.p
        return lvars, total


def parse_word(text: str, field: FieldPrime) -> MultilinearElement:
    """Parses and normalizes an s-expression word.

    Raises:
        WordSyntaxError: On malformed input.
        NotMultilinear: When a variable is repeated in a product or missing.
    """
    variables, terms = _Parser(text, field).parse()
    degree = max(variables)
    missing = sorted(set(range(1, degree + 1)) - variables)
    if missing:
        raise NotMultilinear(f"variable x{missing[0]} missing")
    return MultilinearElement(
        field, degree, tuple((coeff, Monomial(tree)) for tree, coeff in terms.items())
    )


# * Enumeration


@functools.lru_cache(maxsize=None)
def _shapes(n: int) -> tuple[Tree, ...]:
    """Bracketings with ``n`` placeholder leaves, deepest left subtree first."""
    if n == 1:
        return (0,)
    return tuple(
        (left, right)
        for split in range(n - 1, 0, -1)
        for left in _shapes(split)
        for right in _shapes(n - split)
    )


def _fill(shape: Tree, variables: Iterator[int]) -> Tree:
    if isinstance(shape, int):
        return next(variables)
    left = _fill(shape[0], variables)
    return left, _fill(shape[1], variables)


def enumerate_monomials(t: int, cap: int = DEGREE_CAP) -> list[Monomial]:
    """Lists all ``Catalan(t-1) · t!`` monomials of degree ``t``.

    Bracketings come in left-depth order; within each, variable permutations
    come in lexicographic order.

    Raises:
        DegreeCapExceeded: When ``t > cap``.
    """
    if t < 1:
        raise ValueError(f"Degree must be at least 1, got {t}")
    if t > cap:
        raise DegreeCapExceeded("monomial degree", cap, t)
    return [
        Monomial(_fill(shape, iter(perm)))
        for shape in _shapes(t)
        for perm in itertools.permutations(range(1, t + 1))
    ]


def words_up_to(t: int, field: FieldPrime, cap: int = DEGREE_CAP) -> list[MultilinearElement]:
    """Every monomial of degree ``1 … t``, in enumeration order, as elements."""
    return [
        MultilinearElement.of(monomial, field)
        for degree in range(1, t + 1)
        for monomial in enumerate_monomials(degree, cap)
    ]


# * Evaluation


def _bilinear(algebra: StructureAlgebra, x: IntArray, y: IntArray) -> IntArray:
    """Broadcast product of two stacks of vectors; the last axis holds coordinates."""
    d, p = algebra.dim, algebra.field.p
    partial = matmul(x.reshape(-1, d), algebra.tensor.reshape(d, d * d), p)
    partial = partial.reshape(x.shape[:-1] + (d, d))
    out = np.zeros(np.broadcast_shapes(x.shape[:-1], y.shape[:-1]) + (d,), dtype=np.int64)
    for j in range(d):
        out = (out + y[..., j, None] * partial[..., j, :] % p) % p
    return out


def _values(tree: Tree, algebra: StructureAlgebra, leaves: Sequence[IntArray]) -> IntArray:
    if isinstance(tree, int):
        return leaves[tree - 1]
    return _bilinear(
        algebra, _values(tree[0], algebra, leaves), _values(tree[1], algebra, leaves)
    )


def _value_grid(
    w: MultilinearElement, algebra: StructureAlgebra, mats: Sequence[IntArray]
) -> IntArray:
    """Values of ``w`` on every tuple of rows, shaped ``(n_1, …, n_t, d)``."""
    t, d, p = w.degree, algebra.dim, algebra.field.p
    leaves = []
    for axis, mat in enumerate(mats):
        shape = [1] * t + [d]
        shape[axis] = mat.shape[0]
        leaves.append(mat.reshape(shape))

    grid = np.zeros(tuple(mat.shape[0] for mat in mats) + (d,), dtype=np.int64)
    for coeff, monomial in w.terms:
        grid = (grid + coeff * _values(monomial.tree, algebra, leaves) % p) % p
    return grid


def _check_args(w: MultilinearElement, algebra: StructureAlgebra, args: Sequence[Subspace]) -> None:
    if len(args) != w.degree:
        raise DimensionMismatch("word arity", w.degree, len(args))
    for arg in args:
        if arg.ambient_dim != algebra.dim or arg.field != algebra.field:
            raise DimensionMismatch("ambient dimension", algebra.dim, arg.ambient_dim)
    if w.field != algebra.field:
        raise DimensionMismatch(f"word field {w.field} vs", algebra.field.p, w.field.p)


def _monomial_span(tree: Tree, algebra: StructureAlgebra, args: Sequence[Subspace]) -> Subspace:
    if isinstance(tree, int):
        return args[tree - 1]
    left = _monomial_span(tree[0], algebra, args)
    if left.is_zero():
        return left
    return product_span(algebra, left, _monomial_span(tree[1], algebra, args))


def eval_span(
    w: MultilinearElement, algebra: StructureAlgebra, args: Sequence[Subspace]
) -> Subspace:
    """Span of ``w(h_1, …, h_t)`` over all ``h_i`` in ``args[i]``.

    Multilinearity makes basis tuples sufficient. A single monomial reduces
    to nested :func:`product_span` calls.

    Raises:
        DimensionMismatch: When ``len(args) != w.degree`` or ambients differ.
    """
    _check_args(w, algebra, args)
    if w.is_zero() or any(arg.is_zero() for arg in args):
        return algebra.zero()
    if w.is_monomial():
        return _monomial_span(w.terms[0][1].tree, algebra, args)

    grid = _value_grid(w, algebra, [arg.matrix for arg in args])
    return algebra.span(grid.reshape(-1, algebra.dim).tolist())


def evaluate(
    w: MultilinearElement, algebra: StructureAlgebra, vectors: Sequence[Sequence[int]]
) -> Row:
    """The value ``w(v_1, …, v_t)`` on concrete vectors."""
    if len(vectors) != w.degree:
        raise DimensionMismatch("word arity", w.degree, len(vectors))
    mats = [algebra.vector(v).reshape(1, -1) for v in vectors]
    return as_row(_value_grid(w, algebra, mats).reshape(-1, algebra.dim)[0])


def nonvanishing_witness(
    w: MultilinearElement, algebra: StructureAlgebra, args: Sequence[Subspace]
) -> tuple[Row, ...] | None:
    """First basis tuple (in product order) on which ``w`` is nonzero, if any."""
    _check_args(w, algebra, args)
    if w.is_zero() or any(arg.is_zero() for arg in args):
        return None
    grid = _value_grid(w, algebra, [arg.matrix for arg in args])
    hits = np.argwhere(grid.any(axis=-1))
    if not hits.size:
        return None
    return tuple(args[axis].basis[int(idx)] for axis, idx in enumerate(hits[0]))

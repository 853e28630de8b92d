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

"""Contains the canonical binary encoding of problems, used for fingerprints.

Two JSON documents that differ only in layout, key order, non-canonical
subspace rows or the order of product entries encode to the same bytes.
"""

from __future__ import annotations

import hashlib
from typing import TYPE_CHECKING, Any

import construct as c
import construct_typed as ct
from typing_extensions import TypeAlias

from pycharsub.algebra import Flavor
from pycharsub.types import Rows, T, U

if TYPE_CHECKING:
    from pycharsub.problem import Problem

__all__ = ["ProblemStruct", "encode_problem", "decode_problem", "fingerprint"]

SimpleAdapter: TypeAlias = ct.Adapter[T, T, U, U]
"""Duplicates type parameters for `construct.Adapter`."""

Name = c.PascalString(c.VarInt, "utf8")


class Matrix2Tuple(SimpleAdapter[Any, Rows]):
    """Nested lists of residues as a tuple of row tuples."""

    def _decode(self, obj: c.ListContainer[Any], *_: Any) -> Rows:
        return tuple(tuple(row) for row in obj)

    def _encode(self, obj: Rows, *_: Any) -> c.ListContainer[Any]:
        return c.ListContainer([c.ListContainer(row) for row in obj])


RowsStruct = Matrix2Tuple(c.PrefixedArray(c.VarInt, c.PrefixedArray(c.VarInt, c.VarInt)))

EntryStruct = c.Struct("i" / c.VarInt, "j" / c.VarInt, "k" / c.VarInt, "coeff" / c.VarInt)

NamedRows = c.Struct("name" / Name, "rows" / RowsStruct)

LevelStruct = c.Struct(
    "kind" / Name,
    "value" / Name * "Word s-expression or class tag",
)

ProblemStruct = c.Struct(
    "magic" / c.Const(b"PCS1"),
    "p" / c.VarInt,
    "dim" / c.VarInt,
    "flavor" / ct.TEnum(c.Byte, Flavor),
    "entries" / c.PrefixedArray(c.VarInt, EntryStruct),
    "subspaces" / c.PrefixedArray(c.VarInt, NamedRows),
    "automorphisms" / c.PrefixedArray(c.VarInt, NamedRows),
    "words" / c.PrefixedArray(c.VarInt, c.Struct("name" / Name, "sexpr" / Name)),
    "levels" / c.PrefixedArray(c.VarInt, LevelStruct),
    "witness" / c.PrefixedArray(c.VarInt, Name),
)


def _named(mapping: dict[str, Rows]) -> list[dict[str, Any]]:
    return [{"name": name, "rows": mapping[name]} for name in sorted(mapping)]


def encode_problem(problem: Problem) -> bytes:
    algebra = problem.algebra
    series = problem.series
    levels: list[dict[str, str]] = []
    if series is not None:
        for level in series.spec.levels:
            value = level.word.to_sexpr() if level.word is not None else level.tag
            levels.append({"kind": str(level.kind), "value": value})
    return ProblemStruct.build(
        {
            "p": algebra.field.p,
            "dim": algebra.dim,
            "flavor": algebra.flavor,
            "entries": [entry._asdict() for entry in algebra.entries],
            "subspaces": _named({k: v.basis for k, v in problem.subspaces.items()}),
            "automorphisms": _named(dict(problem.matrices)),
            "words": [
                {"name": name, "sexpr": problem.words[name].to_sexpr()}
                for name in sorted(problem.words)
            ],
            "levels": levels,
            "witness": list(series.witness_names) if series is not None else [],
        }
    )


def decode_problem(data: bytes) -> c.Container[Any]:
    """Parses bytes from :func:`encode_problem` back into a container, for inspection."""
    return ProblemStruct.parse(data)


def fingerprint(problem: Problem) -> str:
    return hashlib.sha256(encode_problem(problem)).hexdigest()

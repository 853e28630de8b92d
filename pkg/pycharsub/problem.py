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

"""Contains :class:`Problem`, the validated form of a JSON problem document.

A document looks like::

    {
      "field": {"p": 2},
      "dimension": 3,
      "flavor": "associative",
      "product": [[0, 0, 0, 1], [1, 1, 1, 1], [0, 2, 2, 1], [2, 1, 2, 1]],
      "subspaces": {"N": [[1, 0, 0]], "E3": [[0, 0, 1]], "G": [[1,0,0],[0,1,0],[0,0,1]]},
      "automorphisms": {"phi": [[1, 0, 0], [0, 1, 0], [1, 1, 1]]},
      "words": {"prod": "(* x1 x2)", "comm": "(- (* x1 x2) (* x2 x1))"},
      "series": {"levels": [{"kind": "class", "tag": "nilpotent"},
                            {"kind": "identity", "word": "comm"}],
                 "witness": ["E3", "G"]}
    }

Product entries are ``[i, j, k, coeff]`` with 0-based indices, meaning
``e_i · e_j`` has coefficient ``coeff`` at ``e_k``; omitted triples are zero.
Matrices are row-major, so column ``j`` holds the image of ``e_j``.
"""

from __future__ import annotations

import functools
import json
import logging
import pathlib
from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping, Sequence

from typing_extensions import Final

from pycharsub import _codec
from pycharsub.algebra import Flavor, FlavorReport, StructureAlgebra, validate_flavor
from pycharsub.exactla import FieldPrime, Subspace, matrix_rank, rref
from pycharsub.exceptions import (
    FieldError,
    NotInvertible,
    NotMultilinear,
    NotMultiplicative,
    SchemaError,
    WordSyntaxError,
)
from pycharsub.limits import Limits
from pycharsub.morphisms import (
    Morphism,
    MorphismKind,
    MorphismSet,
    closure,
    general_linear_generators,
    identity,
    validate_morphism,
)
from pycharsub.series import Level, SeriesSpec
from pycharsub.types import ProductEntry, Rows
from pycharsub.words import MultilinearElement, parse_word

__all__ = ["CORPUS", "Problem", "SeriesBlock", "load_problem", "parse_problem", "corpus_names"]

logger = logging.getLogger(__name__)

CORPUS: Final = pathlib.Path(__file__).parent / "corpus"
"""Directory of the bundled example problems."""

PRESETS: Final = ("general-linear",)
_KEYS: Final = frozenset(
    {
        "description",
        "field",
        "dimension",
        "flavor",
        "product",
        "subspaces",
        "automorphisms",
        "automorphism_presets",
        "words",
        "series",
    }
)
_REQUIRED: Final = ("field", "dimension")


@dataclass(frozen=True)
class SeriesBlock:
    spec: SeriesSpec
    witness_names: tuple[str, ...]
    witness: tuple[Subspace, ...]
    level_sources: tuple[dict[str, str], ...]
    """The level objects as written, for echoing into certificates."""

    @property
    def top(self) -> Subspace:
        return self.witness[-1]


@dataclass(frozen=True, eq=False)
class Problem:
    """Objects named by a problem document, parsed but not yet law-checked.

    Flavor and morphism laws are checked by :meth:`findings` and
    :meth:`morphism_set`, so a document with a broken automorphism still loads
    and ``validate`` can report on it.
    """

    algebra: StructureAlgebra
    subspaces: dict[str, Subspace]
    matrices: dict[str, Rows]
    words: dict[str, MultilinearElement]
    series: SeriesBlock | None = None
    presets: tuple[str, ...] = ()
    description: str = ""
    source: Mapping[str, Any] = field(default_factory=dict, repr=False)
    raw_subspaces: dict[str, Rows] = field(default_factory=dict, repr=False)

    @functools.cached_property
    def fingerprint(self) -> str:
        """SHA-256 of the canonical binary encoding; independent of JSON layout."""
        return _codec.fingerprint(self)

    def subspace(self, name: str) -> Subspace:
        try:
            return self.subspaces[name]
        except KeyError:
            raise SchemaError(f"$.subspaces.{name}", "no such subspace") from None

    def word(self, name: str) -> MultilinearElement:
        try:
            return self.words[name]
        except KeyError:
            raise SchemaError(f"$.words.{name}", "no such word") from None

    def morphisms(self) -> dict[str, Morphism]:
        """Every named matrix validated as an automorphism.

        Raises:
            NotMultiplicative: With the offending basis pair.
            NotInvertible: For a singular matrix.
        """
        return {
            name: validate_morphism(self.algebra, matrix, MorphismKind.AUTOMORPHISM)
            for name, matrix in self.matrices.items()
        }

    def morphism_set(self, limits: Limits = Limits()) -> MorphismSet:
        """Closure of the named automorphisms; ``{id}`` when none are given."""
        generators = list(self.morphisms().values())
        if not generators:
            logger.info("No automorphisms given; using the identity only")
            generators = [identity(self.algebra.field, self.algebra.dim)]
        return closure(generators, limits.morphism_cap)

    def findings(self) -> Iterator[str]:
        """Human-readable validation failures; empty when everything checks."""
        report: FlavorReport = validate_flavor(self.algebra)
        if not report:
            yield f"flavor {report}"
        for name, rows in self.raw_subspaces.items():
            canonical = self.subspaces[name]
            p = self.algebra.field.p
            if any(not 0 <= x < p for row in rows for x in row):
                yield f"subspace {name!r} has coordinates outside [0, {p})"
            if matrix_rank(self.algebra.field, rows, self.algebra.dim) != len(rows):
                yield f"subspace {name!r} rows are linearly dependent (rank {canonical.rank})"
        for name, matrix in self.matrices.items():
            try:
                validate_morphism(self.algebra, matrix, MorphismKind.AUTOMORPHISM)
            except (NotMultiplicative, NotInvertible) as exc:
                yield f"automorphism {name!r}: {exc}"


# * Parsing


def _expect(cond: bool, location: str, desc: str) -> None:
    if not cond:
        raise SchemaError(location, desc)


def _int(value: Any, location: str, lo: int | None = None, hi: int | None = None) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), location, "expected an integer")
    if lo is not None:
        _expect(value >= lo, location, f"expected at least {lo}, got {value}")
    if hi is not None:
        _expect(value < hi, location, f"expected less than {hi}, got {value}")
    return value


def _object(value: Any, location: str) -> Mapping[str, Any]:
    _expect(isinstance(value, Mapping), location, "expected an object")
    return value


def _list(value: Any, location: str) -> Sequence[Any]:
    _expect(isinstance(value, list), location, "expected an array")
    return value


def _rows(value: Any, location: str, width: int) -> Rows:
    rows = []
    for r, row in enumerate(_list(value, location)):
        loc = f"{location}[{r}]"
        _expect(
            isinstance(row, list) and len(row) == width, loc, f"expected {width} coordinates"
        )
        rows.append(tuple(_int(x, f"{loc}[{k}]") for k, x in enumerate(row)))
    return tuple(rows)


def _parse_series(
    doc: Mapping[str, Any],
    subspaces: Mapping[str, Subspace],
    words: Mapping[str, MultilinearElement],
) -> SeriesBlock:
    loc = "$.series"
    block = _object(doc, loc)
    unknown = set(block) - {"levels", "witness"}
    _expect(not unknown, loc, f"unknown keys {sorted(unknown)}")
    levels: list[Level] = []
    sources: list[dict[str, str]] = []
    for i, item in enumerate(_list(block.get("levels"), f"{loc}.levels")):
        lloc = f"{loc}.levels[{i}]"
        item = _object(item, lloc)
        kind = item.get("kind")
        if kind == "identity":
            _expect(set(item) == {"kind", "word"}, lloc, "an identity level has kind and word")
            name = item["word"]
            _expect(name in words, f"{lloc}.word", f"unknown word {name!r}")
            levels.append(Level.identity(words[name]))
            sources.append({"kind": "identity", "word": name})
        elif kind == "class":
            _expect(set(item) == {"kind", "tag"}, lloc, "a class level has kind and tag")
            try:
                levels.append(Level.of_class(str(item["tag"])))
            except KeyError as exc:
                raise SchemaError(f"{lloc}.tag", exc.args[0]) from None
            sources.append({"kind": "class", "tag": str(item["tag"]).lower()})
        else:
            raise SchemaError(f"{lloc}.kind", "expected 'identity' or 'class'")
    _expect(bool(levels), f"{loc}.levels", "expected at least one level")

    names = tuple(_list(block.get("witness"), f"{loc}.witness"))
    _expect(len(names) == len(levels), f"{loc}.witness", f"expected {len(levels)} names")
    for i, name in enumerate(names):
        _expect(name in subspaces, f"{loc}.witness[{i}]", f"unknown subspace {name!r}")
    return SeriesBlock(
        SeriesSpec(tuple(levels)),
        names,
        tuple(subspaces[name] for name in names),
        tuple(sources),
    )


def parse_problem(doc: Any) -> Problem:
    """Validates the document structure and builds the named objects.

    Raises:
        SchemaError: With a ``$.path`` location for any structural problem.
    """
    doc = _object(doc, "$")
    unknown = set(doc) - _KEYS
    _expect(not unknown, "$", f"unknown keys {sorted(unknown)}")
    for key in _REQUIRED:
        _expect(key in doc, "$", f"missing key {key!r}")

    fdoc = _object(doc["field"], "$.field")
    _expect(set(fdoc) == {"p"}, "$.field", "expected exactly the key 'p'")
    try:
        field_ = FieldPrime(_int(fdoc["p"], "$.field.p"))
    except FieldError as exc:
        raise SchemaError("$.field.p", str(exc)) from None
    d = _int(doc["dimension"], "$.dimension", lo=0)

    try:
        flavor = Flavor.parse(doc.get("flavor", "general"))
    except (ValueError, AttributeError):
        raise SchemaError("$.flavor", "expected general, associative or lie") from None

    entries = []
    for n, entry in enumerate(_list(doc.get("product", []), "$.product")):
        loc = f"$.product[{n}]"
        _expect(isinstance(entry, list) and len(entry) == 4, loc, "expected [i, j, k, coeff]")
        i, j, k = (_int(x, f"{loc}[{m}]", 0, d) for m, x in enumerate(entry[:3]))
        entries.append(ProductEntry(i, j, k, _int(entry[3], f"{loc}[3]")))
    algebra = StructureAlgebra(field_, d, tuple(entries), flavor)

    raw_subspaces = {
        str(name): _rows(rows, f"$.subspaces.{name}", d)
        for name, rows in _object(doc.get("subspaces", {}), "$.subspaces").items()
    }
    subspaces = {name: rref(field_, rows, d) for name, rows in raw_subspaces.items()}

    matrices: dict[str, Rows] = {}
    for name, rows in _object(doc.get("automorphisms", {}), "$.automorphisms").items():
        loc = f"$.automorphisms.{name}"
        matrix = _rows(rows, loc, d)
        _expect(len(matrix) == d, loc, f"expected a {d}x{d} matrix")
        matrices[str(name)] = tuple(tuple(x % field_.p for x in row) for row in matrix)

    presets = tuple(_list(doc.get("automorphism_presets", []), "$.automorphism_presets"))
    for n, preset in enumerate(presets):
        _expect(preset in PRESETS, f"$.automorphism_presets[{n}]", f"expected one of {PRESETS}")
    if "general-linear" in presets:
        for n, gen in enumerate(general_linear_generators(field_, d)):
            matrices.setdefault(f"gl{n}", gen)

    words = {}
    for name, text in _object(doc.get("words", {}), "$.words").items():
        _expect(isinstance(text, str), f"$.words.{name}", "expected an s-expression string")
        try:
            words[str(name)] = parse_word(text, field_)
        except (WordSyntaxError, NotMultilinear) as exc:
            raise SchemaError(f"$.words.{name}", str(exc)) from exc

    series = None
    if "series" in doc:
        series = _parse_series(doc["series"], subspaces, words)

    description = doc.get("description", "")
    _expect(isinstance(description, str), "$.description", "expected a string")
    return Problem(
        algebra=algebra,
        subspaces=subspaces,
        matrices=matrices,
        words=words,
        series=series,
        presets=presets,
        description=description,
        source=doc,
        raw_subspaces=raw_subspaces,
    )


def corpus_names() -> list[str]:
    return sorted(path.stem for path in CORPUS.glob("*.json"))


def load_problem(source: str | pathlib.Path) -> Problem:
    """Reads a problem from a path, or from the bundled corpus by bare name.

    Raises:
        OSError: When the file cannot be read.
        SchemaError: For malformed JSON or an invalid document.
    """
    path = pathlib.Path(source)
    if not path.exists() and (CORPUS / f"{path.name}.json").exists():
        path = CORPUS / f"{path.name}.json"
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path.name}:{exc.lineno}:{exc.colno}", exc.msg) from exc
    logger.debug("Loaded %s", path)
    return parse_problem(doc)

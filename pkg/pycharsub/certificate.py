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

"""Contains the certificate document format.

A certificate document is ``{"certificate": payload, "digest": ..., "status": ...}``.
The digest is the SHA-256 of the payload's canonical JSON; anything outside
the payload (``status``, ``timing``) is not covered by it, so timings never
disturb byte-identical payloads.
"""

from __future__ import annotations

import hashlib
import json
import pathlib
from typing import Any, Mapping, Sequence

from typing_extensions import Final

from pycharsub.characteristic import CharSubspaceCertificate, Mode
from pycharsub.exactla import Subspace
from pycharsub.exceptions import SchemaError
from pycharsub.lattice import Step
from pycharsub.problem import Problem
from pycharsub.series import SeriesCertificate
from pycharsub.types import Rows

__all__ = [
    "FORMAT_VERSION",
    "canonical_json",
    "digest",
    "char_payload",
    "series_payload",
    "make_document",
    "dump_document",
    "read_document",
    "render_table",
]

FORMAT_VERSION: Final = 1


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(payload: Mapping[str, Any]) -> str:
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


def _basis(space: Subspace) -> list[list[int]]:
    return [list(row) for row in space.basis]


def _space(space: Subspace) -> dict[str, Any]:
    return {"basis": _basis(space), "codim": space.codim}


def _program(steps: Sequence[Step]) -> list[list[Any]]:
    return [[step.op, *step.args] for step in steps]


def _generator_names(problem: Problem, matrices: Sequence[Rows]) -> list[str]:
    """Names the input gives each generator of Φ, so the verifier rebuilds the same closure.

    Raises:
        SchemaError: When a generator is not one of the input's named automorphisms.
    """
    named = {m.matrix: name for name, m in problem.morphisms().items()}
    if not named and all(_is_identity(m) for m in matrices):
        return ["id"]
    names = []
    for matrix in matrices:
        if matrix not in named:
            rows = [list(row) for row in matrix]
            raise SchemaError("phi.generators", f"{rows} is not an automorphism named by the input")
        names.append(named[matrix])
    return names


def _is_identity(matrix: Rows) -> bool:
    return all(v == int(i == j) for i, row in enumerate(matrix) for j, v in enumerate(row))


def _input(problem: Problem) -> dict[str, Any]:
    return {
        "fingerprint": problem.fingerprint,
        "p": problem.algebra.field.p,
        "d": problem.algebra.dim,
    }


def char_payload(
    cert: CharSubspaceCertificate, problem: Problem, command: Mapping[str, Any]
) -> dict[str, Any]:
    request = cert.request
    names = _generator_names(problem, [m for m, _ in cert.invariance])
    payload: dict[str, Any] = {
        "format": FORMAT_VERSION,
        "kind": "char-subspace",
        "command": dict(command),
        "input": _input(problem),
        "phi": {
            "generators": names,
            "size": len(request.phis),
            "notion": "leq",
            "group": request.phis.is_group(),
        },
        "mode": str(request.mode),
        "N": _space(request.subspace),
        "H": _space(cert.H),
        "bound": {"t": request.t, "value": cert.bound, "trace": list(cert.trace)},
        "orbit": [_basis(v) for v in cert.orbit],
        "closure": {
            "size": cert.closure_size,
            "complete": cert.closure.complete,
            "invariant": cert.invariant_count,
            "qualifying": cert.qualifying_count,
        },
        "derivation": _program(cert.derivation),
        "words": [
            {
                "sexpr": w.word.to_sexpr(),
                "degree": w.word.degree,
                "lhs": _basis(w.lhs),
                "rhs": _basis(w.rhs),
            }
            for w in cert.witnesses
        ],
        "invariance": [
            {"generator": name, "image": _basis(image)}
            for name, (_, image) in zip(names, cert.invariance)
        ],
    }
    if request.mode is not Mode.GENERAL and request.target is not None:
        assert cert.image_dims is not None
        payload["corollary"] = {
            "target": request.target.to_sexpr(),
            "dim_w_N": cert.image_dims[0],
            "dim_w_H": cert.image_dims[1],
            "phi_size": len(request.phis),
        }
    return payload


def series_payload(
    cert: SeriesCertificate, problem: Problem, command: Mapping[str, Any]
) -> dict[str, Any]:
    assert problem.series is not None
    names = _generator_names(problem, [m for m, _ in cert.invariance])
    return {
        "format": FORMAT_VERSION,
        "kind": "series",
        "command": dict(command),
        "input": _input(problem),
        "phi": {"generators": names, "notion": "leq"},
        "levels": [dict(source) for source in problem.series.level_sources],
        "N": _space(cert.n),
        "input_chain": [_basis(v) for v in cert.input_chain],
        "seed": [_basis(v) for v in cert.seed],
        "pool": {
            "size": len(cert.closure),
            "complete": cert.closure.complete,
            "invariant": cert.invariant_count,
        },
        "M": _space(cert.m),
        "chain": [
            {"basis": _basis(b), "derivation": _program(steps)}
            for b, steps in zip(cert.witness.chain, cert.derivations)
        ],
        "chain_invariant": True,
        "evidence": [dict(e) for e in cert.witness.evidence],
        "invariance": [
            {"generator": name, "images": [_basis(v) for v in images]}
            for name, (_, images) in zip(names, cert.invariance)
        ],
        "routes": dict(cert.route_codims),
        "predicate_arity": cert.predicate_arity,
    }


def make_document(
    payload: Mapping[str, Any], status: str = "pass", timing: float | None = None
) -> dict[str, Any]:
    document: dict[str, Any] = {"certificate": dict(payload), "digest": digest(payload)}
    document["status"] = status
    if timing is not None:
        document["timing"] = {"seconds": round(timing, 6)}
    return document


def dump_document(document: Mapping[str, Any], path: str | pathlib.Path | None = None) -> str:
    text = json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if path is not None:
        pathlib.Path(path).write_text(text, encoding="utf-8")
    return text


def read_document(path: str | pathlib.Path) -> dict[str, Any]:
    return json.loads(pathlib.Path(path).read_text(encoding="utf-8"))


def render_table(rows: Sequence[tuple[str, str]]) -> str:
    width = max((len(key) for key, _ in rows), default=0)
    return "\n".join(f"{key.ljust(width)}  {value}" for key, value in rows)

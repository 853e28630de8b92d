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

"""
pycharsub - characteristic subspaces of finite-dimensional algebras
===================================================================

Load a problem (a JSON file or a bundled input by name):

    >>> import pycharsub
    >>> problem = pycharsub.load("tri2_gf2")

Find a characteristic subspace of bounded codimension:

    >>> request = pycharsub.CharSubspaceRequest(
    ...     problem.algebra, problem.subspace("N"), problem.morphism_set(), t=2
    ... )
    >>> cert = pycharsub.solve(request)
    >>> cert.codim_H <= cert.bound
    True

Save the certificate:

    >>> pycharsub.save(cert, problem, "/path/to/cert.json")

and check it later with ``pycharsub verify``.
"""  # noqa

from __future__ import annotations

import pathlib
from typing import Any

from pycharsub.certificate import char_payload, dump_document, make_document, series_payload
from pycharsub.characteristic import (
    CharSubspaceCertificate,
    CharSubspaceRequest,
    Mode,
    find_characteristic_family,
    solve,
)
from pycharsub.limits import Limits
from pycharsub.problem import Problem, load_problem
from pycharsub.series import SeriesCertificate, SeriesSpec, find_characteristic_series

__all__ = [
    "CharSubspaceRequest",
    "Limits",
    "Mode",
    "SeriesSpec",
    "find_characteristic_family",
    "find_characteristic_series",
    "load",
    "save",
    "solve",
]


def load(source: pathlib.Path | str) -> Problem:
    """Parses a problem file and returns a validated :class:`Problem`.

    Args:
        source: Path to the JSON file, or the name of a bundled input.

    Raises:
        SchemaError: When the document doesn't follow the input format.
    """
    return load_problem(source)


def _name_of(mapping: dict[str, Any], value: Any) -> str | None:
    return next((name for name, item in mapping.items() if item == value), None)


def save(
    cert: CharSubspaceCertificate | SeriesCertificate,
    problem: Problem,
    file: pathlib.Path | str,
    command: dict[str, Any] | None = None,
) -> None:
    """Writes ``cert`` as a certificate document for ``problem`` to ``file``.

    Without ``command`` the echoed command is rebuilt from the request by
    looking its subspace and words up in ``problem``.
    """
    if isinstance(cert, SeriesCertificate):
        payload = series_payload(cert, problem, command or {})
    else:
        if command is None:
            request = cert.request
            command = {
                "subspace": _name_of(problem.subspaces, request.subspace),
                "t": request.t,
                "mode": str(request.mode),
                "words": [_name_of(problem.words, w) for w in request.words]
                if request.words
                else None,
                "target_word": _name_of(problem.words, request.target)
                if request.target is not None
                else None,
                "closure_cap": request.limits.closure_cap,
                "morphism_cap": request.limits.morphism_cap,
            }
        payload = char_payload(cert, problem, command)
    dump_document(make_document(payload), file)

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

"""Contains :class:`Limits`, the bundle of resource caps handed to the engines."""

from __future__ import annotations

import dataclasses
import logging
import os
from dataclasses import dataclass
from typing import Mapping

from typing_extensions import Final

__all__ = ["Limits", "ENVIRONMENT"]

logger = logging.getLogger(__name__)

ENVIRONMENT: Final = {
    "closure_cap": "PYCHARSUB_CLOSURE_CAP",
    "morphism_cap": "PYCHARSUB_MORPHISM_CAP",
    "degree_cap": "PYCHARSUB_DEGREE_CAP",
    "exhaustive_bound": "PYCHARSUB_EXHAUSTIVE_BOUND",
}
"""Optional environment variables overriding each cap."""


@dataclass(frozen=True)
class Limits:
    """Caps that make an engine stop with an explicit error instead of running unbounded.

    The defaults mirror the module level constants they stand for:
    ``lattice.CLOSURE_CAP``, ``morphisms.MORPHISM_CAP``, ``words.DEGREE_CAP``
    and ``predicates.EXHAUSTIVE_BOUND``.
    """

    closure_cap: int = 50_000
    morphism_cap: int = 10_000
    degree_cap: int = 5
    exhaustive_bound: int = 64
    random_trials: int = 2_000
    seed: int = 0

    def __post_init__(self) -> None:
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if f.name != "seed" and value < 1:
                raise ValueError(f"{f.name} must be positive, got {value}")

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None, **overrides: int | None) -> Limits:
        """Defaults, then environment variables, then non-``None`` ``overrides``."""
        environ = os.environ if environ is None else environ
        values: dict[str, int] = {}
        for name, var in ENVIRONMENT.items():
            raw = environ.get(var)
            if raw is None:
                continue
            try:
                values[name] = int(raw)
            except ValueError:
                raise ValueError(f"{var} must be an integer, got {raw!r}") from None
            logger.debug("%s=%s from the environment", name, raw)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

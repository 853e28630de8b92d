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

"""Contains the slicing and repr helpers shared by result containers."""

from __future__ import annotations

import functools
from typing import Any, Callable, Sequence

from pycharsub.types import T_co


def supports_slice(func: Callable[[Any, int], T_co]) -> Callable[[Any, int | slice], Any]:
    """Wraps an indexed ``__getitem__`` to return a list for slices."""

    @functools.wraps(func)
    def wrapper(self: Any, i: int | slice) -> T_co | Sequence[T_co]:
        if isinstance(i, slice):
            return [func(self, idx) for idx in range(*i.indices(len(self)))]
        return func(self, i)

    return wrapper


class ModelReprMixin:
    """One ``__repr__()`` for every container: lists its public properties."""

    def __repr__(self) -> str:
        mapping: dict[str, Any] = {}
        for var in [var for var in vars(type(self)) if not var.startswith("_")]:
            if isinstance(vars(type(self))[var], property):
                mapping[var] = getattr(self, var, None)

        params = ", ".join([f"{k}={v!r}" for k, v in mapping.items()])
        return f"{type(self).__name__}({params})"

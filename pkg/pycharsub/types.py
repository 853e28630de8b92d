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

from __future__ import annotations

from typing import TYPE_CHECKING, Any, NamedTuple, Tuple, TypeVar

import numpy as np
from typing_extensions import TypeAlias

T = TypeVar("T")
U = TypeVar("U")
T_co = TypeVar("T_co", covariant=True)

Row: TypeAlias = Tuple[int, ...]
"""A vector of residues mod p; also one row of a canonical basis."""

Rows: TypeAlias = Tuple[Row, ...]

if TYPE_CHECKING:
    import numpy.typing as npt

    IntArray: TypeAlias = npt.NDArray[np.int64]
else:
    IntArray = np.ndarray


class ProductEntry(NamedTuple):
    """One structure constant: ``e_i · e_j`` has coefficient ``coeff`` at ``e_k``."""

    i: int
    j: int
    k: int
    coeff: int


def as_row(values: Any) -> Row:
    """Converts any iterable of integers (numpy rows included) to a plain tuple."""
    return tuple(int(v) for v in values)

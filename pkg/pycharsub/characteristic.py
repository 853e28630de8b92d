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

"""Contains the characteristic subspace engine.

Given a subspace ``N``, a finite set ``Φ`` of automorphisms and a set ``W``
of multilinear words of degree at most ``t``, the engine looks for a
``Φ``-invariant ``H`` in the sublattice generated by the images ``φ(N)``
such that ``w(H, …, H)`` lies in ``Σ_φ φ(w(N, …, N))`` for every ``w ∈ W``,
and checks ``codim H ≤ f^{t-1}(codim N)``.
"""

from __future__ import annotations

import dataclasses
import enum
import functools
import logging
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from pycharsub.algebra import StructureAlgebra
from pycharsub.exactla import Subspace
from pycharsub.exceptions import (
    ClosureIncomplete,
    DimensionMismatch,
    HypothesisFailed,
    TheoremViolation,
)
from pycharsub.lattice import (
    Step,
    SublatticeClosure,
    derivation,
    f_trace,
    invariant_elements,
    phi_sum,
    sublattice_closure,
)
from pycharsub.limits import Limits
from pycharsub.morphisms import MorphismSet, apply, orbit
from pycharsub.types import Rows
from pycharsub.words import MultilinearElement, eval_span, nonvanishing_witness, words_up_to

__all__ = [
    "Mode",
    "CharSubspaceRequest",
    "WordWitness",
    "CharSubspaceCertificate",
    "property_P",
    "find_characteristic_subspace",
    "corollary_identity",
    "corollary_bounded_image",
    "find_characteristic_family",
    "solve",
]

logger = logging.getLogger(__name__)


class Mode(str, enum.Enum):
    GENERAL = "general"
    IDENTITY = "identity"
    """``w(N, …, N) = 0`` is assumed and carried over to ``H``."""

    BOUNDED_IMAGE = "bounded-image"
    """``dim w(H, …, H) ≤ |Φ| · dim w(N, …, N)`` is recorded."""

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CharSubspaceRequest:
    """Everything :func:`find_characteristic_subspace` needs.

    When ``words`` is ``None`` the word set defaults to every monomial of
    degree at most ``t``; the identity and bounded-image modes add ``target``
    to it.

    Raises:
        ValueError: On ``t < 1``, a word of degree above ``t`` or a mode that
            lacks its target word.
        DimensionMismatch: When ``N`` or ``Φ`` live on another ambient.
    """

    algebra: StructureAlgebra
    subspace: Subspace
    phis: MorphismSet
    t: int
    words: tuple[MultilinearElement, ...] | None = None
    mode: Mode = Mode.GENERAL
    target: MultilinearElement | None = None
    limits: Limits = Limits()

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.words is not None:
            object.__setattr__(self, "words", tuple(self.words))
        if self.t < 1:
            raise ValueError(f"t must be at least 1, got {self.t}")
        if self.subspace.ambient_dim != self.algebra.dim:
            raise DimensionMismatch(
                "ambient dimension", self.algebra.dim, self.subspace.ambient_dim
            )
        if any(phi.dim != self.algebra.dim for phi in self.phis.generators):
            raise DimensionMismatch("morphism dimension", self.algebra.dim, self.phis[0].dim)
        if self.mode is not Mode.GENERAL and self.target is None:
            raise ValueError(f"Mode {self.mode} needs a target word")
        for word in self.word_set:
            if word.degree > self.t:
                raise ValueError(f"Word {word} has degree {word.degree} > t = {self.t}")

    @functools.cached_property
    def word_set(self) -> tuple[MultilinearElement, ...]:
        """``W``, duplicates removed, in a stable order."""
        if self.words is not None:
            words = list(self.words)
        else:
            words = words_up_to(self.t, self.algebra.field, self.limits.degree_cap)
        if self.target is not None:
            words.append(self.target)
        return tuple(dict.fromkeys(words))

    @functools.cached_property
    def targets(self) -> dict[MultilinearElement, Subspace]:
        """``Σ_φ φ(w(N, …, N))`` per word."""
        return {
            w: phi_sum(eval_span(w, self.algebra, (self.subspace,) * w.degree), self.phis)
            for w in self.word_set
        }

    def replace(self, **changes: object) -> CharSubspaceRequest:
        return dataclasses.replace(self, **changes)  # type: ignore[arg-type]


class WordWitness(NamedTuple):
    """``lhs = w(H, …, H)`` and the target ``rhs`` it is contained in."""

    word: MultilinearElement
    lhs: Subspace
    rhs: Subspace


@dataclass(frozen=True)
class CharSubspaceCertificate:
    request: CharSubspaceRequest
    H: Subspace
    codim_N: int
    codim_H: int
    bound: int
    trace: tuple[int, ...]
    """``f⁰(codim N), …, f^{t-1}(codim N)``."""

    orbit: tuple[Subspace, ...]
    closure: SublatticeClosure
    invariant_count: int
    qualifying_count: int
    derivation: tuple[Step, ...]
    """Rebuilds ``H`` from :attr:`orbit` with sums and intersections."""

    witnesses: tuple[WordWitness, ...]
    invariance: tuple[tuple[Rows, Subspace], ...]
    """``(φ, φ(H))`` for every generator."""

    image_dims: tuple[int, int] | None = None
    """``(dim w(N, …, N), dim w(H, …, H))`` for the target word, when there is one."""

    @property
    def closure_size(self) -> int:
        return len(self.closure)

    @property
    def phi_size(self) -> int:
        return len(self.request.phis)

    def summary(self) -> list[tuple[str, str]]:
        rows = [
            ("mode", str(self.request.mode)),
            ("t", str(self.request.t)),
            ("codim N", str(self.codim_N)),
            ("codim H", str(self.codim_H)),
            ("bound", str(self.bound)),
            ("|Φ|", str(self.phi_size)),
            ("orbit", str(len(self.orbit))),
            ("closure size", str(self.closure_size)),
            ("H", str(self.H)),
        ]
        if self.image_dims is not None:
            rows.append(("dim w(N..N) / w(H..H)", "{} / {}".format(*self.image_dims)))
        return rows


def property_P(args: Sequence[Subspace], request: CharSubspaceRequest) -> bool:
    """``w(args[:k]) ⊆ Σ_φ φ(w(N, …, N))`` for every word ``w`` of degree ``k``.

    Raises:
        DimensionMismatch: When ``len(args) != request.t``.
    """
    if len(args) != request.t:
        raise DimensionMismatch("property arity", request.t, len(args))
    return all(
        eval_span(w, request.algebra, tuple(args[: w.degree])) <= target
        for w, target in request.targets.items()
    )


def _dump(request: CharSubspaceRequest, closure: SublatticeClosure, **extra: object) -> dict:
    return {
        "N": [list(row) for row in request.subspace.basis],
        "t": request.t,
        "phi": [[list(row) for row in g.matrix] for g in request.phis.generators],
        "words": [w.to_sexpr() for w in request.word_set],
        "closure_size": len(closure),
        **extra,
    }


def find_characteristic_subspace(request: CharSubspaceRequest) -> CharSubspaceCertificate:
    """Least-codimension invariant element of the orbit sublattice that satisfies ``P``.

    Ties are broken by the canonical basis. Soundness of the result is
    checked before it is returned.

    Raises:
        HypothesisFailed: When ``P(N, …, N)`` is false (only possible when
            ``Φ`` lacks the identity).
        ClosureIncomplete: When the sublattice closure hits its cap.
        TheoremViolation: When no candidate qualifies or the bound fails.
    """
    algebra, n = request.algebra, request.subspace
    if not property_P((n,) * request.t, request):
        raise HypothesisFailed("P(N, ..., N) is false", n.basis)

    images = orbit(n, request.phis)
    closure = sublattice_closure(images, request.limits.closure_cap)
    if not closure.complete:
        raise ClosureIncomplete("sublattice closure", closure.cap, len(closure))
    invariant = invariant_elements(closure, request.phis)
    qualifying = [c for c in invariant if property_P((c,) * request.t, request)]
    logger.debug(
        "%d closure elements, %d invariant, %d satisfy P",
        len(closure),
        len(invariant),
        len(qualifying),
    )

    trace = f_trace(request.t - 1, n.codim)
    if not qualifying:
        raise TheoremViolation(
            "no invariant element of a complete closure satisfies P", _dump(request, closure)
        )
    h = min(qualifying, key=lambda c: (c.codim, c.key))
    if h.codim > trace[-1]:
        raise TheoremViolation(
            f"codim H = {h.codim} exceeds f^{request.t - 1}({n.codim}) = {trace[-1]}",
            _dump(request, closure, H=[list(row) for row in h.basis]),
        )

    witnesses = tuple(
        WordWitness(w, eval_span(w, algebra, (h,) * w.degree), target)
        for w, target in request.targets.items()
    )
    invariance = tuple((g.matrix, apply(g, h)) for g in request.phis.generators)
    logger.info("H = %s with codim %d <= %d", h, h.codim, trace[-1])
    return CharSubspaceCertificate(
        request=request,
        H=h,
        codim_N=n.codim,
        codim_H=h.codim,
        bound=trace[-1],
        trace=tuple(trace),
        orbit=images,
        closure=closure,
        invariant_count=len(invariant),
        qualifying_count=len(qualifying),
        derivation=derivation(closure, h),
        witnesses=witnesses,
        invariance=invariance,
    )


def _image_dims(cert: CharSubspaceCertificate, word: MultilinearElement) -> tuple[int, int]:
    algebra, d = cert.request.algebra, word.degree
    return (
        eval_span(word, algebra, (cert.request.subspace,) * d).rank,
        eval_span(word, algebra, (cert.H,) * d).rank,
    )


def corollary_identity(request: CharSubspaceRequest) -> CharSubspaceCertificate:
    """An invariant ``H`` on which the identity ``w = 0`` holds, given that it holds on ``N``.

    Raises:
        HypothesisFailed: With a basis tuple on which ``w`` does not vanish.
        TheoremViolation: When ``w(H, …, H) ≠ 0``.
    """
    word = request.target
    if request.mode is not Mode.IDENTITY or word is None:
        raise ValueError("corollary_identity() needs an identity-mode request")
    args = (request.subspace,) * word.degree
    witness = nonvanishing_witness(word, request.algebra, args)
    if witness is not None:
        raise HypothesisFailed(f"{word} does not vanish on N", witness)

    cert = find_characteristic_subspace(request)
    dims = _image_dims(cert, word)
    if dims[1]:
        raise TheoremViolation(
            f"{word} does not vanish on H", {"H": [list(r) for r in cert.H.basis]}
        )
    return dataclasses.replace(cert, image_dims=dims)


def corollary_bounded_image(request: CharSubspaceRequest) -> CharSubspaceCertificate:
    """Records ``dim w(H, …, H) ≤ |Φ| · dim w(N, …, N)`` for the target word.

    Raises:
        TheoremViolation: When the inequality fails.
    """
    word = request.target
    if request.mode is not Mode.BOUNDED_IMAGE or word is None:
        raise ValueError("corollary_bounded_image() needs a bounded-image request")
    cert = find_characteristic_subspace(request)
    dims = _image_dims(cert, word)
    if dims[1] > len(request.phis) * dims[0]:
        raise TheoremViolation(
            f"dim w(H..H) = {dims[1]} exceeds |Φ| * dim w(N..N) = {len(request.phis) * dims[0]}",
            {"H": [list(r) for r in cert.H.basis]},
        )
    return dataclasses.replace(cert, image_dims=dims)


def solve(request: CharSubspaceRequest) -> CharSubspaceCertificate:
    """Dispatches on :attr:`CharSubspaceRequest.mode`."""
    if request.mode is Mode.IDENTITY:
        return corollary_identity(request)
    if request.mode is Mode.BOUNDED_IMAGE:
        return corollary_bounded_image(request)
    return find_characteristic_subspace(request)


def find_characteristic_family(request: CharSubspaceRequest) -> list[CharSubspaceCertificate]:
    """``H_1, …, H_t``: ``H_k`` answers the request cut down to words of degree at most ``k``.

    Raises:
        TheoremViolation: When some ``H_{k+1}`` breaks a constraint of degree at most ``k``.
    """
    family: list[CharSubspaceCertificate] = []
    for k in range(1, request.t + 1):
        words = None
        if request.words is not None:
            words = tuple(w for w in request.words if w.degree <= k)
        target = request.target
        if target is not None and target.degree > k:
            target = None
        mode = request.mode if target is not None else Mode.GENERAL
        sub = request.replace(t=k, words=words, target=target, mode=mode)
        family.append(solve(sub))

    for lower, upper in zip(family, family[1:]):
        lower_request = lower.request
        if not property_P((upper.H,) * lower_request.t, lower_request):
            raise TheoremViolation(
                f"H_{upper.request.t} breaks a constraint of degree <= {lower_request.t}",
                {"H": [list(r) for r in upper.H.basis]},
            )
    return family

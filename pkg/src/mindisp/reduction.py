"""Boxes with k sides (0,u) and l sides (u,1), the coordinate families they induce,
and the slab/stretch construction used for rescaling."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .cff import CoverWitness, SetFamily, verify_cover_free
from .errors import (
    DimensionMismatchError,
    DimensionValidityError,
    DomainError,
    EpsilonValidityError,
    ParameterError,
)
from .geometry import AxisBox, PointSet, box_contains


@dataclass(frozen=True)
class BoxFamilyParams:
    d: int
    k: int
    ell: int
    u: float
    eps: float | None = None

    def __post_init__(self):
        if self.k < 1 or self.ell < 1:
            raise ParameterError(f"need k >= 1 and ell >= 1, got k={self.k}, ell={self.ell}")
        if self.k + self.ell > self.d:
            raise DimensionValidityError(
                f"k + ell = {self.k + self.ell} exceeds d = {self.d}", "k + ell <= d"
            )
        if not 0.0 < self.u < 1.0:
            raise ParameterError(f"u must lie in (0, 1), got {self.u}")

    @property
    def box_volume(self) -> float:
        return self.u**self.k * (1.0 - self.u) ** self.ell

    @property
    def family_size(self) -> int:
        return math.comb(self.d, self.k) * math.comb(self.d - self.k, self.ell)

    def to_json(self) -> dict:
        return {"d": self.d, "k": self.k, "ell": self.ell, "u": self.u, "eps": self.eps}


@dataclass(frozen=True)
class BoxSpec:
    """Index sets (1-based) of the ``(0,u)`` sides ``K`` and the ``(u,1)`` sides ``L``."""

    K: tuple[int, ...]
    L: tuple[int, ...]

    def __post_init__(self):
        if set(self.K) & set(self.L):
            raise ParameterError("K and L must be disjoint")

    def to_json(self) -> dict:
        return {"K": list(self.K), "L": list(self.L)}


def _ell_for(u: float) -> int:
    ell = math.floor(1.0 / u)
    # Guard the floor against a reciprocal that rounded across an integer.
    while (ell + 1) * u <= 1.0:
        ell += 1
    while ell > 0 and ell * u > 1.0:
        ell -= 1
    return ell


def reduction_params(eps: float, k: int, d: int) -> BoxFamilyParams:
    """``u = (4 eps)^(1/k)`` and ``ell = floor(1/u)``; every box of the family then has volume > eps."""
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    upper = 2.0 ** (-k - 2)
    if not 0.0 < eps < upper:
        raise EpsilonValidityError(
            f"eps = {eps} outside (0, 2^-(k+2)) = (0, {upper}) for k = {k}", "0 < eps < 2^-(k+2)"
        )
    u = (4.0 * eps) ** (1.0 / k)
    ell = _ell_for(u)
    if d < k + ell:
        raise DimensionValidityError(
            f"d = {d} < k + floor((4 eps)^(-1/k)) = {k + ell}", "d >= k + floor((4 eps)^(-1/k))"
        )
    return BoxFamilyParams(d, k, ell, u, eps)


def to_box(spec: BoxSpec, params: BoxFamilyParams) -> AxisBox:
    if len(spec.K) != params.k or len(spec.L) != params.ell:
        raise ParameterError(
            f"spec has |K|={len(spec.K)}, |L|={len(spec.L)}; params need {params.k}, {params.ell}"
        )
    if any(not 1 <= i <= params.d for i in spec.K + spec.L):
        raise ParameterError(f"indices must lie in 1..{params.d}")
    lower = [0.0] * params.d
    upper = [1.0] * params.d
    for i in spec.K:
        upper[i - 1] = params.u
    for i in spec.L:
        lower[i - 1] = params.u
    return AxisBox(lower, upper)


def enumerate_box_family(params: BoxFamilyParams) -> Iterator[BoxSpec]:
    """Lazily yield every ``(K, L)`` once, ``K`` then ``L`` in lexicographic order."""
    dims = range(1, params.d + 1)
    for K in itertools.combinations(dims, params.k):
        rest = [j for j in dims if j not in K]
        for L in itertools.combinations(rest, params.ell):
            yield BoxSpec(K, L)


def extract_family(X: PointSet, u: float) -> SetFamily:
    """Set ``j`` holds the (1-based) indices of points whose ``j``-th coordinate is below ``u``."""
    if not 0.0 < u < 1.0:
        raise ParameterError(f"u must lie in (0, 1), got {u}")
    sets = [
        frozenset(m for m, p in enumerate(X.points, start=1) if p[j] < u) for j in range(X.dim)
    ]
    return SetFamily(len(X), tuple(sets))


def hits_all_boxes(X: PointSet, params: BoxFamilyParams) -> BoxSpec | None:
    """None if every box of the family contains a point of ``X``; else the first unhit spec."""
    if X.dim != params.d:
        raise DimensionMismatchError(f"point set has dim {X.dim}, params have d = {params.d}")
    for spec in enumerate_box_family(params):
        box = to_box(spec, params)
        if not any(box_contains(box, p) for p in X.points):
            return spec
    return None


@dataclass(frozen=True)
class ReductionReport:
    params: BoxFamilyParams
    verdict: str
    lemma_direction: str
    witness: BoxSpec | CoverWitness | None = None
    unhit_is_violation: bool | None = None

    def to_json(self) -> dict:
        out = {
            "params": self.params.to_json(),
            "verdict": self.verdict,
            "witness": None if self.witness is None else self.witness.to_json(),
            "lemma_direction": self.lemma_direction,
        }
        if self.unhit_is_violation is not None:
            out["unhit_is_violation"] = self.unhit_is_violation
        return out


def reduction_consistency(
    X: PointSet,
    eps: float | None = None,
    k: int | None = None,
    *,
    params: BoxFamilyParams | None = None,
) -> ReductionReport:
    """Exercise the hitting-set / cover-free link on a concrete point set.

    Either ``eps`` and ``k`` are given (parameters derived as in
    :func:`reduction_params`) or ``params`` is supplied directly.

    * every box hit (``lemma_direction="forward"``): the coordinate family must
      be ``(k, ell)``-cover-free; ``verdict`` is ``"cover-free"`` or, if the
      implication ever failed, ``"inconsistent"``;
    * some box unhit (``"contrapositive"``): ``verdict`` is ``"unhit"``, the
      witness is the first unhit spec, and ``unhit_is_violation`` records
      whether that ``(K, L)`` is itself a cover-free violation of the family;
    * empty ``X`` (``"vacuous"``): nothing is claimed.
    """
    if params is None:
        if eps is None or k is None:
            raise ParameterError("give either eps and k, or params")
        params = reduction_params(eps, k, X.dim)
    if len(X) == 0:
        return ReductionReport(params, "vacuous", "vacuous")
    unhit = hits_all_boxes(X, params)
    F = extract_family(X, params.u)
    if unhit is None:
        verdict = verify_cover_free(F, params.k, params.ell)
        return ReductionReport(
            params, "cover-free" if verdict else "inconsistent", "forward", verdict.witness
        )
    masks = F.masks
    inter = masks[unhit.K[0] - 1]
    for i in unhit.K[1:]:
        inter &= masks[i - 1]
    union = 0
    for j in unhit.L:
        union |= masks[j - 1]
    return ReductionReport(params, "unhit", "contrapositive", unhit, inter & ~union == 0)


# -- rescaling: slabs and the stretch map -------------------------------------

def partition_index(x: Sequence[float], b: int) -> int:
    """Slab ``i`` in ``1..b`` with ``(i-1)/b < x_1 < i/b``; boundary points go to ``floor(b x_1) + 1`` capped at ``b``."""
    if b < 1:
        raise ParameterError(f"b must be >= 1, got {b}")
    if not 0.0 <= x[0] <= 1.0:
        raise DomainError(f"first coordinate {x[0]} outside [0, 1]")
    return min(math.floor(b * x[0]) + 1, b)


def stretch_map(x: Sequence[float], b: int) -> tuple[float, ...]:
    """Map the first slab ``(0, 1/b) x (0,1)^(d-1)`` onto the open cube by ``x_1 -> b x_1``."""
    if b < 1:
        raise ParameterError(f"b must be >= 1, got {b}")
    if not (0.0 < x[0] < 1.0 / b and all(0.0 < c < 1.0 for c in x[1:])):
        raise DomainError(f"point {tuple(x)} is not in the first slab for b = {b}")
    return (b * x[0],) + tuple(x[1:])


def stretch_box(box: AxisBox, b: int) -> AxisBox:
    """Image of a box inside the first slab under :func:`stretch_map`."""
    if box.upper[0] > 1.0 / b:
        raise DomainError(f"box is not inside the first slab for b = {b}")
    return AxisBox((b * box.lower[0],) + box.lower[1:], (min(b * box.upper[0], 1.0),) + box.upper[1:])

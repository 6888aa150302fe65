"""Point sets and open axis-parallel boxes in the unit cube, plus generators and file IO."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, MalformedBoxError, ParameterError, ParseError

GENERATORS = ("uniform-random", "equispaced-1d", "centered-grid", "van-der-corput")


@dataclass(frozen=True)
class PointSet:
    """Finite multiset of points in ``[0, 1]^dim``; duplicates count separately."""

    dim: int
    points: tuple[tuple[float, ...], ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ParameterError(f"dimension must be >= 1, got {self.dim}")
        pts = tuple(tuple(float(c) for c in p) for p in self.points)
        for m, p in enumerate(pts):
            if len(p) != self.dim:
                raise DimensionMismatchError(
                    f"point {m + 1} has {len(p)} coordinates, expected {self.dim}"
                )
            for c in p:
                if not 0.0 <= c <= 1.0:
                    raise ParameterError(f"coordinate {c!r} of point {m + 1} outside [0, 1]")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def coord(self, m: int, i: int) -> float:
        """Coordinate ``i`` (1-based) of point ``m`` (1-based)."""
        return self.points[m - 1][i - 1]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float).reshape(len(self.points), self.dim)

    @classmethod
    def from_array(cls, arr) -> "PointSet":
        arr = np.asarray(arr, dtype=float)
        if arr.ndim != 2:
            raise ParameterError("expected a 2-d array of shape (n, d)")
        return cls(arr.shape[1], tuple(map(tuple, arr.tolist())))


@dataclass(frozen=True)
class AxisBox:
    """Open box prod_i (lower_i, upper_i) inside the unit cube."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        lo = tuple(float(a) for a in self.lower)
        hi = tuple(float(b) for b in self.upper)
        if len(lo) != len(hi) or not lo:
            raise MalformedBoxError("lower and upper must be nonempty and of equal length")
        for i, (a, b) in enumerate(zip(lo, hi), start=1):
            if not (0.0 <= a < b <= 1.0):
                raise MalformedBoxError(f"side {i} is ({a!r}, {b!r}); need 0 <= a < b <= 1")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self) -> int:
        return len(self.lower)

    @classmethod
    def unit(cls, dim: int) -> "AxisBox":
        return cls((0.0,) * dim, (1.0,) * dim)

    def to_json(self) -> dict:
        return {"lower": list(self.lower), "upper": list(self.upper)}


def box_volume(box: AxisBox) -> float:
    # Multiply in coordinate order starting from 1.0; the exact search relies on
    # this order to reproduce witness volumes bit for bit.
    vol = 1.0
    for a, b in zip(box.lower, box.upper):
        vol *= b - a
    return vol


def box_contains(box: AxisBox, point: Sequence[float]) -> bool:
    if len(point) != box.dim:
        raise DimensionMismatchError(f"point has {len(point)} coordinates, box has {box.dim}")
    return all(a < x < b for a, x, b in zip(box.lower, point, box.upper))


def box_avoids_all(box: AxisBox, X: PointSet) -> bool:
    if X.dim != box.dim:
        raise DimensionMismatchError(f"point set has dim {X.dim}, box has {box.dim}")
    return not any(box_contains(box, p) for p in X.points)


def first_primes(count: int) -> list[int]:
    primes: list[int] = []
    cand = 2
    while len(primes) < count:
        if all(cand % p for p in primes if p * p <= cand):
            primes.append(cand)
        cand += 1
    return primes


def radical_inverse(index: int, base: int) -> float:
    """Van der Corput radical inverse of ``index`` in ``base``."""
    inv, denom = 0, 1
    while index:
        index, digit = divmod(index, base)
        inv = inv * base + digit
        denom *= base
    return inv / denom


def generate_points(kind: str, n: int = 0, d: int = 1, m: int | None = None, seed: int = 0) -> PointSet:
    """Deterministic point-set generators.

    * ``uniform-random``: ``n`` i.i.d. uniform points from numpy's PCG64
      generator seeded with ``seed``.
    * ``equispaced-1d``: ``{i/(n+1)}`` for ``i = 1..n``; requires ``d == 1``.
    * ``centered-grid``: the ``m**d`` points with coordinates ``(2j-1)/(2m)``,
      in lexicographic order; ``n`` is ignored.
    * ``van-der-corput``: radical-inverse points with indices ``1..n`` in bases
      given by the first ``d`` primes (index 0, the origin, is skipped).
    """
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    if d < 1:
        raise ParameterError(f"dimension must be >= 1, got {d}")
    if kind == "uniform-random":
        rng = np.random.Generator(np.random.PCG64(seed))
        return PointSet.from_array(rng.random((n, d))) if n else PointSet(d)
    if kind == "equispaced-1d":
        if d != 1:
            raise ParameterError("equispaced-1d requires d == 1")
        return PointSet(1, tuple((i / (n + 1),) for i in range(1, n + 1)))
    if kind == "centered-grid":
        if m is None or m < 1:
            raise ParameterError("centered-grid requires m >= 1")
        axis = [(2 * j - 1) / (2 * m) for j in range(1, m + 1)]
        return PointSet(d, tuple(itertools.product(axis, repeat=d)))
    if kind == "van-der-corput":
        bases = first_primes(d)
        return PointSet(d, tuple(tuple(radical_inverse(i, b) for b in bases) for i in range(1, n + 1)))
    raise ParameterError(f"unknown generator kind {kind!r}; choose from {', '.join(GENERATORS)}")


# -- point-set files ---------------------------------------------------------

def parse_points(text: str) -> PointSet:
    """Parse the comma-separated point format (``#`` comments, optional ``dim=<d>``)."""
    dim: int | None = None
    rows: list[tuple[float, ...]] = []
    seen_data = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not seen_data and line.startswith("dim="):
            try:
                dim = int(line[4:])
            except ValueError:
                raise ParseError(f"bad dimension header {line!r}", lineno) from None
            if dim < 1:
                raise ParseError("dimension must be >= 1", lineno)
            seen_data = True
            continue
        seen_data = True
        try:
            row = tuple(float(tok) for tok in line.split(","))
        except ValueError:
            raise ParseError(f"malformed coordinate in {line!r}", lineno) from None
        if any(not math.isfinite(c) or not 0.0 <= c <= 1.0 for c in row):
            raise ParseError(f"coordinate outside [0, 1] in {line!r}", lineno)
        if dim is None:
            dim = len(row)
        if len(row) != dim:
            raise ParseError(f"expected {dim} coordinates, got {len(row)}", lineno)
        rows.append(row)
    if dim is None:
        raise ParseError("no points and no dim= header; cannot infer dimension")
    return PointSet(dim, tuple(rows))


def format_points(X: PointSet) -> str:
    lines = [f"dim={X.dim}"]
    lines += [",".join(f"{c:.17g}" for c in p) for p in X.points]
    return "\n".join(lines) + "\n"


def read_points(path: str | Path) -> PointSet:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_points(text)


def write_points(X: PointSet, path: str | Path) -> None:
    Path(path).write_text(format_points(X), encoding="utf-8")


"""(k, r)-cover-free families: verification, exact small-instance search, and bounds.

Sets are stored as Python ``int`` bit masks over the ground set (bit ``e - 1``
is element ``e``), which gives word-level union/intersection/subset tests and
grows to multiple words transparently.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import BudgetExhausted, ParameterError, ParseError, ValidityError


@dataclass(frozen=True)
class SetFamily:
    """Ordered family of subsets of ``{1, ..., ground_size}``; repeats and empty sets allowed."""

    ground_size: int
    sets: tuple[frozenset[int], ...] = ()

    def __post_init__(self):
        if self.ground_size < 0:
            raise ParameterError("ground size must be >= 0")
        sets = tuple(frozenset(int(e) for e in s) for s in self.sets)
        for j, s in enumerate(sets, start=1):
            bad = [e for e in s if not 1 <= e <= self.ground_size]
            if bad:
                raise ParameterError(f"set {j} has elements {sorted(bad)} outside 1..{self.ground_size}")
        object.__setattr__(self, "sets", sets)

    def __len__(self) -> int:
        return len(self.sets)

    @property
    def masks(self) -> list[int]:
        return [sum(1 << (e - 1) for e in s) for s in self.sets]

    @classmethod
    def from_masks(cls, ground_size: int, masks: Iterable[int]) -> "SetFamily":
        return cls(
            ground_size,
            tuple(frozenset(e + 1 for e in range(ground_size) if m >> e & 1) for m in masks),
        )

    def to_json(self) -> dict:
        return {"ground": self.ground_size, "sets": [sorted(s) for s in self.sets]}


@dataclass(frozen=True)
class CoverWitness:
    """Certificate of a violation: the intersection over ``K`` lies inside the union over ``L``.

    Indices are 1-based positions in the family.
    """

    K: tuple[int, ...]
    L: tuple[int, ...]

    def to_json(self) -> dict:
        return {"K": list(self.K), "L": list(self.L)}


@dataclass(frozen=True)
class CoverFreeVerdict:
    cover_free: bool
    witness: CoverWitness | None = None

    def __bool__(self) -> bool:
        return self.cover_free

    def to_json(self) -> dict:
        out: dict = {"verdict": "cover-free" if self.cover_free else "violation"}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _cover_with_at_most(target: int, masks: Sequence[int], pool: list[int], r: int) -> list[int] | None:
    """Indices from ``pool`` (at most ``r``) whose masks cover ``target``, or None.

    Branches on the lowest uncovered element: some chosen set has to contain it.
    """
    if target == 0:
        return []
    if r == 0:
        return None
    low = target & -target
    for pos, j in enumerate(pool):
        if masks[j] & low:
            rest = _cover_with_at_most(target & ~masks[j], masks, pool[pos + 1 :] + pool[:pos], r - 1)
            if rest is not None:
                return [j] + rest
    return None


def _find_violation(masks: Sequence[int], k: int, r: int) -> CoverWitness | None:
    d = len(masks)
    for K in itertools.combinations(range(d), k):
        inter = masks[K[0]]
        for i in K[1:]:
            inter &= masks[i]
        others = [j for j in range(d) if j not in K]
        cover = _cover_with_at_most(inter, masks, others, r)
        if cover is not None:
            # Pad to exactly r members with the smallest unused indices.
            chosen = set(cover)
            for j in others:
                if len(chosen) == r:
                    break
                chosen.add(j)
            return CoverWitness(tuple(i + 1 for i in K), tuple(sorted(j + 1 for j in chosen)))
    return None


def verify_cover_free(F: SetFamily, k: int, r: int) -> CoverFreeVerdict:
    """Check that no intersection of ``k`` members lies in the union of ``r`` other members."""
    if k < 1 or r < 1:
        raise ParameterError(f"need k >= 1 and r >= 1, got k={k}, r={r}")
    if k + r > len(F):
        raise ParameterError(f"k + r = {k + r} exceeds the family size {len(F)}")
    witness = _find_violation(F.masks, k, r)
    return CoverFreeVerdict(witness is None, witness)


def witness_holds(F: SetFamily, w: CoverWitness) -> bool:
    """Independent re-check of a violation certificate on plain sets."""
    if set(w.K) & set(w.L):
        return False
    inter = frozenset.intersection(*(F.sets[i - 1] for i in w.K))
    union = frozenset().union(*(F.sets[j - 1] for j in w.L))
    return inter <= union


# -- exact C(k, r, d) ----------------------------------------------------------

@dataclass(frozen=True)
class GroundSizeResult:
    """Exact ``C(k, r, d)`` (``lo == hi``) or a proven bracket after budget exhaustion."""

    lo: int
    hi: int
    family: SetFamily | None = None
    nodes: int = 0

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int | None:
        return self.lo if self.exact else None

    def to_json(self) -> dict:
        if self.exact:
            out: dict = {"C": self.lo}
        else:
            out = {"bracket": [self.lo, self.hi], "note": "node budget exhausted"}
        if self.family is not None:
            out["family"] = self.family.to_json()
        out["nodes"] = self.nodes
        return out


def _column_family(d: int, columns: Sequence[int]) -> SetFamily:
    # Element e belongs to set i iff bit i of its membership column is set.
    sets = [frozenset(e + 1 for e, col in enumerate(columns) if col >> i & 1) for i in range(d)]
    return SetFamily(len(columns), tuple(sets))


def _requirements(k: int, r: int, d: int) -> list[tuple[int, int]]:
    reqs = []
    for K in itertools.combinations(range(d), k):
        rest = [j for j in range(d) if j not in K]
        kmask = sum(1 << i for i in K)
        for L in itertools.combinations(rest, r):
            reqs.append((kmask, sum(1 << j for j in L)))
    return reqs


def min_ground_size(k: int, r: int, d: int, node_budget: int = 10**7) -> GroundSizeResult:
    """Smallest ground size admitting a ``d``-member ``(k, r)``-cover-free family.

    The search works on element membership columns: element ``e`` is described
    by the subset ``M_e`` of family indices containing it, and the family is
    ``(k, r)``-cover-free exactly when every disjoint pair ``(K, L)`` with
    ``|K| = k``, ``|L| = r`` has some element with ``K <= M_e`` and
    ``M_e & L = 0``.  Repeated columns never help, so a family on ``n``
    elements is a set of at most ``n`` distinct columns; this removes all
    ground-element relabelings.  For ``n = 1, 2, ...`` a backtracking search
    branches on the hardest unmet requirement, and a column rejected at one
    branch is excluded from its later siblings.

    The ``k``-subsets of ``[d]`` used as columns always work, giving the
    upper end ``binom(d, k)`` of the bracket reported on budget exhaustion.
    """
    if k < 1 or r < 1 or d < 1:
        raise ParameterError("k, r and d must be positive")
    if d < k + r:
        raise ParameterError(f"d = {d} < k + r = {k + r}; the cover-free condition is vacuous")
    reqs = _requirements(k, r, d)
    cols = [m for m in range(1 << d) if bin(m).count("1") >= k and bin(~m & ((1 << d) - 1)).count("1") >= r]
    meets = {c: frozenset(q for q, (km, lm) in enumerate(reqs) if c & km == km and not c & lm) for c in cols}
    upper = math.comb(d, k)
    nodes = 0

    def search(unmet: frozenset[int], allowed: list[int], depth: int, chosen: list[int]) -> list[int] | None:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExhausted("node budget exhausted")
        if not unmet:
            return chosen
        if depth == 0:
            return None
        # Pigeonhole cut: each column meets at most max_cover of the unmet requirements.
        max_cover = max((len(meets[c] & unmet) for c in allowed), default=0)
        if max_cover * depth < len(unmet):
            return None
        target = min(unmet, key=lambda q: sum(1 for c in allowed if q in meets[c]))
        options = [c for c in allowed if target in meets[c]]
        options.sort(key=lambda c: (-len(meets[c] & unmet), c))
        remaining = list(allowed)
        for c in options:
            remaining.remove(c)
            found = search(unmet - meets[c], remaining, depth - 1, chosen + [c])
            if found is not None:
                return found
        return None

    all_reqs = frozenset(range(len(reqs)))
    for n in range(1, upper + 1):
        try:
            found = search(all_reqs, list(cols), n, [])
        except BudgetExhausted:
            return GroundSizeResult(n, upper, None, nodes)
        if found is not None:
            return GroundSizeResult(n, n, _column_family(d, sorted(found)), nodes)
    raise AssertionError("the k-subset construction must succeed by binom(d, k)")


# -- bounds -------------------------------------------------------------------

def michel_scott_bound(k: int, s: int, t: int, d: int) -> float:
    """Lower bound ``C(k, s+t, d) >= min(d^k, s (k+t)^k) / (2 k^k)``, valid for ``d >= k + t``."""
    if min(k, s, t, d) < 1:
        raise ParameterError("k, s, t, d must be positive integers")
    if d < k + t:
        raise ValidityError(f"bound needs d >= k + t, got d={d}, k+t={k + t}", "d >= k + t")
    return min(d**k, s * (k + t) ** k) / (2 * k**k)


def split_st(ell: int, k: int) -> tuple[int, int]:
    """Split ``ell = s + t`` with ``s = ceil((ell+1)/(k+1))`` and ``t = floor((k*ell-1)/(k+1))``."""
    if ell < 1 or k < 1:
        raise ParameterError("ell and k must be positive")
    s = -(-(ell + 1) // (k + 1))
    t = (k * ell - 1) // (k + 1)
    if t < 1 or s < 1:
        raise ValidityError(f"ell={ell} too small for k={k}: t={t}", "t = floor((k*ell - 1)/(k + 1)) >= 1")
    return s, t


# -- family files -------------------------------------------------------------

def parse_family(text: str) -> SetFamily:
    """Parse ``ground=<n>`` followed by one space-separated set per line (blank = empty set)."""
    lines = text.splitlines()
    ground = None
    sets: list[frozenset[int]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if ground is None:
            if not line:
                continue
            if not line.startswith("ground="):
                raise ParseError("first line must be ground=<n>", lineno)
            try:
                ground = int(line[7:])
            except ValueError:
                raise ParseError(f"bad ground size in {line!r}", lineno) from None
            if ground < 0:
                raise ParseError("ground size must be >= 0", lineno)
            continue
        try:
            elems = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"non-integer element in {line!r}", lineno) from None
        if any(not 1 <= e <= ground for e in elems):
            raise ParseError(f"element outside 1..{ground} in {line!r}", lineno)
        sets.append(frozenset(elems))
    if ground is None:
        raise ParseError("missing ground=<n> header")
    return SetFamily(ground, tuple(sets))


def format_family(F: SetFamily) -> str:
    return "\n".join([f"ground={F.ground_size}"] + [" ".join(map(str, sorted(s))) for s in F.sets]) + "\n"


def read_family(path: str | Path) -> SetFamily:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_family(text)


def write_family(F: SetFamily, path: str | Path) -> None:
    Path(path).write_text(format_family(F), encoding="utf-8")

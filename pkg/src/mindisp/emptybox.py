"""Largest empty open axis-parallel box (dispersion) of a point set.

The exact routine is a depth-first branch-and-bound over candidate
intervals, one dimension at a time.  Every inclusion-maximal empty box has
each face on the cube boundary or on a coordinate of a point that lies
strictly inside the box's projection onto the other dimensions, so at depth
``i`` only coordinates of the points still "active" (strictly inside the
intervals fixed so far) need to be tried.  In the last dimension the best
interval is simply the widest gap among the active coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import BudgetExhausted
from .geometry import AxisBox, PointSet, box_volume, generate_points

DEFAULT_NODE_BUDGET = 10**8


@dataclass(frozen=True)
class DispersionResult:
    value: float
    witness: AxisBox
    node_count: int = 0

    def to_json(self) -> dict:
        return {"dispersion": self.value, "box": self.witness.to_json(), "nodes": self.node_count}


def candidate_grid(X: PointSet) -> list[list[float]]:
    """Per-dimension sorted, deduplicated ``{0, 1} U {(x)_i : x in X}``."""
    grid = []
    for i in range(X.dim):
        vals = {0.0, 1.0}
        vals.update(p[i] for p in X.points)
        grid.append(sorted(vals))
    return grid


def _widest_gap(coords: np.ndarray) -> tuple[float, float, float]:
    vals = np.unique(np.concatenate(([0.0], coords, [1.0])))
    gaps = np.diff(vals)
    j = int(np.argmax(gaps))  # first maximum, i.e. smallest lower end
    return float(gaps[j]), float(vals[j]), float(vals[j + 1])


@njit(cache=True)
def _better(vol, lx, ly, ux, uy, best):
    if vol != best[0]:
        return vol > best[0]
    cand = (lx, ly, ux, uy)
    for t in range(4):
        if cand[t] != best[t + 1]:
            return cand[t] < best[t + 1]
    return False


@njit(cache=True)
def _best_rectangle(px, py, partial):
    """Largest empty open rectangle in the unit square for points ``(px, py)``.

    ``px`` must be sorted ascending.  Returns ``[volume, lx, ly, ux, uy]`` with
    ``volume = partial * (ux - lx) * (uy - ly)``; ties go to the
    lexicographically smallest ``(lx, ly, ux, uy)``.  Maximal rectangles are
    enumerated by sweeping right from each point that supports a left face,
    left from each point that supports a right face (boxes touching ``x = 0``),
    plus the full-width horizontal slabs.
    """
    n = px.shape[0]
    best = np.array([-1.0, 0.0, 0.0, 0.0, 0.0])

    ycuts = np.unique(np.concatenate((np.array([0.0, 1.0]), py)))
    for j in range(ycuts.shape[0] - 1):
        vol = partial * (1.0 - 0.0) * (ycuts[j + 1] - ycuts[j])
        if _better(vol, 0.0, ycuts[j], 1.0, ycuts[j + 1], best):
            best[0], best[1], best[2], best[3], best[4] = vol, 0.0, ycuts[j], 1.0, ycuts[j + 1]

    for s in range(n):
        x0 = px[s]
        y0 = py[s]
        # Rightward sweep: point s supports the left face.
        bot = 0.0
        top = 1.0
        t = s + 1
        while t < n and px[t] == x0:
            t += 1
        alive = True
        while t < n and alive:
            xg = px[t]
            hit = False
            nb = bot
            nt = top
            while t < n and px[t] == xg:
                y = py[t]
                if bot < y < top:
                    hit = True
                    if y < y0:
                        nb = max(nb, y)
                    elif y > y0:
                        nt = min(nt, y)
                    else:
                        alive = False
                t += 1
            if hit:
                vol = partial * (xg - x0) * (top - bot)
                if _better(vol, x0, bot, xg, top, best):
                    best[0], best[1], best[2], best[3], best[4] = vol, x0, bot, xg, top
                bot = nb
                top = nt
        if alive and x0 < 1.0:
            vol = partial * (1.0 - x0) * (top - bot)
            if _better(vol, x0, bot, 1.0, top, best):
                best[0], best[1], best[2], best[3], best[4] = vol, x0, bot, 1.0, top

        # Leftward sweep: point s supports the right face; only the box reaching x = 0 is new.
        if x0 <= 0.0:
            continue
        bot = 0.0
        top = 1.0
        alive = True
        for t in range(s - 1, -1, -1):
            if px[t] == x0 or px[t] == 0.0:
                continue
            y = py[t]
            if bot < y < top:
                if y < y0:
                    bot = y
                elif y > y0:
                    top = y
                else:
                    alive = False
                    break
        if alive:
            vol = partial * (x0 - 0.0) * (top - bot)
            if _better(vol, 0.0, bot, x0, top, best):
                best[0], best[1], best[2], best[3], best[4] = vol, 0.0, bot, x0, top
    return best


@njit(cache=True)
def _offer(best, d, vol, lower, upper):
    # best = [volume, lower_0..lower_{d-1}, upper_0..upper_{d-1}]
    if vol != best[0]:
        better = vol > best[0]
    else:
        better = False
        for t in range(d):
            if lower[t] != best[1 + t]:
                better = lower[t] < best[1 + t]
                break
        else:
            for t in range(d):
                if upper[t] != best[1 + d + t]:
                    better = upper[t] < best[1 + d + t]
                    break
    if better:
        best[0] = vol
        best[1 : 1 + d] = lower
        best[1 + d :] = upper


@njit(cache=True)
def _prefix_loses(best, lower, i, lo):
    # True iff (lower_0..lower_{i-1}, lo) is lexicographically greater than the incumbent's prefix.
    for t in range(i):
        if lower[t] != best[1 + t]:
            return lower[t] > best[1 + t]
    return lo > best[1 + i]


@njit(cache=True)
def _descend(active, i, d, partial, lower, upper, best, counter):
    """Branch on the side in dimension ``i``; returns 1 if the node budget ran out."""
    counter[0] += 1
    if counter[0] > counter[1]:
        return 1
    m = active.shape[0]
    if m == 0:
        lo = lower.copy()
        hi = upper.copy()
        lo[i:] = 0.0
        hi[i:] = 1.0
        _offer(best, d, partial, lo, hi)
        return 0
    col = np.ascontiguousarray(active[:, i])
    if i == d - 1:
        vals = np.unique(np.concatenate((np.array([0.0, 1.0]), col)))
        j_best = 0
        for j in range(1, vals.shape[0] - 1):
            if vals[j + 1] - vals[j] > vals[j_best + 1] - vals[j_best]:
                j_best = j
        lo = lower.copy()
        hi = upper.copy()
        lo[i] = vals[j_best]
        hi[i] = vals[j_best + 1]
        _offer(best, d, partial * (hi[i] - lo[i]), lo, hi)
        return 0
    if i == d - 2:
        srt = np.argsort(col, kind="mergesort")
        rect = _best_rectangle(col[srt], np.ascontiguousarray(active[srt, i + 1]), partial)
        lo = lower.copy()
        hi = upper.copy()
        lo[i] = rect[1]
        lo[i + 1] = rect[2]
        hi[i] = rect[3]
        hi[i + 1] = rect[4]
        _offer(best, d, rect[0], lo, hi)
        return 0

    vals = np.unique(np.concatenate((np.array([0.0, 1.0]), col)))
    nv = vals.shape[0]
    # Each active point must be cut off by some later side, so the later
    # sides contribute at most min_q max_{j>i} max(q_j, 1 - q_j).
    at_val = np.full(nv, np.inf)
    for q in range(m):
        reach = 0.0
        for j in range(i + 1, d):
            reach = max(reach, active[q, j], 1.0 - active[q, j])
        pos = np.searchsorted(vals, col[q])
        at_val[pos] = min(at_val[pos], reach)
    npairs = nv * (nv - 1) // 2
    bound = np.empty(npairs)
    plo = np.empty(npairs)
    phi = np.empty(npairs)
    plen = np.empty(npairs)
    c = 0
    for p in range(nv - 1):
        inner = 1.0
        for q in range(p + 1, nv):
            length = vals[q] - vals[p]
            # Slack covers rounding in the later products.
            b = partial * length * inner * (1.0 + 1e-15)
            if b >= best[0]:
                bound[c] = b
                plo[c] = vals[p]
                phi[c] = vals[q]
                plen[c] = length
                c += 1
            inner = min(inner, at_val[q])
    # Pairs were generated in (lo, hi) order; a stable sort keeps it for equal bounds.
    order = np.argsort(-bound[:c], kind="mergesort")
    for idx in order:
        if bound[idx] < best[0]:
            break
        lo = plo[idx]
        hi = phi[idx]
        if bound[idx] <= best[0] and _prefix_loses(best, lower, i, lo):
            continue  # can at best tie, and would lose the tie-break
        lower[i] = lo
        upper[i] = hi
        keep = (col > lo) & (col < hi)
        if _descend(active[keep], i + 1, d, partial * plen[idx], lower, upper, best, counter):
            return 1
    lower[i] = 0.0
    upper[i] = 1.0
    return 0


def largest_empty_box(X: PointSet, node_budget: int = DEFAULT_NODE_BUDGET) -> DispersionResult:
    """Exact dispersion of ``X`` with a maximising witness box.

    Raises :class:`BudgetExhausted` (carrying the best result found so far,
    a lower bound on the dispersion) when more than ``node_budget`` search
    nodes would be expanded.
    """
    d = X.dim
    pts = np.ascontiguousarray(X.as_array())
    best = np.full(1 + 2 * d, -1.0)

    # Seed with the widest full-width slab in each dimension.
    for i in range(d):
        gap, lo, hi = _widest_gap(pts[:, i])
        lower, upper = np.zeros(d), np.ones(d)
        lower[i], upper[i] = lo, hi
        _offer(best, d, box_volume(AxisBox(lower, upper)), lower, upper)

    counter = np.array([0, node_budget], dtype=np.int64)
    exhausted = _descend(pts, 0, d, 1.0, np.zeros(d), np.ones(d), best, counter)
    nodes = int(min(counter[0], node_budget))
    result = DispersionResult(float(best[0]), AxisBox(best[1 : 1 + d], best[1 + d :]), nodes)
    if exhausted:
        raise BudgetExhausted(f"node budget of {node_budget} exhausted", best=result, nodes=nodes)
    return result


def dispersion(X: PointSet) -> float:
    return largest_empty_box(X).value


def sampled_empty_box_lower(X: PointSet, trials: int, seed: int = 0) -> float:
    """Randomised lower estimate of the dispersion.

    Each trial grows a box around a uniform random centre, one dimension at a
    time in random order, until every face is blocked by a point or the cube
    boundary.  The result never exceeds the exact dispersion.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    d = X.dim
    pts = X.as_array()
    best = 0.0
    for _ in range(trials):
        centre = rng.random(d)
        lower = centre.copy()
        upper = centre.copy()
        expanded = np.zeros(d, dtype=bool)
        ok = True
        for i in rng.permutation(d):
            # Unexpanded sides are the degenerate interval {centre_j}.
            inside = np.ones(len(pts), dtype=bool)
            for j in range(d):
                if j == i:
                    continue
                if expanded[j]:
                    inside &= (pts[:, j] > lower[j]) & (pts[:, j] < upper[j])
                else:
                    inside &= pts[:, j] == centre[j]
            coords = pts[inside, i]
            if np.any(coords == centre[i]):
                ok = False
                break
            below = coords[coords < centre[i]]
            above = coords[coords > centre[i]]
            lower[i] = below.max() if below.size else 0.0
            upper[i] = above.min() if above.size else 1.0
            expanded[i] = True
        if ok:
            best = max(best, box_volume(AxisBox(lower.tolist(), upper.tolist())))
    return best


def _structured_start(n: int, d: int) -> PointSet:
    if d == 1:
        return generate_points("equispaced-1d", n, 1)
    m = round(n ** (1.0 / d))
    for cand in (m - 1, m, m + 1):
        if cand >= 1 and cand**d == n:
            return generate_points("centered-grid", d=d, m=cand)
    return generate_points("van-der-corput", n, d)


def min_dispersion_search(
    n: int,
    d: int,
    restarts: int = 3,
    seed: int = 0,
    rounds: int = 200,
    step: float = 0.1,
    decay: float = 0.95,
) -> tuple[PointSet, float]:
    """Multistart local search for an ``n``-point set of small dispersion.

    The first restart begins from a structured set (equispaced, centred grid
    or Halton points); the rest start uniformly at random.  Each round moves
    one point by a Gaussian step and keeps the move only if the exact
    dispersion drops; a rejected round shrinks the step by ``decay``.
    The returned value is an upper bound on the minimal dispersion.
    """
    if n == 0:
        return PointSet(d), 1.0
    rng = np.random.default_rng(seed)
    best_pts, best_val = None, math.inf
    for r in range(max(restarts, 1)):
        cur = _structured_start(n, d).as_array() if r == 0 else rng.random((n, d))
        cur_val = dispersion(PointSet.from_array(cur))
        sigma = step
        for _ in range(rounds):
            m = rng.integers(n)
            trial = cur.copy()
            trial[m] = np.clip(trial[m] + rng.normal(0.0, sigma, d), 0.0, 1.0)
            val = dispersion(PointSet.from_array(trial))
            if val < cur_val:
                cur, cur_val = trial, val
            else:
                sigma *= decay
        if cur_val < best_val:
            best_pts, best_val = cur, cur_val
    return PointSet.from_array(best_pts), best_val

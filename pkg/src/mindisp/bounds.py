"""Closed-form lower and upper bounds on the minimal dispersion and its inverse N(eps, d).

All logarithms are natural except in the ``ahr`` bound, which is stated with
``log2``.  Bounds whose absolute constant is not known explicitly are
evaluated with a configurable stand-in (default 1) and carry
``constant_known=False``; they never count as rigorous.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ParameterError

# Relative slack for threshold comparisons such as eps >= d^(-k^2/(k+1)),
# where the power is computed in floating point.
THRESHOLD_RTOL = 1e-12

N_TARGET = "N(eps,d)"
DISP_TARGET = "disp*(n,d)"


@dataclass(frozen=True)
class BoundReport:
    name: str
    direction: str  # "lower" | "upper"
    target: str
    value: float
    valid: bool
    violated: str | None = None
    constant_known: bool = True
    k_used: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def rigorous(self) -> bool:
        return self.valid and self.constant_known

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "direction": self.direction,
            "target": self.target,
            "value": self.value,
            "valid": self.valid,
            "violated": self.violated,
            "constant_known": self.constant_known,
            "k_used": self.k_used,
        }
        out.update(self.details)
        return out


def _at_least(x: float, threshold: float) -> bool:
    return x >= threshold * (1.0 - THRESHOLD_RTOL)


def _check_eps(eps: float) -> None:
    if not 0.0 < eps < 1.0:
        raise ParameterError(f"eps must lie in (0, 1), got {eps}")


def _report(name, value, failures, *, constant_known=True, direction="lower", **kw) -> BoundReport:
    return BoundReport(
        name,
        direction,
        N_TARGET,
        float(value),
        not failures,
        "; ".join(failures) or None,
        constant_known,
        **kw,
    )


# -- catalogue of lower bounds --------------------------------------------------

def elementary_lower(eps: float) -> BoundReport:
    """``disp*(n,d) >= 1/(n+1)`` turned into ``N >= 1/eps - 1``."""
    return _report("elementary", 1.0 / eps - 1.0, [])


def dum_lower(eps: float, d: int) -> BoundReport:
    """``disp*(n,d) >= 5/(4(n+5))`` turned into ``N >= 5/(4 eps) - 5``; needs ``d >= 2``."""
    fails = [] if d >= 2 else [f"d >= 2 (d = {d})"]
    return _report("dum", 5.0 / (4.0 * eps) - 5.0, fails)


def ahr_lower(eps: float, d: int) -> BoundReport:
    fails = []
    if d < 2:
        fails.append(f"d >= 2 (d = {d})")
    if not eps < 0.25:
        fails.append(f"eps < 1/4 (eps = {eps})")
    value = math.log2(d) / (8.0 * eps) if d >= 1 else 0.0
    return _report("ahr", value, fails)


def bukh_chao_lower(eps: float, d: int) -> BoundReport:
    """``N >= d / (e eps)`` for ``eps <= (8d)^(-d)``; the window is tested in logs to avoid underflow."""
    fails = []
    if math.log(eps) > -d * math.log(8.0 * d) * (1.0 - THRESHOLD_RTOL):
        fails.append(f"eps <= (8d)^-d (eps = {eps}, d = {d})")
    return _report("bukh-chao", d / (math.e * eps), fails)


def large_eps_lower(eps: float, d: int, c: float = 1.0) -> BoundReport:
    """``N > c log d / (eps^2 log(1/eps))`` on ``1/(4 sqrt d) < eps < 1/4``; ``c`` is unspecified."""
    fails = []
    if d < 2:
        fails.append(f"d >= 2 (d = {d})")
    if not 1.0 / (4.0 * math.sqrt(d)) < eps < 0.25:
        fails.append(f"1/(4 sqrt(d)) < eps < 1/4 (eps = {eps}, d = {d})")
    value = c * math.log(d) / (eps**2 * math.log(1.0 / eps))
    return _report("large-eps", value, fails, constant_known=False)


def lower_bound_catalog(eps: float, d: int, c: float = 1.0) -> list[BoundReport]:
    """Every lower bound on ``N(eps, d)`` quoted from the literature, evaluated at ``(eps, d)``."""
    _check_eps(eps)
    if d < 1:
        raise ParameterError(f"d must be >= 1, got {d}")
    return [
        elementary_lower(eps),
        dum_lower(eps, d),
        ahr_lower(eps, d),
        bukh_chao_lower(eps, d),
        large_eps_lower(eps, d, c),
    ]


class DispersionBound(NamedTuple):
    value: float
    trivial: bool


def bc_dispersion_lower(n: int, d: int) -> DispersionBound:
    """``disp*(n,d) >= (1/e)(2d/n)(1 - 4d/n^(1/d))``; ``trivial`` when the value is not positive."""
    if n < 1 or d < 1:
        raise ParameterError("n and d must be positive")
    value = (2.0 * d / n) * (1.0 - 4.0 * d / n ** (1.0 / d)) / math.e
    return DispersionBound(value, value <= 0.0)


# -- the cover-free family of bounds, indexed by k ------------------------------

def part_i_constant(k: int) -> float:
    return 1.0 / (16.0 * math.e * k**k * (k + 1))


def part_ii_constant(k: int) -> float:
    return 1.0 / (64.0 * math.e * k**k * (k + 1))


def part_i_value(eps: float, k: int) -> float:
    return part_i_constant(k) * eps ** (-(k + 1) / k)


def part_ii_value(eps: float, d: int, k: int) -> float:
    return part_ii_constant(k) * d ** (k / (k + 1)) / eps


def part_threshold(d: int, k: int) -> float:
    """``d^(-k^2/(k+1))``: part (i) applies at and above it, part (ii) below."""
    return d ** (-(k * k) / (k + 1))


def theorem_main_bound(eps: float, d: int, k: int) -> BoundReport:
    """Lower bound of order ``eps^(-(k+1)/k)`` (large eps) or ``d^(k/(k+1))/eps`` (small eps).

    Validity needs ``d >= d^(k/(k+1)) + k`` and ``eps < 2^-(k+2)``; failures
    are recorded in the report, the value is still computed.
    """
    if k < 1 or d < 1:
        raise ParameterError("k and d must be positive")
    _check_eps(eps)
    fails = []
    if not d >= d ** (k / (k + 1)) + k:
        fails.append(f"d >= d^(k/(k+1)) + k (d = {d}, k = {k})")
    if not eps < 2.0 ** (-k - 2):
        fails.append(f"eps < 2^-(k+2) (eps = {eps}, k = {k})")
    if _at_least(eps, part_threshold(d, k)):
        part, value = "i", part_i_value(eps, k)
    else:
        part, value = "ii", part_ii_value(eps, d, k)
    details = {"part": part, "sufficient_d_condition": d >= (k + 1) ** 2}
    return _report("cover-free-k", value, fails, k_used=k, details=details)


def select_k(eps: float, d: int) -> int:
    """Smallest ``k >= 1`` with ``eps >= d^-k``, i.e. ``eps`` in ``[d^-k, d^-(k-1))``."""
    if d < 2:
        raise ParameterError(f"d must be >= 2, got {d}")
    _check_eps(eps)
    k = 1
    while not _at_least(eps, float(d) ** (-k)):
        k += 1
    return k


def best_main_bound(eps: float, d: int) -> BoundReport:
    """Pick ``k`` from the window containing ``eps`` and evaluate that bound.

    If the chosen ``k`` violates the validity conditions, the valid bound
    with the largest value among ``k' = 1..k`` is returned instead; when no
    ``k'`` is valid an explicit invalid ``"none"`` report comes back.
    """
    k = select_k(eps, d)
    first = theorem_main_bound(eps, d, k)
    if first.valid:
        return first
    valid = [r for r in (theorem_main_bound(eps, d, j) for j in range(1, k + 1)) if r.valid]
    if valid:
        return max(valid, key=lambda r: (r.value, r.k_used))
    return BoundReport(
        "none", "lower", N_TARGET, 0.0, False, f"no k in 1..{k} satisfies the validity conditions"
    )


# -- upper bounds --------------------------------------------------------------

def upper_bound_catalog(eps: float, d: int, big_c: float = 1.0, c: float = 1.0) -> list[BoundReport]:
    """``N <= C log d log(1/eps) / eps^2`` and ``N <= c d^2 log d / eps``, constants unspecified."""
    _check_eps(eps)
    if d < 2:
        raise ParameterError(f"d must be >= 2, got {d}")
    return [
        _report(
            "log-upper",
            big_c * math.log(d) * math.log(1.0 / eps) / eps**2,
            [],
            constant_known=False,
            direction="upper",
        ),
        _report(
            "bukh-chao-upper",
            c * d**2 * math.log(d) / eps,
            [],
            constant_known=False,
            direction="upper",
        ),
    ]


# -- one dimension ---------------------------------------------------------------

def n_exact_1d(eps: float) -> int:
    """Exact ``N(eps, 1) = ceil(1/eps) - 1``; the equispaced points attain it."""
    _check_eps(eps)
    recip = 1.0 / eps
    nearest = round(recip)
    if abs(recip - nearest) <= THRESHOLD_RTOL * recip:
        recip = float(nearest)
    return math.ceil(recip) - 1


# -- region scan -------------------------------------------------------------------

@dataclass(frozen=True)
class RegionRow:
    eps: float
    winner: str
    k: int | None
    value: float
    rigorous: bool
    bounds: tuple[BoundReport, ...] = ()


def region_scan(d: int, eps_min: float, eps_max: float, steps: int) -> list[RegionRow]:
    """Largest rigorous lower bound on a log-spaced eps grid (ascending)."""
    if not 0.0 < eps_min < eps_max < 1.0:
        raise ParameterError(f"need 0 < eps_min < eps_max < 1, got {eps_min}, {eps_max}")
    if steps < 2:
        raise ParameterError(f"steps must be >= 2, got {steps}")
    if d < 2:
        raise ParameterError(f"d must be >= 2, got {d}")
    rows = []
    for eps in np.geomspace(eps_min, eps_max, steps).tolist():
        cands = [best_main_bound(eps, d)] + lower_bound_catalog(eps, d)
        cands = [r for r in cands if r.rigorous]
        win = max(cands, key=lambda r: r.value)  # first maximum wins ties
        rows.append(RegionRow(eps, win.name, win.k_used, win.value, win.rigorous, tuple(cands)))
    return rows


def region_csv(rows: list[RegionRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["eps", "winner", "k", "value", "rigorous"])
    for r in rows:
        w.writerow([repr(r.eps), r.winner, "" if r.k is None else r.k, repr(r.value), str(r.rigorous).lower()])
    return buf.getvalue()

"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary and also when this file is run directly::

    python3 tests/test_acceptance.py
"""

import math
import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import run_cli  # noqa: E402
from oracles import brute_force_empty_box_2d, naive_min_ground_size  # noqa: E402

from mindisp.bounds import (  # noqa: E402
    best_main_bound,
    lower_bound_catalog,
    n_exact_1d,
    part_ii_value,
    part_threshold,
    theorem_main_bound,
)
from mindisp.cff import michel_scott_bound, min_ground_size, verify_cover_free  # noqa: E402
from mindisp.emptybox import largest_empty_box  # noqa: E402
from mindisp.geometry import PointSet, box_avoids_all, generate_points  # noqa: E402
from mindisp.reduction import (  # noqa: E402
    BoxFamilyParams,
    BoxSpec,
    extract_family,
    hits_all_boxes,
    reduction_params,
    to_box,
)

RESULTS: list[str] = []


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}"
    if detail:
        line += f" ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_01_empty_box_oracle():
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(100):
        n = int(rng.integers(0, 21))
        X = PointSet.from_array(rng.integers(0, 17, size=(n, 2)) / 16) if n else PointSet(2)
        res = largest_empty_box(X)
        vol, lo, hi = brute_force_empty_box_2d(X)
        if (res.value, res.witness.lower, res.witness.upper) != (vol, lo, hi):
            mismatches += 1
    elapsed = time.perf_counter() - start
    record(1, "empty-box oracle equivalence", mismatches == 0 and elapsed < 10.0,
           f"{mismatches} mismatches in 100 sets, {elapsed:.2f} s")


def test_02_one_dimensional_exactness():
    worst = 0.0
    for n in range(1, 101):
        worst = max(worst, abs(largest_empty_box(generate_points("equispaced-1d", n)).value - 1 / (n + 1)))
    record(2, "1-d exactness 1/(n+1)", worst <= 1e-12, f"max error {worst:.1e}")


def test_03_volume_lemma():
    rng = random.Random(3)
    failures = 0
    for _ in range(1000):
        k = rng.randint(1, 4)
        eps = rng.uniform(0.0, 2.0 ** (-k - 2))
        if eps == 0.0:
            continue
        u = (4 * eps) ** (1 / k)
        p = reduction_params(eps, k, k + math.floor(1 / u) + 1)
        failures += not p.box_volume > eps
    worked = reduction_params(0.01, 1, 26)
    ok_worked = (
        abs(worked.u - 0.04) < 1e-12 and worked.ell == 25 and abs(worked.box_volume - 0.0144) <= 1e-4
    )
    record(3, "volume lemma", failures == 0 and ok_worked,
           f"{failures} failures; worked u={worked.u:.4g}, ell={worked.ell}, vol={worked.box_volume:.5f}")


def test_04_reduction_lemma():
    rng = np.random.default_rng(4)
    forward_bad = witness_bad = forward_seen = witnesses_seen = 0
    for _ in range(500):
        d = int(rng.integers(2, 9))
        k = int(rng.integers(1, 3)) if d >= 3 else 1
        ell = int(rng.integers(1, d - k + 1))
        u = float(rng.choice([0.25, 0.5, 0.75]))
        n = int(rng.integers(1, 41))
        grid = np.array([0.0, u / 2, u, (1 + u) / 2, 1.0])
        X = PointSet.from_array(rng.choice(grid, size=(n, d)))
        p = BoxFamilyParams(d, k, ell, u)
        F = extract_family(X, u)
        verdict = verify_cover_free(F, k, ell)
        if hits_all_boxes(X, p) is None:
            forward_seen += 1
            forward_bad += not verdict
        if not verdict:
            witnesses_seen += 1
            box = to_box(BoxSpec(verdict.witness.K, verdict.witness.L), p)
            witness_bad += not box_avoids_all(box, X)
    record(4, "reduction lemma (forward and witness directions)", forward_bad == 0 and witness_bad == 0,
           f"{forward_seen} all-hit sets, {witnesses_seen} violation witnesses, "
           f"{forward_bad + witness_bad} counterexamples")


def test_05_exact_cff_values():
    start = time.perf_counter()
    ok = True
    parts = []
    for (k, r, d), expected in {(1, 1, 2): 2, (1, 1, 3): 3, (1, 2, 3): 3}.items():
        res = min_ground_size(k, r, d)
        naive = naive_min_ground_size(k, r, d)
        ok &= res.exact and res.value == expected == naive
        for s in range(1, r + 1):
            t = r - s
            if t >= 1 and d >= k + t:
                ok &= res.value >= math.ceil(michel_scott_bound(k, s, t, d))
        parts.append(f"C({k},{r},{d})={res.value}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60.0
    record(5, "exact cover-free values", ok, f"{', '.join(parts)}, {elapsed:.2f} s")


def test_06_main_bound_evaluator():
    a = best_main_bound(1e-8, 10**6)
    b = best_main_bound(1e-4, 10**6)
    ok = (
        a.k_used == 2
        and a.details["part"] == "i"
        and math.isclose(a.value, 1e12 / (192 * math.e), rel_tol=1e-6)
        and b.k_used == 1
        and b.details["part"] == "ii"
        and math.isclose(b.value, 1e7 / (128 * math.e), rel_tol=1e-6)
    )
    record(6, "main-bound evaluator", ok, f"{a.value:.6e} (k={a.k_used}), {b.value:.6e} (k={b.k_used})")


def test_07_boundary_ratio():
    worst = 0.0
    for k in range(1, 6):
        for d in (10**3, 10**4, 10**6):
            eps = part_threshold(d, k)
            r = theorem_main_bound(eps, d, k)
            assert r.details["part"] == "i"
            worst = max(worst, abs(r.value / part_ii_value(eps, d, k) / 4.0 - 1.0))
    record(7, "boundary ratio 4", worst <= 1e-12, f"max relative error {worst:.1e}")


def test_08_rescaling_inequality():
    violations = checks = 0
    for eps in np.geomspace(1e-3, 1e-1, 50).tolist():
        for b in range(2, 11):
            if b * eps < 1:
                checks += 1
                violations += n_exact_1d(eps) < b * n_exact_1d(b * eps)
    record(8, "rescaling inequality at d = 1", violations == 0, f"{violations} violations in {checks} checks")


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    root = tmp_path_factory.mktemp("determinism")
    (root / "tri.fam").write_text("ground=3\n1 2\n2 3\n1 3\n")
    return root


def test_09_cli_determinism(workdir):
    commands = [
        ("gen", "--kind", "uniform-random", "--n", "30", "--dim", "3", "--seed", "5", "--out", "u.txt"),
        ("gen", "--kind", "van-der-corput", "--n", "40", "--dim", "26", "--seed", "0", "--out", "v.txt"),
        ("disp", "--input", "u.txt"),
        ("cff", "verify", "--family", "tri.fam", "--k", "1", "--r", "2"),
        ("cff", "search", "--k", "1", "--r", "2", "--d", "4"),
        ("reduce", "--input", "v.txt", "--eps", "0.01", "--k", "1"),
        ("bounds", "--eps", "0.001", "--dim", "1000"),
        ("regions", "--dim", "1000000", "--eps-min", "1e-12", "--eps-max", "1e-2", "--steps", "11", "--format", "csv"),
        ("regions", "--dim", "1000000", "--eps-min", "1e-12", "--eps-max", "1e-2", "--steps", "11", "--format", "svg"),
    ]
    differing = []
    for cmd in commands:
        first = run_cli(*cmd, cwd=workdir)
        second = run_cli(*cmd, cwd=workdir)
        if first.returncode != 0 or first.stdout != second.stdout or not first.stdout:
            differing.append(cmd[0])
    record(9, "CLI determinism", not differing,
           f"{len(commands)} commands run twice" + (f"; differing: {differing}" if differing else ""))


def test_10_catalog_sanity():
    violations = checks = 0
    for eps in np.geomspace(1e-3, 0.2, 200).tolist():
        exact = n_exact_1d(eps)
        for r in lower_bound_catalog(eps, 1):
            if r.valid and r.constant_known:
                checks += 1
                violations += r.value > exact
    record(10, "catalog sanity at d = 1", violations == 0, f"{violations} violations in {checks} checks")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))

import itertools
import math
import random

import numpy as np
import pytest

from mindisp.bounds import n_exact_1d
from mindisp.cff import verify_cover_free
from mindisp.errors import DimensionValidityError, DomainError, EpsilonValidityError, ParameterError
from mindisp.geometry import AxisBox, PointSet, box_avoids_all, box_volume
from mindisp.reduction import (
    BoxFamilyParams,
    BoxSpec,
    enumerate_box_family,
    extract_family,
    hits_all_boxes,
    partition_index,
    reduction_consistency,
    reduction_params,
    stretch_box,
    stretch_map,
    to_box,
)

PAIR = PointSet(2, ((0.1, 0.9), (0.8, 0.2)))
HALF = BoxFamilyParams(2, 1, 1, 0.5)


def test_reduction_params_examples():
    p = reduction_params(0.01, 1, 26)
    assert p.u == pytest.approx(0.04) and p.ell == 25
    assert p.box_volume == pytest.approx(0.0144, abs=1e-4)
    assert p.box_volume > 0.01
    p = reduction_params(0.001, 2, 17)
    assert p.u == pytest.approx(0.0632456, abs=1e-7) and p.ell == 15


def test_reduction_params_errors():
    with pytest.raises(EpsilonValidityError) as exc:
        reduction_params(0.2, 1, 26)
    assert "2^-(k+2)" in str(exc.value)
    with pytest.raises(DimensionValidityError):
        reduction_params(0.01, 1, 25)


def test_to_box_examples():
    assert to_box(BoxSpec((1,), (2,)), HALF) == AxisBox((0, 0.5), (0.5, 1))
    p = BoxFamilyParams(3, 1, 1, 0.25)
    assert to_box(BoxSpec((2,), (3,)), p) == AxisBox((0, 0, 0.25), (1, 0.25, 1))
    with pytest.raises(ParameterError):
        to_box(BoxSpec((1, 2), (3,)), p)


def test_box_spec_must_be_disjoint():
    with pytest.raises(ParameterError):
        BoxSpec((1,), (1,))


def test_every_box_has_the_same_volume():
    p = BoxFamilyParams(5, 2, 2, 0.3)
    vols = {box_volume(to_box(s, p)) for s in enumerate_box_family(p)}
    assert all(v == pytest.approx(0.3**2 * 0.7**2, rel=1e-14) for v in vols)


def test_enumeration_examples():
    assert len(list(enumerate_box_family(BoxFamilyParams(5, 1, 2, 0.5)))) == 30
    specs = list(enumerate_box_family(HALF))
    assert specs == [BoxSpec((1,), (2,)), BoxSpec((2,), (1,))]
    assert len(list(enumerate_box_family(BoxFamilyParams(3, 2, 1, 0.5)))) == 3


def test_enumeration_count_and_order():
    for d in range(2, 13):
        for k in range(1, d):
            for ell in range(1, d - k + 1):
                p = BoxFamilyParams(d, k, ell, 0.5)
                count = math.comb(d, k) * math.comb(d - k, ell)
                if count > 20000:
                    continue
                specs = list(enumerate_box_family(p))
                assert len(specs) == count
                keys = [(s.K, s.L) for s in specs]
                assert keys == sorted(keys) and len(set(keys)) == count


def test_extract_family_examples():
    F = extract_family(PAIR, 0.5)
    assert F.sets == (frozenset({1}), frozenset({2}))
    F0 = extract_family(PointSet(3), 0.5)
    assert F0.ground_size == 0 and F0.sets == (frozenset(),) * 3
    assert extract_family(PointSet(1, ((0.5,),)), 0.5).sets == (frozenset(),)


def test_hits_all_boxes_examples():
    assert hits_all_boxes(PAIR, HALF) is None
    assert hits_all_boxes(PointSet(2, ((0.1, 0.9),)), HALF) == BoxSpec((2,), (1,))
    assert hits_all_boxes(PointSet(2), HALF) == BoxSpec((1,), (2,))


def test_consistency_examples():
    rep = reduction_consistency(PAIR, params=HALF)
    assert rep.verdict == "cover-free" and rep.lemma_direction == "forward"
    rep = reduction_consistency(PointSet(2, ((0.1, 0.9),)), params=HALF)
    assert rep.lemma_direction == "contrapositive"
    assert rep.witness == BoxSpec((2,), (1,))
    rep = reduction_consistency(PointSet(26), 0.01, 1)
    assert rep.verdict == "vacuous" and rep.witness is None


def _random_instance(rng):
    d = int(rng.integers(2, 9))
    k = int(rng.integers(1, 3))
    if k + 1 > d:
        k = 1
    ell = int(rng.integers(1, d - k + 1))
    u = float(rng.choice([0.25, 0.5, 0.75, rng.uniform(0.05, 0.95)]))
    n = int(rng.integers(0, 41))
    # Coordinates on a coarse grid that includes u itself, so boundary cases occur.
    grid = np.array(sorted({0.0, 1.0, u, u / 2, (1 + u) / 2, 0.1, 0.9}))
    X = PointSet.from_array(rng.choice(grid, size=(n, d))) if n else PointSet(d)
    return X, BoxFamilyParams(d, k, ell, u)


def test_forward_direction_random():
    rng = np.random.default_rng(2024)
    hit = 0
    for _ in range(500):
        X, p = _random_instance(rng)
        if hits_all_boxes(X, p) is None:
            hit += 1
            assert verify_cover_free(extract_family(X, p.u), p.k, p.ell)
    assert hit > 20


def test_violation_witness_is_an_unhit_box():
    rng = np.random.default_rng(99)
    seen = 0
    for _ in range(500):
        X, p = _random_instance(rng)
        if len(X) == 0:
            continue
        v = verify_cover_free(extract_family(X, p.u), p.k, p.ell)
        if not v:
            seen += 1
            assert box_avoids_all(to_box(BoxSpec(v.witness.K, v.witness.L), p), X)
    assert seen > 20


def test_near_miss_sets():
    # Start from a set that hits every box, then drop each point in turn.
    p = BoxFamilyParams(3, 1, 1, 0.5)
    X = PointSet(3, tuple(itertools.permutations((0.25, 0.75, 0.75))) + tuple(itertools.permutations((0.25, 0.25, 0.75))))
    assert hits_all_boxes(X, p) is None
    for m in range(len(X)):
        Y = PointSet(3, X.points[:m] + X.points[m + 1 :])
        v = verify_cover_free(extract_family(Y, p.u), p.k, p.ell)
        if not v:
            assert box_avoids_all(to_box(BoxSpec(v.witness.K, v.witness.L), p), Y)
        rep = reduction_consistency(Y, params=p)
        if rep.lemma_direction == "contrapositive":
            assert rep.unhit_is_violation


def test_volume_lemma_random():
    rng = random.Random(7)
    for _ in range(1000):
        k = rng.randint(1, 4)
        eps = rng.uniform(1e-6, 2.0 ** (-k - 2)) * (1 - 1e-9)
        u = (4 * eps) ** (1 / k)
        p = reduction_params(eps, k, k + math.floor(1 / u) + 1)
        assert p.box_volume > eps


def test_hitting_set_smaller_than_c_does_not_exist():
    # C(1,1,3) = 3, u = 1/2: no two points hit all six boxes.
    p = BoxFamilyParams(3, 1, 1, 0.5)
    rng = np.random.default_rng(3)
    for _ in range(3000):
        n = int(rng.integers(0, 3))
        X = PointSet.from_array(rng.random((n, 3))) if n else PointSet(3)
        assert hits_all_boxes(X, p) is not None
    # Three points suffice: the singleton family {1}, {2}, {3} realised geometrically.
    X = PointSet(3, ((0.25, 0.75, 0.75), (0.75, 0.25, 0.75), (0.75, 0.75, 0.25)))
    assert hits_all_boxes(X, p) is None


def test_stretch_map_examples():
    assert stretch_map((0.25, 0.7), 2) == (0.5, 0.7)
    assert stretch_map((0.1, 0.2, 0.3), 4) == pytest.approx((0.4, 0.2, 0.3))
    with pytest.raises(DomainError):
        stretch_map((0.6, 0.5), 2)
    slab = AxisBox((0.0, 0.0), (0.25, 1.0))
    assert box_volume(stretch_box(slab, 4)) == 1.0


def test_stretch_scales_volume_by_b():
    rng = np.random.default_rng(8)
    for _ in range(200):
        b = int(rng.integers(1, 11))
        d = int(rng.integers(1, 5))
        lo = rng.uniform(0, 1, d)
        hi = lo + rng.uniform(0.01, 1, d) * (1 - lo)
        lo[0], hi[0] = lo[0] / b, hi[0] / b
        if np.any(hi <= lo):
            continue
        box = AxisBox(lo.tolist(), hi.tolist())
        assert box_volume(stretch_box(box, b)) == pytest.approx(b * box_volume(box), rel=1e-12)


def test_partition_index_examples():
    assert partition_index((0.3, 0.1), 4) == 2
    assert partition_index((0.5,), 2) == 2
    assert partition_index((1.0,), 3) == 3
    assert all(partition_index((x,), 1) == 1 for x in (0.0, 0.4, 1.0))


def test_rescaling_inequality_in_one_dimension():
    for eps in np.geomspace(1e-3, 1e-1, 50).tolist():
        for b in range(2, 11):
            if b * eps < 1:
                assert n_exact_1d(eps) >= b * n_exact_1d(b * eps)

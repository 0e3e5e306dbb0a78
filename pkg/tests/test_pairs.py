"""Tests for the metric-pair catalogue."""

import math
import random

import pytest

from partialot import (
    EuclideanBoxPair,
    FinitePair,
    HalfPlanePair,
    InvalidPointError,
    UnsupportedPairError,
)

HP = HalfPlanePair()
BOX = EuclideanBoxPair((0.0, 0.0), (4.0, 4.0))
# d(0,1)=2, d(0,2)=3, d(1,2)=1: all triangles hold.
FIN = FinitePair(((0, 2, 3), (2, 0, 1), (3, 1, 0)), frozenset({0, 1}))


def test_distance_examples():
    assert HP.distance((0, 1), (0, 3)) == 2.0
    assert HP.distance((0, 2), (0, 2)) == 0.0
    two_point = FinitePair(((0, 5), (5, 0)), frozenset({0}))
    assert two_point.distance(0, 1) == 5.0


def test_distance_symmetry_and_identity():
    rng = random.Random(0)
    for _ in range(50):
        a = rng.uniform(-3, 3)
        x = (a, a + rng.uniform(0, 4))
        b = rng.uniform(-3, 3)
        y = (b, b + rng.uniform(0, 4))
        assert HP.distance(x, y) == HP.distance(y, x)
        assert HP.distance(x, x) == 0.0


def test_dist_to_A_examples():
    assert HP.dist_to_A((0, 2)) == pytest.approx(math.sqrt(2), rel=1e-15)
    assert HP.dist_to_A((1, 1)) == 0.0
    # minimum over the four face distances of the box
    assert BOX.dist_to_A((1, 2)) == 1.0
    assert FIN.dist_to_A(2) == 1.0


def test_project_examples():
    assert HP.project_A((0, 2)) == (1.0, 1.0)
    assert HP.project_A((1, 1)) == (1.0, 1.0)
    # d(2,0)=3, d(2,1)=1: nearest boundary index is 1
    assert FIN.project_A(2) == 1


def test_project_consistency_sampled():
    rng = random.Random(1)
    for pair in (HP, BOX):
        for _ in range(100):
            if pair is HP:
                a = rng.uniform(-3, 3)
                x = (a, a + rng.uniform(0, 4))
            else:
                x = (rng.uniform(0, 4), rng.uniform(0, 4))
            proj = pair.project_A(x)
            assert pair.in_A(proj, tol=1e-12)
            d = pair.dist_to_A(x)
            assert pair.distance(x, proj) == pytest.approx(d, rel=1e-12, abs=1e-15)


def test_dist_to_A_lower_bounds_any_boundary_point():
    rng = random.Random(2)
    for _ in range(100):
        a = rng.uniform(-3, 3)
        x = (a, a + rng.uniform(0, 4))
        c = rng.uniform(-5, 5)
        assert HP.dist_to_A(x) <= HP.distance(x, (c, c)) + 1e-12
    for i in range(FIN.size):
        for a in FIN.subset:
            assert FIN.dist_to_A(i) <= FIN.distance(i, a)


def test_in_A_examples():
    assert HP.in_A((1, 1), tol=0.0)
    assert not HP.in_A((0, 2), tol=1e-9)
    assert FIN.in_A(0) and FIN.in_A(1) and not FIN.in_A(2)


def test_geo_point_examples():
    assert HP.geo_point((0, 1), (0, 3), 0.5) == (0.0, 2.0)
    assert HP.geo_point((0, 1), (0, 3), 0.0) == (0.0, 1.0)
    assert HP.geo_point((0, 2), HP.project_A((0, 2)), 0.5) == (0.5, 1.5)


def test_geo_point_constant_speed():
    rng = random.Random(3)
    for _ in range(50):
        a = rng.uniform(-3, 3)
        x = (a, a + rng.uniform(0, 4))
        b = rng.uniform(-3, 3)
        y = (b, b + rng.uniform(0, 4))
        d = HP.distance(x, y)
        s, t = sorted((rng.random(), rng.random()))
        ps = HP.geo_point(x, y, s)
        pt = HP.geo_point(x, y, t)
        assert HP.distance(ps, pt) == pytest.approx((t - s) * d, rel=1e-12, abs=1e-12)
        assert HP.distance(x, pt) == pytest.approx(t * d, rel=1e-12, abs=1e-12)


def test_geo_point_requires_geodesic_pair():
    with pytest.raises(UnsupportedPairError):
        FIN.geo_point(0, 1, 0.5)
    assert not FIN.geodesic_capable
    assert HP.geodesic_capable and BOX.geodesic_capable


def test_point_validation():
    with pytest.raises(InvalidPointError):
        HP.validate_point((2, 1))  # below the diagonal
    with pytest.raises(InvalidPointError):
        HP.validate_point((0, 1, 2))
    with pytest.raises(InvalidPointError):
        BOX.validate_point((5, 1))
    with pytest.raises(InvalidPointError):
        FIN.validate_point(7)
    with pytest.raises(InvalidPointError):
        FIN.validate_point((0, 1))


def test_finite_pair_table_validation():
    with pytest.raises(ValueError, match="triangle"):
        FinitePair(((0, 1, 5), (1, 0, 1), (5, 1, 0)), frozenset({0}))
    with pytest.raises(ValueError, match="symmetric"):
        FinitePair(((0, 1), (2, 0)), frozenset({0}))
    with pytest.raises(ValueError, match="diagonal"):
        FinitePair(((1, 1), (1, 0)), frozenset({0}))
    with pytest.raises(ValueError, match="non-empty"):
        FinitePair(((0, 1), (1, 0)), frozenset())
    with pytest.raises(ValueError, match="out-of-range"):
        FinitePair(((0, 1), (1, 0)), frozenset({5}))


def test_box_validation():
    with pytest.raises(ValueError):
        EuclideanBoxPair((0, 0), (0, 4))  # degenerate side
    with pytest.raises(ValueError):
        EuclideanBoxPair((0,), (4, 4))


def test_box_projection_tie_break():
    # Centre of the square: all four faces tie; lexicographically smallest
    # projected point wins.
    assert BOX.project_A((2, 2)) == (0.0, 2.0)


def test_pair_equality():
    assert HalfPlanePair() == HP
    assert EuclideanBoxPair((0, 0), (4, 4)) == BOX
    assert EuclideanBoxPair((0, 0), (3, 3)) != BOX

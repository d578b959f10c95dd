from fractions import Fraction

import pytest

from espo.cgp import cgp_verdict, line_poly, max_on_curve, max_on_line
from espo.errors import (BudgetError, InsufficientDataError, ValidationError)
from espo.sets import PointSet


def test_max_on_line_wrapper():
    pts = PointSet(None, [(0, 0), (1, 2), (2, 4), (5, 1)])
    m, line = max_on_line(pts)
    assert m == 3
    poly = line_poly(line)
    assert all(poly(p) == 0 for p in [(0, 0), (1, 2), (2, 4)])


def test_max_on_curve_conic():
    # 5 points on the parabola y = x^2 plus noise
    pts = PointSet(None, [(x, x * x) for x in range(5)] + [(1, 0), (7, 3)])
    count, witness, exact = max_on_curve(pts, 2)
    assert exact
    assert count == 5
    # the witness really does contain `count` of the points
    assert sum(1 for p in pts if witness(p) == 0) == 5


def test_max_on_curve_small_set_trivial():
    pts = PointSet(None, [(0, 0), (1, 1)])
    count, witness, exact = max_on_curve(pts, 2)
    assert count == 2 and exact


def test_max_on_curve_budget_and_heuristic():
    pts = PointSet(None, [(x, y) for x in range(8) for y in range(8)])
    with pytest.raises(BudgetError):
        max_on_curve(pts, 3, exhaustive_cap=10)
    count, witness, exact = max_on_curve(pts, 2, mode="heuristic", budget=50,
                                         seed=1)
    assert not exact
    assert count >= 2
    # same seed, same answer
    again = max_on_curve(pts, 2, mode="heuristic", budget=50, seed=1)
    assert again[0] == count


def test_cgp_verdict_collinear_fails():
    pts = PointSet(None, [(k, k) for k in range(9)])
    v = cgp_verdict(pts, C=1, tau=2)
    assert not v.passed
    assert v.worst_count == 9
    assert v.witness is not None
    assert v.witness((3, 3)) == 0


def test_cgp_verdict_passes_generic():
    # 9 points with at most 2 on a line: x^2 + 2y^2 spread
    pts = PointSet(None, [(0, 0), (1, 2), (2, 5), (3, 1), (4, 7),
                          (5, 12), (6, 3), (7, 9), (8, 30)])
    m, _ = max_on_line(pts)
    v = cgp_verdict(pts, C=1, tau=2)
    assert v.passed == (m ** 2 <= len(pts))
    assert v.witness is None or not v.passed


def test_cgp_width_one_always_passes():
    pts = PointSet(None, [(Fraction(k, 3),) for k in range(10)])
    v = cgp_verdict(pts, C=3, tau=10)
    assert v.passed and v.worst_count == 1


def test_cgp_validation():
    pts = PointSet(None, [(0, 0), (1, 1)])
    with pytest.raises(ValidationError):
        cgp_verdict(pts, C=0, tau=2)
    with pytest.raises(ValidationError):
        cgp_verdict(PointSet(None, [(0, 0, 0)]), C=1, tau=2)


def test_verdict_json_shape():
    pts = PointSet(None, [(k, k) for k in range(4)])
    data = cgp_verdict(pts, C=1, tau=6).to_json()
    assert data["passed"] is False
    assert data["worst_count"] == 4
    assert "witness" in data

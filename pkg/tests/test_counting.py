import random
from fractions import Fraction

import pytest

from espo import groups
from espo.algebra import MultiPoly
from espo.counting import (GraphRelation, VarietySpec, count_intersection,
                           fit_exponent, graph_relations_from_lattice,
                           max_points_on_line, normalize_line,
                           point_line_incidences, satisfies,
                           trivial_bound_check, variety_from_json,
                           variety_to_json)
from espo.errors import (InsufficientDataError, StrategyError,
                         ValidationError)
from espo.sets import PointSet

G1 = groups.multiplicative(1, (2,))


def _power_set(lo, hi):
    return PointSet(G1, [((k,),) for k in range(lo, hi + 1)])


def _progression_variety():
    # x*z*w = 1 and y*z^2*w^2 = 1
    return VarietySpec(4, "lattice", G1, ((1, 0, 1, 1), (0, 1, 2, 2)), 2)


def test_progression_count_201():
    X = _power_set(-10, 10)
    V = _progression_variety()
    assert count_intersection(V, [X] * 4, strategy="brute") == 201
    assert count_intersection(V, [X] * 4, strategy="join") == 201
    # closed form: sum over |t| <= 5 of (21 - |t|)
    assert sum(21 - abs(t) for t in range(-5, 6)) == 201


def test_empty_set_gives_zero():
    V = _progression_variety()
    X = _power_set(-2, 2)
    empty = PointSet(G1, [])
    assert count_intersection(V, [X, X, X, empty]) == 0


def test_arity_and_group_mismatch():
    V = _progression_variety()
    X = _power_set(-2, 2)
    with pytest.raises(ValidationError):
        count_intersection(V, [X] * 3)
    bad = PointSet(groups.multiplicative(1, (3,)), [((0,),)])
    with pytest.raises(ValidationError):
        count_intersection(V, [X, X, X, bad])


def test_poly_mode_counting():
    # y = x^2 over plain rationals
    x = MultiPoly.var(0, 2)
    y = MultiPoly.var(1, 2)
    V = VarietySpec(2, "poly", (1, 1), (y - x ** 2,), 1)
    A = PointSet(None, [(k,) for k in range(-3, 4)])
    B = PointSet(None, [(k,) for k in range(0, 10)])
    assert count_intersection(V, [A, B], strategy="brute") == 7
    assert satisfies(V, ((2,), (4,)))
    assert not satisfies(V, ((2,), (5,)))


def test_graph_mode_with_constant():
    A = groups.additive(1)
    # z = x + y + 1
    rel = GraphRelation(2, "group", ((0, [[1]]), (1, [[1]])), (Fraction(1),))
    V = VarietySpec(3, "graph", A, (rel,), 2)
    X = PointSet(A, [(k,) for k in range(5)])
    got = count_intersection(V, [X, X, X])
    brute = sum(1 for a in range(5) for b in range(5) if a + b + 1 <= 4)
    assert got == brute


def test_lattice_to_graph_conversion():
    V = _progression_variety()
    rels = graph_relations_from_lattice(V)
    assert rels is not None
    targets = sorted(r.target for r in rels)
    assert len(targets) == 2
    # unsolvable: no unit entry
    V2 = VarietySpec(2, "lattice", G1, ((2, 2),), 1)
    assert graph_relations_from_lattice(V2) is None
    with pytest.raises(StrategyError):
        count_intersection(V2, [_power_set(-2, 2)] * 2, strategy="join")
    # brute still works and counts the saturated component
    assert count_intersection(V2, [_power_set(-2, 2)] * 2,
                              strategy="brute") == 5


def _random_graph_instance(rng):
    """A random 3-factor graph variety over a rank-1 torus plus test sets."""
    c1 = rng.randint(-2, 2)
    c2 = rng.randint(-2, 2)
    rel = GraphRelation(2, "group", ((0, [[c1]]), (1, [[c2]])))
    V = VarietySpec(3, "graph", G1, (rel,), 2)
    sets = []
    for _ in range(3):
        lo = rng.randint(-6, 0)
        hi = rng.randint(0, 6)
        sets.append(_power_set(lo, hi))
    return V, sets


def test_brute_join_agreement_50_instances():
    rng = random.Random(12345)
    for _ in range(50):
        V, sets = _random_graph_instance(rng)
        assert count_intersection(V, sets, strategy="brute") == \
            count_intersection(V, sets, strategy="join")


def test_worker_determinism():
    V = _progression_variety()
    X = _power_set(-8, 8)
    expected = count_intersection(V, [X] * 4, workers=1)
    for w in (2, 8):
        assert count_intersection(V, [X] * 4, workers=w) == expected
        assert count_intersection(V, [X] * 4, strategy="brute",
                                  workers=w) == expected


def test_graph_strategy_errors():
    A = groups.additive(1)
    rel1 = GraphRelation(0, "group", ((1, [[1]]),))
    rel2 = GraphRelation(1, "group", ((0, [[1]]),))
    V = VarietySpec(2, "graph", A, (rel1, rel2), 1)
    X = PointSet(A, [(0,)])
    with pytest.raises(StrategyError):
        count_intersection(V, [X, X], strategy="join")


def test_normalize_line():
    assert normalize_line(2, 4, 6) == (1, 2, 3)
    assert normalize_line(-1, 2, 0) == (1, -2, 0)
    assert normalize_line(Fraction(1, 2), 0, 1) == (1, 0, 2)
    with pytest.raises(ValidationError):
        normalize_line(0, 0, 0)


def test_incidences_3x3_grid():
    points = PointSet(None, [(x, y) for x in range(3) for y in range(3)])
    lines = [(1, 0, 0), (1, 0, -1), (1, 0, -2),
             (0, 1, 0), (0, 1, -1), (0, 1, -2),
             (1, -1, 0), (1, 1, -2)]
    count, reference = point_line_incidences(points, lines)
    assert count == 24
    assert reference > 0


def test_max_points_on_line():
    points = PointSet(None, [(0, 0), (1, 1), (2, 2), (3, 3), (0, 1)])
    m, line = max_points_on_line(points)
    assert m == 4
    assert line == (1, -1, 0)
    with pytest.raises(InsufficientDataError):
        max_points_on_line(PointSet(None, [(0, 0)]))


def test_fit_exponent():
    samples = [(N, N ** 2) for N in (4, 8, 16, 32)]
    slope, intercept, res = fit_exponent(samples)
    assert abs(slope - 2) < 1e-9
    assert res < 1e-9
    with pytest.raises(InsufficientDataError):
        fit_exponent([(4, 16)])
    with pytest.raises(ValidationError):
        fit_exponent([(1, 1), (2, 4)])


def test_trivial_bound_check():
    v = trivial_bound_check(2, 10, 36)
    assert v.passed and v.ratio == Fraction(36, 100)
    assert not trivial_bound_check(2, 10, 101).passed
    assert trivial_bound_check(2, 10, 150, constant=2).passed


def test_variety_json_round_trip():
    V = _progression_variety()
    data = variety_to_json(V)
    V2 = variety_from_json(data)
    X = _power_set(-5, 5)
    assert count_intersection(V2, [X] * 4) == \
        count_intersection(V, [X] * 4)

    x = MultiPoly.var(0, 2)
    y = MultiPoly.var(1, 2)
    Vp = VarietySpec(2, "poly", (1, 1), (y - x ** 2,), 1)
    Vp2 = variety_from_json(variety_to_json(Vp))
    assert Vp2.constraints == Vp.constraints

    rel = GraphRelation(1, "poly", polys=(x + y,))
    Vg = VarietySpec(2, "graph", (2, 2), (rel,), 2)
    Vg2 = variety_from_json(variety_to_json(Vg))
    assert Vg2.constraints[0].polys == Vg.constraints[0].polys

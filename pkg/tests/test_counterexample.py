from fractions import Fraction

import pytest

from espo.algebra import MultiPoly
from espo.counterexample import (associativity_counterexample, grid,
                                 grid_star_count, run_report, star,
                                 star_graph_variety, star_polys, verify_z22,
                                 z22_closed_form, z22_pipeline,
                                 z22_symbolic_polys)
from espo.counting import count_intersection
from espo.errors import BudgetError, ValidationError


def test_star_operation():
    assert star((0, 1), (0, 2)) == (4, 3)
    a, b = star_polys()
    assert a((0, 1, 0, 2)) == 4
    assert b((0, 1, 0, 2)) == 3


def test_grid_shape():
    X = grid(2)
    assert len(X) == 32  # N^5
    assert (Fraction(15), Fraction(1)) in X
    with pytest.raises(ValidationError):
        grid(0)


def test_grid_star_count_known_values():
    assert grid_star_count(2) == 408
    assert grid_star_count(2, strategy="brute") == 408
    assert grid_star_count(3) == 19845


def test_grid_star_count_matches_engine():
    X = grid(2)
    V = star_graph_variety()
    assert count_intersection(V, [X, X, X], strategy="join") == 408


def test_grid_star_count_guards():
    with pytest.raises(BudgetError):
        grid_star_count(3, strategy="brute", brute_cap=10)
    with pytest.raises(ValidationError):
        grid_star_count(2, strategy="banana")


def test_quadratic_lower_bound():
    for N in (2, 3, 4):
        X = grid(N)
        assert 36 * grid_star_count(N) >= len(X) ** 2


def test_z22_identity_numeric_and_symbolic():
    verdict = verify_z22(samples=100, seed=0)
    assert verdict.ok
    assert verdict.max_residual == 0
    assert verdict.symbolic_match
    pipe, closed = z22_symbolic_polys()
    assert pipe[0] == closed[0]
    assert pipe[1] == closed[1]
    # second coordinate is exactly z21'' + z12'' - z11''
    vs = [MultiPoly.var(i, 8) for i in range(8)]
    assert pipe[1] == vs[5] + vs[3] - vs[1]


def test_z22_pipeline_concrete():
    z11 = (Fraction(1), Fraction(2))
    z12 = (Fraction(3), Fraction(5))
    z21 = (Fraction(7), Fraction(11))
    x2 = (Fraction(13), Fraction(17))
    assert z22_pipeline(z11, z12, z21, x2) == z22_closed_form(z11, z12, z21, x2)


def test_z22_seed_determinism():
    assert verify_z22(samples=10, seed=4).to_json() == \
        verify_z22(samples=10, seed=4).to_json()


def test_star_not_associative():
    x, y, z, left, right = associativity_counterexample()
    assert left != right
    assert star(star(x, y), z) == left


def test_run_report_shape():
    report = run_report(2, seed=0, z22_samples=10)
    assert report["count"] == 408
    assert report["size"] == 32
    assert report["ratio_to_square"] == "51/128"
    assert report["z22_ok"] is True
    assert report["cgp_verdict"]["passed"] is False

import itertools
from fractions import Fraction

import pytest

from espo import pregeometry as pg
from espo.errors import ValidationError


def fano_oracle():
    cols = [list(v) for v in itertools.product(range(2), repeat=3) if any(v)]
    return pg.LinearOracle(cols, 2)


def pg32_oracle():
    cols = [list(v) for v in itertools.product(range(2), repeat=4) if any(v)]
    return pg.LinearOracle(cols, 2)


def ag23_oracle():
    # affine plane over GF(3) as the linear matroid of columns (1, x, y)
    return pg.LinearOracle([[1, x, y] for x in range(3) for y in range(3)], 3)


def broken_quadrilateral():
    """Rank-3 matroid on 5 points whose only long lines are 012 and 234."""
    lines = [{0, 1, 2}, {2, 3, 4}]

    def rank(S):
        S = set(S)
        if len(S) <= 2:
            return len(S)
        return 2 if any(S <= L for L in lines) else 3

    table = {frozenset(s): rank(s)
             for k in range(6) for s in itertools.combinations(range(5), k)}
    return pg.TableOracle(5, table)


def test_rank_axioms_and_pregeometry():
    fano = fano_oracle()
    assert pg.check_rank_axioms(fano).ok
    assert pg.check_pregeometry(fano).ok
    assert pg.check_pregeometry(broken_quadrilateral()).ok


def test_non_pregeometry_detected():
    # r({1}) = 2 breaks unit increase, and with it exchange: 0 lies in
    # cl({1}) but 1 does not lie in cl({0})
    table = {frozenset(): 0, frozenset({0}): 1, frozenset({1}): 2,
             frozenset({0, 1}): 2}
    o = pg.TableOracle(2, table)
    assert not pg.check_rank_axioms(o).ok
    verdict = pg.check_pregeometry(o)
    assert not verdict.ok and verdict.witness is not None
    with pytest.raises(ValidationError):
        pg.projectivize(o)


def test_closure():
    fano = fano_oracle()
    cl = pg.closure(fano, frozenset())
    assert cl == frozenset()
    # closing two points of the Fano plane yields the 3-point line
    assert len(pg.closure(fano, {0, 1})) == 3


def test_fano_geometry():
    g = pg.projectivize(fano_oracle())
    assert g.npoints() == 7
    assert len(g.lines) == 7
    assert all(len(L) == 3 for L in g.lines)
    assert g.dim() == 3
    assert pg.check_modularity(g).ok
    assert pg.check_veblen(g).ok
    assert pg.recognize_pg(g) == (2, 2)


def test_pg32_geometry():
    g = pg.projectivize(pg32_oracle())
    assert g.npoints() == 15
    assert len(g.lines) == 35
    assert pg.recognize_pg(g) == (2, 3)


def test_ag23_fails_modularity_with_parallel_lines():
    g = pg.projectivize(ag23_oracle())
    assert g.npoints() == 9
    verdict = pg.check_modularity(g)
    assert not verdict.ok
    A, B = verdict.witness
    # witness flats are two disjoint (parallel) lines: rank 2 each, rank 3
    # union, empty intersection
    assert g.rank_points(A) == 2 and g.rank_points(B) == 2
    assert not (A & B)
    assert g.rank_points(A | B) == 3


def test_broken_quadrilateral_fails_veblen():
    g = pg.projectivize(broken_quadrilateral())
    verdict = pg.check_veblen(g)
    assert not verdict.ok
    a, b, c, d = verdict.witness
    assert g.line(a, b) & g.line(d, c)
    assert not (g.line(a, d) & g.line(b, c))


def test_direct_sum_decomposition():
    ds = pg.DirectSumOracle(fano_oracle(), pg.LinearOracle([[1]], 2))
    g = pg.projectivize(ds)
    classes = pg.decompose_nonorthogonality(g)
    assert sorted(len(c) for c in classes) == [1, 7]
    assert pg.recognize_pg(g) is None


def test_decompose_requires_modularity():
    g = pg.projectivize(ag23_oracle())
    with pytest.raises(ValidationError):
        pg.decompose_nonorthogonality(g)


def test_mullattice_oracle():
    o = pg.MulLatticeOracle([Fraction(2), Fraction(3), Fraction(6),
                             Fraction(1, 2)])
    # 6 = 2*3 and 1/2 = 2^-1: rank 2 overall
    assert o.rank(frozenset(range(4))) == 2
    assert o.rank(frozenset({0, 3})) == 1
    assert pg.check_pregeometry(o).ok


def test_projective_geometry_not_recognized_for_skew_parameters():
    # a single 3-point line has rank 2 < 3
    o = pg.LinearOracle([[1, 0], [0, 1], [1, 1]], 2)
    g = pg.projectivize(o)
    assert pg.recognize_pg(g) is None


def test_canonical_pg_counts():
    npts, lines = pg.canonical_pg(2, 2)
    assert npts == 7 and len(lines) == 7
    npts, lines = pg.canonical_pg(3, 2)
    assert npts == 13 and len(lines) == 13
    assert all(len(L) == 4 for L in lines)


def test_oracle_json_round_trip():
    for o in (fano_oracle(),
              pg.MulLatticeOracle([Fraction(2), Fraction(3)]),
              broken_quadrilateral()):
        o2 = pg.oracle_from_json(pg.oracle_to_json(o))
        subsets = [frozenset(s) for k in range(o.n + 1)
                   for s in itertools.combinations(range(o.n), k)]
        assert all(o.rank(S) == o2.rank(S) for S in subsets)

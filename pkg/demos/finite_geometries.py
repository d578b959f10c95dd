"""Finite pregeometries: modularity, the Veblen axiom and recognition.

Projective planes over prime fields pass every check and are recognized
up to collineation; the affine plane AG(2,3) fails modularity exactly at
a pair of parallel lines; a rank-3 'broken quadrilateral' fails Veblen;
and a direct sum decomposes into its non-orthogonality classes.
"""

import itertools

from espo import pregeometry as pg

# Fano plane = nonzero vectors of GF(2)^3
fano = pg.LinearOracle(
    [list(v) for v in itertools.product(range(2), repeat=3) if any(v)], 2)
g = pg.projectivize(fano)
print("Fano: %d points, %d lines" % (g.npoints(), len(g.lines)))
print("  exchange: %s  modular: %s  Veblen: %s  recognized as PG%s"
      % (pg.check_pregeometry(fano).ok, pg.check_modularity(g).ok,
         pg.check_veblen(g).ok, pg.recognize_pg(g)))

g4 = pg.projectivize(pg.LinearOracle(
    [list(v) for v in itertools.product(range(2), repeat=4) if any(v)], 2))
print("PG(3,2): %d points, %d lines, recognized as PG%s"
      % (g4.npoints(), len(g4.lines), pg.recognize_pg(g4)))

# AG(2,3): the affine plane over GF(3) as the linear matroid of (1, x, y)
ag = pg.projectivize(pg.LinearOracle(
    [[1, x, y] for x in range(3) for y in range(3)], 3))
verdict = pg.check_modularity(ag)
print("AG(2,3): modular: %s, witness flats %s and %s (parallel lines)"
      % (verdict.ok, sorted(verdict.witness[0]), sorted(verdict.witness[1])))

# rank-3 matroid on 5 points with long lines 012 and 234 only
lines = [{0, 1, 2}, {2, 3, 4}]
table = {}
for k in range(6):
    for s in itertools.combinations(range(5), k):
        S = set(s)
        table[frozenset(S)] = len(S) if len(S) <= 2 else \
            (2 if any(S <= L for L in lines) else 3)
broken = pg.projectivize(pg.TableOracle(5, table))
vb = pg.check_veblen(broken)
print("broken quadrilateral: Veblen %s, witness quadruple %s"
      % (vb.ok, vb.witness))

ds = pg.projectivize(pg.DirectSumOracle(fano, pg.LinearOracle([[1]], 2)))
classes = pg.decompose_nonorthogonality(ds)
print("Fano + point: non-orthogonality class sizes %s"
      % sorted(len(c) for c in classes))

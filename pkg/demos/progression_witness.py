"""Geometric progressions meeting a 2-dimensional subgroup quadratically.

The variety is the rank-2 sublattice {x*z*w = 1, y*z^2*w^2 = 1} of a
4-factor torus.  With X = {2^k : |k| <= M} on every coordinate, the exact
count grows like |X|^2 -- the trivial exponent dim V = 2 is attained, so
there is no power saving along this family.
"""

from espo import groups
from espo.counting import VarietySpec, count_intersection, fit_exponent
from espo.sets import PointSet

G = groups.multiplicative(1, (2,))
V = VarietySpec(4, "lattice", G, ((1, 0, 1, 1), (0, 1, 2, 2)), 2)


def power_set(M):
    return PointSet(G, [((k,),) for k in range(-M, M + 1)])


X = power_set(10)
count = count_intersection(V, [X] * 4)
print("|X| = %d, exact |V cap X^4| = %d" % (len(X), count))
print("closed form check: sum(21 - |t|, |t| <= 5) =",
      sum(21 - abs(t) for t in range(-5, 6)))

samples = []
for M in (8, 16, 32, 64):
    XM = power_set(M)
    c = count_intersection(V, [XM] * 4)
    samples.append((len(XM), c))
    print("M = %3d  |X| = %4d  count = %6d" % (M, len(XM), c))

slope, intercept, residual = fit_exponent(samples)
print("fitted exponent (advisory, floating): %.4f  (dim V = 2)" % slope)

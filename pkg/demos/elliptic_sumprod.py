"""Generalized sum-product measurements, exactly.

A set that is additively structured cannot be multiplicatively structured
at the same time.  We measure both sumset sizes exactly for {1..N} in
(Q,+) versus (Q*,x), and for x-coordinate progressions on the curve
y^2 = x^3 - 2, where the pullback to the curve is nearly closed under
addition while the plain rational sums spread out fully.
"""

from fractions import Fraction

from espo import groups
from espo.sumprod import (run_sumprod_elliptic, run_sumprod_integers,
                          sumset)
from espo.sets import PointSet

print("|A|,sum1,sum2,max,exponent")
for N in (5, 10, 20, 40):
    print(run_sumprod_integers(N).csv_row())

print()
E = groups.elliptic(0, -2)
P = (Fraction(3), Fraction(5))
print("curve y^2 = x^3 - 2, generator P = (3, 5); 2P =",
      groups.group_add(E, P, P))

for M in (10, 20, 30):
    rep = run_sumprod_elliptic(M)
    print("M=%2d  |A|=%2d  |A+A| = %3d  |A2 +_E A2| = %3d  exponent %.4f"
          % (M, rep.size_a, rep.sum1, rep.sum2, rep.exponent))

# the curve sums stay inside the multiples of P, hence the tiny doubling
A2 = PointSet(E, [groups.scalar_mul(E, k, P)
                  for k in range(-30, 31) if k != 0])
print("|A2| = %d, |A2 + A2| = %d (all inside {kP : |k| <= 60})"
      % (len(A2), len(sumset(E, A2))))

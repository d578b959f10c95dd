"""The planar star operation and its grid family.

(a1,b1) * (a2,b2) = (a1 + a2 + b1^2 b2^2, b1 + b2) is not associative and
is no group law up to correspondence, yet the grids
X_N = [0, N^4) x [0, N) hit its graph quadratically often.  The catch is
that X_N is wildly non-generic: a single horizontal line carries N^4 of
its N^5 points, so it fails coarse (1,6)-general position.
"""

from espo.cgp import cgp_verdict
from espo.counterexample import (associativity_counterexample, grid,
                                 grid_star_count, verify_z22)
from espo.counting import max_points_on_line

x, y, z, left, right = associativity_counterexample()
print("star is not associative: (x*y)*z = %s  !=  x*(y*z) = %s"
      % (left, right))

for N in (2, 3, 4):
    X = grid(N)
    count = grid_star_count(N)
    m, line = max_points_on_line(X)
    verdict = cgp_verdict(X, C=1, tau=6)
    print("N=%d  |X|=%4d  count=%6d  36*count >= |X|^2: %s  "
          "max on line: %d  6-cgp: %s"
          % (N, len(X), count, 36 * count >= len(X) ** 2, m,
             "pass" if verdict.passed else "FAIL"))

# the dependence z22 = z21 + z12 - z11 (in a twisted sense) that a group
# law would force: verified exactly, both numerically and symbolically
print("z22 identity:", verify_z22(samples=100, seed=0).to_json())

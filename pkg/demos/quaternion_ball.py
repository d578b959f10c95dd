"""A special subgroup with quaternionic symmetry on a rank-4 torus.

The endomorphisms alpha_i, alpha_j, alpha_k permute (and invert) the four
coordinates like the quaternion units: i^2 = j^2 = k^2 = -1, ij = k.  The
subgroup V = {(x, y, x+y, x+iy, x+jy)} of G^5 has dimension 8 = 2 * dim G,
and the images X_N of quaternion coefficient boxes are closed under
alpha_i and alpha_j, which forces |X_N^5 cap V| to grow like |X_N|^2.
"""

from espo import groups
from espo.algebra import mat_mul
from espo.sets import quaternion_ball_image, quaternion_intersection_count
from espo.subgroups import QUAT_I, QUAT_J, QUAT_K, SubgroupHandle, \
    quaternion_rep

neg = [[-1 if i == j else 0 for j in range(4)] for i in range(4)]
print("i^2 = -1:", mat_mul(QUAT_I, QUAT_I) == neg)
print("ij = k:  ", mat_mul(QUAT_I, QUAT_J) == QUAT_K)

handle = SubgroupHandle(quaternion_rep())
print("relation rank %d, subgroup dimension %d (ambient %d)"
      % (handle.rank, handle.dimension(), 4 * 5))

G = groups.multiplicative(4, (2, 3, 5, 7))
g = tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4))

for N in (1, 2, 3):
    X = quaternion_ball_image(N, g, G)
    closed = all(
        X.map(lambda p: groups.apply_endomorphism(G, M, p)) == X
        for M in (QUAT_I, QUAT_J))
    count = quaternion_intersection_count(N)
    lower = (2 * (N // 2) + 1) ** 8
    print("N=%d  |X_N|=%5d  alpha_i/alpha_j-closed: %s  "
          "|X_N^5 cap V| = %7d  >= box bound %d: %s"
          % (N, len(X), closed, count, lower, count >= lower))

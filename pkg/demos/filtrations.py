"""Constrained filtrations: integer boxes and the three constructors.

The chain O_n = [-2^n, 2^n] filters the integers; polynomial rings,
localizations and finite module extensions inherit filtrations.  The
axioms are asymptotic, so we verify finite-range surrogates and report
the ranges honestly, including where the crude CF3 surrogate first kicks
in for the polynomial construction.
"""

from espo.sets import (base_spec, check_cf1, check_cf2, check_cf3,
                       filtration_level, filtration_size, localize_spec,
                       poly_spec, quaternion_order_spec)

b = base_spec()
print("base levels: n=3 ->", filtration_level(b, 3))
print("CF1 (k=1, n <= 20):", check_cf1(b, 1, 20))
print("CF2 (a=3, k=2, n <= 20):", check_cf2(b, 3, 2, 20))

p = poly_spec(b)
for n in range(4):
    print("poly level %d: size %d (= |O_%d|^%d)"
          % (n, filtration_size(p, n), n, n))

loc = localize_spec(b, 2, 1)
print("localize a=2: level 1 =", sorted(filtration_level(loc, 1)))
print("localize CF1 (n <= 10):", check_cf1(loc, 1, 10))

print("CF3 surrogate |O_{n+1}|^2 <= |O_n|^3:")
print("  base, n in [2,20]:", check_cf3(b, 2, 20))
print("  localize, n in [2,10]:", check_cf3(loc, 2, 10))
print("  poly, n = 3:", check_cf3(p, 3, 3), " (33^8 > 17^9, exact)")
print("  poly, n in [4,10]:", check_cf3(p, 4, 10))

q = quaternion_order_spec()
print("quaternion order module levels: n=1 size %d, n=2 size %d"
      % (filtration_size(q, 1), filtration_size(q, 2)))

"""Empirical sum-product measurements across group pairs.

The harness measures exact sumset cardinalities and reports an advisory
exponent; it never asserts the existential constants of the phenomenon.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import log

from . import groups
from .errors import ValidationError
from .sets import PointSet


def sumset(G, A):
    """{a + a' : a, a' in A}, exact and deduplicated."""
    if A.group != G:
        raise ValidationError("set does not live in the given group")
    elems = []
    pts = A.elements
    for i in range(len(pts)):
        for j in range(i, len(pts)):
            elems.append(groups.group_add(G, pts[i], pts[j]))
    return PointSet(G, elems)


DEFAULT_CURVE = groups.elliptic(0, -2)
DEFAULT_GENERATOR = (Fraction(3), Fraction(5))


def elliptic_pullback(curve, A, M, generator=DEFAULT_GENERATOR):
    """A2 = f2^-1(A) for f2 the x-coordinate map, A = x({+-kP : 1 <= k <= M}).

    Both y-signs are returned per x-value; A must equal the x-coordinate set
    of the first M multiples of the configured generator.
    """
    pts = []
    xs = set()
    P = groups.validate_element(curve, generator)
    Q = P
    for k in range(1, M + 1):
        if Q == groups.INFINITY:
            raise ValidationError("generator has order <= %d" % k)
        pts.append(Q)
        pts.append(groups.group_neg(curve, Q))
        xs.add(Q[0])
        Q = groups.group_add(curve, Q, P)
    if set(A) != xs:
        raise ValidationError(
            "A must be the x-coordinate set of the first %d multiples" % M)
    return PointSet(curve, pts)


@dataclass
class SumProdReport:
    group1: str
    group2: str
    size_a: int
    sum1: int
    sum2: int

    @property
    def max_sum(self):
        return max(self.sum1, self.sum2)

    @property
    def exponent(self):
        """Advisory: log(max)/log|A|, reported to 4 decimal places."""
        if self.size_a < 2 or self.max_sum < 1:
            return None
        return round(log(self.max_sum) / log(self.size_a), 4)

    def to_json(self):
        return {"group1": self.group1, "group2": self.group2,
                "size_A": self.size_a, "sum1": self.sum1, "sum2": self.sum2,
                "max": self.max_sum,
                "exponent_advisory_floating": self.exponent}

    def csv_row(self):
        return "%d,%d,%d,%d,%s" % (self.size_a, self.sum1, self.sum2,
                                   self.max_sum, self.exponent)


def _primes_up_to(n):
    out = []
    for k in range(2, n + 1):
        if all(k % p for p in out):
            out.append(k)
    return out


def run_sumprod_integers(N):
    """A = {1..N} in (Q, +) against the multiplicative group."""
    if N < 1:
        raise ValidationError("N must be >= 1")
    G1 = groups.additive(1)
    A1 = PointSet(G1, [(Fraction(k),) for k in range(1, N + 1)])
    G2 = groups.multiplicative(1, _primes_up_to(max(N, 2)))
    A2 = PointSet(G2, [groups.element_from_rationals(G2, (Fraction(k),))
                       for k in range(1, N + 1)])
    return SumProdReport("additive(1)", "multiplicative",
                         N, len(sumset(G1, A1)), len(sumset(G2, A2)))


def run_sumprod_elliptic(M, curve=DEFAULT_CURVE, generator=DEFAULT_GENERATOR):
    """A = x-coordinates of the first M multiples of the generator, pulled
    back to the curve against the additive group on the x-values."""
    if M < 0:
        raise ValidationError("M must be >= 0")
    if M > 60:
        raise ValidationError("M capped at 60 (heights grow quadratically)")
    P = groups.validate_element(curve, generator)
    xs = []
    Q = P
    for _ in range(M):
        xs.append(Q[0])
        Q = groups.group_add(curve, Q, P)
    G1 = groups.additive(1)
    A1 = PointSet(G1, [(x,) for x in xs])
    A2 = elliptic_pullback(curve, xs, M, generator)
    sum2 = len(sumset(curve, A2)) if M else 0
    return SumProdReport("additive(1)", "elliptic(%s,%s)" % (curve.a, curve.b),
                         len(A1), len(sumset(G1, A1)) if M else 0, sum2)

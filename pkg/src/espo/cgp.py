"""Coarse general position checks for planar rational point sets.

The threshold comparison worst_count^tau <= |X| is done in exact integers;
no real roots anywhere.  Exhaustive curve search interpolates through every
(M-1)-subset of the points, which certifies the exact maximum over all
curves of the given degree containing at least M-1 of the points; curves
through fewer points cannot exceed that count.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .algebra import MultiPoly, rational_kernel
from .counting import max_points_on_line, normalize_line
from .errors import BudgetError, InsufficientDataError, ValidationError


def max_on_line(points):
    """Exact max number of points on a common line, with a witness line."""
    return max_points_on_line(points)


def line_poly(triple):
    A, B, C = triple
    return MultiPoly(2, {(1, 0): Fraction(A), (0, 1): Fraction(B),
                         (0, 0): Fraction(C)})


def _monomials(C):
    """Exponent pairs of total degree <= C, in a fixed deterministic order."""
    return [(i, j) for total in range(C + 1)
            for i in range(total, -1, -1)
            for j in (total - i,)]


def _interpolate(pts, monos):
    """A nonzero curve through the given points, or None.

    Returns the kernel vector of the evaluation matrix in deterministic
    reduced form (first basis vector of the RREF-derived kernel).
    """
    rows = [[Fraction(x) ** i * Fraction(y) ** j for (i, j) in monos]
            for (x, y) in pts]
    _, basis = rational_kernel(rows)
    for vec in basis:
        if any(v != 0 for v in vec):
            return MultiPoly(2, {m: c for m, c in zip(monos, vec)})
    return None


def _poly_key(p):
    return tuple(sorted((e, c) for e, c in p.terms.items()))


def max_on_curve(points, degree, mode="exhaustive", budget=2000, seed=0,
                 exhaustive_cap=100000):
    """Max number of points on a curve of total degree <= `degree`.

    Exhaustive mode is exact (see module docstring); heuristic mode samples
    `budget` seeded subsets and returns a lower bound flagged non-exhaustive.
    Returns (count, witness MultiPoly, exact flag).
    """
    if degree < 1:
        raise ValidationError("degree must be >= 1")
    pts = points.elements
    if not pts:
        raise InsufficientDataError("empty point set")
    monos = _monomials(degree)
    m = len(monos)           # number of monomials of degree <= C in 2 vars
    k = m - 1                # subset size through which curves are interpolated
    if len(pts) <= k:
        # any such set lies on a single curve of this degree
        witness = _interpolate(pts, monos)
        return len(pts), witness, True
    total = comb(len(pts), k)
    if mode == "exhaustive":
        if total > exhaustive_cap:
            raise BudgetError(
                "C(%d, %d) = %d subsets exceed the exhaustive cap %d; "
                "use heuristic mode" % (len(pts), k, total, exhaustive_cap))
        subsets = itertools.combinations(range(len(pts)), k)
    else:
        rng = random.Random(seed)
        idx = list(range(len(pts)))
        subsets = (tuple(sorted(rng.sample(idx, k))) for _ in range(budget))
    best = (0, None)
    for sub in subsets:
        poly = _interpolate([pts[i] for i in sub], monos)
        if poly is None or poly.is_zero():
            continue
        count = sum(1 for p in pts if poly(p) == 0)
        key = (count, _poly_key(poly))
        if best[1] is None or key > (best[0], _poly_key(best[1])):
            best = (count, poly)
    return best[0], best[1], mode == "exhaustive"


@dataclass
class CgpVerdict:
    passed: bool
    tau: int
    complexity_bound: int
    worst_count: int
    set_size: int
    witness: MultiPoly = None
    mode: str = "exhaustive"
    iterations: int = 0
    seed: int = None

    def to_json(self):
        out = {"passed": self.passed, "tau": self.tau,
               "C": self.complexity_bound, "worst_count": self.worst_count,
               "set_size": self.set_size, "mode": self.mode,
               "threshold_note":
                   "exact comparison worst_count^tau vs |X|; affine chart"}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.mode == "heuristic":
            out["iterations"] = self.iterations
            out["seed"] = self.seed
        return out


def cgp_verdict(points, C, tau, mode="exhaustive", budget=2000, seed=0,
                exhaustive_cap=100000):
    """Coarse (C, tau)-general position verdict for a planar point set.

    Fails iff some curve of degree <= C through the points violates
    worst_count^tau <= |X|.  For width-1 ambient sets the proper subvarieties
    are points, so deduplicated sets always pass with worst_count 1.
    """
    if C < 1 or tau < 1:
        raise ValidationError("need C >= 1 and tau >= 1")
    size = len(points)
    width = len(points.elements[0]) if size else 0
    if width == 1:
        return CgpVerdict(True, tau, C, 1, size, mode=mode)
    if width != 2:
        raise ValidationError("cgp checks support planar or scalar sets")
    worst = 1
    witness = None
    if size >= 2:
        count, line = max_points_on_line(points)
        worst, witness = count, line_poly(line)
    iterations = 0
    used_mode = "exhaustive"
    for degree in range(2, C + 1):
        count, poly, exact = max_on_curve(points, degree, mode=mode,
                                          budget=budget, seed=seed,
                                          exhaustive_cap=exhaustive_cap)
        if not exact:
            used_mode = "heuristic"
            iterations += budget
        if count > worst:
            worst, witness = count, poly
    passed = worst ** tau <= size
    return CgpVerdict(passed, tau, C, worst, size,
                      witness=None if passed else witness,
                      mode=used_mode, iterations=iterations,
                      seed=seed if used_mode == "heuristic" else None)

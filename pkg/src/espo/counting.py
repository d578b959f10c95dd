"""Exact counting of |V cap prod X_i|, incidence counting and exponent fits.

Counting is exact integer arithmetic throughout; the only floating-point
outputs are the fitted slope/residual and the Szemeredi-Trotter-shaped
reference value, which are advisory and labeled as such in reports.
"""

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from . import groups
from .algebra import MultiPoly, format_rational, parse_rational
from .errors import (DimensionError, InsufficientDataError, StrategyError,
                     ValidationError)
from .subgroups import (SpecialSubgroupSpec, SubgroupHandle, _endo_from_json,
                        _endo_to_json, spec_from_json, spec_to_json)


# ---------------------------------------------------------------------------
# variety specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphRelation:
    """One determined coordinate of a graph-shaped variety.

    kind "group": target = sum_j endo_j(x_j) + const in the ambient group.
    kind "poly": each scalar slot of the target block is a polynomial in the
    flattened scalars of the non-target blocks (ordered by block index).
    """
    target: int
    kind: str
    terms: tuple = ()        # group mode: ((coord index, endo), ...)
    const: object = None     # group mode: a group element (default identity)
    polys: tuple = ()        # poly mode: one MultiPoly per target slot


@dataclass(frozen=True)
class VarietySpec:
    arity: int
    mode: str                      # "poly" | "lattice" | "graph"
    ambient: object                # GroupModel, or tuple of widths
    constraints: tuple
    declared_dimension: int

    def __post_init__(self):
        if self.mode not in ("poly", "lattice", "graph"):
            raise ValidationError("unknown variety mode %r" % (self.mode,))

    @property
    def group(self):
        return self.ambient if isinstance(self.ambient, groups.GroupModel) \
            else None

    def widths(self):
        if self.group is not None:
            raise ValidationError("group-mode ambient has no scalar widths")
        return tuple(self.ambient)


def lattice_handle(V):
    spec = SpecialSubgroupSpec(V.ambient, V.arity, tuple(V.constraints))
    return SubgroupHandle(spec)


# ---------------------------------------------------------------------------
# satisfaction
# ---------------------------------------------------------------------------

def _flatten_rational(V, tup):
    out = []
    for w, block in zip(V.widths(), tup):
        if len(block) != w:
            raise DimensionError("block width mismatch")
        out.extend(block)
    return out

def _graph_value(V, rel, tup):
    if rel.kind == "group":
        G = V.group
        acc = rel.const if rel.const is not None else groups.identity(G)
        for j, endo in rel.terms:
            acc = groups.group_add(G, acc,
                                   groups.apply_endomorphism(G, endo, tup[j]))
        return acc
    # poly: inputs are the flattened non-target blocks
    args = []
    for j in range(V.arity):
        if j != rel.target:
            args.extend(tup[j])
    return tuple(p(args) for p in rel.polys)


def satisfies(V, tup, handle=None):
    if len(tup) != V.arity:
        raise DimensionError("tuple arity mismatch")
    if V.mode == "poly":
        flat = _flatten_rational(V, tup)
        return all(p(flat) == 0 for p in V.constraints)
    if V.mode == "lattice":
        if handle is None:
            handle = lattice_handle(V)
        return handle.membership(tup)
    return all(tup[rel.target] == _graph_value(V, rel, tup)
               for rel in V.constraints)


# ---------------------------------------------------------------------------
# lattice -> graph conversion (used by the auto strategy)
# ---------------------------------------------------------------------------

def _as_scalar(e):
    """A scalar integer entry, if the endomorphism block is one (or c*I)."""
    if e in (0, None):
        return 0
    if isinstance(e, int):
        return e
    c = e[0][0]
    d = len(e)
    if all(len(row) == d and
           all(row[b] == (c if a == b else 0) for b in range(d))
           for a, row in enumerate(e)):
        return int(c)
    return None

def graph_relations_from_lattice(V):
    """Solve each lattice relation for a coordinate with a +-identity entry.

    Returns graph relations with distinct targets, or None if some relation
    has no unit entry on an unused coordinate.  Non-target entries may be
    arbitrary endomorphism blocks; they move to the other side negated when
    the target entry is +identity.
    """
    G = V.group
    if G is None:
        return None
    rels = []
    used = set()
    rows = list(V.constraints)
    for ri, row in enumerate(rows):
        scalars = [_as_scalar(e) for e in row]
        candidates = [j for j, s in enumerate(scalars)
                      if j not in used and s in (1, -1)]
        # prefer a coordinate no other relation touches, so solved targets
        # are never re-read by a later relation
        target = next(
            (j for j in candidates
             if all(other[j] in (0, None)
                    for oi, other in enumerate(rows) if oi != ri)),
            candidates[0] if candidates else None)
        if target is None:
            return None
        used.add(target)
        sign = -scalars[target]
        terms = []
        for j, e in enumerate(row):
            if j == target or e in (0, None):
                continue
            s = scalars[j]
            if G.kind == "elliptic":
                if s is None:
                    return None
                endo = sign * s
            elif s is not None:
                d = G.dimension
                c = sign * s
                endo = [[c if a == b else 0 for b in range(d)]
                        for a in range(d)]
            else:
                endo = [[sign * x for x in r] for r in e]
            terms.append((j, endo))
        rels.append(GraphRelation(target, "group", tuple(terms)))
    return tuple(rels)


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------

def _count_graph(V, relations, sets, workers=1):
    targets = {}
    for rel in relations:
        if rel.target in targets:
            raise StrategyError("coordinate %d determined twice" % rel.target)
        targets[rel.target] = rel
    free = [j for j in range(V.arity) if j not in targets]
    for rel in relations:
        refs = ([j for j, _ in rel.terms] if rel.kind == "group"
                else [j for j in range(V.arity) if j != rel.target])
        if any(j in targets for j in refs):
            raise StrategyError("relation references a determined coordinate")
    if not free:
        raise StrategyError("graph strategy needs at least one free coordinate")

    free_sets = [sets[j] for j in free]

    def count_chunk(chunk_first):
        count = 0
        tup = [None] * V.arity
        rest = [s.elements for s in free_sets[1:]]
        for x0 in chunk_first:
            tup[free[0]] = x0
            for combo in itertools.product(*rest):
                for j, val in zip(free[1:], combo):
                    tup[j] = val
                ok = True
                for t, rel in targets.items():
                    val = _graph_value(V, rel, tup)
                    if val not in sets[t]:
                        ok = False
                        break
                    tup[t] = val
                if ok:
                    count += 1
        return count

    first = free_sets[0].elements
    if workers <= 1:
        return count_chunk(first)
    chunks = [first[i::workers] for i in range(workers)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(count_chunk, chunks))


def _count_brute(V, sets, workers=1):
    handle = lattice_handle(V) if V.mode == "lattice" else None

    def count_chunk(chunk_first):
        count = 0
        rest = [s.elements for s in sets[1:]]
        for x0 in chunk_first:
            for combo in itertools.product(*rest):
                if satisfies(V, (x0,) + combo, handle=handle):
                    count += 1
        return count

    first = sets[0].elements
    if workers <= 1:
        return count_chunk(first)
    chunks = [first[i::workers] for i in range(workers)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(count_chunk, chunks))


def count_intersection(V, sets, strategy="auto", workers=1):
    """Exact cardinality of V intersected with the product of the sets."""
    if len(sets) != V.arity:
        raise ValidationError("expected %d sets, got %d"
                              % (V.arity, len(sets)))
    G = V.group
    for s in sets:
        if G is not None and s.group != G:
            raise ValidationError("set ambient group does not match variety")
        if G is None and s.group is not None:
            raise ValidationError("variety expects plain rational tuples")
    if any(len(s) == 0 for s in sets):
        return 0
    if strategy == "brute":
        return _count_brute(V, sets, workers)
    if strategy == "join":
        relations = (V.constraints if V.mode == "graph"
                     else graph_relations_from_lattice(V)
                     if V.mode == "lattice" else None)
        if not relations:
            raise StrategyError("constraints are not solvable for a coordinate")
        return _count_graph(V, relations, sets, workers)
    if strategy != "auto":
        raise ValidationError("unknown strategy %r" % (strategy,))
    if V.mode == "graph":
        return _count_graph(V, V.constraints, sets, workers)
    if V.mode == "lattice":
        relations = graph_relations_from_lattice(V)
        if relations:
            return _count_graph(V, relations, sets, workers)
    return _count_brute(V, sets, workers)


# ---------------------------------------------------------------------------
# point-line incidences
# ---------------------------------------------------------------------------

def normalize_line(A, B, C):
    A, B, C = Fraction(A), Fraction(B), Fraction(C)
    if A == B == C == 0:
        raise ValidationError("zero line")
    den = 1
    for x in (A, B, C):
        den = den * x.denominator // gcd(den, x.denominator)
    a, b, c = (int(x * den) for x in (A, B, C))
    g = gcd(gcd(abs(a), abs(b)), abs(c))
    a, b, c = a // g, b // g, c // g
    lead = next(x for x in (a, b, c) if x != 0)
    if lead < 0:
        a, b, c = -a, -b, -c
    return (a, b, c)


def point_line_incidences(points, lines):
    """Exact |{(p, l) : p on l}| plus the advisory ST-shaped reference."""
    norm = [normalize_line(A, B, C) for (A, B, C) in lines]
    count = 0
    for (A, B, C) in norm:
        for (x, y) in points:
            if A * x + B * y + C == 0:
                count += 1
    P, L = len(points.elements), len(norm)
    reference = P ** (2 / 3) * L ** (2 / 3) + P + L
    return count, reference


def max_points_on_line(points):
    """Exact maximum number of points on a common line, with a witness.

    Buckets all pairs by their gcd-normalized line triple; the per-line pair
    count m(m-1)/2 is inverted exactly via isqrt.
    """
    pts = points.elements
    if len(pts) < 2:
        raise InsufficientDataError("need at least 2 points")
    buckets = {}
    for i in range(len(pts)):
        x1, y1 = pts[i]
        for j in range(i + 1, len(pts)):
            x2, y2 = pts[j]
            # line through the two points: A x + B y + C = 0
            A = y2 - y1
            B = x1 - x2
            C = -(A * x1 + B * y1)
            key = normalize_line(A, B, C)
            buckets[key] = buckets.get(key, 0) + 1
    best_key = max(buckets, key=lambda k: (buckets[k], k))
    pairs = buckets[best_key]
    m = (1 + isqrt(1 + 8 * pairs)) // 2
    return m, best_key


# ---------------------------------------------------------------------------
# exponent fitting and the trivial bound
# ---------------------------------------------------------------------------

def fit_exponent(samples):
    """Least-squares fit of log c against log N; residuals in log space."""
    if len(samples) < 2:
        raise InsufficientDataError("need at least 2 samples")
    for N, c in samples:
        if N < 2 or c < 1:
            raise ValidationError("samples need N >= 2 and count >= 1")
    xs = [math.log(N) for N, _ in samples]
    ys = [math.log(c) for _, c in samples]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = my - slope * mx
    max_residual = max(abs(y - (intercept + slope * x))
                       for x, y in zip(xs, ys))
    return slope, intercept, max_residual


@dataclass
class BoundVerdict:
    passed: bool
    ratio: Fraction
    bound: int

    def to_json(self):
        return {"passed": self.passed, "ratio": format_rational(self.ratio),
                "bound": str(self.bound)}


def trivial_bound_check(dim, N, observed, constant=Fraction(1)):
    """observed <= constant * N^dim, exact; reports the ratio."""
    if N < 1:
        raise ValidationError("N must be >= 1")
    bound = Fraction(constant) * N ** dim
    ratio = Fraction(observed) / (N ** dim)
    return BoundVerdict(Fraction(observed) <= bound, ratio, N ** dim)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class ExperimentReport:
    parameters: list
    counts: list
    slope: float = None
    max_residual: float = None
    bounds: list = field(default_factory=list)
    wall_time: float = 0.0
    seed: int = None

    def to_json(self):
        out = {"parameters": self.parameters,
               "counts": self.counts,
               "bounds": [b.to_json() for b in self.bounds],
               "wall_time_advisory_floating": round(self.wall_time, 3)}
        if self.slope is not None:
            out["slope_advisory_floating"] = self.slope
            out["max_residual_advisory_floating"] = self.max_residual
        if self.seed is not None:
            out["seed"] = self.seed
        return out


# ---------------------------------------------------------------------------
# variety JSON files
# ---------------------------------------------------------------------------

def variety_to_json(V):
    out = {"arity": V.arity, "mode": V.mode, "dim": V.declared_dimension}
    if V.group is not None:
        out["ambient"] = V.group.to_json()
    else:
        out["widths"] = list(V.widths())
    if V.mode == "poly":
        out["constraints"] = [p.to_json() for p in V.constraints]
    elif V.mode == "lattice":
        spec = SpecialSubgroupSpec(V.ambient, V.arity, tuple(V.constraints))
        out["constraints"] = spec_to_json(spec)["relations"]
    else:
        rels = []
        for rel in V.constraints:
            if rel.kind == "group":
                entry = {"target": rel.target, "kind": "group",
                         "terms": [[j, _endo_to_json(V.group, e)]
                                   for j, e in rel.terms]}
                if rel.const is not None:
                    entry["const"] = groups.format_element(V.group, rel.const)
            else:
                entry = {"target": rel.target, "kind": "poly",
                         "polys": [p.to_json() for p in rel.polys]}
            rels.append(entry)
        out["constraints"] = rels
    return out


def variety_from_json(data):
    if "ambient" in data:
        ambient = groups.GroupModel.from_json(data["ambient"])
    else:
        ambient = tuple(data["widths"])
    mode = data["mode"]
    arity = int(data["arity"])
    if mode == "poly":
        constraints = tuple(MultiPoly.from_json(p) for p in data["constraints"])
    elif mode == "lattice":
        spec = spec_from_json({"group": data["ambient"], "n": arity,
                               "relations": data["constraints"]})
        constraints = spec.relations
    else:
        rels = []
        for entry in data["constraints"]:
            if entry["kind"] == "group":
                terms = [(int(j), _endo_from_json(ambient, endo))
                         for j, endo in entry["terms"]]
                const = None
                if "const" in entry:
                    const = groups.parse_element(ambient, entry["const"])
                rels.append(GraphRelation(int(entry["target"]), "group",
                                          tuple(terms), const))
            else:
                rels.append(GraphRelation(
                    int(entry["target"]), "poly",
                    polys=tuple(MultiPoly.from_json(p)
                                for p in entry["polys"])))
        constraints = tuple(rels)
    return VarietySpec(arity, mode, ambient, constraints, int(data["dim"]))

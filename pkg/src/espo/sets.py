"""Witness-set constructions: progressions, quaternion balls, constrained
filtrations and approximate modules.

All sets are deduplicated with exact canonical encodings, so reported sizes
are exact.  Filtration axioms are asymptotic; the checkers here verify
finite-range surrogates with explicit ranges and report them as such.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import groups
from .algebra import format_rational, parse_rational
from .errors import GenericityError, ValidationError
from .subgroups import quaternion_endo


# ---------------------------------------------------------------------------
# point sets
# ---------------------------------------------------------------------------

class PointSet:
    """A finite duplicate-free collection with exact membership lookup.

    `group` is a GroupModel, or None for plain rational tuples.
    """

    def __init__(self, group, elements):
        self.group = group
        seen = set()
        ordered = []
        for p in elements:
            if group is not None:
                p = groups.validate_element(group, p)
            else:
                p = tuple(Fraction(x) for x in p)
            if p not in seen:
                seen.add(p)
                ordered.append(p)
        self.elements = tuple(ordered)
        self._index = seen

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p):
        return p in self._index

    def __eq__(self, other):
        return isinstance(other, PointSet) and self._index == other._index

    def __hash__(self):
        return hash(frozenset(self._index))

    def map(self, f):
        return PointSet(self.group, [f(p) for p in self.elements])

    def union(self, other):
        return PointSet(self.group, list(self.elements) + list(other.elements))


def write_point_file(path, ps):
    with open(path, "w") as fh:
        for p in ps.elements:
            if ps.group is not None:
                fh.write(groups.format_element(ps.group, p) + "\n")
            else:
                fh.write(",".join(format_rational(x) for x in p) + "\n")


def read_point_file(path, group=None):
    elems = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if group is not None:
                elems.append(groups.parse_element(group, line))
            else:
                elems.append(tuple(parse_rational(x) for x in line.split(",")))
    return PointSet(group, elems)


# ---------------------------------------------------------------------------
# progressions and quaternion balls
# ---------------------------------------------------------------------------

def progression(G, base, M, kind="symmetric"):
    """{k*base : k in [-M, M]} or, one-sided, k in [0, M)."""
    if M < 0:
        raise ValidationError("M must be nonnegative")
    if kind == "symmetric":
        ks = range(-M, M + 1)
    elif kind == "one_sided":
        ks = range(M)
    else:
        raise ValidationError("kind must be 'symmetric' or 'one_sided'")
    return PointSet(G, [groups.scalar_mul(G, k, base) for k in ks])


def quaternion_ball_image(N, g, G=None):
    """X_N = {a_h(g) : h in the quaternion coefficient box [-N, N]^4}."""
    if G is None:
        G = groups.multiplicative(4, (2, 3, 5, 7))
    if not groups.is_generic(G, g):
        raise GenericityError("exponent matrix of g is singular")
    rng = range(-N, N + 1)
    elems = []
    for n, m, p, q in itertools.product(rng, rng, rng, rng):
        elems.append(groups.apply_endomorphism(G, quaternion_endo(n, m, p, q), g))
    return PointSet(G, elems)


def quaternion_box_tuples(N):
    """Coefficient quadruples of the quaternion box, in lexicographic order."""
    rng = range(-N, N + 1)
    return list(itertools.product(rng, rng, rng, rng))


def quaternion_intersection_count(N):
    """Exact |X_N^5 cap V| for the prebuilt 5-factor quaternion subgroup.

    Uses the faithful exponent representation: membership of the three
    determined coordinates reduces to quaternion-coefficient box checks, so
    the count is a sum over pairs (h1, h2) of box membership of h1+h2,
    h1+i*h2 and h1+j*h2.
    """
    H = np.array(quaternion_box_tuples(N), dtype=np.int64)
    n, m, p, q = H[:, 0], H[:, 1], H[:, 2], H[:, 3]
    iH = np.stack([-m, n, -q, p], axis=1)   # coefficients of i*h
    jH = np.stack([-p, q, n, -m], axis=1)   # coefficients of j*h
    total = 0
    for h1 in H:
        ok = np.all(np.abs(h1 + H) <= N, axis=1)
        ok &= np.all(np.abs(h1 + iH) <= N, axis=1)
        ok &= np.all(np.abs(h1 + jH) <= N, axis=1)
        total += int(np.count_nonzero(ok))
    return total


# ---------------------------------------------------------------------------
# constrained filtrations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiltrationSpec:
    kind: str                 # "base" | "poly" | "localize" | "module"
    inner: "FiltrationSpec" = None
    a: int = 0                # localize: inverted element
    k: int = 1                # localize: shift constant
    d: int = 0                # module: number of generators
    structure: tuple = ()     # module: c[i][j][t] structure constants

    def __post_init__(self):
        if self.kind not in ("base", "poly", "localize", "module"):
            raise ValidationError("unknown filtration constructor %r"
                                  % (self.kind,))
        if self.kind == "localize" and (self.a == 0 or self.k < 1):
            raise ValidationError("localize needs a != 0 and k >= 1")
        if self.kind == "module":
            d = self.d
            if d < 1 or len(self.structure) != d or any(
                    len(ci) != d or any(len(cij) != d for cij in ci)
                    for ci in self.structure):
                raise ValidationError("structure constants must be d x d x d")

    def to_json(self):
        if self.kind == "base":
            return {"kind": "base"}
        out = {"kind": self.kind, "inner": self.inner.to_json()}
        if self.kind == "localize":
            out.update(a=self.a, k=self.k)
        if self.kind == "module":
            out.update(d=self.d,
                       structure=[[[int(x) for x in cij] for cij in ci]
                                  for ci in self.structure])
        return out

    @classmethod
    def from_json(cls, data):
        kind = data["kind"]
        if kind == "base":
            return base_spec()
        inner = cls.from_json(data["inner"])
        if kind == "poly":
            return poly_spec(inner)
        if kind == "localize":
            return localize_spec(inner, data["a"], data.get("k", 1))
        return module_spec(inner, data["d"], data["structure"])


def base_spec():
    return FiltrationSpec("base")


def poly_spec(inner):
    return FiltrationSpec("poly", inner=inner)


def localize_spec(inner, a, k=1):
    return FiltrationSpec("localize", inner=inner, a=int(a), k=int(k))


def module_spec(inner, d, structure):
    return FiltrationSpec("module", inner=inner, d=int(d),
                          structure=tuple(tuple(tuple(int(x) for x in cij)
                                                for cij in ci)
                                          for ci in structure))


def quaternion_order_spec(inner=None):
    """The order Z[i,j,k] as a rank-4 module extension of its scalar ring."""
    if inner is None:
        inner = base_spec()
    # basis (1, i, j, k); c[i][j] = coefficients of basis_i * basis_j
    table = {
        (0, 0): (1, 0, 0, 0), (0, 1): (0, 1, 0, 0),
        (0, 2): (0, 0, 1, 0), (0, 3): (0, 0, 0, 1),
        (1, 0): (0, 1, 0, 0), (1, 1): (-1, 0, 0, 0),
        (1, 2): (0, 0, 0, 1), (1, 3): (0, 0, -1, 0),
        (2, 0): (0, 0, 1, 0), (2, 1): (0, 0, 0, -1),
        (2, 2): (-1, 0, 0, 0), (2, 3): (0, 1, 0, 0),
        (3, 0): (0, 0, 0, 1), (3, 1): (0, 0, 1, 0),
        (3, 2): (0, -1, 0, 0), (3, 3): (-1, 0, 0, 0),
    }
    structure = [[table[(i, j)] for j in range(4)] for i in range(4)]
    return module_spec(inner, 4, structure)


def filtration_level(spec, n):
    """The exact finite level of the filtration, as a list of ring elements.

    Base: integers in [-2^n, 2^n].  Poly: coefficient tuples of degree < n
    over the inner level n (trailing zeros stripped).  Localize: a^-n times
    the inner level 2kn.  Module: d-tuples over the inner level n.
    """
    if n < 0:
        raise ValidationError("level index must be nonnegative")
    if spec.kind == "base":
        return list(range(-2 ** n, 2 ** n + 1))
    if spec.kind == "poly":
        if n == 0:
            return [()]          # the zero polynomial
        inner = filtration_level(spec.inner, n)
        out = set()
        for coeffs in itertools.product(inner, repeat=n):
            t = list(coeffs)
            while t and t[-1] == 0:
                t.pop()
            out.add(tuple(t))
        return sorted(out)
    if spec.kind == "localize":
        inner = filtration_level(spec.inner, 2 * spec.k * n)
        scale = Fraction(1, 1) / Fraction(spec.a) ** n
        return [Fraction(x) * scale for x in inner]
    inner = filtration_level(spec.inner, n)
    return [t for t in itertools.product(inner, repeat=spec.d)]


def filtration_size(spec, n):
    """Closed-form exact size of a level, without materializing it."""
    if spec.kind == "base":
        return 2 ** (n + 1) + 1
    if spec.kind == "poly":
        return filtration_size(spec.inner, n) ** n if n > 0 else 1
    if spec.kind == "localize":
        return filtration_size(spec.inner, 2 * spec.k * n)
    return filtration_size(spec.inner, n) ** spec.d


def level_interval(spec, n):
    """(scale, lo, hi) with level = {m * scale : lo <= m <= hi}, when the
    spec is a Base/Localize chain; None otherwise."""
    if spec.kind == "base":
        return (Fraction(1), -2 ** n, 2 ** n)
    if spec.kind == "localize":
        inner = level_interval(spec.inner, 2 * spec.k * n)
        if inner is None:
            return None
        s, lo, hi = inner
        return (s / Fraction(spec.a) ** n, lo, hi)
    return None


def _level_add(spec, x, y):
    if spec.kind in ("base", "localize"):
        return x + y
    if spec.kind == "poly":
        t = [a + b for a, b in itertools.zip_longest(x, y, fillvalue=0)]
        while t and t[-1] == 0:
            t.pop()
        return tuple(t)
    return tuple(a + b for a, b in zip(x, y))


def _level_scale(spec, a, x):
    if spec.kind in ("base", "localize"):
        return a * x
    return tuple(_level_scale(spec.inner, a, c) for c in x) \
        if spec.kind == "module" else tuple(a * c for c in x)


def _interval_contains(src, factor, dst):
    """Does factor * {m*s : lo<=m<=hi} lie inside the dst interval set?"""
    s, lo, hi = src
    s2, lo2, hi2 = dst
    q = Fraction(factor) * s / s2
    if q.denominator != 1:
        return False
    q = q.numerator
    ends = sorted((lo * q, hi * q))
    return ends[0] >= lo2 and ends[1] <= hi2


def check_cf1(spec, k, n_max, materialize_cap=4000):
    """Finite-range CF1: O_n + O_n inside O_{n+k} for all n <= n_max."""
    for n in range(n_max + 1):
        src = level_interval(spec, n)
        dst = level_interval(spec, n + k)
        if src is not None and dst is not None:
            # sumset of an interval set doubles the coefficient range
            s, lo, hi = src
            if not _interval_contains((s, 2 * lo, 2 * hi), 1, dst):
                return False, n
            continue
        if filtration_size(spec, n) > materialize_cap:
            raise ValidationError(
                "level %d too large to materialize for CF1 check" % n)
        level = filtration_level(spec, n)
        target = set(filtration_level(spec, n + k))
        for x in level:
            for y in level:
                if _level_add(spec, x, y) not in target:
                    return False, n
    return True, None


def check_cf2(spec, a, k, n_max, materialize_cap=4000):
    """Finite-range CF2: a * O_n inside O_{n+k} for all n <= n_max."""
    for n in range(n_max + 1):
        src = level_interval(spec, n)
        dst = level_interval(spec, n + k)
        if src is not None and dst is not None:
            if not _interval_contains(src, a, dst):
                return False, n
            continue
        if filtration_size(spec, n) > materialize_cap:
            raise ValidationError(
                "level %d too large to materialize for CF2 check" % n)
        target = set(filtration_level(spec, n + k))
        for x in filtration_level(spec, n):
            if _level_scale(spec, a, x) not in target:
                return False, n
    return True, None


def check_cf3(spec, n_min, n_max):
    """Finite surrogate of CF3: |O_{n+1}|^2 <= |O_n|^3, exact integers."""
    for n in range(n_min, n_max + 1):
        if filtration_size(spec, n + 1) ** 2 > filtration_size(spec, n) ** 3:
            return False, n
    return True, None


# ---------------------------------------------------------------------------
# approximate modules
# ---------------------------------------------------------------------------

def _scalar_action(G, lam, gen):
    if isinstance(lam, tuple):
        if G.kind == "multiplicative" and G.dimension == 4 and len(lam) == 4:
            return groups.apply_endomorphism(G, quaternion_endo(*lam), gen)
        raise ValidationError("unsupported scalar action for %r" % (lam,))
    if isinstance(lam, Fraction) and lam.denominator != 1:
        if G.kind == "additive":
            return tuple(lam * x for x in groups.validate_element(G, gen))
        raise ValidationError("fractional scalars act on additive groups only")
    return groups.scalar_mul(G, int(lam), gen)


def approximate_module(G, level_spec, generators, n):
    """All sums sum_i lam_i * gamma_i with each lam_i in level n, deduplicated."""
    scalars = filtration_level(level_spec, n)
    elems = []
    for lams in itertools.product(scalars, repeat=len(generators)):
        acc = groups.identity(G)
        for lam, gen in zip(lams, generators):
            acc = groups.group_add(G, acc, _scalar_action(G, lam, gen))
        elems.append(acc)
    return PointSet(G, elems)

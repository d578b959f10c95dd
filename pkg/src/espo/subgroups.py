"""Special subgroups of G^n cut out by matrices of endomorphisms.

A subgroup is described by an m x n matrix of endomorphisms of G, one row per
relation sum_j e_ij(g_j) = identity.  For the multiplicative model the
relations flatten to an integer matrix on exponent data; the connected
component of the kernel corresponds to the saturation of that relation
lattice, computed once via Smith normal form.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import groups
from .algebra import (mat_mul, rational_kernel, rational_rank, saturate_rows,
                      smith_normal_form, format_rational, parse_rational)
from .errors import DimensionError, ValidationError

# left-multiplication matrices of the quaternion units i, j, k acting on the
# exponent tuple (a, b, c, d) of a rank-4 torus element
QUAT_I = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
QUAT_J = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]
QUAT_K = [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]

_QUAT_SYMBOLS = None


def quaternion_unit_matrices():
    global _QUAT_SYMBOLS
    if _QUAT_SYMBOLS is None:
        ident = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
        syms = {"1": ident, "i": QUAT_I, "j": QUAT_J, "k": QUAT_K}
        for name in list(syms):
            syms["-" + name] = [[-x for x in row] for row in syms[name]]
        _QUAT_SYMBOLS = syms
    return _QUAT_SYMBOLS


def quaternion_endo(n, m, p, q):
    """Integer matrix of the endomorphism induced by n + m*i + p*j + q*k."""
    out = [[0] * 4 for _ in range(4)]
    for coeff, M in ((n, None), (m, QUAT_I), (p, QUAT_J), (q, QUAT_K)):
        for r in range(4):
            for c in range(4):
                base = (1 if r == c else 0) if M is None else M[r][c]
                out[r][c] += coeff * base
    return out


@dataclass(frozen=True)
class SpecialSubgroupSpec:
    group: groups.GroupModel
    n: int
    relations: tuple  # m rows, each a tuple of n endomorphisms (or 0)

    def __post_init__(self):
        if len(self.relations) > self.n:
            raise ValidationError("more relations than factors")


def _endo_block(G, e):
    """Flatten one endomorphism entry to a dim x dim scalar block.

    A plain integer c denotes the multiplication-by-c endomorphism.
    """
    d = G.dimension if G.kind != "elliptic" else 1
    if e == 0 or e is None:
        return [[0] * d for _ in range(d)]
    if G.kind == "elliptic":
        return [[int(e)]]
    if isinstance(e, int):
        return [[e if r == c else 0 for c in range(d)] for r in range(d)]
    if len(e) != d or any(len(row) != d for row in e):
        raise ValidationError("endomorphism block has wrong shape")
    return [list(row) for row in e]


class SubgroupHandle:
    """Immutable handle supporting membership and dimension queries."""

    def __init__(self, spec):
        G = spec.group
        self.spec = spec
        self.group = G
        self.n = spec.n
        d = G.dim if G.kind == "elliptic" else G.dimension
        self._unit = d
        # flattened relation matrix, one block column per factor
        flat = []
        for row in spec.relations:
            if len(row) != spec.n:
                raise DimensionError("relation row has %d entries, expected %d"
                                     % (len(row), spec.n))
            blocks = [_endo_block(G, e) for e in row]
            for r in range(self._unit):
                flat.append([x for blk in blocks for x in blk[r]])
        self.flat = flat
        if flat and G.kind != "additive":
            int_flat = [[int(x) for x in row] for row in flat]
            self.saturated, self.rank = saturate_rows(int_flat)
        elif flat:
            self.saturated = None
            self.rank = rational_rank(flat)
        else:
            self.saturated = []
            self.rank = 0

    def dimension(self):
        """dim over the base of the connected kernel component."""
        return self.group.dim * self.n - self.rank

    def _flat_coords(self, tup):
        G = self.group
        if len(tup) != self.n:
            raise DimensionError("tuple length != number of factors")
        elems = [groups.validate_element(G, p) for p in tup]
        if G.kind == "additive":
            return [x for p in elems for x in p]
        if G.kind == "multiplicative":
            # rows of exponent data: one integer row vector per coordinate
            return [list(vec) for p in elems for vec in p]
        return elems

    def membership(self, tup):
        G = self.group
        if G.kind == "elliptic":
            elems = self._flat_coords(tup)
            for row in self.spec.relations:
                acc = groups.identity(G)
                for e, p in zip(row, elems):
                    c = 0 if e in (0, None) else int(e)
                    if c:
                        acc = groups.group_add(G, acc, groups.scalar_mul(G, c, p))
                return_zero = acc == groups.INFINITY
                if not return_zero:
                    return False
            return True
        v = self._flat_coords(tup)
        rows = self.saturated if self.saturated is not None else self.flat
        if G.kind == "multiplicative":
            B = len(G.primes)
            for row in rows:
                for t in range(B):
                    if sum(c * v[idx][t] for idx, c in enumerate(row) if c):
                        return False
            return True
        for row in rows:
            if sum(Fraction(c) * x for c, x in zip(row, v)):
                return False
        return True


def build_special_subgroup(spec):
    return SubgroupHandle(spec)


def membership(handle, tup):
    return handle.membership(tup)


def subgroup_dimension(handle):
    return handle.dimension()


def integer_kernel_basis(A):
    """Basis of the integer kernel lattice of an integer matrix."""
    if not A:
        return []
    U, D, V = smith_normal_form(A)
    cols = len(A[0])
    r = sum(1 for i in range(min(len(D), cols)) if D[i][i] != 0)
    return [[V[row][c] for row in range(cols)] for c in range(r, cols)]


def lattice_relations(spec):
    """Flattened integer relation matrix for lattice-mode constraints."""
    return SubgroupHandle(spec).flat


def quaternion_rep(primes=(2, 3, 5, 7)):
    """The 5-factor special subgroup {z1 = x*y, z2 = x*a_i(y), z3 = x*a_j(y)}
    of the rank-4 torus, with the quaternion units acting by signed
    permutations of exponents."""
    G = groups.multiplicative(4, primes)
    ident = quaternion_unit_matrices()["1"]
    neg = quaternion_unit_matrices()["-1"]
    rows = (
        (ident, ident, neg, 0, 0),
        (ident, QUAT_I, 0, neg, 0),
        (ident, QUAT_J, 0, 0, neg),
    )
    return SpecialSubgroupSpec(G, 5, rows)


# ---------------------------------------------------------------------------
# member construction (used by property tests and the CLI)
# ---------------------------------------------------------------------------

def random_member(handle, rng, coeff_range=5):
    """A random element of the subgroup, as a tuple of group elements."""
    G = handle.group
    if G.kind == "additive":
        flat = handle.flat or [[0] * (G.dimension * handle.n)]
        _, basis = rational_kernel(flat)
        total = [Fraction(0)] * (G.dimension * handle.n)
        for v in basis:
            c = Fraction(rng.randint(-coeff_range, coeff_range))
            total = [t + c * x for t, x in zip(total, v)]
        d = G.dimension
        return tuple(tuple(total[i * d:(i + 1) * d]) for i in range(handle.n))
    if G.kind == "multiplicative":
        B = len(G.primes)
        ncols = G.dimension * handle.n
        flat = [[int(x) for x in row] for row in handle.flat] or [[0] * ncols]
        kern = integer_kernel_basis(flat)
        data = [[0] * B for _ in range(ncols)]
        for v in kern:
            w = [rng.randint(-coeff_range, coeff_range) for _ in range(B)]
            for idx in range(ncols):
                if v[idx]:
                    for t in range(B):
                        data[idx][t] += v[idx] * w[t]
        r = G.dimension
        return tuple(tuple(tuple(data[i * r + s]) for s in range(r))
                     for i in range(handle.n))
    raise ValidationError("random members supported for additive and "
                          "multiplicative models only")


# ---------------------------------------------------------------------------
# JSON subgroup spec files
# ---------------------------------------------------------------------------

def _endo_to_json(G, e):
    if e in (0, None):
        return 0
    if G.kind == "elliptic" or isinstance(e, int):
        return int(e)
    syms = quaternion_unit_matrices()
    if G.kind == "multiplicative" and G.dimension == 4:
        for name, M in syms.items():
            if [list(r) for r in e] == M:
                return name
    return [[format_rational(x) if G.kind == "additive" else int(x)
             for x in row] for row in e]


def _endo_from_json(G, data):
    if data == 0:
        return 0
    if G.kind == "elliptic" or isinstance(data, int):
        return int(data)
    if isinstance(data, str):
        syms = quaternion_unit_matrices()
        if data not in syms:
            raise ValidationError("unknown endomorphism symbol %r" % (data,))
        return syms[data]
    if G.kind == "additive":
        return [[parse_rational(x) for x in row] for row in data]
    return [[int(x) for x in row] for row in data]


def spec_to_json(spec):
    return {"group": spec.group.to_json(), "n": spec.n,
            "relations": [[_endo_to_json(spec.group, e) for e in row]
                          for row in spec.relations]}


def spec_from_json(data):
    G = groups.GroupModel.from_json(data["group"])
    rows = tuple(tuple(_endo_from_json(G, e) for e in row)
                 for row in data["relations"])
    return SpecialSubgroupSpec(G, int(data["n"]), rows)

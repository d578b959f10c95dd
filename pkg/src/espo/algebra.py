"""Exact linear and polynomial algebra over the integers and rationals.

Rationals are `fractions.Fraction` throughout: always reduced, exact
comparisons, no floating point on any counting path.  Integer matrices are
plain lists of lists of Python ints; no fixed-size numeric types anywhere.
"""

from fractions import Fraction

from .errors import DimensionError, ValidationError

Rational = Fraction


# ---------------------------------------------------------------------------
# integer / rational matrices
# ---------------------------------------------------------------------------

def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    if not A or not B or len(A[0]) != len(B):
        raise DimensionError("matrix shapes do not match for multiplication")
    cols = len(B[0])
    inner = len(B)
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def mat_det(A):
    """Exact determinant via fraction-free Gaussian elimination (Bareiss)."""
    n = len(A)
    if n == 0 or any(len(row) != n for row in A):
        raise DimensionError("determinant requires a nonempty square matrix")
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[-1][-1]


def _check_nonempty(A):
    if not A or not A[0]:
        raise ValidationError("matrix must be nonempty")
    w = len(A[0])
    if any(len(row) != w for row in A):
        raise ValidationError("ragged matrix")


def smith_normal_form(A):
    """Smith normal form of an integer matrix.

    Returns (U, D, V) with U*A*V = D, U and V unimodular, D diagonal with
    nonnegative entries and d1 | d2 | ...  Pivots are chosen by minimal
    nonzero absolute value; plain elementary row/column reduction.
    """
    _check_nonempty(A)
    rows, cols = len(A), len(A[0])
    M = [list(row) for row in A]
    U = identity_matrix(rows)
    V = identity_matrix(cols)

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in M:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(rows, cols):
        # locate minimal-abs nonzero pivot in the trailing submatrix
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if M[i][j] != 0 and (pivot is None
                                     or abs(M[i][j]) < abs(M[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])

        while True:
            p = M[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if M[i][t] != 0:
                    q = M[i][t] // p
                    add_row(i, t, -q)
                    if M[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, cols):
                if M[t][j] != 0:
                    q = M[t][j] // p
                    add_col(j, t, -q)
                    if M[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
                        break
            if dirty:
                continue
            # row t and column t are clear; enforce divisibility of the rest
            p = M[t][t]
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if M[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    return U, M, V


def snf_diagonal(A):
    """The diagonal invariant factors (including trailing zeros)."""
    _, D, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def rational_rref(A):
    """Reduced row echelon form over Q.  Returns (R, pivot_columns)."""
    _check_nonempty(A)
    R = [[Fraction(x) for x in row] for row in A]
    rows, cols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if R[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        R[r], R[pivot_row] = R[pivot_row], R[r]
        pv = R[r][c]
        R[r] = [x / pv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rational_kernel(A):
    """Rank and a deterministic kernel basis of a matrix, over Q.

    The basis comes from the reduced row echelon form: one vector per free
    column, with a 1 in the free slot and pivot slots solved exactly.
    """
    _check_nonempty(A)
    R, pivots = rational_rref(A)
    cols = len(A[0])
    rank = len(pivots)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][fc]
        basis.append(v)
    return rank, basis


def rational_rank(A):
    return rational_kernel(A)[0]


def saturate_rows(A):
    """A basis of the saturation of the row lattice of an integer matrix.

    Returns integer rows spanning (row space over Q) intersected with Z^cols;
    derived from the Smith normal form, so the result is deterministic.
    """
    _check_nonempty(A)
    U, D, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i] != 0)
    # saturated row lattice is spanned by the first r rows of V^-1, i.e. the
    # rows of the matrix E*V^-1 with E = [[I_r, 0]]; recover V^-1 by inverting
    # the unimodular V exactly over Q.
    cols = len(A[0])
    Vinv = _unimodular_inverse(V)
    return [Vinv[i] for i in range(r)], r


def _unimodular_inverse(V):
    n = len(V)
    aug = [[Fraction(V[i][j]) for j in range(n)]
           + [Fraction(1 if i == j else 0) for j in range(n)]
           for i in range(n)]
    R, pivots = rational_rref(aug)
    inv = []
    for i in range(n):
        row = R[i][n:]
        if any(x.denominator != 1 for x in row):
            raise ValidationError("matrix is not unimodular")
        inv.append([int(x) for x in row])
    return inv


# ---------------------------------------------------------------------------
# multivariate polynomials over Q
# ---------------------------------------------------------------------------

class MultiPoly:
    """A multivariate polynomial over Q, stored as {exponent tuple: coeff}.

    No duplicate exponent vectors, no zero coefficients.  Supports exact
    evaluation, degree queries and the ring operations needed to expand and
    compare composite expressions coefficient-by-coefficient.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValidationError("bad exponent vector %r" % (exps,))
            clean[exps] = coeff
        self.terms = clean

    @classmethod
    def const(cls, c, nvars):
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, i, nvars):
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): Fraction(1)})

    def degree(self):
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def is_zero(self):
        return not self.terms

    def __call__(self, point):
        if len(point) != self.nvars:
            raise DimensionError(
                "point has %d coordinates, polynomial has %d variables"
                % (len(point), self.nvars))
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            v = coeff
            for x, e in zip(pt, exps):
                if e:
                    v *= x ** e
            total += v
        return total

    def _binop(self, other, f):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other, self.nvars)
        if other.nvars != self.nvars:
            raise DimensionError("mixed variable counts")
        return f(other)

    def __add__(self, other):
        def add(o):
            terms = dict(self.terms)
            for exps, c in o.terms.items():
                terms[exps] = terms.get(exps, Fraction(0)) + c
            return MultiPoly(self.nvars, terms)
        return self._binop(other, add)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        def mul(o):
            terms = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in o.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    terms[e] = terms.get(e, Fraction(0)) + c1 * c2
            return MultiPoly(self.nvars, terms)
        return self._binop(other, mul)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValidationError("negative power")
        out = MultiPoly.const(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            mono = "*".join("x%d^%d" % (i, e) for i, e in enumerate(exps) if e)
            bits.append(("%s*%s" % (c, mono)) if mono else str(c))
        return "MultiPoly(%s)" % " + ".join(bits)

    def to_json(self):
        items = sorted(self.terms.items())
        return {"vars": self.nvars,
                "terms": [[str(c), list(e)] for e, c in items]}

    @classmethod
    def from_json(cls, data):
        return cls(data["vars"],
                   {tuple(e): Fraction(c) for c, e in data["terms"]})


def poly_eval(p, point):
    """Exact value of p at a rational point."""
    return p(point)


def parse_rational(s):
    return Fraction(str(s).strip())


def format_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)

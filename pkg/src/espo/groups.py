"""Exact models of the three families of commutative groups used everywhere.

* Additive(d): vectors of rationals of length d.
* Multiplicative(r, primes): r-tuples of positive rationals factoring over a
  fixed prime basis; elements are stored as integer exponent vectors, so the
  group law is exponent addition and "generic" is a checkable determinant
  condition.
* Elliptic(a, b): rational points of y^2 = x^3 + a x + b, affine pairs plus
  an explicit point at infinity, chord-tangent addition.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import mat_det, format_rational, parse_rational
from .errors import DimensionError, EncodingError, ValidationError

INFINITY = "O"  # the elliptic identity marker


@dataclass(frozen=True)
class GroupModel:
    kind: str                 # "additive" | "multiplicative" | "elliptic"
    dimension: int = 1        # d for additive, r for multiplicative
    primes: tuple = ()        # multiplicative prime basis, strictly increasing
    a: Fraction = Fraction(0)  # elliptic curve coefficients
    b: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind == "multiplicative":
            ps = tuple(self.primes)
            if any(p2 <= p1 for p1, p2 in zip(ps, ps[1:])):
                raise ValidationError("prime basis must be strictly increasing")
        elif self.kind == "elliptic":
            if 4 * self.a ** 3 + 27 * self.b ** 2 == 0:
                raise ValidationError("singular curve: 4a^3 + 27b^2 = 0")
        elif self.kind != "additive":
            raise ValidationError("unknown group kind %r" % (self.kind,))

    @property
    def dim(self):
        """Algebraic dimension of the group (elliptic curves are 1-dim)."""
        return 1 if self.kind == "elliptic" else self.dimension

    def to_json(self):
        if self.kind == "additive":
            return {"kind": "additive", "d": self.dimension}
        if self.kind == "multiplicative":
            return {"kind": "multiplicative", "r": self.dimension,
                    "primes": list(self.primes)}
        return {"kind": "elliptic", "a": format_rational(self.a),
                "b": format_rational(self.b)}

    @classmethod
    def from_json(cls, data):
        kind = data["kind"]
        if kind == "additive":
            return additive(data["d"])
        if kind == "multiplicative":
            return multiplicative(data["r"], data["primes"])
        return elliptic(parse_rational(data["a"]), parse_rational(data["b"]))


def additive(d):
    return GroupModel("additive", dimension=d)


def multiplicative(r, primes):
    return GroupModel("multiplicative", dimension=r, primes=tuple(primes))


def elliptic(a, b):
    return GroupModel("elliptic", a=Fraction(a), b=Fraction(b))


# ---------------------------------------------------------------------------
# element validation and group law
# ---------------------------------------------------------------------------

def validate_element(G, p):
    if G.kind == "additive":
        if len(p) != G.dimension:
            raise DimensionError("additive element has wrong length")
        return tuple(Fraction(x) for x in p)
    if G.kind == "multiplicative":
        if len(p) != G.dimension:
            raise DimensionError("multiplicative element has wrong arity")
        B = len(G.primes)
        out = []
        for vec in p:
            if len(vec) != B:
                raise DimensionError("exponent vector length != prime basis")
            out.append(tuple(int(e) for e in vec))
        return tuple(out)
    # elliptic
    if p == INFINITY:
        return INFINITY
    if len(p) != 2:
        raise ValidationError("elliptic point must be 'O' or an (x, y) pair")
    x, y = Fraction(p[0]), Fraction(p[1])
    if y * y != x ** 3 + G.a * x + G.b:
        raise ValidationError("point (%s, %s) is not on the curve" % (x, y))
    return (x, y)


def identity(G):
    if G.kind == "additive":
        return (Fraction(0),) * G.dimension
    if G.kind == "multiplicative":
        return tuple((0,) * len(G.primes) for _ in range(G.dimension))
    return INFINITY


def group_add(G, p, q):
    p = validate_element(G, p)
    q = validate_element(G, q)
    if G.kind == "additive":
        return tuple(a + b for a, b in zip(p, q))
    if G.kind == "multiplicative":
        return tuple(tuple(a + b for a, b in zip(u, v)) for u, v in zip(p, q))
    return _elliptic_add(G, p, q)


def group_neg(G, p):
    p = validate_element(G, p)
    if G.kind == "additive":
        return tuple(-a for a in p)
    if G.kind == "multiplicative":
        return tuple(tuple(-e for e in vec) for vec in p)
    if p == INFINITY:
        return INFINITY
    return (p[0], -p[1])


def _elliptic_add(G, p, q):
    if p == INFINITY:
        return q
    if q == INFINITY:
        return p
    x1, y1 = p
    x2, y2 = q
    if x1 == x2:
        if y1 == -y2:
            return INFINITY
        lam = (3 * x1 * x1 + G.a) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    y3 = lam * (x1 - x3) - y1
    return (x3, y3)


def scalar_mul(G, n, p):
    """n-fold sum via double-and-add; negative n uses the inverse."""
    p = validate_element(G, p)
    if n < 0:
        return scalar_mul(G, -n, group_neg(G, p))
    acc = identity(G)
    addend = p
    while n:
        if n & 1:
            acc = group_add(G, acc, addend)
        n >>= 1
        if n:
            addend = group_add(G, addend, addend)
    return acc


# ---------------------------------------------------------------------------
# endomorphisms
# ---------------------------------------------------------------------------

def apply_endomorphism(G, e, p):
    """Apply an endomorphism.

    Additive: e is a d x d rational matrix.  Multiplicative: e is an r x r
    integer matrix acting on the tuple of exponent vectors.  Elliptic: e is
    an integer (multiplication-by-n).
    """
    p = validate_element(G, p)
    if G.kind == "elliptic":
        return scalar_mul(G, int(e), p)
    d = G.dimension
    if len(e) != d or any(len(row) != d for row in e):
        raise DimensionError("endomorphism matrix must be %d x %d" % (d, d))
    if G.kind == "additive":
        return tuple(sum(Fraction(e[i][j]) * p[j] for j in range(d))
                     for i in range(d))
    B = len(G.primes)
    out = []
    for i in range(d):
        vec = [0] * B
        for j in range(d):
            c = int(e[i][j])
            if c:
                for t in range(B):
                    vec[t] += c * p[j][t]
        out.append(tuple(vec))
    return tuple(out)


def endo_identity(G):
    if G.kind == "elliptic":
        return 1
    d = G.dimension
    return [[1 if i == j else 0 for j in range(d)] for i in range(d)]


def endo_compose(G, e2, e1):
    """Endomorphism equal to applying e1 first, then e2."""
    if G.kind == "elliptic":
        return int(e2) * int(e1)
    d = G.dimension
    return [[sum(e2[i][k] * e1[k][j] for k in range(d)) for j in range(d)]
            for i in range(d)]


# ---------------------------------------------------------------------------
# multiplicative encoding
# ---------------------------------------------------------------------------

def mul_encode(basis, q):
    """Exponent vector of a positive rational over a prime basis."""
    q = Fraction(q)
    if q <= 0:
        raise EncodingError("only positive rationals can be encoded")
    vec = [0] * len(basis)
    for sign, n in ((1, q.numerator), (-1, q.denominator)):
        for i, p in enumerate(basis):
            while n % p == 0:
                n //= p
                vec[i] += sign
        if n != 1:
            raise EncodingError(
                "%s has a prime factor outside the basis %s" % (q, list(basis)))
    return tuple(vec)


def mul_decode(basis, vec):
    q = Fraction(1)
    for p, e in zip(basis, vec):
        q *= Fraction(p) ** e
    return q


def element_from_rationals(G, values):
    """Multiplicative element from a tuple of positive rationals."""
    if G.kind != "multiplicative":
        raise ValidationError("expected a multiplicative model")
    if len(values) != G.dimension:
        raise DimensionError("wrong arity")
    return tuple(mul_encode(G.primes, v) for v in values)


def element_to_rationals(G, p):
    return tuple(mul_decode(G.primes, vec) for vec in p)


def exponent_matrix(G, p):
    """The r x |primes| integer matrix of exponent vectors of an element."""
    p = validate_element(G, p)
    return [list(vec) for vec in p]


def is_generic(G, p):
    """Surrogate genericity: square exponent matrix with nonzero determinant."""
    M = exponent_matrix(G, p)
    return len(M) == len(M[0]) and mat_det(M) != 0


# ---------------------------------------------------------------------------
# point file format (one element per line)
# ---------------------------------------------------------------------------

def format_element(G, p):
    p = validate_element(G, p)
    if G.kind == "additive":
        return ",".join(format_rational(x) for x in p)
    if G.kind == "multiplicative":
        return "|".join(" ".join(str(e) for e in vec) for vec in p)
    if p == INFINITY:
        return INFINITY
    return "%s,%s" % (format_rational(p[0]), format_rational(p[1]))


def parse_element(G, line):
    line = line.strip()
    if G.kind == "additive":
        return validate_element(G, [parse_rational(x) for x in line.split(",")])
    if G.kind == "multiplicative":
        vecs = [tuple(int(e) for e in part.split()) for part in line.split("|")]
        return validate_element(G, vecs)
    if line == INFINITY:
        return INFINITY
    x, y = line.split(",")
    return validate_element(G, (parse_rational(x), parse_rational(y)))

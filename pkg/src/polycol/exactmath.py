"""Exact integer, rational and polynomial arithmetic kernels.

Everything in this package computes over Python ints, ``fractions.Fraction``
and sparse integer polynomials; there is no floating point anywhere.  Vectors
are plain tuples of ints, matrices are tuples of row tuples.  The canonical
order on integer vectors is coordinate-lexicographic (= tuple order), and all
set-valued results elsewhere in the package are emitted sorted in that order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


# ---------------------------------------------------------------------------
# integer vectors


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_neg(a):
    return tuple(-x for x in a)


def vec_scale(k, a):
    return tuple(k * x for x in a)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b, strict=True))


def gcd_list(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def primitive_part(v):
    """v divided by the gcd of its components; positively proportional to v."""
    g = gcd_list(v)
    if g == 0:
        raise ValueError("primitive part of the zero vector is undefined")
    return tuple(x // g for x in v)


def extended_gcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def integral_section(a):
    """An integer vector w with a . w = 1, for primitive a.

    Deterministic: an extended-gcd sweep in coordinate order.
    """
    if gcd_list(a) != 1:
        raise ValueError("integral_section requires a primitive vector")
    g = 0
    w = [0] * len(a)
    for i, ai in enumerate(a):
        g2, x, y = extended_gcd(g, ai)
        for j in range(i):
            w[j] *= x
        w[i] = y
        g = g2
    assert g == 1
    return tuple(w)


# ---------------------------------------------------------------------------
# integral linear algebra


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def transpose(m):
    return tuple(zip(*m))


def hermite_normal_form(m):
    """Row Hermite normal form of an integer matrix.

    Returns (h, u) with u unimodular (|det u| = 1) and h = u @ m.  Pivots are
    positive, entries above a pivot are reduced into [0, pivot), zero rows
    sink to the bottom.
    """
    rows = [list(r) for r in m]
    if not rows:
        raise ValueError("empty matrix")
    nr, nc = len(rows), len(rows[0])
    u = [list(r) for r in identity_matrix(nr)]

    def row_op(i, j, q):
        # rows[i] -= q * rows[j], mirrored on u
        rows[i] = [x - q * y for x, y in zip(rows[i], rows[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    r = 0
    for c in range(nc):
        # euclid the column entries at rows >= r down to a single nonzero
        while True:
            nz = [i for i in range(r, nr) if rows[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][c]))
            if piv != r:
                rows[r], rows[piv] = rows[piv], rows[r]
                u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, nr):
                if rows[i][c] != 0:
                    row_op(i, r, rows[i][c] // rows[r][c])
                    if rows[i][c] != 0:
                        done = False
            if done:
                break
        if r < nr and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
                u[r] = [-x for x in u[r]]
            for i in range(r):
                q = rows[i][c] // rows[r][c]
                if q:
                    row_op(i, r, q)
            r += 1
            if r == nr:
                break
    h = tuple(tuple(row) for row in rows)
    return h, tuple(tuple(row) for row in u)


def rank_int(rows):
    """Rank of an integer matrix (exact, fraction-free elimination)."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nr, nc = len(m), len(m[0])
    rank = 0
    for c in range(nc):
        piv = next((i for i in range(rank, nr) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, nr):
            if m[i][c] != 0:
                f = m[i][c]
                p = m[rank][c]
                m[i] = [p * x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == nr:
            break
    return rank


def det_int(m):
    """Determinant of a square integer matrix (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def adjugate_int(m):
    """Adjugate of a square integer matrix: m @ adj = det * I."""
    n = len(m)
    if n == 1:
        return ((1,),)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [m[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            adj[j][i] = (-1) ** (i + j) * det_int(minor)
    return tuple(tuple(r) for r in adj)


def kernel_basis_int(rows):
    """Basis (rows) of the integer kernel {x : r . x = 0 for all r in rows}.

    The kernel of an integer matrix is automatically a saturated sublattice.
    """
    cols = transpose(rows)
    if not cols:
        return ()
    h, u = hermite_normal_form(cols)
    basis = tuple(u[i] for i in range(len(h)) if not any(h[i]))
    return basis


def saturation_basis(rows):
    """Basis of (Q-span of rows) intersected with Z^n, as rows."""
    perp = kernel_basis_int(rows)
    if not perp:
        n = len(rows[0])
        return identity_matrix(n)
    return kernel_basis_int(perp)


def lattice_index_is_full(rows, n):
    """True iff the rows generate all of Z^n."""
    if not rows:
        return n == 0
    h, _ = hermite_normal_form(rows)
    nz = [r for r in h if any(r)]
    if len(nz) != n:
        return False
    return all(nz[i][i] == 1 for i in range(n)) and all(
        nz[i][j] == 0 for i in range(n) for j in range(n) if j != i
    )


def solve_int(m, rhs):
    """Solve m @ x = rhs exactly; returns a Fraction tuple or None."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(m, rhs)]
    cols = len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if a[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = a[i][cols]
    return tuple(x)


def mat_inverse_frac(m):
    """Exact inverse of a square matrix, entries returned as Fractions."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        a[c] = [x / a[c][c] for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(row[n:]) for row in a)


# ---------------------------------------------------------------------------
# sparse multivariate polynomials over Z


class Poly:
    """Sparse multivariate polynomial over Z with named indeterminates.

    Terms map exponent tuples to nonzero int coefficients.  Equality is
    structural; printing uses total-degree-then-lex monomial order.
    """

    __slots__ = ("names", "terms")

    def __init__(self, names, terms):
        self.names = tuple(names)
        self.terms = {e: c for e, c in terms.items() if c != 0}

    @classmethod
    def const(cls, names, c):
        names = tuple(names)
        if c == 0:
            return cls(names, {})
        return cls(names, {(0,) * len(names): int(c)})

    @classmethod
    def variable(cls, names, name):
        names = tuple(names)
        i = names.index(name)
        e = tuple(1 if j == i else 0 for j in range(len(names)))
        return cls(names, {e: 1})

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.names != self.names:
                raise ValueError("polynomials over different variable sets")
            return other
        if isinstance(other, int):
            return Poly.const(self.names, other)
        return NotImplemented

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(self.names, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly(self.names, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative ints")
        result = Poly.const(self.names, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.names, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        def key(e):
            return (-sum(e), tuple(-x for x in e))
        parts = []
        for e in sorted(self.terms, key=key):
            c = self.terms[e]
            factors = [
                f"{n}^{p}" if p > 1 else n
                for n, p in zip(self.names, e)
                if p
            ]
            if not factors:
                body = str(abs(c))
            else:
                mono = "*".join(factors)
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# ---------------------------------------------------------------------------
# coefficient rings

class CoefficientRing:
    """Commutative ring interface used by the graded-automorphism matrices.

    Elements are plain Python objects carrying the arithmetic operators;
    the ring object supplies the constants and unit handling.
    """

    name = "?"

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def is_unit(self, x):
        raise NotImplementedError

    def inverse(self, x):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class IntegerRing(CoefficientRing):
    name = "ZZ"

    zero = 0
    one = 1

    def from_int(self, n):
        return int(n)

    def is_unit(self, x):
        return x in (1, -1)

    def inverse(self, x):
        if not self.is_unit(x):
            raise ValueError(f"{x} is not a unit in ZZ")
        return x


class RationalRing(CoefficientRing):
    name = "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def is_unit(self, x):
        return x != 0

    def inverse(self, x):
        if x == 0:
            raise ValueError("0 is not a unit in QQ")
        return 1 / Fraction(x)


class PolynomialRing(CoefficientRing):
    """Z[x1, ..., xk] for a fixed tuple of variable names."""

    def __init__(self, names):
        self.names = tuple(names)
        self.name = "ZZ[" + ",".join(self.names) + "]"

    @property
    def zero(self):
        return Poly.const(self.names, 0)

    @property
    def one(self):
        return Poly.const(self.names, 1)

    def var(self, name):
        return Poly.variable(self.names, name)

    def from_int(self, n):
        return Poly.const(self.names, n)

    def is_unit(self, x):
        return x == 1 or x == -1

    def inverse(self, x):
        if x == 1:
            return self.one
        if x == -1:
            return -self.one
        raise ValueError(f"{x!r} is not a unit in {self.name}")


class ModInt:
    """Element of Z/m, hashable and immutable."""

    __slots__ = ("value", "modulus")

    def __init__(self, value, modulus):
        self.value = value % modulus
        self.modulus = modulus

    def _check(self, other):
        if isinstance(other, int):
            return ModInt(other, self.modulus)
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return ModInt(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return ModInt(-self.value, self.modulus)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return ModInt(self.value - other.value, self.modulus)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return ModInt(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


class IntegersMod(CoefficientRing):
    def __init__(self, modulus):
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        self.modulus = modulus
        self.name = f"ZZ/{modulus}"

    @property
    def zero(self):
        return ModInt(0, self.modulus)

    @property
    def one(self):
        return ModInt(1, self.modulus)

    def from_int(self, n):
        return ModInt(n, self.modulus)

    def is_unit(self, x):
        return gcd(x.value, self.modulus) == 1

    def inverse(self, x):
        if not self.is_unit(x):
            raise ValueError(f"{x!r} is not a unit in {self.name}")
        return ModInt(pow(x.value, -1, self.modulus), self.modulus)


ZZ = IntegerRing()
QQ = RationalRing()

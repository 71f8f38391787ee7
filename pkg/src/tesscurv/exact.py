"""Exact linear algebra over the rationals and over simple number fields.

Matrices are lists of rows of :class:`fractions.Fraction`.  Row reduction
clears denominators and runs the fraction-free integer kernel from
:mod:`tesscurv.kernels`, so intermediate growth stays in machine-friendly
integers and no rational normalisation happens in the inner loop.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from . import kernels

Matrix = list[list[Fraction]]


def zeros(n: int, m: int) -> Matrix:
    return [[Fraction(0)] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    m = len(b[0]) if b else 0
    cols = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in cols] if m else [] for row in a]


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*a)]


def _int_row(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        if x:
            den = lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in row]


def rref(rows: Matrix, ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form.  Returns the nonzero rows (pivot entries
    equal to 1) and the pivot column list."""
    work = [_int_row(r) for r in rows]
    pivots = kernels.rref_int(work, ncols)
    out = []
    for r, c in enumerate(pivots):
        p = work[r][c]
        out.append([Fraction(x, p) for x in work[r]])
    return out, list(pivots)


def rank(rows: Matrix, ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Matrix, ncols: int) -> Matrix:
    """Basis of {x : A x = 0}, returned as a list of column vectors.

    The basis is the standard one attached to the free columns of the
    reduced echelon form, so it depends only on the row space of A.
    """
    R, pivots = rref(rows, ncols)
    pset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pset:
            continue
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for r, c in enumerate(pivots):
            x[c] = -R[r][free]
        basis.append(x)
    return basis


def solve_square(a: Matrix, b: Matrix) -> Matrix:
    """Solve A X = B for invertible square A."""
    n = len(a)
    m = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    R, pivots = rref(aug, n + m)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def column_complement(basis: Matrix, n: int) -> list[int]:
    """Greedily pick identity columns e_j, ascending j, that extend the
    span of ``basis`` (column vectors of length n) to all of Q^n."""
    echelon: list[tuple[int, list[Fraction]]] = []

    def reduce(vec):
        vec = list(vec)
        for c, row in echelon:
            if vec[c]:
                f = vec[c]
                vec = [x - f * y for x, y in zip(vec, row)]
        return vec

    def insert(vec):
        vec = reduce(vec)
        for c, x in enumerate(vec):
            if x:
                row = [y / x for y in vec]
                for k, (c2, r2) in enumerate(echelon):
                    if r2[c]:
                        f = r2[c]
                        echelon[k] = (c2, [a - f * b for a, b in zip(r2, row)])
                echelon.append((c, row))
                return True
        return False

    for v in basis:
        if not insert(v):
            raise ValueError("basis vectors are dependent")
    chosen = []
    for j in range(n):
        if len(echelon) == n:
            break
        e = [Fraction(0)] * n
        e[j] = Fraction(1)
        if insert(e):
            chosen.append(j)
    return chosen


def primitive(vec: Sequence[Fraction]) -> list[Fraction]:
    """Scale to coprime integers with the first nonzero entry positive."""
    ints = _int_row(vec)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return [Fraction(0)] * len(ints)
    sign = 1
    for x in ints:
        if x:
            sign = 1 if x > 0 else -1
            break
    return [Fraction(sign * x // g) for x in ints]


# -- polynomials (coefficient lists, lowest degree first) -------------------


def poly_trim(c: list[Fraction]) -> list[Fraction]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a, b = poly_trim(a), poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b):
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, y in enumerate(b):
            r[i + shift] -= f * y
        r = poly_trim(r)
    return q, r


def poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_sub(a, b):
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def charpoly(m: Matrix) -> list[Fraction]:
    """Characteristic polynomial det(xI - M), monic, via Faddeev-LeVerrier."""
    n = len(m)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = zeros(n, n)
    for k in range(1, n + 1):
        # M_k = M (M_{k-1} + c_{n-k+1} I)
        prev = [row[:] for row in mk]
        for i in range(n):
            prev[i][i] += coeffs[n - k + 1]
        mk = matmul(m, prev)
        coeffs[n - k] = -sum((mk[i][i] for i in range(n)), Fraction(0)) / k
    return coeffs


class NumberField:
    """Q[x]/(m) for an irreducible monic m."""

    def __init__(self, minpoly: Sequence[Fraction]):
        m = poly_trim([Fraction(c) for c in minpoly])
        if len(m) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        lead = m[-1]
        self.minpoly = [c / lead for c in m]
        self.degree = len(m) - 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(tuple(self.minpoly))

    def __call__(self, coeffs) -> "FieldElement":
        if isinstance(coeffs, (int, Fraction)):
            coeffs = [coeffs]
        return FieldElement(self, coeffs)

    @property
    def generator(self) -> "FieldElement":
        if self.degree == 1:
            return FieldElement(self, [-self.minpoly[0]])
        return FieldElement(self, [0, 1])


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        c = poly_trim([Fraction(x) for x in coeffs])
        if len(c) > field.degree:
            c = poly_divmod(c, field.minpoly)[1]
        self.coeffs = tuple(c)

    def _lift(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        return FieldElement(self.field, [other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(o.coeffs) + [0] * (n - len(o.coeffs))
        return FieldElement(self.field, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return FieldElement(self.field, poly_mul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid: s*a + t*m = g, g constant since m is irreducible
        r0, r1 = list(self.field.minpoly), list(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        if not r1:
            raise ZeroDivisionError("element is not invertible (minimal polynomial reducible?)")
        return FieldElement(self.field, [c / r1[0] for c in s1])

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FieldElement(self.field, [other])
        return isinstance(other, FieldElement) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def padded(self) -> list[Fraction]:
        return list(self.coeffs) + [Fraction(0)] * (self.field.degree - len(self.coeffs))

    def __repr__(self):
        return f"FieldElement({[str(c) for c in self.coeffs]})"


def field_nullvector(m: list[list[FieldElement]], ncols: int, field: NumberField) -> list[FieldElement] | None:
    """One nonzero solution of M x = 0 over ``field``, or None."""
    rows = [list(r) for r in m]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = next((c for c in range(ncols) if c not in pivots), None)
    if free is None:
        return None
    x = [field(0) for _ in range(ncols)]
    x[free] = field(1)
    for i, c in enumerate(pivots):
        x[c] = -rows[i][free]
    return x

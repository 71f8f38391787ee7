"""Elliptic operators on patches and exact certification of compactly
supported eigenfunctions.

An operator L is given by entries a(v, w) on the diagonal and on edges,
with every edge entry nonzero.  For a finite support set S the question
"is there a nonzero u supported in S and some complex lambda with
(L - lambda) u = 0 everywhere" is decided exactly: such u lives in the
kernel of the boundary block K (rows in the outer ring of S, columns in
S) and in an L_SS-invariant subspace of it.  The largest such subspace is
found by a rational fixed-point iteration, so the answer holds over C
without any floating point.
"""
from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np
import sympy

from . import exact
from .fileformat import fmt_rational, load_operator_entries, parse_rational, save_operator_entries
from .patch import PatchError, TessellationPatch


class OperatorError(PatchError):
    pass


class SupportError(PatchError):
    pass


# -- operators ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EllipticOperator:
    patch: TessellationPatch = dataclasses.field(repr=False)
    entries: Mapping[tuple[int, int], Fraction]

    def __post_init__(self):
        ents = {(int(v), int(w)): Fraction(x) for (v, w), x in self.entries.items()}
        nb = self.patch.neighbours
        for (v, w), x in ents.items():
            if v not in nb or w not in nb:
                raise OperatorError(f"entry ({v}, {w}) names an unknown vertex")
            if v != w and w not in nb[v]:
                raise OperatorError(f"entry ({v}, {w}) is off the adjacency pattern")
        cv = self.patch.complete_vertices
        for v in sorted(cv):
            for w in nb[v]:
                if w in cv and not ents.get((v, w)):
                    raise OperatorError(f"operator is not elliptic: a({v}, {w}) = 0 on an edge")
        object.__setattr__(self, "entries", ents)

    def a(self, v: int, w: int) -> Fraction:
        return self.entries.get((v, w), Fraction(0))

    def apply(self, u: Mapping[int, Fraction], v: int) -> Fraction:
        """(L u)(v) = a(v,v) u(v) + sum over neighbours w of a(v,w) u(w)."""
        self.patch.require_vertex(v)
        total = self.a(v, v) * u.get(v, 0)
        for w in self.patch.neighbours[v]:
            x = u.get(w, 0)
            if x:
                total += self.a(v, w) * x
        return Fraction(total)

    def scaled(self, c) -> "EllipticOperator":
        c = Fraction(c)
        if c == 0:
            raise OperatorError("scale factor must be nonzero")
        return EllipticOperator(self.patch, {k: c * x for k, x in self.entries.items()})

    def relabeled(self, patch: TessellationPatch, vmap: Mapping[int, int]) -> "EllipticOperator":
        return EllipticOperator(patch, {(vmap[v], vmap[w]): x for (v, w), x in self.entries.items()})

    def to_text(self) -> str:
        return save_operator_entries(self.entries)


def load_operator(patch: TessellationPatch, text: str) -> EllipticOperator:
    return EllipticOperator(patch, load_operator_entries(text))


def _offdiag_values(m: int) -> list[Fraction]:
    vals = {Fraction(s * n, d) for n in range(1, m + 1) for d in range(1, m + 1) for s in (1, -1)}
    return sorted(vals)


def _diag_values(m: int) -> list[Fraction]:
    return sorted({Fraction(n, d) for n in range(-m, m + 1) for d in range(1, m + 1)})


def random_elliptic(patch: TessellationPatch, seed: int, magnitude: int = 4) -> EllipticOperator:
    """Seeded random operator on the full adjacency-plus-diagonal pattern.

    Values are drawn uniformly from the distinct rationals n/d with
    1 <= n, d <= M (either sign) off the diagonal and -M <= n <= M on it.
    """
    if magnitude < 1:
        raise OperatorError("magnitude must be >= 1")
    rng = random.Random(seed)
    off, diag = _offdiag_values(magnitude), _diag_values(magnitude)
    entries = {}
    for v in sorted(patch.vertices):
        entries[(v, v)] = rng.choice(diag)
        for w in patch.neighbours[v]:
            entries[(v, w)] = rng.choice(off)
    return EllipticOperator(patch, entries)


def nearest_neighbour_laplacian(patch: TessellationPatch) -> EllipticOperator:
    entries = {}
    for v in sorted(patch.vertices):
        entries[(v, v)] = Fraction(len(patch.neighbours[v]))
        for w in patch.neighbours[v]:
            entries[(v, w)] = Fraction(1)
    return EllipticOperator(patch, entries)


def adjacency_operator(patch: TessellationPatch) -> EllipticOperator:
    entries = {}
    for v in sorted(patch.vertices):
        entries[(v, v)] = Fraction(0)
        for w in patch.neighbours[v]:
            entries[(v, w)] = Fraction(1)
    return EllipticOperator(patch, entries)


# -- support sets ------------------------------------------------------------


@dataclass(frozen=True)
class SupportSet:
    vertices: tuple[int, ...]
    outer: tuple[int, ...]

    @property
    def closure(self) -> tuple[int, ...]:
        return tuple(sorted(self.vertices + self.outer))

    def __len__(self):
        return len(self.vertices)


def make_support(patch: TessellationPatch, vertices: Iterable[int]) -> SupportSet:
    """Support set with its outer ring; every vertex of S and of the ring
    must be complete, so each equation touching S is fully known."""
    s = set(vertices)
    for v in sorted(s):
        if v not in patch.neighbours:
            raise SupportError(f"unknown vertex {v}")
    outer = set()
    for v in s:
        outer.update(patch.neighbours[v])
    outer -= s
    cv = patch.complete_vertices
    bad = sorted(v for v in s | outer if v not in cv)
    if bad:
        raise SupportError(f"support too close to the patch boundary: vertex {bad[0]} is incomplete")
    return SupportSet(tuple(sorted(s)), tuple(sorted(outer)))


def vertex_ball(patch: TessellationPatch, center: int, radius: int) -> set[int]:
    if center not in patch.neighbours:
        raise SupportError(f"unknown vertex {center}")
    seen = {center}
    frontier = [center]
    for _ in range(radius):
        nxt = []
        for v in frontier:
            for w in patch.neighbours[v]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class NotFound:
    dims: tuple[int, ...]

    kind = "NOTFOUND"

    def to_line(self) -> str:
        return "NOTFOUND dims=" + ",".join(map(str, self.dims))


@dataclass(frozen=True)
class Found:
    """Eigenpair certificate.  ``minpoly`` is the monic minimal polynomial
    of lambda (lowest degree first); ``u`` maps vertex ids to coordinates
    in the power basis 1, alpha, ..., alpha^(d-1) of Q(alpha), alpha a
    root of ``minpoly``.  Galois conjugation carries the certificate to
    every root, so no root isolation is needed."""

    minpoly: tuple[Fraction, ...]
    u: tuple[tuple[int, tuple[Fraction, ...]], ...]
    dims: tuple[int, ...] = dataclasses.field(default=(), compare=False)

    kind = "FOUND"

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def lam(self) -> Fraction | None:
        return -self.minpoly[0] if self.is_rational else None

    @property
    def field(self) -> exact.NumberField:
        return exact.NumberField(self.minpoly)

    def u_field(self) -> dict[int, exact.FieldElement]:
        F = self.field
        return {v: F(list(c)) for v, c in self.u}

    def u_rational(self) -> dict[int, Fraction]:
        if not self.is_rational:
            raise ValueError("eigenvalue is irrational")
        return {v: (c[0] if c else Fraction(0)) for v, c in self.u}

    def to_line(self) -> str:
        if self.is_rational:
            lam = fmt_rational(self.lam)
            us = ",".join(f"{v}:{fmt_rational(c[0])}" for v, c in self.u)
        else:
            lam = "minpoly:" + ",".join(fmt_rational(c) for c in self.minpoly)
            us = ",".join(
                f"{v}:" + "|".join(fmt_rational(x) for x in _pad(c, self.degree)) for v, c in self.u
            )
        return f"FOUND lambda={lam} u={us}"


Certificate = NotFound | Found


def _pad(c, d):
    return list(c) + [Fraction(0)] * (d - len(c))


def parse_certificate(line: str) -> Certificate:
    toks = line.split()
    if not toks:
        raise ValueError("empty certificate line")
    if toks[0] == "NOTFOUND" and len(toks) == 2 and toks[1].startswith("dims="):
        body = toks[1][5:]
        return NotFound(tuple(int(x) for x in body.split(",")) if body else ())
    if toks[0] == "FOUND" and len(toks) == 3 and toks[1].startswith("lambda=") and toks[2].startswith("u="):
        lam = toks[1][7:]
        if lam.startswith("minpoly:"):
            minpoly = tuple(parse_rational(x) for x in lam[8:].split(","))
        else:
            minpoly = (-parse_rational(lam), Fraction(1))
        u = []
        body = toks[2][2:]
        for item in body.split(",") if body else []:
            v, _, val = item.partition(":")
            coeffs = tuple(parse_rational(x) for x in val.split("|"))
            u.append((int(v), coeffs))
        return Found(minpoly, tuple(u))
    raise ValueError(f"cannot parse certificate {line!r}")


# -- the exact search --------------------------------------------------------


def _factor_rational(coeffs: list[Fraction]):
    """Irreducible monic factors over Q of a polynomial given low-first."""
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x, domain="QQ")
    out = []
    for fac, _mult in poly.factor_list()[1]:
        fac = fac.monic()
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        out.append(tuple(cs))
    return out


def _restrict(P: exact.Matrix, N: exact.Matrix) -> exact.Matrix:
    """Matrix M of P on the P-invariant column span of N: P N = N M."""
    d = len(P)
    m = len(N[0])
    cols = exact.transpose(N)
    extra = exact.column_complement(cols, d)
    E = [list(N[i]) + [Fraction(int(i == j)) for j in extra] for i in range(d)]
    X = exact.solve_square(E, exact.matmul(P, N))
    if any(x for row in X[m:] for x in row):
        raise ArithmeticError("subspace is not invariant")
    return X[:m]


def cse_core(K: exact.Matrix, L: exact.Matrix, n: int) -> Certificate:
    """Matrix-level search: K is the boundary block (rows x n), L the
    n x n principal block.  Eigenvector coordinates are indexed 0..n-1."""
    if n == 0:
        return NotFound((0,))
    B = exact.nullspace(K, n) if K else exact.identity(n)
    d = len(B)
    if d == 0:
        return NotFound((0,))
    Bmat = exact.transpose(B)  # n x d
    extra = exact.column_complement(B, n)
    E = [list(Bmat[i]) + [Fraction(int(i == j)) for j in extra] for i in range(n)]
    X = exact.solve_square(E, exact.matmul(L, Bmat))
    P, Q = X[:d], X[d:]
    A, _ = exact.rref(Q, d)
    dims = [d - len(A)]
    while dims[-1] > 0:
        A, _ = exact.rref(A + exact.matmul(A, P), d)
        dims.append(d - len(A))
        if dims[-1] == dims[-2]:
            break
    if dims[-1] == 0:
        return NotFound(tuple(dims))
    Vstar = exact.nullspace(A, d)
    N = exact.transpose(Vstar)  # d x m
    M = _restrict(P, N)
    m = len(M)
    factors = _factor_rational(exact.charpoly(M))
    linear = sorted(-f[0] for f in factors if len(f) == 2)
    if linear:
        lam = linear[0]
        shifted = [[M[i][j] - (lam if i == j else 0) for j in range(m)] for i in range(m)]
        y = exact.nullspace(shifted, m)[0]
        u = exact.primitive([row[0] for row in exact.matmul(Bmat, exact.matmul(N, [[c] for c in y]))])
        return Found((-lam, Fraction(1)), tuple((i, (x,)) for i, x in enumerate(u) if x), tuple(dims))
    minpoly = min(factors, key=lambda f: (len(f), f))
    F = exact.NumberField(minpoly)
    alpha = F.generator
    shifted = [[F(M[i][j]) - (alpha if i == j else 0) for j in range(m)] for i in range(m)]
    y = exact.field_nullvector(shifted, m, F)
    if y is None:
        raise ArithmeticError("no eigenvector for a root of the characteristic polynomial")
    BN = exact.matmul(Bmat, N)
    u = [sum((F(BN[i][j]) * y[j] for j in range(m)), F(0)) for i in range(n)]
    lead = next(x for x in u if x)
    u = [x / lead for x in u]
    return Found(
        tuple(F.minpoly), tuple((i, tuple(x.padded())) for i, x in enumerate(u) if x), tuple(dims)
    )


def support_blocks(op: EllipticOperator, S: SupportSet) -> tuple[exact.Matrix, exact.Matrix]:
    s = S.vertices
    K = [[op.a(w, v) for v in s] for w in S.outer]
    L = [[op.a(v, w) for w in s] for v in s]
    return K, L


def cse_search(op: EllipticOperator, S: SupportSet) -> Certificate:
    """Decide whether a nonzero eigenfunction supported in S exists."""
    K, L = support_blocks(op, S)
    cert = cse_core(K, L, len(S.vertices))
    if isinstance(cert, Found):
        return Found(cert.minpoly, tuple((S.vertices[i], c) for i, c in cert.u), cert.dims)
    return cert


def verify_certificate(op: EllipticOperator, S: SupportSet, cert: Certificate) -> bool:
    """Re-check a certificate.  Found: u is nonzero, supported in S, and
    (L - lambda) u vanishes on S and its outer ring.  NotFound: the
    dimension sequence strictly decreases, then ends at 0 or repeats."""
    if isinstance(cert, NotFound):
        d = cert.dims
        if not d:
            return False
        for i in range(1, len(d)):
            if d[i] > d[i - 1] or (d[i] == d[i - 1] and i != len(d) - 1):
                return False
        return d[-1] == 0 or (len(d) > 1 and d[-1] == d[-2])
    F = cert.field
    u = cert.u_field()
    if not any(u.values()) or not set(u) <= set(S.vertices):
        return False
    alpha = F.generator
    zero = F(0)
    for v in S.closure:
        total = (F(op.a(v, v)) - alpha) * u.get(v, zero)
        for w in op.patch.neighbours[v]:
            if w in u:
                total = total + u[w] * op.a(v, w)
        if total:
            return False
    return True


# -- floating-point oracle ---------------------------------------------------


def float_candidates(K, L, n: int, tol: float = 1e-8) -> list[complex]:
    """Eigenvalues of L whose eigenspace meets ker K, in floating point.

    An eigenspace is the numerical null space of L - lambda I (singular
    values below a relative threshold); it meets ker K when the smallest
    singular value of K N is below ``tol`` times the size of K.
    """
    if n == 0:
        return []
    Lf = np.array([[float(x) for x in row] for row in L], dtype=float).reshape(n, n)
    Kf = np.array([[float(x) for x in row] for row in K], dtype=float).reshape(len(K), n)
    scale = max(1.0, float(np.linalg.norm(Lf, 2)))
    kscale = max(1.0, float(np.linalg.norm(Kf, 2))) if len(K) else 1.0
    eig_tol = 1e-6 * scale
    ns_tol = 1e-7 * scale
    out: list[complex] = []
    for lam in np.linalg.eigvals(Lf):
        if any(abs(lam - c) < eig_tol for c in out):
            continue
        _, sv, vh = np.linalg.svd(Lf - lam * np.eye(n))
        null = vh[sv <= ns_tol].conj().T
        if null.shape[1] == 0:
            null = vh[-1:].conj().T
        if len(K) == 0:
            out.append(complex(lam))
            continue
        smin = np.linalg.svd(Kf @ null, compute_uv=False)
        if null.shape[1] > len(K) or smin.min() <= tol * kscale:
            out.append(complex(lam))
    return sorted(out, key=lambda z: (round(z.real, 9), round(z.imag, 9)))


def cse_search_float(op: EllipticOperator, S: SupportSet, tol: float = 1e-8) -> list[complex]:
    K, L = support_blocks(op, S)
    return float_candidates(K, L, len(S.vertices), tol)

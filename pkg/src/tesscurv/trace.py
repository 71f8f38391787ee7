"""Outside-in vanishing propagation for eigenfunctions on distance balls.

Start from the assumption that u vanishes on V_{k+1}: the boundary of
B_{k+1} together with everything outside it.  The eigenfunction equation
at a vertex x with u(x) = 0 reads sum_{w ~ x} a(x, w) u(w) = 0, so when
all but one neighbour w of x are known zeros, a(x, w) != 0 forces
u(w) = 0.  Each layer is processed in two phases:

* boundary vertices of B_k with exterior degree 2 are eliminated through
  an outer neighbour whose other neighbours are already zero (exterior
  degree >= 3 vertices lie on the next boundary and are zero already);
* starting from two consecutive zeros, the boundary cycle is swept
  forward, eliminating v_{j+2} through the equation at v_{j+1}.

The symbolic mode tracks only which values are forced to zero, so the
result holds for every operator with the given nonzero pattern.  The
concrete mode additionally evaluates each equation used on a given u.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import metric
from .patch import PatchError
from .spectral import EllipticOperator, OperatorError


@dataclass(frozen=True)
class Elimination:
    layer: int
    vertex: int
    rule: str  # "lemma2" | "sweep"
    pivot: int
    coefficient: Fraction

    def line(self) -> str:
        return (
            f"k={self.layer}\t{self.rule}\tu({self.vertex})=0\tvia equation at {self.pivot}"
            f"\ta({self.pivot},{self.vertex})={self.coefficient.numerator}/{self.coefficient.denominator}"
        )


@dataclass(frozen=True)
class PropagationTrace:
    success: bool
    kmax: int
    steps: tuple[Elimination, ...]
    layers_done: tuple[int, ...]
    stalled_layer: int | None = None
    unresolved: tuple[int, ...] = ()
    message: str = ""

    def lines(self) -> list[str]:
        out = [s.line() for s in self.steps]
        if self.success:
            out.append(f"SUCCESS kmax={self.kmax} layers={len(self.layers_done)} eliminations={len(self.steps)}")
        else:
            out.append(f"STALL k={self.stalled_layer} unresolved={','.join(map(str, self.unresolved))} {self.message}".rstrip())
        return out


def _interior_vertices(P: metric.Polygon) -> set[int]:
    verts = {v for f in P.faces for v in P.patch.faces[f]}
    return verts - set(P.boundary)


def unique_continuation_trace(
    op: EllipticOperator,
    f0: int,
    kmax: int,
    u: Mapping[int, Fraction] | None = None,
    lam: Fraction | None = None,
) -> PropagationTrace:
    """Run the propagation from layer ``kmax`` down to 0.

    With ``u`` given (and ``lam``), every equation used is evaluated on u;
    a nonzero residual stops the trace, since u is then no eigenfunction.
    """
    patch = op.patch
    if kmax < 0:
        raise PatchError("kmax must be >= 0")
    if u is not None and lam is None:
        raise PatchError("concrete mode needs lambda")
    dist = metric.require_margin(patch, f0, kmax + 2)
    region = {v for f, d in dist.items() if d <= kmax + 2 for v in patch.faces[f]}
    for v in sorted(region):
        for w in patch.neighbours[v]:
            if not op.a(v, w):
                raise OperatorError(f"operator is not elliptic: a({v}, {w}) = 0 on an edge")

    balls = {
        k: metric.make_polygon(patch, (f for f, d in dist.items() if d <= k)) for k in range(kmax + 2)
    }
    zero = set(patch.vertices) - _interior_vertices(balls[kmax + 1])
    steps: list[Elimination] = []
    done: list[int] = []

    if u is not None:
        u = {v: Fraction(x) for v, x in u.items()}
        nz = sorted(v for v in zero if u.get(v, 0))
        if nz:
            return PropagationTrace(
                False, kmax, (), (), kmax + 1, tuple(nz), "u does not vanish outside the interior of B_(kmax+1)"
            )

    def residual(x):
        total = (op.a(x, x) - lam) * u.get(x, 0)
        for w in patch.neighbours[x]:
            total += op.a(x, w) * u.get(w, 0)
        return total

    def eliminate(k, v, pivot, rule):
        coeff = op.a(pivot, v)
        if not coeff:
            raise OperatorError(f"zero coefficient a({pivot}, {v})")
        if u is not None and residual(pivot):
            return f"eigenvalue equation fails at vertex {pivot}"
        zero.add(v)
        steps.append(Elimination(k, v, rule, pivot, coeff))
        return None

    def others_zero(x, v):
        return all(w in zero for w in patch.neighbours[x] if w != v)

    for k in range(kmax, -1, -1):
        P = balls[k]
        bnd = P.boundary
        n = len(bnd)
        for v in bnd:
            if v in zero or metric.exterior_degree(P, v) != 2:
                continue
            for x in patch.neighbours[v]:
                if x in zero and others_zero(x, v):
                    err = eliminate(k, v, x, "lemma2")
                    if err:
                        return PropagationTrace(False, kmax, tuple(steps), tuple(done), k, (v,), err)
                    break
        start = next((j for j in range(n) if bnd[j] in zero and bnd[(j + 1) % n] in zero), None)
        if start is not None:
            progress = True
            while progress:
                progress = False
                for t in range(n):
                    j = (start + t) % n
                    a, b, c = bnd[j], bnd[(j + 1) % n], bnd[(j + 2) % n]
                    if a in zero and b in zero and c not in zero and others_zero(b, c):
                        err = eliminate(k, c, b, "sweep")
                        if err:
                            return PropagationTrace(False, kmax, tuple(steps), tuple(done), k, (c,), err)
                        progress = True
        left = tuple(v for v in bnd if v not in zero)
        if left:
            msg = "no two consecutive zeros on the boundary" if start is None else "sweep cannot continue"
            return PropagationTrace(False, kmax, tuple(steps), tuple(done), k, left, msg)
        done.append(k)
    return PropagationTrace(True, kmax, tuple(steps), tuple(done))

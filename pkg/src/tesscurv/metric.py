"""Face-distance geometry on patches: balls, spheres, polygons and labels.

Distances are shortest paths in the edge-adjacency graph of faces.  Every
operation checks the completeness margin it needs around the centre face
and raises :class:`MarginError` below it, so that truncation at the edge
of a finite window is never mistaken for a geometric fact.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import kernels
from .fileformat import fmt_rational
from .patch import PatchError, TessellationPatch, face_chi, vertex_degree


class MarginError(PatchError):
    pass


class NotAPolygon(PatchError):
    pass


class EnumerationError(PatchError):
    pass


class Label(enum.Enum):
    APLUS = "a+"
    A = "a"
    B = "b"

    def __str__(self):
        return self.value


# -- distances ---------------------------------------------------------------


def face_distances(patch: TessellationPatch, sources: Iterable[int]) -> dict[int, int]:
    """Distance from the nearest source to every reachable face."""
    idx = patch._face_index
    try:
        src = [idx[f] for f in sources]
    except KeyError as exc:
        raise PatchError(f"unknown face {exc.args[0]}") from None
    indptr, indices = patch.face_csr
    dist = kernels.bfs_distances(indptr, indices, src, len(patch.face_ids))
    ids = patch.face_ids
    return {ids[i]: d for i, d in enumerate(dist) if d >= 0}


def face_distance(patch: TessellationPatch, f: int, g: int) -> int:
    if g not in patch.faces:
        raise PatchError(f"unknown face {g}")
    d = face_distances(patch, [f]).get(g)
    if d is None:
        raise PatchError(f"faces {f} and {g} are not connected")
    return d


def _require_faces_complete(patch: TessellationPatch, faces: Iterable[int], what: str) -> None:
    cv, cf = patch.complete_vertices, patch.complete_faces
    for f in faces:
        if f not in cf or any(v not in cv for v in patch.faces[f]):
            raise MarginError(f"insufficient patch radius: face {f} of {what} is not fully complete")


def require_margin(patch: TessellationPatch, f0: int, radius: int) -> dict[int, int]:
    """Check that B_radius(f0) is fully complete; return the distance map."""
    if f0 not in patch.faces:
        raise PatchError(f"unknown face {f0}")
    dist = face_distances(patch, [f0])
    _require_faces_complete(patch, (f for f, d in dist.items() if d <= radius), f"B_{radius}({f0})")
    return dist


def ball_radius_available(patch: TessellationPatch, f0: int) -> int:
    """Largest r such that B_r(f0) is fully complete (-1 if none)."""
    dist = face_distances(patch, [f0])
    cv, cf = patch.complete_vertices, patch.complete_faces
    bad = [
        d
        for f, d in dist.items()
        if f not in cf or any(v not in cv for v in patch.faces[f])
    ]
    if not bad:
        return max(dist.values())
    return min(bad) - 1


# -- polygons ----------------------------------------------------------------


@dataclass(frozen=True)
class Polygon:
    faces: frozenset[int]
    boundary: tuple[int, ...]
    patch: TessellationPatch = field(repr=False, compare=False)

    @property
    def boundary_edges(self) -> set[frozenset]:
        b = self.boundary
        return {frozenset((b[i], b[(i + 1) % len(b)])) for i in range(len(b))}

    def __len__(self):
        return len(self.faces)


def make_polygon(patch: TessellationPatch, faces: Iterable[int]) -> Polygon:
    """Validate that ``faces`` form a combinatorial disc and build it.

    The disc test is: edge-connected, V - E + F = 1, and the boundary
    edges form one simple cycle.  The boundary is listed in the direction
    of the face cycles, starting at its least vertex id.
    """
    faces = frozenset(faces)
    if not faces:
        raise NotAPolygon("empty face set")
    for f in faces:
        if f not in patch.faces:
            raise PatchError(f"unknown face {f}")
    # edge-connected
    start = min(faces)
    seen = {start}
    stack = [start]
    while stack:
        f = stack.pop()
        for g in patch.face_neighbours[f]:
            if g in faces and g not in seen:
                seen.add(g)
                stack.append(g)
    if seen != faces:
        raise NotAPolygon("faces are not edge-connected")
    directed = set()
    for f in faces:
        directed.update(patch.face_edges(f))
    verts = {v for f in faces for v in patch.faces[f]}
    edges = {frozenset(d) for d in directed}
    if len(verts) - len(edges) + len(faces) != 1:
        raise NotAPolygon(f"Euler count {len(verts) - len(edges) + len(faces)} != 1")
    out: dict[int, int] = {}
    for a, b in directed:
        if (b, a) not in directed:
            if a in out:
                raise NotAPolygon(f"boundary passes twice through vertex {a}")
            out[a] = b
    if not out:
        raise NotAPolygon("no boundary")
    v0 = min(out)
    cyc = [v0]
    v = out[v0]
    while v != v0:
        if v not in out or len(cyc) > len(out):
            raise NotAPolygon("boundary is not a closed cycle")
        cyc.append(v)
        v = out[v]
    if len(cyc) != len(out):
        raise NotAPolygon("boundary has more than one component")
    return Polygon(faces, tuple(cyc), patch)


def distance_ball(patch: TessellationPatch, f0: int, k: int) -> Polygon:
    dist = require_margin(patch, f0, k + 1)
    return make_polygon(patch, (f for f, d in dist.items() if d <= k))


def distance_sphere(patch: TessellationPatch, f0: int, k: int) -> set[int]:
    dist = require_margin(patch, f0, k + 1)
    return {f for f, d in dist.items() if d == k}


def k_neighborhood(P: Polygon, k: int) -> Polygon:
    """B_k(P): faces within distance k of P."""
    patch = P.patch
    dist = face_distances(patch, sorted(P.faces))
    _require_faces_complete(patch, (f for f, d in dist.items() if d <= k), f"B_{k}(P)")
    return make_polygon(patch, (f for f, d in dist.items() if d <= k))


# -- degrees and labels ------------------------------------------------------


def _on_boundary(P: Polygon, v: int) -> None:
    if v not in P.boundary:
        raise PatchError(f"vertex {v} is not on the polygon boundary")


def inner_degree(P: Polygon, v: int) -> int:
    _on_boundary(P, v)
    P.patch.require_vertex(v)
    return sum(1 for f in P.patch.vertex_faces[v] if f in P.faces)


def exterior_degree(P: Polygon, v: int) -> int:
    e = vertex_degree(P.patch, v) - inner_degree(P, v)
    if e <= 0:
        raise PatchError(f"boundary vertex {v} has exterior degree {e}: inconsistent polygon")
    return e


def min_face_size(patch: TessellationPatch, v: int) -> int:
    """N(v): smallest face size at ``v`` (needs ``v`` and its faces complete)."""
    patch.require_vertex(v)
    for f in patch.vertex_faces[v]:
        patch.require_face(f)
    return min(len(patch.faces[f]) for f in patch.vertex_faces[v])


def label(P: Polygon, v: int) -> Label:
    inner = inner_degree(P, v)
    if inner == 1:
        return Label.APLUS
    if min_face_size(P.patch, v) == 3 and inner <= 3:
        return Label.A
    return Label.B


def label_sequence(P: Polygon) -> list[Label]:
    return [label(P, v) for v in P.boundary]


def is_admissible(P: Polygon) -> bool:
    labels = label_sequence(P)
    n = len(labels)
    for i, lab in enumerate(labels):
        if lab is Label.B and (labels[i - 1] is not Label.APLUS or labels[(i + 1) % n] is not Label.APLUS):
            return False
    return True


# -- cut locus and sphere enumeration ----------------------------------------


def cut_locus(patch: TessellationPatch, f0: int, radius: int) -> set[int]:
    """Faces within ``radius`` where the distance to ``f0`` is locally maximal."""
    dist = require_margin(patch, f0, radius + 1)
    out = set()
    for g, d in dist.items():
        if d <= radius and all(dist[h] <= d for h in patch.face_neighbours[g]):
            out.add(g)
    return out


@dataclass(frozen=True)
class SphereEnumeration:
    faces: tuple[int, ...]
    center: int
    k: int

    def __len__(self):
        return len(self.faces)


def _exterior_fan(patch: TessellationPatch, P: Polygon, i: int) -> list[int]:
    """Faces outside P at boundary vertex i, in the boundary direction."""
    b = P.boundary
    v, prev, nxt = b[i], b[i - 1], b[(i + 1) % len(b)]
    g = patch.face_across(v, prev)
    stop = patch.face_across(nxt, v)
    out = []
    guard = len(patch.vertex_faces[v])
    while g is not None:
        out.append(g)
        if g == stop or len(out) > guard:
            break
        cyc = patch.faces[g]
        j = cyc.index(v)
        g = patch.face_across(v, cyc[j - 1])
    if not out or out[-1] != stop or any(f in P.faces for f in out):
        raise EnumerationError(f"exterior fan at vertex {v} is not closed")
    return out


def enumerate_sphere(patch: TessellationPatch, f0: int, k: int) -> SphereEnumeration:
    """Cyclic order of A_k induced by walking the boundary of B_{k-1}."""
    dist = require_margin(patch, f0, k + 1)
    if k == 0:
        return SphereEnumeration((f0,), f0, 0)
    inner = make_polygon(patch, (f for f, d in dist.items() if d <= k - 1))
    sphere = {f for f, d in dist.items() if d == k}
    seq: list[int] = []
    for i in range(len(inner.boundary)):
        for g in _exterior_fan(patch, inner, i):
            if dist[g] == k and (not seq or seq[-1] != g):
                seq.append(g)
    while len(seq) > 1 and seq[0] == seq[-1]:
        seq.pop()
    if len(set(seq)) != len(seq):
        raise EnumerationError(f"enumeration inconsistent: a face of A_{k} recurs non-consecutively")
    if set(seq) != sphere:
        raise EnumerationError(f"enumeration inconsistent: walk misses faces of A_{k}")
    bverts = set(inner.boundary)
    n = len(seq)
    for a in range(n):
        for c in range(a + 1, n):
            common = set(patch.faces[seq[a]]) & set(patch.faces[seq[c]])
            subsequent = c == a + 1 or (a == 0 and c == n - 1)
            if subsequent and not (common & bverts):
                raise EnumerationError(
                    f"enumeration inconsistent: faces {seq[a]}, {seq[c]} do not meet on the inner boundary"
                )
            if not subsequent and common:
                raise EnumerationError(
                    f"enumeration inconsistent: non-subsequent faces {seq[a]}, {seq[c]} intersect"
                )
    return SphereEnumeration(tuple(seq), f0, k)


def _shares_edge(patch: TessellationPatch, f: int, g: int) -> bool:
    return g in patch.face_neighbours[f]


def check_lemma28(enum: SphereEnumeration, patch: TessellationPatch, f0: int, k: int) -> int:
    """Return the first face of the sphere that has exactly one edge on the
    inner boundary, or shares an edge with at most one cyclic neighbour."""
    if k < 1:
        raise PatchError("needs k >= 1")
    dist = require_margin(patch, f0, k + 1)
    inner = make_polygon(patch, (f for f, d in dist.items() if d <= k - 1))
    bedges = inner.boundary_edges
    seq = enum.faces
    n = len(seq)
    for j, f in enumerate(seq):
        on_inner = sum(1 for d in patch.face_edges(f) if frozenset(d) in bedges)
        if on_inner == 1:
            return f
        if n == 1:
            continue
        shared = _shares_edge(patch, f, seq[j - 1]) + _shares_edge(patch, f, seq[(j + 1) % n])
        if n == 2:
            shared = int(_shares_edge(patch, f, seq[j - 1]))
        if shared <= 1:
            return f
    raise PatchError(f"no witness face on A_{k}({f0})")


def check_forbidden_alternation(patch: TessellationPatch, f0: int, k: int) -> bool:
    """True iff the boundary of B_k has the forbidden shape: even length,
    labels strictly alternating a+/b, and every b-vertex of exterior
    degree 1."""
    P = distance_ball(patch, f0, k)
    labels = label_sequence(P)
    n = len(labels)
    if n % 2:
        return False
    for start in (0, 1):
        if all(
            labels[i] is (Label.APLUS if (i - start) % 2 == 0 else Label.B) for i in range(n)
        ):
            break
    else:
        return False
    return all(
        exterior_degree(P, v) == 1 for v, lab in zip(P.boundary, labels) if lab is Label.B
    )


# -- property checks used by the geometry suite ------------------------------


def belabel_violations(P: Polygon) -> list[str]:
    """Exterior-degree-1 boundary vertices must be b-vertices, and none of
    their edges may lie on the boundary of B_1(P)."""
    out = []
    outer = None
    for v in P.boundary:
        if exterior_degree(P, v) != 1:
            continue
        if label(P, v) is not Label.B:
            out.append(f"vertex {v}: exterior degree 1 but label {label(P, v)}")
        if outer is None:
            outer = k_neighborhood(P, 1)
        if v in outer.boundary:
            out.append(f"vertex {v}: exterior degree 1 but an edge lies on the boundary of B_1(P)")
    return out


def ball_violations(patch: TessellationPatch, f0: int, k: int) -> list[str]:
    """B_k is an admissible polygon and every face of A_k has an edge on
    its boundary."""
    try:
        P = distance_ball(patch, f0, k)
    except NotAPolygon as exc:
        return [f"B_{k} is not a polygon: {exc}"]
    out = []
    if not is_admissible(P):
        out.append(f"B_{k} is not admissible")
    bedges = P.boundary_edges
    for f in sorted(distance_sphere(patch, f0, k)):
        if not any(frozenset(d) in bedges for d in patch.face_edges(f)):
            out.append(f"face {f} of A_{k} has no edge on the boundary of B_{k}")
    return out


def _edge_run(cyc: tuple[int, ...], edges: set[frozenset]) -> tuple[bool, int]:
    """Do the edges of ``cyc`` lying in ``edges`` form one contiguous run?"""
    n = len(cyc)
    flags = [frozenset((cyc[i], cyc[(i + 1) % n])) in edges for i in range(n)]
    count = sum(flags)
    if count in (0, n):
        return count == n, count
    starts = sum(1 for i in range(n) if flags[i] and not flags[i - 1])
    return starts == 1, count


def tube_violations(P: Polygon) -> list[str]:
    """For admissible P: B_1(P) is an admissible polygon; each new face
    meets the boundary of P in a connected path of at most 2 edges and
    the boundary of B_1(P) in a connected path of at least 1 edge."""
    patch = P.patch
    try:
        Q = k_neighborhood(P, 1)
    except NotAPolygon as exc:
        return [f"B_1(P) is not a polygon: {exc}"]
    out = []
    if not is_admissible(Q):
        out.append("B_1(P) is not admissible")
    inner_edges, outer_edges = P.boundary_edges, Q.boundary_edges
    inner_verts, outer_verts = set(P.boundary), set(Q.boundary)
    for f in sorted(Q.faces - P.faces):
        cyc = patch.faces[f]
        for name, edges, verts, lo, hi in (
            ("P", inner_edges, inner_verts, 1, 2),
            ("B_1(P)", outer_edges, outer_verts, 1, None),
        ):
            connected, count = _edge_run(cyc, edges)
            run_verts = {
                v
                for i, v in enumerate(cyc)
                if frozenset((v, cyc[(i + 1) % len(cyc)])) in edges
                or frozenset((cyc[i - 1], v)) in edges
            }
            touching = set(cyc) & verts
            if not connected or touching != run_verts or count < lo or (hi is not None and count > hi):
                out.append(f"face {f}: meets boundary of {name} in {count} edge(s), connected={connected and touching == run_verts}")
    return out


# -- growth ------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthRow:
    k: int
    ball: int
    sphere: int
    mean_chi: Fraction


def growth_report(patch: TessellationPatch, f0: int, kmax: int) -> list[GrowthRow]:
    dist = require_margin(patch, f0, kmax + 1)
    rows = []
    total = Fraction(0)
    size = 0
    for k in range(kmax + 1):
        layer = sorted(f for f, d in dist.items() if d == k)
        total += sum((face_chi(patch, f) for f in layer), Fraction(0))
        size += len(layer)
        rows.append(GrowthRow(k, size, len(layer), total / size))
    return rows


def growth_tsv(rows: list[GrowthRow], ratio: bool = False) -> str:
    head = ["k", "ball", "sphere", "mean_chi"] + (["ratio"] if ratio else [])
    lines = ["\t".join(head)]
    for i, r in enumerate(rows):
        cells = [str(r.k), str(r.ball), str(r.sphere), fmt_rational(r.mean_chi)]
        if ratio:
            cells.append(fmt_rational(Fraction(rows[i + 1].ball, r.ball)) if i + 1 < len(rows) else "-")
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"

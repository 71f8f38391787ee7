"""Combinatorial model of finite windows of plane tessellations.

A patch is a set of oriented (counterclockwise) face cycles together with
explicit completeness flags.  Edges, incidences and vertex rotations are
derived from the face cycles and cached.  Completeness is honest: any
quantity that depends on the full neighbourhood of a vertex or face
(degree, curvature, Euler characteristic) is refused on incomplete
entities instead of being computed from a truncated neighbourhood.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

HALF = Fraction(1, 2)


class PatchError(ValueError):
    """Raised when an operation is asked for data the patch cannot supply."""


class IncompleteError(PatchError):
    """Raised when a vertex or face outside the complete region is used."""


@dataclass(frozen=True)
class Corner:
    vertex: int
    face: int


@dataclass(frozen=True, eq=False)
class TessellationPatch:
    """Finite patch: ``faces`` maps face id to its ccw vertex cycle."""

    faces: Mapping[int, tuple[int, ...]]
    complete_vertices: frozenset[int] = field(default_factory=frozenset)
    complete_faces: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(
            self, "faces", {int(f): tuple(int(v) for v in cyc) for f, cyc in self.faces.items()}
        )
        object.__setattr__(self, "complete_vertices", frozenset(self.complete_vertices))
        object.__setattr__(self, "complete_faces", frozenset(self.complete_faces))

    # -- derived structure -------------------------------------------------

    @cached_property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for cyc in self.faces.values() for v in cyc)

    @cached_property
    def face_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self.faces))

    @cached_property
    def directed_edges(self) -> dict[tuple[int, int], int]:
        """Directed edge -> face containing it (first one, if duplicated)."""
        out: dict[tuple[int, int], int] = {}
        for f in self.face_ids:
            cyc = self.faces[f]
            n = len(cyc)
            for i in range(n):
                out.setdefault((cyc[i], cyc[(i + 1) % n]), f)
        return out

    @cached_property
    def edge_faces(self) -> dict[frozenset, tuple[int, ...]]:
        """Undirected edge -> faces whose cycle contains it (with repeats)."""
        out: dict[frozenset, list[int]] = defaultdict(list)
        for f in self.face_ids:
            cyc = self.faces[f]
            n = len(cyc)
            for i in range(n):
                out[frozenset((cyc[i], cyc[(i + 1) % n]))].append(f)
        return {e: tuple(fs) for e, fs in out.items()}

    @cached_property
    def edges(self) -> frozenset:
        return frozenset(self.edge_faces)

    @cached_property
    def vertex_faces(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = defaultdict(list)
        for f in self.face_ids:
            for v in self.faces[f]:
                out[v].append(f)
        return {v: tuple(fs) for v, fs in out.items()}

    @cached_property
    def neighbours(self) -> dict[int, tuple[int, ...]]:
        """Vertex adjacency (sorted) from the edges present in the patch."""
        out: dict[int, set[int]] = defaultdict(set)
        for e in self.edge_faces:
            a, b = tuple(e)
            out[a].add(b)
            out[b].add(a)
        return {v: tuple(sorted(ws)) for v, ws in out.items()}

    @cached_property
    def face_neighbours(self) -> dict[int, tuple[int, ...]]:
        """Faces sharing an edge with each face, ascending."""
        out: dict[int, set[int]] = defaultdict(set)
        for fs in self.edge_faces.values():
            for f in fs:
                for g in fs:
                    if f != g:
                        out[f].add(g)
        return {f: tuple(sorted(out.get(f, ()))) for f in self.face_ids}

    @cached_property
    def _face_index(self) -> dict[int, int]:
        return {f: i for i, f in enumerate(self.face_ids)}

    @cached_property
    def face_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR arrays of the face adjacency graph, indexed by ``face_ids`` order."""
        index = self._face_index
        indptr = [0]
        indices: list[int] = []
        for f in self.face_ids:
            indices.extend(index[g] for g in self.face_neighbours[f])
            indptr.append(len(indices))
        return np.asarray(indptr, dtype=np.int64), np.asarray(indices, dtype=np.int64)

    def face_edges(self, f: int) -> list[tuple[int, int]]:
        cyc = self.faces[f]
        n = len(cyc)
        return [(cyc[i], cyc[(i + 1) % n]) for i in range(n)]

    def face_across(self, v: int, w: int) -> int | None:
        """Face containing the directed edge ``(v, w)``, if present."""
        return self.directed_edges.get((v, w))

    def rotation(self, v: int) -> list[int]:
        """Faces around ``v`` in rotational order.

        Each step crosses the edge entering ``v`` in the current face.  For
        a complete vertex this is the full closed fan; otherwise the fan is
        started just after the gap so that it lists a contiguous run.
        """
        fs = self.vertex_faces.get(v, ())
        if not fs:
            return []

        def step(g):
            cyc = self.faces[g]
            i = cyc.index(v)
            prev = cyc[i - 1]
            return self.directed_edges.get((v, prev))

        # find the start of the run: a face with no predecessor, if any
        start = fs[0]
        seen = {start}
        back = {}
        for g in fs:
            nxt = step(g)
            if nxt is not None:
                back[nxt] = g
        for g in fs:
            if g not in back:
                start = g
                break
        order = [start]
        seen = {start}
        g = step(start)
        while g is not None and g not in seen:
            order.append(g)
            seen.add(g)
            g = step(g)
        return order

    # -- completeness ------------------------------------------------------

    def is_complete_vertex(self, v: int) -> bool:
        return v in self.complete_vertices

    def is_complete_face(self, f: int) -> bool:
        return f in self.complete_faces

    def require_vertex(self, v: int) -> None:
        if v not in self.vertex_faces:
            raise PatchError(f"unknown vertex {v}")
        if v not in self.complete_vertices:
            raise IncompleteError(f"vertex {v} is incomplete: degree undefined on boundary")

    def require_face(self, f: int) -> None:
        if f not in self.faces:
            raise PatchError(f"unknown face {f}")
        if f not in self.complete_faces:
            raise IncompleteError(f"face {f} is incomplete")


def make_patch(
    faces: Mapping[int, Iterable[int]],
    complete_vertices: Iterable[int] | None = None,
    complete_faces: Iterable[int] | None = None,
) -> TessellationPatch:
    """Build a patch; ``None`` completeness means "all"."""
    faces = {f: tuple(c) for f, c in faces.items()}
    verts = {v for c in faces.values() for v in c}
    cv = verts if complete_vertices is None else set(complete_vertices)
    cf = set(faces) if complete_faces is None else set(complete_faces)
    return TessellationPatch(faces, frozenset(cv), frozenset(cf))


# -- validation --------------------------------------------------------------


@dataclass
class ValidationReport:
    structural: list[str] = field(default_factory=list)
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.structural and not self.violations

    def lines(self) -> list[str]:
        out = [f"structural\t{m}" for m in self.structural]
        out += [f"axiom-{a}\t{m}" for a, m in self.violations]
        return out


def validate_patch(patch: TessellationPatch) -> ValidationReport:
    """Check the tessellation axioms on the complete part of ``patch``.

    Structural errors (short or non-simple cycles, unknown ids in the
    completeness sets) are kept apart from axiom violations.
    """
    rep = ValidationReport()
    for f in patch.face_ids:
        cyc = patch.faces[f]
        if len(cyc) < 3:
            rep.structural.append(f"face {f}: cycle length {len(cyc)} < 3")
        if len(set(cyc)) != len(cyc):
            rep.structural.append(f"face {f}: cycle is not simple")
    for v in sorted(patch.complete_vertices - patch.vertices):
        rep.structural.append(f"complete vertex {v} does not occur in any face")
    for f in sorted(patch.complete_faces - set(patch.faces)):
        rep.structural.append(f"complete face {f} is unknown")
    if rep.structural:
        return rep

    # orientation: each directed edge in at most one face
    seen: dict[tuple[int, int], int] = {}
    for f in patch.face_ids:
        for d in patch.face_edges(f):
            if d in seen:
                rep.violations.append(
                    ("orientation", f"directed edge {d} in faces {seen[d]} and {f}")
                )
            else:
                seen[d] = f

    cv = patch.complete_vertices
    # (i) edges between complete vertices are sides of exactly two faces
    for e in sorted(patch.edge_faces, key=sorted):
        fs = patch.edge_faces[e]
        if len(fs) > 2:
            rep.violations.append(("i", f"edge {tuple(sorted(e))} lies in {len(fs)} faces"))
        elif e <= cv and (len(fs) != 2 or fs[0] == fs[1]):
            rep.violations.append(
                ("i", f"edge {tuple(sorted(e))} lies in {len(set(fs))} distinct face(s)")
            )

    # (ii) two complete faces: disjoint, one vertex, or exactly one side
    cf = patch.complete_faces
    checked = set()
    for v in sorted(patch.vertex_faces):
        fs = [f for f in patch.vertex_faces[v] if f in cf]
        for i, f in enumerate(fs):
            for g in fs[i + 1 :]:
                key = (min(f, g), max(f, g))
                if f == g or key in checked:
                    continue
                checked.add(key)
                common = set(patch.faces[f]) & set(patch.faces[g])
                if len(common) == 1:
                    continue
                if len(common) == 2:
                    a, b = common
                    ef = {frozenset(d) for d in patch.face_edges(f)}
                    eg = {frozenset(d) for d in patch.face_edges(g)}
                    if frozenset((a, b)) in ef and frozenset((a, b)) in eg:
                        continue
                rep.violations.append(
                    ("ii", f"faces {key[0]} and {key[1]} share {len(common)} vertices")
                )

    # complete vertices: closed fan with degree >= 3
    for v in sorted(cv):
        fs = patch.vertex_faces.get(v, ())
        rot = patch.rotation(v)
        first = rot[0] if rot else None
        closed = bool(rot) and len(rot) == len(fs)
        if closed:
            cyc = patch.faces[rot[-1]]
            i = cyc.index(v)
            closed = patch.directed_edges.get((v, cyc[i - 1])) == first
        if not closed:
            rep.violations.append(("iv", f"complete vertex {v} has no closed face fan"))
        elif len(fs) < 3:
            rep.violations.append(("iv", f"complete vertex {v} has degree {len(fs)} < 3"))
    return rep


# -- local quantities --------------------------------------------------------


def vertex_degree(patch: TessellationPatch, v: int) -> int:
    patch.require_vertex(v)
    return len(patch.neighbours[v])


def face_size(patch: TessellationPatch, f: int) -> int:
    patch.require_face(f)
    return len(patch.faces[f])


def curvature(patch: TessellationPatch, corner: Corner) -> Fraction:
    """Exact corner curvature ``1/deg(v) + 1/|f| - 1/2``."""
    v, f = corner.vertex, corner.face
    patch.require_vertex(v)
    patch.require_face(f)
    if v not in patch.faces[f]:
        raise PatchError(f"vertex {v} is not on face {f}")
    return Fraction(1, vertex_degree(patch, v)) + Fraction(1, len(patch.faces[f])) - HALF


def face_chi(patch: TessellationPatch, f: int) -> Fraction:
    """Sum of corner curvatures over the corners of ``f``."""
    patch.require_face(f)
    return sum((curvature(patch, Corner(v, f)) for v in patch.faces[f]), Fraction(0))


def corners(patch: TessellationPatch) -> list[Corner]:
    return [Corner(v, f) for f in patch.face_ids for v in patch.faces[f]]


@dataclass(frozen=True)
class CurvatureCheck:
    nonpositive: bool
    checked: int
    skipped: int
    max_curvature: Fraction | None


def curvature_check(patch: TessellationPatch) -> CurvatureCheck:
    checked = skipped = 0
    kmax = None
    for c in corners(patch):
        if c.vertex in patch.complete_vertices and c.face in patch.complete_faces:
            k = curvature(patch, c)
            checked += 1
            kmax = k if kmax is None else max(kmax, k)
        else:
            skipped += 1
    return CurvatureCheck(kmax is None or kmax <= 0, checked, skipped, kmax)


def is_nonpositively_curved(patch: TessellationPatch) -> bool:
    return curvature_check(patch).nonpositive


def relabel(patch: TessellationPatch, vmap: Mapping[int, int], fmap: Mapping[int, int] | None = None):
    """Return a copy with vertex (and optionally face) ids renamed."""
    fmap = fmap or {f: f for f in patch.faces}
    return TessellationPatch(
        {fmap[f]: tuple(vmap[v] for v in cyc) for f, cyc in patch.faces.items()},
        frozenset(vmap[v] for v in patch.complete_vertices),
        frozenset(fmap[f] for f in patch.complete_faces),
    )


def structurally_equal(a: TessellationPatch, b: TessellationPatch) -> bool:
    """Same faces with the same cycles up to rotation, same completeness."""

    def canon(cyc):
        i = cyc.index(min(cyc))
        return cyc[i:] + cyc[:i]

    if set(a.faces) != set(b.faces):
        return False
    if any(canon(a.faces[f]) != canon(b.faces[f]) for f in a.faces):
        return False
    return a.complete_vertices == b.complete_vertices and a.complete_faces == b.complete_faces

"""Generators for regular, hyperbolic and trihexagonal (Kagome) patches.

Patches are grown combinatorially, without coordinates, by vertex
completion: a boundary vertex is completed to its target degree by gluing
faces onto the boundary cycle.  A glued face always absorbs the maximal
boundary run whose inner vertices are one face short of saturation, and
vertices of the current stage that become one face short are closed
immediately.

Stage t completes every vertex of the face ball B_t around the base face,
in boundary order.  Once B_{t-1} has only complete vertices, B_t is
exactly the face ball of the infinite tiling, so after stages 0..r the
radius guarantee holds.  Ids are assigned in discovery order (base face
0); the radius-r run is a prefix of the radius-(r+1) run, so outputs are
reproducible and the smaller patch embeds id-preservingly in the larger.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .patch import TessellationPatch

DEFAULT_MAX_FACES = 400_000


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    kind: str  # "regular" | "kagome" | "file"
    radius: int = 0
    p: int = 0
    q: int = 0
    path: str | None = None

    def __post_init__(self):
        if self.radius < 0:
            raise GenerationError("radius must be >= 0")
        if self.kind == "regular":
            check_regular(self.p, self.q)
        elif self.kind == "kagome":
            if self.radius < 1:
                raise GenerationError("kagome radius must be >= 1")
        elif self.kind == "file":
            if not self.path:
                raise GenerationError("file spec needs a path")
        else:
            raise GenerationError(f"unknown generator kind {self.kind!r}")

    def build(self) -> tuple[TessellationPatch, int]:
        if self.kind == "regular":
            return generate_regular(self.p, self.q, self.radius)
        if self.kind == "kagome":
            return generate_kagome(self.radius)
        from .fileformat import load_patch

        with open(self.path) as fh:
            return load_patch(fh.read()), 0


def check_regular(p: int, q: int) -> None:
    if p < 3 or q < 3:
        raise GenerationError(f"({p},{q}): need p >= 3 and q >= 3")
    if Fraction(1, p) + Fraction(1, q) > Fraction(1, 2):
        raise GenerationError(f"({p},{q}) is spherical: 1/p + 1/q > 1/2")


class _Grower:
    def __init__(self, base_size: int, degree: int, size_rule: Callable[[int], int], max_faces: int):
        self.q = degree
        self.rule = size_rule
        self.max_faces = max_faces
        self.faces: list[tuple[int, ...]] = [tuple(range(base_size))]
        self.nverts = base_size
        self.count = {v: 1 for v in range(base_size)}
        self.nxt = {v: (v + 1) % base_size for v in range(base_size)}
        self.prv = {v: (v - 1) % base_size for v in range(base_size)}
        self.dir_face = {(v, (v + 1) % base_size): 0 for v in range(base_size)}
        self.adj = {v: {(v + 1) % base_size, (v - 1) % base_size} for v in range(base_size)}
        self.pending: list[int] = []
        self.layer: frozenset[int] = frozenset()

    def boundary(self) -> list[int]:
        start = min(self.nxt)
        out = [start]
        v = self.nxt[start]
        while v != start:
            out.append(v)
            v = self.nxt[v]
        return out

    def _glue(self, path: list[int]) -> None:
        m = len(path) - 1
        sizes = {len(self.faces[self.dir_face[(path[i], path[i + 1])]]) for i in range(m)}
        new_sizes = {self.rule(s) for s in sizes}
        if len(new_sizes) != 1:
            raise GenerationError(f"inconsistent face sizes required along {path}")
        p = new_sizes.pop()
        k = p - m - 1
        if k < 0:
            raise GenerationError(f"boundary run of {m} edges cannot lie on a {p}-gon")
        x0, xm = path[0], path[-1]
        if k == 0 and xm in self.adj[x0]:
            raise GenerationError(f"closing edge {x0}-{xm} already exists")
        new = list(range(self.nverts, self.nverts + k))
        self.nverts += k
        fid = len(self.faces)
        if fid >= self.max_faces:
            raise GenerationError(f"patch size guard hit ({self.max_faces} faces)")
        cyc = tuple(reversed(path)) + tuple(new)
        self.faces.append(cyc)
        n = len(cyc)
        for i in range(n):
            a, b = cyc[i], cyc[(i + 1) % n]
            self.dir_face[(a, b)] = fid
            self.adj.setdefault(a, set()).add(b)
            self.adj.setdefault(b, set()).add(a)
        for v in path:
            self.count[v] += 1
        for v in new:
            self.count[v] = 1
        for v in path[1:-1]:
            if self.count[v] != self.q:
                raise GenerationError(f"vertex {v} absorbed before saturation")
            del self.nxt[v], self.prv[v]
        chain = [x0] + new + [xm]
        for a, b in zip(chain, chain[1:]):
            self.nxt[a] = b
            self.prv[b] = a
        for v in (x0, xm):
            if v in self.layer:
                heapq.heappush(self.pending, v)

    def _run_forward(self, v: int, limit: int) -> int:
        b = self.nxt[v]
        steps = 0
        while self.count[b] == self.q - 1:
            b = self.nxt[b]
            steps += 1
            if steps > limit:
                raise GenerationError("boundary collapsed while growing")
        return b

    def _path(self, a: int, b: int) -> list[int]:
        out = [a]
        while out[-1] != b:
            out.append(self.nxt[out[-1]])
        return out

    def _close(self, v: int) -> None:
        """Glue the single missing face at ``v`` (which is one face short)."""
        limit = len(self.nxt)
        a = self.prv[v]
        steps = 0
        while self.count[a] == self.q - 1:
            a = self.prv[a]
            steps += 1
            if steps > limit:
                raise GenerationError("boundary collapsed while growing")
        b = self._run_forward(v, limit)
        if a == b:
            raise GenerationError("closing face would cover the whole boundary")
        self._glue(self._path(a, b))

    def _settle(self) -> None:
        # a layer vertex one face short has a forced missing face; glue it at
        # once, otherwise later faces may duplicate that face's vertices.
        # Restricted to the layer snapshot so that q = 3 cannot cascade.
        while self.pending:
            v = heapq.heappop(self.pending)
            if v in self.nxt and self.count[v] == self.q - 1:
                self._close(v)

    def complete_vertex(self, v: int) -> None:
        limit = len(self.nxt)
        while v in self.nxt and self.count[v] < self.q:
            if self.count[v] == self.q - 1:
                self._close(v)
            else:
                b = self._run_forward(v, limit)
                if b == v:
                    raise GenerationError("boundary collapsed while growing")
                self._glue(self._path(v, b))
            self._settle()
        if self.count[v] > self.q:
            raise GenerationError(f"vertex {v} exceeded degree {self.q}")

    def complete_all(self, vertices: set[int]) -> None:
        """Complete ``vertices`` in boundary order, starting at the least id."""
        order = [v for v in self.boundary() if v in vertices]
        self.layer = frozenset(order)
        for v in order:
            self.complete_vertex(v)

    def ball(self, radius: int) -> list[int]:
        """Faces within face distance ``radius`` of the base face, BFS order."""
        seen = {0}
        order = [0]
        frontier = [0]
        for _ in range(radius):
            nxt_frontier = []
            for f in frontier:
                cyc = self.faces[f]
                n = len(cyc)
                for i in range(n):
                    g = self.dir_face.get((cyc[(i + 1) % n], cyc[i]))
                    if g is not None and g not in seen:
                        seen.add(g)
                        nxt_frontier.append(g)
            order.extend(nxt_frontier)
            frontier = nxt_frontier
        return order

    def complete_ball(self, radius: int) -> None:
        while True:
            todo = {v for f in self.ball(radius) for v in self.faces[f] if v in self.nxt}
            if not todo:
                return
            self.complete_all(todo)

    def patch(self) -> TessellationPatch:
        faces = dict(enumerate(self.faces))
        complete = frozenset(v for v in self.count if v not in self.nxt)
        return TessellationPatch(faces, complete, frozenset(faces))


def _grow(base_size, degree, rule, radius, max_faces):
    g = _Grower(base_size, degree, rule, max_faces)
    for t in range(radius + 1):
        g.complete_ball(t)
    return g.patch(), 0


def generate_regular(p: int, q: int, radius: int, max_faces: int = DEFAULT_MAX_FACES):
    """Patch of the {p,q} tiling (p-gons, q at each vertex) around face 0.

    Every face within face distance ``radius`` of the base face has all of
    its vertices complete.
    """
    check_regular(p, q)
    if radius < 0:
        raise GenerationError("radius must be >= 0")
    return _grow(p, q, lambda _s: p, radius, max_faces)


def generate_kagome(radius: int, max_faces: int = DEFAULT_MAX_FACES):
    """Trihexagonal (3.6.3.6) patch around a hexagonal base face."""
    if radius < 1:
        raise GenerationError("kagome radius must be >= 1")
    # every edge separates a triangle from a hexagon
    return _grow(6, 4, lambda s: 9 - s, radius, max_faces)

"""Cached patch builders shared by the test modules."""
from functools import lru_cache

from tesscurv.generate import generate_kagome, generate_regular


@lru_cache(maxsize=None)
def regular(p, q, radius):
    return generate_regular(p, q, radius)[0]


@lru_cache(maxsize=None)
def kagome(radius):
    return generate_kagome(radius)[0]


def naive_face_distances(patch, f0):
    """Distances by repeated relaxation over the edge list (no queue)."""
    inf = float("inf")
    dist = {f: inf for f in patch.faces}
    dist[f0] = 0
    pairs = [fs for fs in patch.edge_faces.values() if len(fs) == 2]
    changed = True
    while changed:
        changed = False
        for f, g in pairs:
            if dist[f] + 1 < dist[g]:
                dist[g] = dist[f] + 1
                changed = True
            if dist[g] + 1 < dist[f]:
                dist[f] = dist[g] + 1
                changed = True
    return {f: d for f, d in dist.items() if d < inf}


TETRAHEDRON = {0: (0, 2, 1), 1: (0, 1, 3), 2: (0, 3, 2), 3: (1, 2, 3)}
CUBE = {
    0: (0, 3, 2, 1),
    1: (4, 5, 6, 7),
    2: (0, 1, 5, 4),
    3: (1, 2, 6, 5),
    4: (2, 3, 7, 6),
    5: (3, 0, 4, 7),
}

"""SVG drawings of disc patches via a barycentric (Tutte) embedding.

The outer boundary cycle is pinned to the unit circle and every inner
vertex sits at the average of its neighbours.  Faces are filled by the
sign of their Euler characteristic; faces with an incomplete corner have
no defined characteristic and are drawn unfilled.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.sparse import lil_matrix
from scipy.sparse.linalg import spsolve

from . import metric
from .patch import TessellationPatch, face_chi

COLORS = {"negative": "#5b8cc9", "zero": "#d9d9d9", "positive": "#d9634f", "undefined": "#ffffff"}


def tutte_layout(patch: TessellationPatch) -> dict[int, tuple[float, float]]:
    """Vertex positions; raises NotAPolygon if the patch is not a disc."""
    disc = metric.make_polygon(patch, patch.faces)
    bnd = disc.boundary
    n = len(bnd)
    pos = {v: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i, v in enumerate(bnd)}
    inner = sorted(patch.vertices - set(bnd))
    if inner:
        idx = {v: i for i, v in enumerate(inner)}
        A = lil_matrix((len(inner), len(inner)))
        rhs = np.zeros((len(inner), 2))
        for v in inner:
            i = idx[v]
            nb = patch.neighbours[v]
            A[i, i] = len(nb)
            for w in nb:
                if w in idx:
                    A[i, idx[w]] -= 1
                else:
                    rhs[i] += pos[w]
        A = A.tocsc()
        xy = np.column_stack([spsolve(A, rhs[:, 0]), spsolve(A, rhs[:, 1])])
        for v in inner:
            pos[v] = (float(xy[idx[v], 0]), float(xy[idx[v], 1]))
    return pos


def _num(x: float) -> str:
    return f"{round(x, 4) + 0.0:.4f}"


def chi_class(patch: TessellationPatch, f: int) -> str:
    cv = patch.complete_vertices
    if any(v not in cv for v in patch.faces[f]):
        return "undefined"
    c = face_chi(patch, f)
    return "negative" if c < 0 else "positive" if c > 0 else "zero"


def render_svg(patch: TessellationPatch, size: int = 800) -> str:
    pos = tutte_layout(patch)
    half = size / 2
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    for f in patch.face_ids:
        pts = " ".join(
            f"{_num(half + 0.95 * half * pos[v][0])},{_num(half - 0.95 * half * pos[v][1])}" for v in patch.faces[f]
        )
        cls = chi_class(patch, f)
        out.append(
            f'<polygon class="chi-{cls}" data-face="{f}" points="{pts}" fill="{COLORS[cls]}" '
            f'stroke="#333333" stroke-width="0.6"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"

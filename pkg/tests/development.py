"""Geometric development of generated patches (test oracle).

Faces are laid out as regular polygons, Euclidean for flat tilings and in
the Poincare disc for hyperbolic ones, by crossing shared edges from the
base face.  A correct combinatorial patch develops consistently (every
vertex gets one position) and injectively (distinct ids, distinct points).
Hyperbolic development amplifies rounding errors exponentially along
face chains, so it runs in mpmath at ``dps`` digits.  Nothing here is used
by the library.
"""
from collections import deque

import mpmath


def develop(patch, base=0, degree=None, hyperbolic=False, dps=60, tol=None):
    """Return ``{vertex: mpc}`` or raise AssertionError on inconsistency.

    ``degree`` is the vertex degree q for hyperbolic {p,q}; Euclidean faces
    are assumed regular with unit edges.
    """
    with mpmath.workdps(dps):
        tol = mpmath.mpf(10) ** (-(dps // 3)) if tol is None else mpmath.mpf(tol)
        pi = mpmath.pi
        cyc0 = patch.faces[base]
        p0 = len(cyc0)
        if hyperbolic:
            R = mpmath.acosh(1 / (mpmath.tan(pi / p0) * mpmath.tan(pi / degree)))
            r = mpmath.tanh(R / 2)
        else:
            r = 1 / (2 * mpmath.sin(pi / p0))
        pos = {v: r * mpmath.expjpi(mpmath.mpf(2 * i) / p0) for i, v in enumerate(cyc0)}

        if hyperbolic:

            def step(a, b, alpha):
                w = (a - b) / (1 - mpmath.conj(b) * a)
                w *= mpmath.expj(-alpha)
                return (w + b) / (1 + mpmath.conj(b) * w)

            def dist(z, w):
                x = abs(z - w) / abs(1 - mpmath.conj(w) * z)
                return 2 * mpmath.atanh(x)

            def angle(_n):
                return 2 * pi / degree

        else:

            def step(a, b, alpha):
                return b + mpmath.expj(-alpha) * (a - b)

            def dist(z, w):
                return abs(z - w)

            def angle(n):
                return pi - 2 * pi / n

        placed = {base}
        queue = deque([base])
        while queue:
            f = queue.popleft()
            for g in patch.face_neighbours[f]:
                if g in placed:
                    continue
                cyc = patch.faces[g]
                n = len(cyc)
                for i in range(n):
                    a, b = cyc[i], cyc[(i + 1) % n]
                    if a in pos and b in pos:
                        break
                else:
                    continue
                alpha = angle(n)
                prev, cur = pos[a], pos[b]
                for j in range(2, n + 1):
                    v = cyc[(i + j) % n]
                    nxt = step(prev, cur, alpha)
                    if v in pos:
                        off = dist(pos[v], nxt)
                        assert off < tol, f"vertex {v} develops inconsistently in face {g} (off by {float(off):.3g})"
                    else:
                        pos[v] = nxt
                    prev, cur = cur, nxt
                placed.add(g)
                queue.append(g)
        assert placed == set(patch.faces), "patch is not edge-connected"
        pts = sorted(pos.items(), key=lambda kv: (kv[1].real, kv[1].imag))
        # injectivity: sweep on the real part
        for i, (v, z) in enumerate(pts):
            for w, y in pts[i + 1 :]:
                if y.real - z.real > tol:
                    break
                assert dist(z, y) > tol, f"vertices {v} and {w} coincide"
        return pos

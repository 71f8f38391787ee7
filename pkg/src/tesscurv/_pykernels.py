"""Pure-Python versions of the hot kernels.

Used when the compiled ``_ckernels`` extension is unavailable or when
``TESSCURV_PURE_PYTHON=1`` is set.  Signatures and results are identical
to the Cython module.
"""
from collections import deque
from math import gcd


def bfs_distances(indptr, indices, sources, n):
    """Multi-source BFS on a CSR graph; unreachable nodes get -1."""
    dist = [-1] * n
    queue = deque()
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            queue.append(s)
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for k in range(indptr[x], indptr[x + 1]):
            y = indices[k]
            if dist[y] < 0:
                dist[y] = dx
                queue.append(y)
    return dist


def _normalize(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def rref_int(rows, ncols):
    """Fraction-free Gauss-Jordan elimination of integer rows, in place.

    Returns the pivot column list.  On return the first ``len(pivots)``
    rows are in reduced echelon shape up to a per-row integer scale: row
    ``r`` is zero in every pivot column except ``pivots[r]``.  The
    remaining rows are zero.
    """
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            e = row[c]
            if e:
                rows[i] = _normalize([p * x - e * y for x, y in zip(row, prow)])
        pivots.append(c)
        r += 1
    return pivots

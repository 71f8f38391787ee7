# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels: face BFS and fraction-free integer elimination."""
from math import gcd


def bfs_distances(const long[:] indptr, const long[:] indices, sources, Py_ssize_t n):
    cdef Py_ssize_t head = 0, tail = 0, x, y, k, dx
    cdef long[:] dist
    cdef long[:] queue
    import numpy as np
    dist_arr = np.full(n, -1, dtype=np.int64)
    queue_arr = np.empty(max(n, 1), dtype=np.int64)
    dist = dist_arr
    queue = queue_arr
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            queue[tail] = s
            tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        dx = dist[x] + 1
        for k in range(indptr[x], indptr[x + 1]):
            y = indices[k]
            if dist[y] < 0:
                dist[y] = dx
                queue[tail] = y
                tail += 1
    return dist_arr.tolist()


cdef list _normalize(list row):
    cdef object g = 0
    cdef object x
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def rref_int(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef list pivots = []
    cdef list prow, row, out
    cdef object p, e
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if (<list>rows[i])[c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = <list>rows[r]
        p = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>rows[i]
            e = row[c]
            if e:
                out = [None] * ncols
                for j in range(ncols):
                    out[j] = p * row[j] - e * prow[j]
                rows[i] = _normalize(out)
        pivots.append(c)
        r += 1
    return pivots

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tesscurv import kernels

BACKENDS = kernels.backends()


def test_backend_reported():
    assert kernels.BACKEND in BACKENDS


def test_pure_python_switch():
    env = dict(os.environ, TESSCURV_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from tesscurv import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def _csr(n, edges):
    adj = [[] for _ in range(n)]
    for a, b in edges:
        if a != b:
            adj[a].append(b)
            adj[b].append(a)
    indptr = np.zeros(n + 1, dtype=np.int64)
    indices = []
    for i, nb in enumerate(adj):
        indices.extend(sorted(set(nb)))
        indptr[i + 1] = len(indices)
    return indptr, np.asarray(indices, dtype=np.int64)


graphs = st.integers(1, 30).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=60),
        st.lists(st.integers(0, n - 1), min_size=1, max_size=3),
    )
)


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_bfs_backends_agree(g):
    n, edges, sources = g
    indptr, indices = _csr(n, edges)
    results = {name: list(mod.bfs_distances(indptr, indices, sources, n)) for name, mod in BACKENDS.items()}
    ref = results["python"]
    for r in results.values():
        assert r == ref
    for s in sources:
        assert ref[s] == 0


def test_bfs_path_graph():
    indptr, indices = _csr(5, [(0, 1), (1, 2), (2, 3)])
    for mod in BACKENDS.values():
        assert list(mod.bfs_distances(indptr, indices, [0], 5)) == [0, 1, 2, 3, -1]


matrices = st.integers(1, 6).flatmap(
    lambda m: st.lists(st.lists(st.integers(-5, 5), min_size=m, max_size=m), min_size=0, max_size=6).map(
        lambda rows: (rows, m)
    )
)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rref_backends_agree(case):
    rows, m = case
    outs = {}
    for name, mod in BACKENDS.items():
        work = [list(r) for r in rows]
        piv = mod.rref_int(work, m)
        outs[name] = (list(piv), [list(r) for r in work])
    ref = outs["python"]
    for o in outs.values():
        assert o == ref
    piv, work = ref
    for r, c in enumerate(piv):
        assert work[r][c] != 0
        assert all(work[i][c] == 0 for i in range(len(work)) if i != r)
    assert all(not any(row) for row in work[len(piv):])


def test_rref_big_integers():
    big = 10**30
    rows = [[big, 1], [1, big]]
    for mod in BACKENDS.values():
        work = [list(r) for r in rows]
        assert list(mod.rref_int(work, 2)) == [0, 1]


@pytest.mark.skipif("cython" not in BACKENDS, reason="extension not built")
def test_cython_selected_by_default():
    assert kernels.BACKEND == "cython" or os.environ.get("TESSCURV_PURE_PYTHON")

"""Exact search against the floating-point eigen-decomposition oracle."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tesscurv import exact, spectral
from tesscurv.spectral import Found

from helpers import kagome, regular

fracs = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def planted(draw):
    """Blocks (K, L) that may or may not carry an eigenvector in ker K.

    With ``plant`` set, L is built so that a chosen x in ker K satisfies
    L x = lambda x; otherwise the blocks are random.
    """
    n = draw(st.integers(1, 7))
    r = draw(st.integers(0, 6))
    K = [[draw(fracs) for _ in range(n)] for _ in range(r)]
    L = [[draw(fracs) for _ in range(n)] for _ in range(n)]
    if draw(st.booleans()):
        ker = exact.nullspace(K, n) if K else exact.identity(n)
        if ker:
            x = ker[draw(st.integers(0, len(ker) - 1))]
            lam = draw(fracs)
            j = next(i for i, v in enumerate(x) if v)
            # fix column j of L so that (L x)_i = lam x_i
            for i in range(n):
                rest = sum(L[i][k] * x[k] for k in range(n) if k != j)
                L[i][j] = (lam * x[i] - rest) / x[j]
    return K, L, n


@settings(max_examples=150, deadline=None)
@given(planted())
def test_exact_and_float_agree_on_random_blocks(case):
    K, L, n = case
    cert = spectral.cse_core(K, L, n)
    cands = spectral.float_candidates(K, L, n)
    assert isinstance(cert, Found) == bool(cands)


def test_float_oracle_examples():
    K = kagome(3)
    op = spectral.adjacency_operator(K)
    cands = spectral.cse_search_float(op, spectral.make_support(K, K.faces[0]))
    assert len(cands) == 1 and abs(cands[0] + 2) < 1e-9
    p = regular(4, 4, 4)
    S = spectral.make_support(p, spectral.vertex_ball(p, 0, 2))
    for seed in range(1, 6):
        assert spectral.cse_search_float(spectral.random_elliptic(p, seed), S) == []
    assert spectral.cse_search_float(op, spectral.SupportSet((), ())) == []


@pytest.mark.parametrize("tol", [1e-6, 1e-8, 1e-10])
def test_oracle_tolerance_band(tol):
    K = kagome(4)
    op = spectral.nearest_neighbour_laplacian(K)
    S = spectral.make_support(K, K.faces[0])
    cands = spectral.cse_search_float(op, S, tol)
    assert len(cands) == 1 and abs(cands[0] - 2) < 1e-9
    assert spectral.cse_search(op, S).lam == Fraction(2)

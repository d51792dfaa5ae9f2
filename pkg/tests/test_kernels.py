import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamesem.automata import _kernels as k

needs_numba = pytest.mark.skipif(not k.HAVE_NUMBA, reason="numba not installed")


@st.composite
def tables(draw, max_states=12, max_symbols=3):
    n = draw(st.integers(1, max_states))
    s = draw(st.integers(1, max_symbols))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return rng.integers(0, n, size=(n, s)).astype(np.int64), rng.random(n) < 0.5


def _same_partition(a, b):
    return len(set(zip(a.tolist(), b.tolist()))) == len(set(a.tolist())) == len(set(b.tolist()))


@needs_numba
@settings(max_examples=200, deadline=None)
@given(tables())
def test_refine_agrees(t):
    trans, accept = t
    nb, npy = k._refine_nb(trans, accept), k.refine_np(trans, accept)
    assert _same_partition(nb, npy)
    assert np.array_equal(nb, npy)             # labels come out in the same order too


@needs_numba
@settings(max_examples=200, deadline=None)
@given(tables())
def test_reachable_agrees(t):
    trans, _ = t
    assert np.array_equal(k._reachable_nb(trans, 0), k.reachable_np(trans, 0))


@needs_numba
@settings(max_examples=200, deadline=None)
@given(tables(max_symbols=2), tables(max_symbols=2))
def test_product_search_agrees(t1, t2):
    (tr1, a1), (tr2, a2) = t1, t2
    if tr1.shape[1] != tr2.shape[1]:
        return
    p1, v1, h1 = k._product_bfs_nb(tr1, a1, 0, tr2, a2, 0)
    p2, v2, h2 = k.product_bfs_np(tr1, a1, 0, tr2, a2, 0)
    assert h1 == h2

    def word(parent, via, x):
        out = []
        while x >= 0 and parent[x] != x:
            out.append(int(via[x]))
            x = int(parent[x])
        return out[::-1]
    if h1 >= 0:
        assert word(p1, v1, h1) == word(p2, v2, h2)


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv("GAMESEM_JIT", "0")
    assert not k.jit_enabled()
    monkeypatch.setenv("GAMESEM_JIT", "1")
    assert k.jit_enabled() == k.HAVE_NUMBA


def test_dispatch_on_empty_table():
    assert k.refine(np.zeros((0, 2), dtype=np.int64), np.zeros(0, dtype=bool)).size == 0

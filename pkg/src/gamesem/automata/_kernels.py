"""Array kernels for DFA minimisation and product search.

Each kernel has a numba version and a plain numpy version.  Set
``GAMESEM_JIT=0`` (or run without numba installed) to use numpy.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:         # pragma: no cover
    HAVE_NUMBA = False


def jit_enabled() -> bool:
    return HAVE_NUMBA and os.environ.get("GAMESEM_JIT", "1") != "0"


# ---------------------------------------------------------------- numpy versions


def reachable_np(trans: np.ndarray, start: int) -> np.ndarray:
    seen = np.zeros(trans.shape[0], dtype=np.bool_)
    seen[start] = True
    frontier = np.array([start], dtype=np.int64)
    while frontier.size:
        nxt = np.unique(trans[frontier].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return seen


def refine_np(trans: np.ndarray, accept: np.ndarray) -> np.ndarray:
    """Moore refinement: class of each state under the Nerode congruence."""
    n, k = trans.shape
    cls = accept.astype(np.int64)
    count = len(np.unique(cls))
    while True:
        key = cls.copy()
        for a in range(k):
            _, key = np.unique(key * n + cls[trans[:, a]], return_inverse=True)
            key = key.astype(np.int64)
        new_count = int(key.max()) + 1 if n else 0
        cls = key
        if new_count == count:
            return cls
        count = new_count


def product_bfs_np(t1: np.ndarray, a1: np.ndarray, s1: int,
                   t2: np.ndarray, a2: np.ndarray, s2: int):
    """Breadth-first search of the product for a pair disagreeing on acceptance.

    Returns (parent, via, hit) with hit = -1 when none is reachable.  Each
    frontier is kept in discovery order, so the path to ``hit`` spells the
    least shortest word (symbols compared by index).
    """
    n1, k = t1.shape
    n2 = t2.shape[0]
    parent = np.full(n1 * n2, -1, dtype=np.int64)
    via = np.full(n1 * n2, -1, dtype=np.int64)
    root = s1 * n2 + s2
    parent[root] = root
    frontier = np.array([root], dtype=np.int64)
    while frontier.size:
        bad = np.flatnonzero(a1[frontier // n2] != a2[frontier % n2])
        if bad.size:
            return parent, via, int(frontier[bad[0]])
        succ = (t1[frontier // n2] * n2 + t2[frontier % n2]).ravel()
        src = np.repeat(frontier, k)
        sym = np.tile(np.arange(k), frontier.size)
        fresh = parent[succ] == -1
        succ, src, sym = succ[fresh], src[fresh], sym[fresh]
        _, first = np.unique(succ, return_index=True)
        first.sort()
        succ, src, sym = succ[first], src[first], sym[first]
        parent[succ] = src
        via[succ] = sym
        frontier = succ
    return parent, via, -1


# ---------------------------------------------------------------- numba versions

if HAVE_NUMBA:
    @njit(cache=True)
    def _reachable_nb(trans, start):
        n, k = trans.shape
        seen = np.zeros(n, dtype=np.bool_)
        queue = np.empty(n, dtype=np.int64)
        queue[0] = start
        seen[start] = True
        head, tail = 0, 1
        while head < tail:
            s = queue[head]
            head += 1
            for a in range(k):
                t = trans[s, a]
                if not seen[t]:
                    seen[t] = True
                    queue[tail] = t
                    tail += 1
        return seen

    @njit(cache=True)
    def _counting_order(vals, within, bound):
        # stable counting sort of the positions in ``within`` by vals[]
        count = np.zeros(bound + 1, dtype=np.int64)
        for i in range(within.size):
            count[vals[within[i]] + 1] += 1
        for v in range(bound):
            count[v + 1] += count[v]
        out = np.empty(within.size, dtype=np.int64)
        for i in range(within.size):
            v = vals[within[i]]
            out[count[v]] = within[i]
            count[v] += 1
        return out

    @njit(cache=True)
    def _relabel_pairs_nb(hi, lo, n):
        """Dense labels for the pairs (hi[s], lo[s]), both in [0, n), ordered lexicographically."""
        order = _counting_order(lo, np.arange(hi.size), n)
        order = _counting_order(hi, order, n)
        out = np.empty(hi.size, dtype=np.int64)
        label = -1
        for i in range(order.size):
            s = order[i]
            if i == 0 or hi[s] != hi[order[i - 1]] or lo[s] != lo[order[i - 1]]:
                label += 1
            out[s] = label
        return out, label + 1

    @njit(cache=True)
    def _refine_nb(trans, accept):
        n, k = trans.shape
        cls = np.zeros(n, dtype=np.int64)
        for s in range(n):
            cls[s] = 1 if accept[s] else 0
        cls, count = _relabel_pairs_nb(cls, np.zeros(n, dtype=np.int64), max(n, 2))
        succ = np.empty(n, dtype=np.int64)
        while True:
            key = cls.copy()
            for a in range(k):
                for s in range(n):
                    succ[s] = cls[trans[s, a]]
                key, new_count = _relabel_pairs_nb(key, succ, max(n, 2))
            cls = key
            if new_count == count:
                return cls
            count = new_count

    @njit(cache=True)
    def _product_bfs_nb(t1, a1, s1, t2, a2, s2):
        n1, k = t1.shape
        n2 = t2.shape[0]
        parent = np.full(n1 * n2, -1, dtype=np.int64)
        via = np.full(n1 * n2, -1, dtype=np.int64)
        queue = np.empty(n1 * n2, dtype=np.int64)
        root = s1 * n2 + s2
        parent[root] = root
        queue[0] = root
        head, tail = 0, 1
        while head < tail:
            x = queue[head]
            head += 1
            p, q = x // n2, x % n2
            if a1[p] != a2[q]:
                return parent, via, x
            for a in range(k):
                y = t1[p, a] * n2 + t2[q, a]
                if parent[y] == -1:
                    parent[y] = x
                    via[y] = a
                    queue[tail] = y
                    tail += 1
        return parent, via, -1


def reachable(trans: np.ndarray, start: int) -> np.ndarray:
    if jit_enabled():
        return _reachable_nb(trans, start)
    return reachable_np(trans, start)


def refine(trans: np.ndarray, accept: np.ndarray) -> np.ndarray:
    if trans.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    if jit_enabled():
        return _refine_nb(trans, accept)
    return refine_np(trans, accept)


def product_bfs(t1, a1, s1, t2, a2, s2):
    if jit_enabled():
        return _product_bfs_nb(t1, a1, s1, t2, a2, s2)
    return product_bfs_np(t1, a1, s1, t2, a2, s2)

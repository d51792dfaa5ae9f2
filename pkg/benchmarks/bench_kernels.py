"""Time the DFA kernels: numba against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--states 20000] [--product-states 1500] [--repeat 5]

The product search allocates arrays over the pair space, so it gets its own
(smaller) size.
"""
import argparse
import time

import numpy as np

from gamesem.automata import _kernels as k


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--states", type=int, default=20_000)
    p.add_argument("--product-states", type=int, default=1500)
    p.add_argument("--symbols", type=int, default=4)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    opts = p.parse_args()
    if not k.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(opts.seed)
    n, s = opts.states, opts.symbols
    trans = rng.integers(0, n, size=(n, s)).astype(np.int64)
    accept = rng.random(n) < 0.5
    m = opts.product_states
    ptrans = rng.integers(0, m, size=(m, s)).astype(np.int64)
    paccept = rng.random(m) < 0.5
    # flip one acceptance bit so the search has a counterexample to find
    paccept2 = paccept.copy()
    paccept2[rng.integers(0, m)] ^= True

    cases = {
        "reachable": (lambda: k._reachable_nb(trans, 0), lambda: k.reachable_np(trans, 0)),
        "refine": (lambda: k._refine_nb(trans, accept), lambda: k.refine_np(trans, accept)),
        "product_bfs": (lambda: k._product_bfs_nb(ptrans, paccept, 0, ptrans, paccept2, 0),
                        lambda: k.product_bfs_np(ptrans, paccept, 0, ptrans, paccept2, 0)),
    }
    print(f"{n} states ({m} per side for product_bfs), {s} symbols, best of {opts.repeat}")
    print(f"{'kernel':12} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for name, (jit_fn, np_fn) in cases.items():
        jit_fn()                                   # compile outside the timing
        tj, rj = best_of(jit_fn, opts.repeat)
        tn, rn = best_of(np_fn, opts.repeat)
        same = all(np.array_equal(a, b) for a, b in zip(np.atleast_1d(rj), np.atleast_1d(rn))) \
            if name != "product_bfs" else rj[2] == rn[2]
        print(f"{name:12} {tj:10.4f} {tn:10.4f} {tn / tj:8.1f}x{'' if same else '  MISMATCH'}")

    # the library's real workload: many small automata
    small = [(rng.integers(0, 12, size=(12, 3)).astype(np.int64), rng.random(12) < 0.5)
             for _ in range(500)]
    tj, _ = best_of(lambda: [k._refine_nb(t, a) for t, a in small], opts.repeat)
    tn, _ = best_of(lambda: [k.refine_np(t, a) for t, a in small], opts.repeat)
    print(f"{'refine x500':12} {tj:10.4f} {tn:10.4f} {tn / tj:8.1f}x  (12 states, 3 symbols each)")
    tj, _ = best_of(lambda: [k._product_bfs_nb(t, a, 0, t, ~a, 0) for t, a in small], opts.repeat)
    tn, _ = best_of(lambda: [k.product_bfs_np(t, a, 0, t, ~a, 0) for t, a in small], opts.repeat)
    print(f"{'product x500':12} {tj:10.4f} {tn:10.4f} {tn / tj:8.1f}x")


if __name__ == "__main__":
    main()

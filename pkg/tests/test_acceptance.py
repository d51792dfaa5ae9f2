"""Acceptance criteria 1-9, one reported line each.

Run under pytest (the lines appear in the terminal summary) or directly:

    python3 tests/test_acceptance.py
"""
import math
import sys
import time
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

from gamesem import cli
from gamesem import domains as dom
from gamesem.arena import arena_of_type
from gamesem.automata import hopcroft_minimize, isomorphic, nerode_minimize, random_dfa, term_equiv
from gamesem.composition import ComposedStrategy, compose
from gamesem.interpreter import BOTTOM, denote, evaluate, extract_term, trace_application
from gamesem.strategy import all_well_bracketed, copycat, is_innocent, lift_closed, plays_of
from gamesem.syntax import (
    BOOL, Arrow, apply, beta_normalize, check, check_text, enumerate_normal_terms,
    enumerate_redex_terms, parse, show,
)

GOLDEN = Path(__file__).parent / "golden"
RESULTS: dict[int, str] = {}

B = BOOL
BB = Arrow(B, B)
BBB = Arrow(B, BB)
BB_B = Arrow(BB, B)

# Rows of the published application figure, top to bottom: (component, path, kind, payload).
# Component B is (N->N) x N, C is the result N.  The environment-side input
# questions on A do not appear in the figure.
FIG2_ROWS = [
    ("C", "", "Q", None),
    ("B", "lc", "Q", None),
    ("B", "ld", "Q", None),
    ("B", "r", "Q", None),
    ("B", "r", "A", 3),
    ("B", "ld", "A", 3),
    ("B", "lc", "A", 9),
    ("C", "", "A", 11),
]

# Tables over (b1, b2) in the order bot, tt, ff for each argument, written out by hand.
_ = BOTTOM
LSOR = (_, _, _, True, True, True, _, True, False)        # cond b1 tt b2
RSOR = (_, True, _, _, True, True, _, True, False)        # cond b2 tt b1
POR = (_, True, _, True, True, True, _, True, False)


def _record(n: int, fn, limit: float | None = None):
    t0 = time.perf_counter()
    try:
        detail = fn()
        took = time.perf_counter() - t0
        if limit is not None and took >= limit:
            raise AssertionError(f"took {took:.2f} s, limit {limit:g} s")
    except Exception as e:
        took = time.perf_counter() - t0
        RESULTS[n] = f"criterion {n}: FAIL ({type(e).__name__}: {e}; {took:.2f} s)"
        print(RESULTS[n])
        raise
    RESULTS[n] = f"criterion {n}: PASS ({detail}; {took:.2f} s)"
    print(RESULTS[n])


# ---------------------------------------------------------------- 1. application figure


def criterion_1():
    out = cli.demo_fig2()
    assert out == (GOLDEN / "demo_fig2.txt").read_text(), "demo fig2 differs from golden"
    trace = trace_application(check_text(cli.FIG1), [check_text(cli.SQUARE)], [3])
    rows = [(e.component, e.path, e.kind, e.payload)
            for e in trace.events if e.component != "A"]
    assert rows == FIG2_ROWS, rows
    hidden = [(m.path, m.kind, m.payload, j) for m, j in trace.external().events]
    assert hidden == [("c", "Q", None, None), ("d", "Q", None, 0),
                      ("d", "A", 3, 1), ("c", "A", 11, 0)], hidden
    return f"{len(trace)} interaction events, payloads 3->9->11, residual q q a(3) a(11)"


# ---------------------------------------------------------------- 2. parallel or


def criterion_2():
    exts = dom.definable_extensions(BBB, 8)
    assert LSOR in exts and RSOR in exts, "lsor/rsor missing"
    assert POR not in exts, "por was found definable"
    assert dom.as_table(dom.table_from_function(dom.lsor, 2)) == LSOR
    assert dom.as_table(dom.table_from_function(dom.rsor, 2)) == RSOR
    por_map = dom.table_from_function(dom.por, 2)
    assert dom.as_table(por_map) == POR
    d = dom.product_poset(dom.BOOL_BOT, dom.BOOL_BOT)
    monos = dom.enumerate_monotone(d, dom.BOOL_BOT)
    assert any(dom.same_map(m, por_map) for m in monos), "por not among monotone maps"
    return f"{len(exts)} definable extensions, lsor+rsor in, por out, por among {len(monos)} monotone maps"


# ---------------------------------------------------------------- 3. factorial fixpoint


def criterion_3():
    r = dom.lfp_iterate(dom.factorial_functional(6), dom.EMPTY_GRAPH, leq=dom.graph_leq)
    for k in range(8):
        assert r.trace[k].domain() == frozenset(range(k)), (k, r.trace[k].domain())
        assert all(r.trace[k](n) == math.factorial(n) for n in range(k))
    assert r.value(5) == 120
    fact = parse(cli.FACT)
    got = [evaluate(check(apply(fact, parse(str(n))))) for n in range(6)]
    assert got == [math.factorial(n) for n in range(6)] == [r.value(n) for n in range(6)], got
    return f"iterates 0..7 exact, stable after {r.steps} steps, fact 0..5 = {got}"


# ---------------------------------------------------------------- 4. continuity examples


def criterion_4():
    s = dom.stream_domain(3)
    chain = dom.zeros_chain(6)

    def chain_check(k):
        return dom.check_chain_continuity(dom.stream_example(k), chain, dom.ZEROS,
                                          dom.stream_leq, dom.BOOL_BOT)

    assert dom.is_monotone(dom.stream_example(1), s, dom.BOOL_BOT)
    assert chain_check(1)
    assert dom.is_monotone(dom.stream_example(2), s, dom.BOOL_BOT)
    c2 = chain_check(2)
    assert not c2 and c2.lub_of_images is BOTTOM and c2.image_of_lub is False
    pair = dom.FinitePoset(["0", "01"], dom.stream_leq)
    v3 = dom.is_monotone(dom.stream_example(3), pair, dom.BOOL_BOT)
    assert not v3 and tuple(v3.witness) == ("0", "01"), v3
    assert cli.demo_continuity() == (GOLDEN / "demo_continuity.txt").read_text()
    return "(1) mono+continuous, (2) mono, lub bot != ff, (3) non-monotone at (0, 01)"


# ---------------------------------------------------------------- 5. Myhill-Nerode


def criterion_5():
    d = cli._ends_in_a()
    assert nerode_minimize(d).n_states == 2
    rng = np.random.default_rng(0)
    mismatches = 0
    for _ in range(100):
        r = random_dfa(rng, int(rng.integers(1, 9)), 3)
        if not isomorphic(nerode_minimize(r), hopcroft_minimize(r)):
            mismatches += 1
    assert mismatches == 0, f"{mismatches} mismatches"
    return "(a|b)*a -> 2 states, 100 random DFAs, 0 mismatches"


# ---------------------------------------------------------------- 6, 7. category laws


DEPTH6 = 6


@lru_cache(maxsize=None)
def _laws():
    """Identity and associativity composites over the size-6 denotations at B and B->B."""
    closed = [lift_closed(denote(check(t)).strategy) for t in enumerate_normal_terms(B, 6)]
    unary = [denote(check(t)).strategy for t in enumerate_normal_terms(BB, 6)]
    violations, composites = [], []
    for s in closed + unary:
        p = plays_of(s, DEPTH6, ())
        a = arena_of_type(s.arena.shape.dom)
        c = arena_of_type(s.arena.shape.cod)
        left = compose(copycat(a), s, depth=DEPTH6, nat_payloads=())
        right = compose(s, copycat(c), depth=DEPTH6, nat_payloads=())
        composites += [left, right]
        if left != p or right != p:
            violations.append(("identity", s))
    triples = 0
    for s in closed + unary:
        for t in unary:
            for u in unary:
                lhs = compose(ComposedStrategy(s, t), u, depth=DEPTH6, nat_payloads=())
                rhs = compose(s, ComposedStrategy(t, u), depth=DEPTH6, nat_payloads=())
                composites += [lhs, rhs]
                triples += 1
                if lhs != rhs:
                    violations.append(("assoc", s, t, u))
    return len(closed) + len(unary), triples, violations, composites


def criterion_6():
    n, triples, violations, _ = _laws()
    assert not violations, f"{len(violations)} violations, first {violations[0][0]}"
    return f"{n} denotations, {2 * n} identity checks, {triples} associativity triples, 0 violations"


def criterion_7():
    *_, composites = _laws()
    bad = sum(1 for pi in composites if not (is_innocent(pi) and all_well_bracketed(pi)))
    assert bad == 0, f"{bad} composites fail innocence or bracketing"
    return f"{len(composites)} composites innocent and well-bracketed"


# ---------------------------------------------------------------- 8. definability


def criterion_8():
    n, failures = 0, []
    for ty in (BB, BBB, BB_B):
        for t in enumerate_normal_terms(ty, 6):
            sigma = denote(check(t)).strategy
            back = extract_term(sigma, ty)
            n += 1
            if plays_of(sigma, 8, ()) != plays_of(denote(check(back)).strategy, 8, ()):
                failures.append((show(t), show(back)))
    assert not failures, f"{len(failures)} failures, first {failures[0]}"
    return f"{n} terms round-tripped, 0 failures"


# ---------------------------------------------------------------- 9. intensional fineness


def criterion_9():
    ident = check_text(r"\x:B. x")
    twice = check_text(r"\x:B. cond x (cond x tt ff) (cond x tt ff)")
    assert dom.extension_of(ident) == dom.extension_of(twice)
    v = term_equiv(ident, twice)
    assert not v and v.witness is not None, "identity and double interrogation not told apart"
    n, anomalies = 0, []
    for ty in (B, BB, BBB, BB_B):
        for t in enumerate_redex_terms(ty, 8, [B, BB]):
            n += 1
            if not term_equiv(check(t), check(beta_normalize(t))):
                anomalies.append(show(t))
    assert not anomalies, f"{len(anomalies)} anomalies, first {anomalies[0]}"
    return f"x vs double interrogation distinct with equal extensions; {n} beta pairs equal, 0 anomalies"


CRITERIA = {1: (criterion_1, 1.0), 2: (criterion_2, 60.0), 3: (criterion_3, 1.0),
            4: (criterion_4, None), 5: (criterion_5, 5.0), 6: (criterion_6, None),
            7: (criterion_7, None), 8: (criterion_8, 120.0), 9: (criterion_9, None)}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    fn, limit = CRITERIA[n]
    _record(n, fn, limit)


if __name__ == "__main__":
    failed = 0
    for n in sorted(CRITERIA):
        try:
            _record(n, *CRITERIA[n])
        except Exception:
            failed += 1
    sys.exit(1 if failed else 0)

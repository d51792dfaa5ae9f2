import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamesem.automata import (
    canonical, equivalent, from_playset, from_words, hopcroft_minimize, isomorphic, make_dfa,
    nerode_minimize, random_dfa, term_equiv, with_alphabet,
)
from gamesem.automata.dfa import needs_pointers, play_word, symbol_key
from gamesem.domains import extension_of
from gamesem.interpreter import denote
from gamesem.plays import is_complete
from gamesem.strategy import plays_of
from gamesem.syntax import check, check_text, enumerate_normal_terms, parse_type


def _words(alphabet, n):
    for k in range(n + 1):
        yield from itertools.product(alphabet, repeat=k)


def _residual_count(d, n):
    """Distinct residual languages of reachable states, seen through words up to length n."""
    probes = list(_words(d.alphabet, n))
    sigs = set()
    for u in _words(d.alphabet, n):
        sigs.add(tuple(d.accepts(u + v) for v in probes))
    return len(sigs)


@st.composite
def dfas(draw, max_states=8, symbols=3):
    n = draw(st.integers(1, max_states))
    trans = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=symbols, max_size=symbols),
                          min_size=n, max_size=n))
    accept = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    return make_dfa("abc"[:symbols], trans, 0, accept)


def test_ends_in_a():
    d = make_dfa("ab", [[1, 0], [2, 3], [2, 3], [1, 0]], 0, [False, True, True, False])
    m = nerode_minimize(d)
    assert m.n_states == 2
    for w in _words("ab", 6):
        assert m.accepts(w) == (len(w) > 0 and w[-1] == "a")


@settings(max_examples=150, deadline=None)
@given(dfas(max_states=5, symbols=2))
def test_minimal_size_is_the_residual_count(d):
    m = nerode_minimize(d)
    assert m.n_states == _residual_count(d, d.n_states)
    for w in _words(d.alphabet, 6):
        assert m.accepts(w) == d.accepts(w)


@settings(max_examples=200, deadline=None)
@given(dfas())
def test_minimizers_agree(d):
    m, h = nerode_minimize(d), hopcroft_minimize(d)
    assert m.n_states == h.n_states
    assert isomorphic(m, h)
    assert equivalent(d, m)


def test_random_dfa_batch():
    rng = np.random.default_rng(7)
    for _ in range(300):
        d = random_dfa(rng, int(rng.integers(1, 9)), 3)
        assert isomorphic(nerode_minimize(d), hopcroft_minimize(d))


def _least_counterexample(d1, d2, n):
    alphabet = sorted(set(d1.alphabet) | set(d2.alphabet), key=symbol_key)
    for k in range(n + 1):
        for w in itertools.product(alphabet, repeat=k):
            if d1.accepts(w) != d2.accepts(w):
                return w
    return None


@settings(max_examples=300, deadline=None)
@given(dfas(max_states=3, symbols=2), dfas(max_states=3, symbols=2))
def test_equivalence_against_brute_force(d1, d2):
    eq = equivalent(d1, d2)
    brute = _least_counterexample(d1, d2, d1.n_states * d2.n_states)
    assert eq.equal == (brute is None)
    if brute is not None:
        assert eq.counterexample == brute
        assert (d1 if eq.accepted_by == 1 else d2).accepts(brute)


def test_equivalence_over_different_alphabets():
    d1 = from_words([("a",)])
    d2 = from_words([("a",), ("b",)])
    eq = equivalent(d1, d2)
    assert not eq and eq.counterexample == ("b",) and eq.accepted_by == 2


def test_symbol_order():
    syms = ["b", "A[10]", "a", "A[ff]", "A[9]", "A[tt]"]
    assert sorted(syms, key=symbol_key) == ["A[tt]", "A[ff]", "A[9]", "A[10]", "a", "b"]
    tt_vs_ff = equivalent(from_words([("q", "A[tt]")]), from_words([("q", "A[ff]")]))
    assert tt_vs_ff.counterexample == ("q", "A[tt]")


def test_canonical_and_alphabet_extension():
    d = from_words([("a", "b"), ("b",)])
    c = canonical(d)
    assert c.start == 0 and isomorphic(c, d)
    e = with_alphabet(d, ("a", "b", "c"))
    assert not e.accepts(("c",)) and e.accepts(("b",))
    with pytest.raises(ValueError):
        with_alphabet(d, ("a",))


def test_json_and_dot():
    d = nerode_minimize(from_words([("a",), ("a", "a")]))
    data = json.loads(d.to_json())
    assert set(data) == {"states", "start", "alphabet", "transitions", "accepting"}
    assert data["states"] == d.n_states and len(data["transitions"]) == d.n_states
    dot = d.to_dot()
    assert dot.startswith("digraph dfa {") and "doublecircle" in dot


def _language_size(d):
    """Number of accepted words; the language must be finite."""
    live = {s for s in range(d.n_states) if _reaches_accept(d, s)}
    memo = {}

    def count(s, depth=0):
        assert depth <= d.n_states, "language is infinite"
        if s not in memo:
            memo[s] = int(d.accept[s]) + sum(count(int(t), depth + 1) for t in d.trans[s] if int(t) in live)
        return memo[s]
    return count(d.start) if d.start in live else 0


def _reaches_accept(d, s):
    seen, stack = set(), [s]
    while stack:
        x = stack.pop()
        if d.accept[x]:
            return True
        if x not in seen:
            seen.add(x)
            stack.extend(int(t) for t in d.trans[x])
    return False


CORPUS = [check(t) for ty in ("B->B", "B->B->B")
          for t in enumerate_normal_terms(parse_type(ty), 6)]


@pytest.mark.parametrize("text", [r"\a:B. \b:B. cond a tt b", r"\f:B->B. f (f tt)",
                                  r"\f:N->N. \x:N. add (f x) 2"])
def test_playset_language_roundtrip(text):
    t = check_text(text)
    pi = plays_of(denote(t).strategy, 6)
    d = from_playset(pi)
    complete = [s for s in pi.plays if is_complete(s)]
    pointers = needs_pointers(complete)
    for s in pi.plays:
        assert d.accepts(play_word(s, pointers)) == is_complete(s)
    # and no other words
    assert _language_size(d) == len(complete)


def test_all_plays_language():
    pi = plays_of(denote(check_text(r"\x:B. x")).strategy, 4)
    d = from_playset(pi, complete_only=False)
    assert all(d.accepts(play_word(s, False)) for s in pi.plays)


def test_pointers_separate_plays_with_equal_moves():
    a = check_text(r"\F:(B->B)->B. F (\x:B. F (\y:B. x))")
    b = check_text(r"\F:(B->B)->B. F (\x:B. F (\y:B. y))")
    v = term_equiv(a, b)
    assert not v and v.witness is not None
    pa = plays_of(denote(a).strategy, 8, ()).complete_plays()
    pb = plays_of(denote(b).strategy, 8, ()).complete_plays()
    assert needs_pointers(pa, pb) and not needs_pointers(pa)


def test_term_equiv_is_an_equivalence():
    sample = CORPUS[::3]
    rel = {(i, j): bool(term_equiv(sample[i], sample[j]))
           for i in range(len(sample)) for j in range(len(sample))
           if sample[i].type == sample[j].type}
    for (i, j), eq in rel.items():
        assert rel[(i, i)]
        assert rel[(j, i)] == eq
        if eq:
            for k in range(len(sample)):
                if (j, k) in rel and rel[(j, k)]:
                    assert rel[(i, k)]


def test_intensional_implies_extensional():
    for ty in ("B->B", "B->B->B"):
        terms = [t for t in CORPUS if t.type == parse_type(ty)]
        assert terms
        for a, b in itertools.combinations(terms, 2):
            if term_equiv(a, b):
                assert extension_of(a) == extension_of(b)


def test_term_equiv_rejects_mismatched_types():
    with pytest.raises(ValueError):
        term_equiv(check_text(r"\x:B. x"), check_text(r"\x:B. \y:B. x"))

"""Deterministic automata over move symbols, and strategies as their languages."""
from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from ..arena import render_kind
from ..plays import JustifiedPlay, format_trace, is_complete, oview_indices, pview_indices
from . import _kernels


@dataclass(frozen=True, eq=False)
class Dfa:
    """Total DFA: ``trans[state, symbol]``; state numbering is arbitrary unless canonical."""
    alphabet: tuple[str, ...]
    trans: np.ndarray           # int64, shape (states, symbols)
    start: int
    accept: np.ndarray          # bool, shape (states,)

    @property
    def n_states(self) -> int:
        return self.trans.shape[0]

    def index(self, symbol: str) -> Optional[int]:
        try:
            return self.alphabet.index(symbol)
        except ValueError:
            return None

    def accepts(self, word: Sequence[str]) -> bool:
        s = self.start
        for a in word:
            i = self.index(a)
            if i is None:
                return False
            s = self.trans[s, i]
        return bool(self.accept[s])

    def to_json(self) -> str:
        rows = [[int(s), self.alphabet[a], int(self.trans[s, a])]
                for s in range(self.n_states) for a in range(len(self.alphabet))]
        return json.dumps({"states": self.n_states, "start": self.start,
                           "alphabet": list(self.alphabet), "transitions": rows,
                           "accepting": [int(s) for s in np.flatnonzero(self.accept)]},
                          indent=2) + "\n"

    def to_dot(self, hide_sink: bool = True) -> str:
        sinks = set(_sinks(self)) if hide_sink else set()
        lines = ["digraph dfa {", "  rankdir=LR;", '  init [shape=point];',
                 f"  init -> s{self.start};"]
        for s in range(self.n_states):
            if s in sinks:
                continue
            shape = "doublecircle" if self.accept[s] else "circle"
            lines.append(f"  s{s} [shape={shape}];")
        for s in range(self.n_states):
            for a, sym in enumerate(self.alphabet):
                t = int(self.trans[s, a])
                if s not in sinks and t not in sinks:
                    lines.append(f'  s{s} -> s{t} [label="{sym}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _sinks(d: Dfa) -> list[int]:
    return [s for s in range(d.n_states)
            if not d.accept[s] and all(d.trans[s, a] == s for a in range(len(d.alphabet)))]


_PAYLOAD = re.compile(r"\[(tt|ff|\d+)\]")


def symbol_key(symbol: str):
    """Sort key for symbols: tt before ff, numerals by value, otherwise by text."""
    def rank(m):
        p = m.group(1)
        if p == "tt":
            return "[0]"
        if p == "ff":
            return "[1]"
        return f"[2{len(p):04d}{p}]"
    return _PAYLOAD.sub(rank, symbol)


def make_dfa(alphabet: Sequence[str], trans, start: int, accept) -> Dfa:
    return Dfa(tuple(alphabet), np.asarray(trans, dtype=np.int64).reshape(len(accept), len(alphabet)),
               int(start), np.asarray(accept, dtype=np.bool_))


def from_words(words: Iterable[Sequence[str]], alphabet: Optional[Sequence[str]] = None) -> Dfa:
    """Trie of a finite language, completed by a sink; not minimised."""
    words = [tuple(w) for w in words]
    symbols = (tuple(alphabet) if alphabet is not None
               else tuple(sorted({a for w in words for a in w}, key=symbol_key)))
    where = {a: i for i, a in enumerate(symbols)}
    rows: list[list[int]] = [[-1] * len(symbols)]
    accept = [False]
    for w in words:
        s = 0
        for a in w:
            i = where[a]
            if rows[s][i] == -1:
                rows[s][i] = len(rows)
                rows.append([-1] * len(symbols))
                accept.append(False)
            s = rows[s][i]
        accept[s] = True
    sink = len(rows)
    rows.append([sink] * len(symbols))
    accept.append(False)
    trans = [[sink if t == -1 else t for t in r] for r in rows]
    return make_dfa(symbols, trans, 0, accept)


# ---------------------------------------------------------------- minimisation


def canonical(d: Dfa) -> Dfa:
    """Reachable part renumbered in breadth-first order from the start."""
    order = {d.start: 0}
    queue = deque([d.start])
    while queue:
        s = queue.popleft()
        for a in range(len(d.alphabet)):
            t = int(d.trans[s, a])
            if t not in order:
                order[t] = len(order)
                queue.append(t)
    old = sorted(order, key=order.get)
    trans = np.array([[order[int(d.trans[s, a])] for a in range(len(d.alphabet))] for s in old],
                     dtype=np.int64).reshape(len(old), len(d.alphabet))
    return Dfa(d.alphabet, trans, 0, d.accept[old].copy())


def nerode_minimize(d: Dfa) -> Dfa:
    """Quotient of the reachable part by the Nerode congruence (Moore refinement)."""
    keep = np.flatnonzero(_kernels.reachable(d.trans, d.start))
    renum = np.full(d.n_states, -1, dtype=np.int64)
    renum[keep] = np.arange(keep.size)
    trans = renum[d.trans[keep]]
    accept = d.accept[keep]
    cls = _kernels.refine(np.ascontiguousarray(trans), np.ascontiguousarray(accept))
    n = int(cls.max()) + 1
    rep = np.zeros(n, dtype=np.int64)
    rep[cls[::-1]] = np.arange(keep.size)[::-1]       # first state of each class
    q = Dfa(d.alphabet, cls[trans[rep]], int(cls[renum[d.start]]), accept[rep])
    return canonical(q)


def hopcroft_minimize(d: Dfa) -> Dfa:
    """Partition refinement with a splitter worklist; independent of ``nerode_minimize``."""
    k = len(d.alphabet)
    reach = set()
    stack = [d.start]
    while stack:
        s = stack.pop()
        if s in reach:
            continue
        reach.add(s)
        stack.extend(int(d.trans[s, a]) for a in range(k))
    pre = {(t, a): set() for t in reach for a in range(k)}
    for s in reach:
        for a in range(k):
            pre[(int(d.trans[s, a]), a)].add(s)
    acc = frozenset(s for s in reach if d.accept[s])
    rej = frozenset(reach - acc)
    parts = [p for p in (acc, rej) if p]
    work = [min(parts, key=len)] if len(parts) == 2 else []
    while work:
        splitter = work.pop()
        for a in range(k):
            x = set()
            for t in splitter:
                x |= pre[(t, a)]
            refined = []
            for y in parts:
                inside, outside = y & x, y - x
                if inside and outside:
                    refined += [frozenset(inside), frozenset(outside)]
                    if y in work:
                        work.remove(y)
                        work += [frozenset(inside), frozenset(outside)]
                    else:
                        work.append(frozenset(min(inside, outside, key=len)))
                else:
                    refined.append(y)
            parts = refined
    block = {s: i for i, p in enumerate(parts) for s in p}
    trans = [[block[int(d.trans[next(iter(p)), a])] for a in range(k)] for p in parts]
    accept = [bool(d.accept[next(iter(p))]) for p in parts]
    return canonical(make_dfa(d.alphabet, trans, block[d.start], accept))


def isomorphic(d1: Dfa, d2: Dfa) -> bool:
    """Equal up to renaming of states (compares canonical forms over a shared alphabet)."""
    if set(d1.alphabet) != set(d2.alphabet):
        return False
    d2 = with_alphabet(d2, d1.alphabet)
    c1, c2 = canonical(d1), canonical(d2)
    return (c1.trans.shape == c2.trans.shape and bool((c1.trans == c2.trans).all())
            and bool((c1.accept == c2.accept).all()))


def with_alphabet(d: Dfa, alphabet: Sequence[str]) -> Dfa:
    """Reindex onto ``alphabet`` (a superset); new symbols lead to a fresh sink."""
    alphabet = tuple(alphabet)
    missing = set(d.alphabet) - set(alphabet)
    if missing:
        raise ValueError(f"symbols {sorted(missing)} are not in the target alphabet")
    sink = d.n_states
    trans = np.full((d.n_states + 1, len(alphabet)), sink, dtype=np.int64)
    for j, a in enumerate(alphabet):
        i = d.index(a)
        if i is not None:
            trans[:sink, j] = d.trans[:, i]
    accept = np.append(d.accept, False)
    return Dfa(alphabet, trans, d.start, accept)


# ---------------------------------------------------------------- equivalence


@dataclass(frozen=True)
class Equivalence:
    equal: bool
    counterexample: Optional[tuple[str, ...]] = None
    accepted_by: Optional[int] = None     # 1 or 2: which automaton accepts the counterexample

    def __bool__(self) -> bool:
        return self.equal


def equivalent(d1: Dfa, d2: Dfa) -> Equivalence:
    """Language equality over the union alphabet, with a least shortest counterexample."""
    alphabet = tuple(sorted(set(d1.alphabet) | set(d2.alphabet), key=symbol_key))
    e1, e2 = with_alphabet(d1, alphabet), with_alphabet(d2, alphabet)
    parent, via, hit = _kernels.product_bfs(e1.trans, e1.accept, e1.start,
                                            e2.trans, e2.accept, e2.start)
    if hit < 0:
        return Equivalence(True)
    word = []
    x = int(hit)
    while parent[x] != x:
        word.append(alphabet[via[x]])
        x = int(parent[x])
    n2 = e2.n_states
    return Equivalence(False, tuple(reversed(word)), 1 if e1.accept[hit // n2] else 2)


def random_dfa(rng: np.random.Generator, n_states: int, n_symbols: int) -> Dfa:
    alphabet = tuple("abcdefghijklmnopqrstuvwxyz"[:n_symbols])
    trans = rng.integers(0, n_states, size=(n_states, n_symbols))
    accept = rng.random(n_states) < 0.5
    return make_dfa(alphabet, trans, 0, accept)


# ---------------------------------------------------------------- plays as words


def move_symbol(m) -> str:
    return f"{m.polarity}{render_kind(m.kind, m.payload)}@{m.path or '.'}"


def pointer_distance(s: JustifiedPlay, i: int) -> int:
    """How far back in the mover's view event i's justifier sits (0 for initial moves)."""
    m, j = s.events[i]
    if j is None:
        return 0
    views = pview_indices(s.events) if m.polarity == "P" else oview_indices(s.events)
    view = views[i - 1]
    return len(view) - view.index(j)


def play_word(s: JustifiedPlay, pointers: bool) -> tuple[str, ...]:
    if not pointers:
        return tuple(move_symbol(m) for m, _ in s.events)
    return tuple(f"{move_symbol(m)}^{pointer_distance(s, i)}" for i, (m, _) in enumerate(s.events))


def needs_pointers(*play_sets: Iterable[JustifiedPlay]) -> bool:
    """Pointers must be kept when two distinct plays share a move sequence."""
    seen: dict = {}
    for plays in play_sets:
        for s in plays:
            key = tuple(m for m, _ in s.events)
            if seen.setdefault(key, s) != s:
                return True
    return False


def language(plays: Iterable[JustifiedPlay], complete_only: bool = True) -> list[JustifiedPlay]:
    return [s for s in plays if not complete_only or is_complete(s)]


def from_playset(pi, complete_only: bool = True, pointers: Optional[bool] = None) -> Dfa:
    """Minimal DFA for the plays of ``pi`` (complete ones by default)."""
    if getattr(pi, "plays", None) is None:
        raise ValueError("from_playset needs a finite play set; saturate with plays_of(sigma, depth)")
    plays = language(pi.plays, complete_only)
    if pointers is None:
        pointers = needs_pointers(plays)
    return nerode_minimize(from_words(play_word(s, pointers) for s in plays))


def word_to_play(word: Sequence[str], candidates: Iterable[JustifiedPlay], pointers: bool) -> Optional[JustifiedPlay]:
    for s in candidates:
        if play_word(s, pointers) == tuple(word):
            return s
    return None


def render_word(word: Sequence[str], plays: Iterable[JustifiedPlay], pointers: bool) -> str:
    s = word_to_play(word, plays, pointers)
    if s is None:
        return " ".join(word) + "\n"
    return format_trace(s)

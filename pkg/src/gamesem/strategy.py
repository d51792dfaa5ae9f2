"""Strategies: innocent view functions and prefix-closed play sets."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .arena import ANSWER, O, P, QUESTION, Arena, Move, arrow, question
from .plays import (
    Event, JustifiedPlay, PlayState, Verdict, format_event, is_legal, is_well_bracketed,
    parse_event, parse_trace, pview_indices, restrict,
)

Response = tuple[Move, int]


class IllegalPlay(ValueError):
    pass


class FuelExhausted(RuntimeError):
    """A computation ran out of fuel; distinct from a strategy having no move."""


class Strategy:
    """Anything that answers P-views.  Subclasses implement ``respond_view``."""

    arena: Arena

    def respond_view(self, view: JustifiedPlay) -> Optional[Response]:
        raise NotImplementedError

    def nat_payloads(self) -> frozenset[int]:
        """Numerals the strategy itself mentions."""
        return frozenset()

    def respond(self, s: JustifiedPlay) -> Optional[Response]:
        """P's next move after the odd-length legal play ``s``, pointer into ``s``."""
        if len(s) % 2 == 0:
            raise IllegalPlay("respond needs an odd-length play (O to have just moved)")
        verdict = is_legal(self.arena, s)
        if not verdict:
            raise IllegalPlay(str(verdict))
        idx = pview_indices(s.events)[-1]
        r = self.respond_view(restrict(s.events, idx))
        if r is None:
            return None
        move, k = r
        return move, idx[k]


class ViewFunctionStrategy(Strategy):
    """An innocent strategy given by a finite table, a rule, or both (table first).

    Table keys are P-views (odd length, ending in an O-move); values are the
    P-move and its justifier as an index into the view.  Rule results are cached.
    """

    def __init__(self, arena: Arena, table: Optional[dict] = None,
                 rule: Optional[Callable[[JustifiedPlay], Optional[Response]]] = None,
                 payloads: Iterable[int] = ()):
        self.arena = arena
        self.table = dict(table or {})
        self.rule = rule
        self._payloads = frozenset(payloads)
        self._cache: dict = {}

    def respond_view(self, view: JustifiedPlay) -> Optional[Response]:
        if view in self.table:
            return self.table[view]
        if self.rule is None:
            return None
        try:
            return self._cache[view]
        except KeyError:
            r = self._cache[view] = self.rule(view)
            return r

    def nat_payloads(self) -> frozenset[int]:
        found = set(self._payloads)
        for view, (m, _) in self.table.items():
            for e in view.events + (Event(m, None),):
                if e.move.kind == ANSWER and not isinstance(e.move.payload, bool):
                    found.add(e.move.payload)
        return frozenset(found)

    def validate(self) -> Verdict:
        """Every table entry extends its view legally and well-bracketedly."""
        for view, (m, k) in self.table.items():
            if len(view) % 2 == 0 or view.events[-1].move.polarity != O:
                return Verdict(False, None, f"key is not an odd view:\n{view}")
            ext = view.extend(m, k)
            for check in (is_legal(self.arena, ext), is_well_bracketed(ext)):
                if not check:
                    return Verdict(False, len(view), f"{check.reason}\n{ext}")
        return Verdict(True)

    def to_json(self) -> str:
        rows = [{"view": "".join(format_event(i, e) + "\n" for i, e in enumerate(v.events)),
                 "response": format_event(len(v), Event(m, k))}
                for v, (m, k) in sorted(self.table.items(), key=lambda kv: _view_key(kv[0]))]
        return json.dumps(rows, indent=2) + "\n"

    @classmethod
    def from_json(cls, arena: Arena, text: str) -> "ViewFunctionStrategy":
        table = {}
        for row in json.loads(text):
            view = parse_trace(row["view"])
            idx, ev = parse_event(row["response"])
            if idx != len(view):
                raise ValueError(f"response index {idx} does not follow its view")
            if ev.justifier is None:
                raise ValueError("a response needs a justifier")
            table[view] = (ev.move, ev.justifier)
        return cls(arena, table)


def _view_key(v: JustifiedPlay):
    return (len(v), [(e.move.path, e.move.kind, str(e.move.payload), e.justifier or -1)
                     for e in v.events])


@dataclass
class PlaySetStrategy(Strategy):
    """A strategy as its set of even-length plays, saturated to ``depth`` O-moves."""
    arena: Arena
    plays: frozenset
    depth: Optional[int] = None
    payloads: tuple = ()
    _index: Optional[dict] = field(default=None, repr=False, compare=False)

    def __eq__(self, other):
        return isinstance(other, PlaySetStrategy) and self.plays == other.plays

    def __len__(self) -> int:
        return len(self.plays)

    def nat_payloads(self) -> frozenset[int]:
        return frozenset(self.payloads)

    def _views(self) -> dict:
        if self._index is None:
            index = {}
            for s in self.plays:
                if len(s) < 2:
                    continue
                pv = pview_indices(s.events)
                key = restrict(s.events, pv[-2])
                m, j = s.events[-1]
                where = {k: n for n, k in enumerate(pv[-2])}
                index.setdefault(key, (m, where.get(j)))
            self._index = index
        return self._index

    def respond_view(self, view: JustifiedPlay) -> Optional[Response]:
        return self._views().get(view)

    def respond(self, s: JustifiedPlay) -> Optional[Response]:
        if len(s) % 2 == 0:
            raise IllegalPlay("respond needs an odd-length play")
        for t in self.plays:
            if len(t) == len(s) + 1 and t.events[:-1] == s.events:
                return t.events[-1]
        return None

    def is_prefix_closed(self) -> bool:
        return all(JustifiedPlay(s.events[:n]) in self.plays
                   for s in self.plays for n in range(0, len(s), 2))

    def is_deterministic(self) -> Verdict:
        seen: dict = {}
        for s in self.plays:
            if not s.events:
                continue
            key = s.events[:-1]
            if seen.setdefault(key, s.events[-1]) != s.events[-1]:
                return Verdict(False, len(s) - 1, "two responses to the same odd play")
        return Verdict(True)

    def complete_plays(self) -> frozenset:
        from .plays import is_complete
        return frozenset(s for s in self.plays if is_complete(s))


@dataclass(frozen=True)
class InnocenceVerdict:
    ok: bool
    witness: Optional[tuple[JustifiedPlay, JustifiedPlay]] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_innocent(pi: PlaySetStrategy) -> InnocenceVerdict:
    """Equal P-views of odd prefixes must receive equal responses.

    When the play set records its saturation depth, a view answered after one
    history must also be answered after every other history (within depth).
    """
    by_view: dict = {}
    for s in sorted(pi.plays, key=len):
        if len(s) < 2:
            continue
        pv = pview_indices(s.events)
        idx = pv[-2]
        key = restrict(s.events, idx)
        m, j = s.events[-1]
        where = {k: n for n, k in enumerate(idx)}
        if j not in where:
            return InnocenceVerdict(False, (s, s), "response points outside the P-view")
        resp = (m, where[j])
        if key in by_view and by_view[key][0] != resp:
            return InnocenceVerdict(False, (by_view[key][1], s),
                                    "same P-view, different responses")
        by_view.setdefault(key, (resp, s))
    if pi.depth is None:
        return InnocenceVerdict(True)
    for s in pi.plays:
        if len(s) >= 2 * pi.depth or len(s) % 2:
            continue
        st = PlayState.of(s)
        for o, j in st.o_moves(pi.arena, pi.payloads):
            nxt = st.extend(o, j)
            key = nxt.pview()
            if key in by_view:
                (m, k), other = by_view[key]
                t = nxt.play().extend(m, nxt.pviews[-1][k])
                if t not in pi.plays:
                    return InnocenceVerdict(False, (other, t),
                                            "view answered after one history but not another")
    return InnocenceVerdict(True)


def all_well_bracketed(pi: PlaySetStrategy) -> Verdict:
    for s in pi.plays:
        v = is_well_bracketed(s)
        if not v:
            return Verdict(False, v.index, f"{v.reason}\n{s}")
    return Verdict(True)


# ---------------------------------------------------------------- saturation


def default_payloads(sigma: Strategy) -> tuple[int, ...]:
    """Payloads the strategy mentions plus one fresh witness above them."""
    seen = sorted(sigma.nat_payloads())
    return tuple(seen) + ((seen[-1] + 1) if seen else 0,)


def plays_of(sigma: Strategy, depth: int, nat_payloads: Optional[Iterable[int]] = None) -> PlaySetStrategy:
    """All even plays with at most ``depth`` O-moves, O playing every legal
    well-bracketed move (N answers drawn from ``nat_payloads``) and P following sigma."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    payloads = tuple(nat_payloads) if nat_payloads is not None else default_payloads(sigma)
    arena = sigma.arena
    found = {JustifiedPlay()}
    frontier = [PlayState()]
    for _ in range(depth):
        nxt_frontier = []
        for st in frontier:
            for o, j in st.o_moves(arena, payloads):
                odd = st.extend(o, j)
                r = sigma.respond_view(odd.pview())
                if r is None:
                    continue
                m, k = r
                even = odd.extend(m, odd.pviews[-1][k])
                found.add(even.play())
                nxt_frontier.append(even)
        frontier = nxt_frontier
    return PlaySetStrategy(arena, frozenset(found), depth, payloads)


def view_table(sigma: Strategy, nat_payloads: Optional[Iterable[int]] = None,
               max_len: int = 64) -> ViewFunctionStrategy:
    """Materialise every reachable P-view of an innocent strategy into a table.

    Raises ValueError when some view exceeds ``max_len`` (the strategy is not compact).
    """
    payloads = tuple(nat_payloads) if nat_payloads is not None else default_payloads(sigma)
    arena = sigma.arena
    table: dict = {}
    stack = [JustifiedPlay((Event(question(p), None),)) for p in sorted(arena.initial)]
    while stack:
        view = stack.pop()
        if len(view) > max_len:
            raise ValueError(f"views longer than {max_len}; strategy is not compact")
        r = sigma.respond_view(view)
        if r is None:
            continue
        table[view] = r
        m, k = r
        ext = view.extend(m, k)
        last = len(view)
        if m.kind != QUESTION:
            continue
        for a in arena.answers(m.path, payloads):
            stack.append(ext.extend(a, last))
        for q in arena.enabled_questions(m.path):
            stack.append(ext.extend(question(q), last))
    return ViewFunctionStrategy(arena, table)


# ---------------------------------------------------------------- copycat


def _mirror(path: str) -> str:
    return ("c" if path[0] == "d" else "d") + path[1:]


def _copycat_rule(view: JustifiedPlay) -> Optional[Response]:
    last, j = view.events[-1]
    move = Move(_mirror(last.path), P, last.kind, last.payload)
    if j is None:
        return move, len(view) - 1
    if j < 1:
        return None
    return move, j - 1


def copycat(a: Arena) -> ViewFunctionStrategy:
    """The identity on ``a``: each O-move is echoed into the other copy."""
    return ViewFunctionStrategy(arrow(a, a), rule=_copycat_rule)


def empty_strategy(a: Arena) -> ViewFunctionStrategy:
    return ViewFunctionStrategy(a, {})


class Relabelled(Strategy):
    """A strategy moved onto another arena by a path prefix (e.g. ``T`` as ``1 => T``)."""

    def __init__(self, inner: Strategy, arena: Arena, prefix: str):
        self.inner = inner
        self.arena = arena
        self.prefix = prefix

    def nat_payloads(self):
        return self.inner.nat_payloads()

    def respond_view(self, view):
        n = len(self.prefix)
        events = []
        for m, j in view.events:
            if not m.path.startswith(self.prefix):
                return None
            events.append(Event(Move(m.path[n:], m.polarity, m.kind, m.payload), j))
        r = self.inner.respond_view(JustifiedPlay(tuple(events)))
        if r is None:
            return None
        m, k = r
        return Move(self.prefix + m.path, m.polarity, m.kind, m.payload), k


def lift_closed(sigma: Strategy) -> Relabelled:
    """View a strategy on ``T`` as a morphism ``1 => T``."""
    from .arena import unit_arena
    return Relabelled(sigma, arrow(unit_arena(), sigma.arena), "c")

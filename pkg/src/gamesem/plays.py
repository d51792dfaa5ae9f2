"""Justified sequences: legality, views, well-bracketing and the trace format.

Trace format, one event per line::

    <idx> <O|P> <Q|A[payload]> @<path> ^<justifier-idx|->

The root path is written ``@.``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .arena import ANSWER, O, P, QUESTION, Arena, Move, polarity_of, question, render_kind


class Event(NamedTuple):
    move: Move
    justifier: Optional[int]


@dataclass(frozen=True)
class JustifiedPlay:
    events: tuple[Event, ...] = ()

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return JustifiedPlay(self.events[i])
        return self.events[i]

    def extend(self, move: Move, justifier: Optional[int]) -> "JustifiedPlay":
        return JustifiedPlay(self.events + (Event(move, justifier),))

    def prefixes(self) -> Iterable["JustifiedPlay"]:
        for i in range(len(self.events) + 1):
            yield JustifiedPlay(self.events[:i])

    def moves(self) -> list[Move]:
        return [e.move for e in self.events]

    def __str__(self) -> str:
        return format_trace(self)


def play(*events) -> JustifiedPlay:
    """Build a play from ``(move, justifier)`` pairs."""
    return JustifiedPlay(tuple(Event(m, j) for m, j in events))


# ---------------------------------------------------------------- views


def pview_indices(events: Sequence[Event]) -> list[tuple[int, ...]]:
    """P-view of every prefix: entry i holds the indices of the view of ``events[:i+1]``."""
    views: list[tuple[int, ...]] = []
    for i, (m, j) in enumerate(events):
        if m.polarity == P:
            views.append((views[i - 1] if i else ()) + (i,))
        elif j is None:
            views.append((i,))
        else:
            views.append(views[j] + (i,))
    return views


def oview_indices(events: Sequence[Event]) -> list[tuple[int, ...]]:
    views: list[tuple[int, ...]] = []
    for i, (m, j) in enumerate(events):
        if m.polarity == O:
            views.append((views[i - 1] if i else ()) + (i,))
        elif j is None:
            views.append((i,))
        else:
            views.append(views[j] + (i,))
    return views


def restrict(events: Sequence[Event], indices: Sequence[int]) -> JustifiedPlay:
    """The subsequence at ``indices`` with pointers re-indexed; pointers leaving it become None."""
    where = {k: n for n, k in enumerate(indices)}
    return JustifiedPlay(tuple(
        Event(events[k].move, where.get(events[k].justifier)) for k in indices))


def pview(s: JustifiedPlay) -> JustifiedPlay:
    if not s.events:
        return s
    idx = pview_indices(s.events)[-1]
    view = restrict(s.events, idx)
    for n, k in enumerate(idx):
        if s.events[k].justifier is not None and view.events[n].justifier is None:
            raise ValueError(f"move {k} points outside the P-view; play is not legal")
    return view


def oview(s: JustifiedPlay) -> JustifiedPlay:
    if not s.events:
        return s
    return restrict(s.events, oview_indices(s.events)[-1])


# ---------------------------------------------------------------- legality


@dataclass(frozen=True)
class Verdict:
    ok: bool
    index: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else f"violation at {self.index}: {self.reason}"


def is_legal(arena: Arena, s: JustifiedPlay, well_opened: bool = True) -> Verdict:
    """Alternation, justification, single answers and visibility.

    With ``well_opened`` only index 0 may be initial; otherwise further initial
    O-questions may open new threads (as in projections of an interaction).
    """
    events = s.events
    answered: set[int] = set()
    pv = pview_indices(events)
    ov = oview_indices(events)
    for i, (m, j) in enumerate(events):
        if not arena.is_move(m):
            return Verdict(False, i, f"{m} is not a move of the arena")
        expected = O if i % 2 == 0 else P
        if m.polarity != expected:
            return Verdict(False, i, f"alternation: expected an {expected}-move")
        if j is None:
            if not arena.is_initial(m):
                return Verdict(False, i, "non-initial move without a justifier")
            if i > 0 and well_opened:
                return Verdict(False, i, "second initial move in a well-opened play")
            continue
        if arena.is_initial(m) and m.polarity == O and well_opened:
            return Verdict(False, i, "initial move with a justifier")
        if not 0 <= j < i:
            return Verdict(False, i, f"justifier {j} is not an earlier move")
        if not arena.enables(events[j].move, m):
            return Verdict(False, i, f"move {j} does not enable this move")
        if m.kind == ANSWER:
            if j in answered:
                return Verdict(False, i, f"question {j} is already answered")
            answered.add(j)
        visible = pv[i - 1] if m.polarity == P else ov[i - 1]
        if j not in visible:
            side = "P" if m.polarity == P else "O"
            return Verdict(False, i, f"visibility: justifier {j} not in the {side}-view")
    return Verdict(True)


def is_well_bracketed(s: JustifiedPlay) -> Verdict:
    """Every answer answers the pending question (most recent unanswered one)."""
    stack: list[int] = []
    for i, (m, j) in enumerate(s.events):
        if m.kind == QUESTION:
            stack.append(i)
            continue
        if not stack or stack[-1] != j:
            pending = stack[-1] if stack else None
            return Verdict(False, i, f"answers {j} while {pending} is pending")
        stack.pop()
    return Verdict(True)


def pending_question(events: Sequence[Event]) -> Optional[int]:
    stack: list[int] = []
    for i, (m, j) in enumerate(events):
        if m.kind == QUESTION:
            stack.append(i)
        elif stack and stack[-1] == j:
            stack.pop()
    return stack[-1] if stack else None


def is_complete(s: JustifiedPlay) -> bool:
    """Non-empty and every question answered."""
    if not s.events:
        return False
    answered = {j for m, j in s.events if m.kind == ANSWER}
    return all(i in answered for i, (m, _) in enumerate(s.events) if m.kind == QUESTION)


# ---------------------------------------------------------------- text format


def format_event(i: int, e: Event) -> str:
    m = e.move
    ptr = "-" if e.justifier is None else str(e.justifier)
    return f"{i} {m.polarity} {render_kind(m.kind, m.payload)} @{m.path or '.'} ^{ptr}"


def format_trace(s: JustifiedPlay) -> str:
    return "".join(format_event(i, e) + "\n" for i, e in enumerate(s.events))


_EVENT = re.compile(
    r"^\s*(\d+)\s+([OP])\s+(Q|A\[(tt|ff|\d+)\])\s+@([dclr]*|\.)\s+\^(\d+|-)\s*$")


def parse_payload(text: str):
    if text == "tt":
        return True
    if text == "ff":
        return False
    return int(text)


def parse_event(line: str) -> tuple[int, Event]:
    m = _EVENT.match(line)
    if m is None:
        raise ValueError(f"malformed trace line: {line!r}")
    idx, pol, kind, payload, path, ptr = m.groups()
    path = "" if path == "." else path
    kind = QUESTION if kind == "Q" else ANSWER
    if pol != polarity_of(path, kind):
        raise ValueError(f"polarity {pol} does not match a move at @{path or '.'}")
    move = Move(path, pol, kind, None if kind == QUESTION else parse_payload(payload))
    return int(idx), Event(move, None if ptr == "-" else int(ptr))


def parse_trace(text: str) -> JustifiedPlay:
    events = []
    for line in text.splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        idx, ev = parse_event(line)
        if idx != len(events):
            raise ValueError(f"event index {idx} out of sequence")
        events.append(ev)
    return JustifiedPlay(tuple(events))


# ---------------------------------------------------------------- incremental play state


class PlayState:
    """A play under construction with its views and open questions kept current."""

    __slots__ = ("events", "pviews", "oviews", "stack")

    def __init__(self, events=(), pviews=(), oviews=(), stack=()):
        self.events = events
        self.pviews = pviews
        self.oviews = oviews
        self.stack = stack

    @classmethod
    def of(cls, s: JustifiedPlay) -> "PlayState":
        st = cls()
        for m, j in s.events:
            st = st.extend(m, j)
        return st

    def __len__(self) -> int:
        return len(self.events)

    def extend(self, m: Move, j: Optional[int]) -> "PlayState":
        i = len(self.events)
        if m.polarity == P:
            pv = (self.pviews[-1] if i else ()) + (i,)
            ov = (i,) if j is None else self.oviews[j] + (i,)
        else:
            pv = (i,) if j is None else self.pviews[j] + (i,)
            ov = (self.oviews[-1] if i else ()) + (i,)
        if m.kind == QUESTION:
            stack = self.stack + (i,)
        elif self.stack and self.stack[-1] == j:
            stack = self.stack[:-1]
        else:
            stack = self.stack
        return PlayState(self.events + (Event(m, j),), self.pviews + (pv,),
                         self.oviews + (ov,), stack)

    def play(self) -> JustifiedPlay:
        return JustifiedPlay(self.events)

    def pview(self) -> JustifiedPlay:
        return restrict(self.events, self.pviews[-1])

    def o_moves(self, arena: Arena, nat_payloads: Sequence[int]) -> list[tuple[Move, Optional[int]]]:
        """Legal, well-bracketed Opponent moves that may follow this (even-length) play."""
        if not self.events:
            return [(question(p), None) for p in sorted(arena.initial)]
        out: list[tuple[Move, Optional[int]]] = []
        visible = self.oviews[-1]
        top = self.stack[-1] if self.stack else None
        if top is not None and top in visible:
            qm = self.events[top].move
            if qm.polarity == P:
                for a in arena.answers(qm.path, nat_payloads):
                    out.append((a, top))
        for j in visible:
            m = self.events[j].move
            if m.polarity == P and m.kind == QUESTION:
                for q in arena.enabled_questions(m.path):
                    out.append((question(q), j))
        return out

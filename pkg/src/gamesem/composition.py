"""Composition of strategies: let them interact on the shared board, then hide it.

sigma plays on ``A => B`` and tau on ``B => C``.  An interaction is one
sequence of events over the three components; each strategy sees its own
projection (A and B for sigma, B and C for tau) and moves when the last
event was an Opponent move of that projection.  The environment plays the
Opponent moves of the external board ``A => C``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

from .arena import P, Arena, Move, arena_of_type, arrow, polarity_of, render_kind
from .plays import Event, JustifiedPlay, PlayState
from .strategy import FuelExhausted, IllegalPlay, PlaySetStrategy, Strategy

ENV, SIGMA, TAU = "env", "sigma", "tau"

COMPLETE, QUIESCENT, FUEL, DEPTH = "complete", "quiescent", "fuel", "depth"


class IEvent(NamedTuple):
    component: str          # "A", "B" or "C"
    path: str               # relative to the component's type
    kind: str
    payload: object
    justifier: Optional[int]
    mover: str              # ENV, SIGMA or TAU


# where each component sits in the three arenas
_SIGMA_TAG = {"A": "d", "B": "c"}
_TAU_TAG = {"B": "d", "C": "c"}
_EXT_TAG = {"A": "d", "C": "c"}


def _move(path: str, kind: str, payload) -> Move:
    return Move(path, polarity_of(path, kind), kind, payload)


@dataclass(frozen=True)
class InteractionTrace:
    events: tuple[IEvent, ...]
    status: str
    arena: Arena            # the external board A => C

    def __len__(self) -> int:
        return len(self.events)

    def external(self) -> JustifiedPlay:
        """The events on A and C, pointers re-threaded through hidden B events."""
        return _hide_events(self.events)

    def render(self) -> str:
        return render_interaction(self.events)


def _hide_events(events: Sequence[IEvent]) -> JustifiedPlay:
    where: dict[int, int] = {}
    out = []
    for g, e in enumerate(events):
        if e.component == "B":
            continue
        j = e.justifier
        while j is not None and events[j].component == "B":
            j = events[j].justifier
        where[g] = len(out)
        path = _EXT_TAG[e.component] + e.path
        out.append(Event(_move(path, e.kind, e.payload), None if j is None else where[j]))
    return JustifiedPlay(tuple(out))


def render_interaction(events: Sequence[IEvent]) -> str:
    """Trace lines with a component column; B shows its polarity for sigma|tau."""
    lines = []
    for i, e in enumerate(events):
        if e.component == "B":
            pol = f"{polarity_of('c' + e.path, e.kind)}|{polarity_of('d' + e.path, e.kind)}"
        else:
            pol = polarity_of(_EXT_TAG[e.component] + e.path, e.kind)
        ptr = "-" if e.justifier is None else str(e.justifier)
        lines.append(f"{i} {e.component} {pol} {render_kind(e.kind, e.payload)} "
                     f"@{e.path or '.'} ^{ptr}")
    return "".join(line + "\n" for line in lines)


class _Projection:
    """One participant's view of the interaction: its play and the index maps."""
    __slots__ = ("tags", "state", "to_global", "of_global")

    def __init__(self, tags: dict):
        self.tags = tags
        self.state = PlayState()
        self.to_global: tuple[int, ...] = ()
        self.of_global: dict[int, int] = {}

    def copy(self) -> "_Projection":
        p = _Projection.__new__(_Projection)
        p.tags = self.tags
        p.state = self.state
        p.to_global = self.to_global
        p.of_global = dict(self.of_global)
        return p

    def add(self, g: int, e: IEvent, j: Optional[int]):
        tag = self.tags.get(e.component)
        if tag is None:
            return
        self.state = self.state.extend(_move(tag + e.path, e.kind, e.payload),
                                       None if j is None else self.of_global.get(j))
        self.of_global[g] = len(self.to_global)
        self.to_global += (g,)


class _Interaction:
    def __init__(self, sigma: Strategy, tau: Strategy, fuel: int):
        self.sigma = sigma
        self.tau = tau
        self.fuel = fuel
        self.events: tuple[IEvent, ...] = ()
        self.sig = _Projection(_SIGMA_TAG)
        self.tau_p = _Projection(_TAU_TAG)
        self.ext = _Projection(_EXT_TAG)
        self.env_moves = 0

    def copy(self) -> "_Interaction":
        c = _Interaction.__new__(_Interaction)
        c.sigma, c.tau, c.fuel = self.sigma, self.tau, self.fuel
        c.events = self.events
        c.sig, c.tau_p, c.ext = self.sig.copy(), self.tau_p.copy(), self.ext.copy()
        c.env_moves = self.env_moves
        return c

    def add(self, e: IEvent):
        g = len(self.events)
        self.events += (e,)
        self.sig.add(g, e, e.justifier)
        self.tau_p.add(g, e, e.justifier)
        if e.component != "B":
            j = e.justifier
            while j is not None and self.events[j].component == "B":
                j = self.events[j].justifier
            self.ext.add(g, e, j)

    def turn(self) -> str:
        if not self.events:
            return ENV
        last = self.events[-1]
        if last.mover == ENV:
            return TAU if last.component == "C" else SIGMA
        if last.mover == SIGMA:
            return TAU if last.component == "B" else ENV
        return SIGMA if last.component == "B" else ENV

    def env_move(self, m: Move, j: Optional[int]):
        """Play an external Opponent move (pointer indexes the external play)."""
        comp = "A" if m.path[0] == "d" else "C"
        g = None if j is None else self.ext.to_global[j]
        self.add(IEvent(comp, m.path[1:], m.kind, m.payload, g, ENV))
        self.env_moves += 1

    def step(self) -> bool:
        """Let the strategy whose turn it is move; False when it has no move."""
        who = self.turn()
        strat, proj, split = ((self.sigma, self.sig, ("A", "B")) if who == SIGMA
                              else (self.tau, self.tau_p, ("B", "C")))
        r = strat.respond_view(proj.state.pview())
        if r is None:
            return False
        m, k = r
        if m.polarity != P:
            raise IllegalPlay(f"{who} answered with an Opponent move {m}")
        g = proj.to_global[proj.state.pviews[-1][k]]
        comp = split[0] if m.path[0] == "d" else split[1]
        self.add(IEvent(comp, m.path[1:], m.kind, m.payload, g, who))
        return True

    def run(self) -> str:
        """Advance until the environment is to move; returns ENV, QUIESCENT or FUEL."""
        while self.turn() != ENV:
            if len(self.events) >= self.fuel:
                return FUEL
            try:
                if not self.step():
                    return QUIESCENT
            except FuelExhausted:
                return FUEL
        return ENV


def _external_arena(sigma: Strategy, tau: Strategy) -> Arena:
    a, b = sigma.arena.shape, tau.arena.shape
    if a.cod != b.dom:
        raise ValueError("the middle boards of the two strategies differ")
    return arrow(arena_of_type(a.dom), arena_of_type(b.cod))


def composite_payloads(*strategies: Strategy) -> tuple[int, ...]:
    seen = sorted(set().union(*(s.nat_payloads() for s in strategies)))
    return tuple(seen) + ((seen[-1] + 1) if seen else 0,)


EnvRule = Callable[[PlayState], Iterable[tuple[Move, Optional[int]]]]


def interact(sigma: Strategy, tau: Strategy, fuel: int = 10_000, depth: int = 8,
             nat_payloads: Optional[Iterable[int]] = None,
             env: Optional[EnvRule] = None) -> list[InteractionTrace]:
    """Every maximal interaction, the environment choosing any legal move.

    With ``env`` the environment instead plays the moves that rule returns
    for the current external play.  At most ``depth`` environment moves.
    """
    ext_arena = _external_arena(sigma, tau)
    payloads = tuple(nat_payloads) if nat_payloads is not None else composite_payloads(sigma, tau)
    if env is None:
        def env(state: PlayState):
            return state.o_moves(ext_arena, payloads)
    out: list[InteractionTrace] = []
    stack = [_Interaction(sigma, tau, fuel)]
    while stack:
        it = stack.pop()
        status = it.run()
        if status != ENV:
            out.append(InteractionTrace(it.events, status, ext_arena))
            continue
        if it.env_moves >= depth:
            out.append(InteractionTrace(it.events, DEPTH, ext_arena))
            continue
        choices = list(env(it.ext.state))
        if not choices:
            out.append(InteractionTrace(it.events, COMPLETE, ext_arena))
            continue
        for m, j in reversed(choices):
            nxt = it.copy()
            nxt.env_move(m, j)
            stack.append(nxt)
    return out


def hide(traces: Sequence[InteractionTrace], depth: Optional[int] = None,
         payloads: tuple = ()) -> PlaySetStrategy:
    """Delete B events from every trace and collect the even external prefixes."""
    if not traces:
        raise ValueError("nothing to hide")
    plays = {JustifiedPlay()}
    for t in traces:
        ext = t.external()
        for n in range(0, len(ext) + 1, 2):
            plays.add(ext[:n])
    return PlaySetStrategy(traces[0].arena, frozenset(plays), depth, payloads)


def compose(sigma: Strategy, tau: Strategy, fuel: int = 10_000, depth: int = 8,
            nat_payloads: Optional[Iterable[int]] = None) -> PlaySetStrategy:
    """hide(interact(...)); raises FuelExhausted if any interaction ran out of fuel."""
    payloads = tuple(nat_payloads) if nat_payloads is not None else composite_payloads(sigma, tau)
    traces = interact(sigma, tau, fuel, depth, payloads)
    for t in traces:
        if t.status == FUEL:
            raise FuelExhausted(f"interaction exceeded {fuel} events:\n{t.render()}")
    return hide(traces, depth, payloads)


class ComposedStrategy(Strategy):
    """The composite as an innocent strategy, computed per view by replaying it."""

    def __init__(self, sigma: Strategy, tau: Strategy, fuel: int = 10_000):
        self.sigma = sigma
        self.tau = tau
        self.fuel = fuel
        self.arena = _external_arena(sigma, tau)
        self._cache: dict = {}

    def nat_payloads(self) -> frozenset:
        return self.sigma.nat_payloads() | self.tau.nat_payloads()

    def respond_view(self, view: JustifiedPlay):
        if view in self._cache:
            return self._cache[view]
        r = self._cache[view] = self._replay(view)
        return r

    def _replay(self, view: JustifiedPlay):
        it = _Interaction(self.sigma, self.tau, self.fuel)
        events = view.events
        for i in range(0, len(events), 2):
            m, j = events[i]
            it.env_move(m, j)
            status = it.run()
            if status == FUEL:
                raise FuelExhausted("composite ran out of fuel")
            if status == QUIESCENT:
                return None
            got = it.ext.state.events[-1]
            if i + 1 == len(events):
                return got
            if got != events[i + 1]:
                return None
        raise IllegalPlay("a view must end with an Opponent move")

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamesem.arena import Move, arena_of_type, polarity_of
from gamesem.composition import (
    COMPLETE, ENV, FUEL, QUIESCENT, SIGMA, TAU, ComposedStrategy, compose, hide, interact,
)
from gamesem.interpreter import denote, trace_application
from gamesem.plays import Event, JustifiedPlay, format_trace, is_legal
from gamesem.strategy import (
    FuelExhausted, all_well_bracketed, copycat, is_innocent, lift_closed, plays_of,
)
from gamesem.syntax import BOOL, Arrow, check, check_text, enumerate_normal_terms, parse_type

B = BOOL
CLOSED = [lift_closed(denote(check(t)).strategy) for t in enumerate_normal_terms(B, 6)]
UNARY = [denote(check(t)).strategy for t in enumerate_normal_terms(Arrow(B, B), 6)]
LAW_DEPTH = 6


def _closed(text):
    return lift_closed(denote(check_text(text)).strategy)


def _restrict(events, tags):
    """One participant's play: keep its components, re-tag paths, re-point justifiers."""
    where, out = {}, []
    for g, e in enumerate(events):
        if e.component not in tags:
            continue
        path = tags[e.component] + e.path
        j = where.get(e.justifier) if e.justifier is not None else None
        where[g] = len(out)
        out.append(Event(Move(path, polarity_of(path, e.kind), e.kind, e.payload), j))
    return JustifiedPlay(tuple(out))


def test_fig2_interaction_and_residual():
    f = check_text(r"\f:N->N. \x:N. add (f x) 2")
    trace = trace_application(f, [check_text(r"\x:N. sq x")], [3])
    assert trace.status == COMPLETE
    assert len(trace) == 10
    answers = [e.payload for e in trace.events if e.kind == "A" and e.component != "A"]
    assert answers == [3, 3, 9, 11]
    assert format_trace(trace.external()) == (
        "0 O Q @c ^-\n1 P Q @d ^0\n2 O A[3] @d ^1\n3 P A[11] @c ^0\n")
    residual = denote(check_text(r"\x:N. add (sq x) 2")).strategy
    assert trace.external() in plays_of(residual, 2, (3,)).plays


def test_fig2_composite_equals_the_beta_reduct():
    f = denote(check_text(r"\f:N->N. \x:N. add (f x) 2")).strategy
    sq = _closed(r"\x:N. sq x")
    composite = compose(sq, f, depth=3, nat_payloads=(0, 3))
    reduct = plays_of(lift_closed(denote(check_text(r"\x:N. add (sq x) 2")).strategy), 3, (0, 3))
    assert composite == reduct


def test_projections_are_plays_of_the_participants():
    for s in CLOSED[:2] + UNARY[::4]:
        for t in UNARY[::3]:
            sp = plays_of(s, LAW_DEPTH, ()).plays
            tp = plays_of(t, LAW_DEPTH, ()).plays
            for trace in interact(s, t, depth=3, nat_payloads=()):
                left = _restrict(trace.events, {"A": "d", "B": "c"})
                right = _restrict(trace.events, {"B": "d", "C": "c"})
                assert is_legal(s.arena, left, well_opened=False)
                assert is_legal(t.arena, right, well_opened=False)
                if len(right) % 2 == 0:
                    assert right in tp
                # sigma may be asked several times over; single-thread projections are its plays
                if len(left) % 2 == 0 and is_legal(s.arena, left):
                    assert left in sp
                for e in trace.events:
                    assert e.mover in ((SIGMA, TAU) if e.component == "B" else (ENV, SIGMA, TAU))


def test_divergent_argument_stalls():
    omega = _closed("omega[B]")
    ident = denote(check_text(r"\x:B. x")).strategy
    traces = interact(omega, ident, depth=2, nat_payloads=())
    assert [t.status for t in traces] == [QUIESCENT]
    assert compose(omega, ident, depth=2, nat_payloads=()).plays == frozenset({JustifiedPlay()})


def test_livelock_runs_out_of_fuel():
    tt = _closed("tt")
    loop = denote(check_text(r"\y:B. fix[B] (\r:B. cond y r r)")).strategy
    traces = interact(tt, loop, fuel=200, depth=2, nat_payloads=())
    assert [t.status for t in traces] == [FUEL]
    with pytest.raises(FuelExhausted):
        compose(tt, loop, fuel=200, depth=2, nat_payloads=())


def test_copycat_composed_with_itself():
    a = arena_of_type(parse_type("B->B"))
    cc = copycat(a)
    assert compose(cc, cc, depth=4, nat_payloads=()) == plays_of(cc, 4, ())


def test_hidden_pointers_follow_chains():
    f = check_text(r"\f:N->N. \x:N. add (f x) 2")
    trace = trace_application(f, [check_text(r"\x:N. sq x")], [3])
    # the A question is justified in B; after hiding it points at the opening question
    a_q = next(i for i, e in enumerate(trace.events) if e.component == "A")
    assert trace.events[trace.events[a_q].justifier].component == "B"
    assert trace.external().events[1].justifier == 0


def test_hide_needs_traces():
    with pytest.raises(ValueError):
        hide([])


def test_mismatched_boards():
    with pytest.raises(ValueError):
        interact(_closed("tt"), denote(check_text(r"\x:N. x")).strategy)


def test_composed_strategy_matches_compose():
    for s in CLOSED + UNARY[:6]:
        for t in UNARY[::5]:
            lazy = plays_of(ComposedStrategy(s, t), LAW_DEPTH, ())
            assert lazy == compose(s, t, depth=LAW_DEPTH, nat_payloads=())


strategies_b = st.sampled_from(CLOSED + UNARY)
strategies_bb = st.sampled_from(UNARY)


@settings(max_examples=60, deadline=None)
@given(strategies_b)
def test_identity_laws(s):
    p = plays_of(s, LAW_DEPTH, ())
    dom = arena_of_type(s.arena.shape.dom)
    cod = arena_of_type(s.arena.shape.cod)
    assert compose(copycat(dom), s, depth=LAW_DEPTH, nat_payloads=()) == p
    assert compose(s, copycat(cod), depth=LAW_DEPTH, nat_payloads=()) == p


@settings(max_examples=60, deadline=None)
@given(strategies_b, strategies_bb, strategies_bb)
def test_associativity(s, t, u):
    lhs = compose(ComposedStrategy(s, t), u, depth=LAW_DEPTH, nat_payloads=())
    rhs = compose(s, ComposedStrategy(t, u), depth=LAW_DEPTH, nat_payloads=())
    assert lhs == rhs
    assert is_innocent(lhs) and all_well_bracketed(lhs) and lhs.is_deterministic()

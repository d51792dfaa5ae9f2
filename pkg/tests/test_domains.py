import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamesem import domains as dom
from gamesem.domains import (
    BOOL_BOT, EMPTY_GRAPH, PartialFnGraph, ZEROS, check_chain_continuity, enumerate_monotone,
    is_monotone, lfp_iterate, product_poset, stream_domain, stream_leq,
)
from gamesem.interpreter import BOTTOM
from gamesem.syntax import check, check_text, parse_type

B2 = product_poset(BOOL_BOT, BOOL_BOT)


def _all_maps(d, e):
    for values in itertools.product(e.elements, repeat=len(d)):
        yield dict(zip(d.elements, values))


def _brute_monotone(d, e):
    return [f for f in _all_maps(d, e)
            if all(e.leq(f[x], f[y]) for x in d for y in d if d.leq(x, y))]


def _key(f):
    return tuple(sorted((repr(k), repr(v)) for k, v in f.items()))


@pytest.mark.parametrize("d,total,monotone", [(BOOL_BOT, 27, 11), (B2, 19683, 197)])
def test_monotone_maps_against_brute_force(d, total, monotone):
    assert sum(1 for _ in _all_maps(d, BOOL_BOT)) == total
    brute = _brute_monotone(d, BOOL_BOT)
    fast = enumerate_monotone(d, BOOL_BOT)
    assert len(brute) == len(fast) == monotone
    assert {_key(f) for f in brute} == {_key(f) for f in fast}


@pytest.mark.parametrize("poset", [BOOL_BOT, B2, stream_domain(3), dom.flat_poset(range(4))])
def test_poset_axioms(poset):
    assert poset.check_axioms() is None


def test_axiom_violations_are_reported():
    assert "antisymmetric" in dom.FinitePoset([1, 2], lambda x, y: True).check_axioms()
    assert "bottom" in dom.FinitePoset([1, 2], lambda x, y: x == y, 1, pointed=True).check_axioms()


def test_flat_order_keeps_booleans_and_numbers_apart():
    assert not dom.flat_leq(True, 1) and not dom.flat_leq(0, False)
    assert dom.flat_leq(BOTTOM, 5)


def test_stream_order():
    assert stream_leq("", "01") and stream_leq("0", "01") and not stream_leq("1", "01")
    assert stream_leq("000", ZEROS) and not stream_leq("01", ZEROS) and not stream_leq(ZEROS, "0")


def test_partial_function_graphs():
    f = PartialFnGraph.of({0: 1})
    g = PartialFnGraph.of({0: 1, 1: 1})
    assert EMPTY_GRAPH <= f <= g and not g <= f
    assert g(1) == 1 and f(1) is BOTTOM
    with pytest.raises(ValueError):
        PartialFnGraph(frozenset({(0, 1), (0, 2)}))


def test_factorial_iterates():
    r = lfp_iterate(dom.factorial_functional(6), EMPTY_GRAPH, leq=dom.graph_leq)
    assert [len(g.domain()) for g in r.trace] == list(range(8))
    assert r.steps == 8 and r.value(6) == 720


def test_non_monotone_functional_is_caught():
    flip = {BOTTOM: True, True: BOTTOM, False: False}
    with pytest.raises(ValueError):
        lfp_iterate(lambda x: flip[x], BOTTOM, leq=BOOL_BOT.leq)


def test_fixpoint_fuel():
    with pytest.raises(dom.FixpointNotReached):
        lfp_iterate(lambda n: n + 1, 0, fuel=20)


SELF_MAPS = enumerate_monotone(B2, B2)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SELF_MAPS))
def test_lfp_is_least_fixed_point(F):
    r = lfp_iterate(lambda x: F[x], B2.bottom, leq=B2.leq)
    assert F[r.value] == r.value
    for x in B2:
        if F[x] == x:
            assert B2.leq(r.value, x)
    for a, b in zip(r.trace, r.trace[1:]):
        assert B2.leq(a, b)


def test_monotonicity_witness():
    v = is_monotone(lambda x: x is not BOTTOM, BOOL_BOT, BOOL_BOT)
    assert not v and v.witness == (BOTTOM, True)


def test_continuity_examples():
    chain = dom.zeros_chain(5)
    c1 = check_chain_continuity(dom.stream_example(1), chain, ZEROS, stream_leq, BOOL_BOT)
    c2 = check_chain_continuity(dom.stream_example(2), chain, ZEROS, stream_leq, BOOL_BOT)
    assert c1 and (c1.lub_of_images, c1.image_of_lub) == (BOTTOM, BOTTOM)
    assert not c2 and (c2.lub_of_images, c2.image_of_lub) == (BOTTOM, False)
    full = is_monotone(dom.stream_example(3), stream_domain(3), BOOL_BOT)
    assert not full and full.witness == ("", "1")
    with pytest.raises(ValueError):
        check_chain_continuity(dom.stream_example(1), ["1", "0"], ZEROS, stream_leq, BOOL_BOT)


@pytest.mark.parametrize("ty,d", [("B->B", BOOL_BOT), ("B->B->B", B2)])
def test_definable_extensions_are_monotone(ty, d):
    exts = dom.definable_extensions(parse_type(ty), 8)
    for table, term in exts.items():
        ext = dom.extension_of(check(term))
        f = (lambda x, ext=ext: ext[(x,)]) if d is BOOL_BOT else (lambda x, ext=ext: ext[x])
        assert is_monotone(f, d, BOOL_BOT), table


def test_every_monotone_unary_map_is_definable():
    # nine strict maps plus the constants tt and ff: all of the monotone space
    exts = dom.definable_extensions(parse_type("B->B"), 8)
    monotone = {dom.as_table({(x,): f[x] for x in BOOL_BOT}) for f in enumerate_monotone(BOOL_BOT, BOOL_BOT)}
    assert set(exts) == monotone and len(monotone) == 11


def test_extension_csv():
    csv = dom.extension_csv(dom.extension_of(check_text(r"\a:B. \b:B. cond a tt b")))
    lines = csv.splitlines()
    assert lines[0] == "x1,x2,result"
    assert lines[1:4] == ["bot,bot,bot", "bot,tt,bot", "bot,ff,bot"]
    assert lines[-1] == "ff,ff,ff"


def test_census_json():
    out = json.loads(dom.census_json(parse_type("B->B->B"), 8))
    assert out == {"type": "B->B->B", "bound": 8, "count": 33, "contains_por": False}


def test_extension_of_needs_first_order_types():
    with pytest.raises(ValueError):
        dom.extension_of(check_text(r"\f:B->B. f tt"))

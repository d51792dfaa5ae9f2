"""Extensional semantics on finite posets: the oracle the game model is checked against."""
from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence

from .interpreter import BOTTOM, evaluate
from .syntax import BOOL, Bool, Omega, Type, TypedTerm, apply, check, enumerate_normal_terms, show_type, uncurry
from .syntax import FF, TT

# ---------------------------------------------------------------- posets


class FinitePoset:
    """Elements with an order given as a ``leq`` predicate."""

    def __init__(self, elements: Iterable[Hashable], leq: Callable[[object, object], bool],
                 bottom: object = None, pointed: bool = False):
        self.elements = tuple(elements)
        self.leq = leq
        self.pointed = pointed
        self.bottom = bottom

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def pairs(self):
        """All comparable pairs x < y."""
        for x in self.elements:
            for y in self.elements:
                if x != y and self.leq(x, y):
                    yield x, y

    def check_axioms(self) -> Optional[str]:
        els = self.elements
        for x in els:
            if not self.leq(x, x):
                return f"not reflexive at {x!r}"
        for x, y in itertools.product(els, els):
            if x != y and self.leq(x, y) and self.leq(y, x):
                return f"not antisymmetric at {x!r}, {y!r}"
        for x, y, z in itertools.product(els, els, els):
            if self.leq(x, y) and self.leq(y, z) and not self.leq(x, z):
                return f"not transitive at {x!r}, {y!r}, {z!r}"
        if self.pointed and not all(self.leq(self.bottom, x) for x in els):
            return "the designated bottom is not least"
        return None

    def lub(self, xs: Sequence) -> object:
        """Least upper bound of a chain (its largest element)."""
        top = xs[0]
        for x in xs[1:]:
            if self.leq(top, x):
                top = x
            elif not self.leq(x, top):
                raise ValueError(f"{top!r} and {x!r} are incomparable")
        return top


def flat_leq(x, y) -> bool:
    return x is BOTTOM or x == y and type(x) is type(y)


def flat_poset(values: Iterable) -> FinitePoset:
    """The flat domain: ``values`` above a single bottom."""
    return FinitePoset((BOTTOM, *values), flat_leq, BOTTOM, pointed=True)


BOOL_BOT = flat_poset((True, False))


def product_poset(*factors: FinitePoset) -> FinitePoset:
    def leq(x, y):
        return all(f.leq(a, b) for f, a, b in zip(factors, x, y))
    bottom = tuple(f.bottom for f in factors)
    return FinitePoset(itertools.product(*(f.elements for f in factors)), leq, bottom,
                       pointed=all(f.pointed for f in factors))


def show_flat(v) -> str:
    if v is BOTTOM:
        return "bot"
    if isinstance(v, bool):
        return "tt" if v else "ff"
    return str(v)


# ---------------------------------------------------------------- partial functions


@dataclass(frozen=True)
class PartialFnGraph:
    """A partial function as its graph; ordered by inclusion."""
    pairs: frozenset

    def __post_init__(self):
        inputs = [x for x, _ in self.pairs]
        if len(inputs) != len(set(inputs)):
            raise ValueError("a graph may not map one input twice")

    @classmethod
    def of(cls, mapping: Mapping) -> "PartialFnGraph":
        return cls(frozenset(mapping.items()))

    def __call__(self, x):
        for a, b in self.pairs:
            if a == x:
                return b
        return BOTTOM

    def __le__(self, other: "PartialFnGraph") -> bool:
        return self.pairs <= other.pairs

    def domain(self) -> frozenset:
        return frozenset(x for x, _ in self.pairs)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{a}->{b}" for a, b in sorted(self.pairs)) + "}"


EMPTY_GRAPH = PartialFnGraph(frozenset())


def graph_leq(f: PartialFnGraph, g: PartialFnGraph) -> bool:
    return f <= g


# ---------------------------------------------------------------- monotonicity and continuity


@dataclass(frozen=True)
class MonotoneVerdict:
    ok: bool
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def _call(f, x):
    return f[x] if isinstance(f, Mapping) else f(x)


def is_monotone(f, d: FinitePoset, e: FinitePoset) -> MonotoneVerdict:
    """Check x <= y implies f(x) <= f(y) over every comparable pair of ``d``."""
    for x, y in d.pairs():
        if not e.leq(_call(f, x), _call(f, y)):
            return MonotoneVerdict(False, (x, y))
    return MonotoneVerdict(True)


@dataclass(frozen=True)
class ContinuityVerdict:
    ok: bool
    lub_of_images: object
    image_of_lub: object
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def check_chain_continuity(f, chain: Sequence, lub, d_leq: Callable, e: FinitePoset) -> ContinuityVerdict:
    """Compare f(lub chain) with lub f(chain) on one supplied ascending chain.

    The images must ascend (the half of continuity monotonicity gives) and
    must lie below f(lub); the check then asks that f(lub) add nothing.
    """
    for a, b in zip(chain, chain[1:]):
        if not d_leq(a, b):
            raise ValueError(f"chain is not ascending at {a!r}, {b!r}")
    if not all(d_leq(x, lub) for x in chain):
        raise ValueError("supplied lub is not an upper bound of the chain")
    images = [_call(f, x) for x in chain]
    for a, b in zip(images, images[1:]):
        if not e.leq(a, b):
            return ContinuityVerdict(False, None, _call(f, lub), "images do not ascend")
    top = e.lub(images)
    at_lub = _call(f, lub)
    if not e.leq(top, at_lub):
        return ContinuityVerdict(False, top, at_lub, "lub of images exceeds the image of the lub")
    if top != at_lub or type(top) is not type(at_lub):
        return ContinuityVerdict(False, top, at_lub, "image of the lub exceeds the lub of images")
    return ContinuityVerdict(True, top, at_lub)


# ---------------------------------------------------------------- streams

ZEROS = "0^inf"
"""The single infinite stream represented: all zeros."""


def stream_leq(x: str, y: str) -> bool:
    """Prefix order on finite words, with every all-zero word below ``ZEROS``."""
    if x == ZEROS:
        return y == ZEROS
    if y == ZEROS:
        return set(x) <= {"0"}
    return y.startswith(x)


def stream_domain(max_len: int) -> FinitePoset:
    words = [""] + ["".join(w) for n in range(1, max_len + 1)
                    for w in itertools.product("01", repeat=n)]
    return FinitePoset(words + [ZEROS], stream_leq, "", pointed=True)


def zeros_chain(length: int) -> list[str]:
    return ["0" * n for n in range(1, length + 1)]


def has_one(x: str) -> bool:
    return x != ZEROS and "1" in x


def stream_example(k: int) -> Callable[[str], object]:
    """The three stream functions: (1) continuous, (2) monotone only, (3) neither."""
    if k == 1:
        return lambda x: True if has_one(x) else BOTTOM
    if k == 2:
        return lambda x: True if has_one(x) else (False if x == ZEROS else BOTTOM)
    if k == 3:
        return lambda x: has_one(x)
    raise ValueError("stream examples are numbered 1 to 3")


# ---------------------------------------------------------------- least fixpoints


@dataclass(frozen=True)
class LfpResult:
    value: object
    trace: tuple            # bottom, F(bottom), ... up to the fixed point
    steps: int              # applications of F until F(x) == x was observed


class FixpointNotReached(RuntimeError):
    pass


def lfp_iterate(F: Callable, bottom, fuel: int = 1000, leq: Optional[Callable] = None) -> LfpResult:
    """Kleene iteration from ``bottom``; with ``leq`` the iterates are checked to ascend."""
    trace = [bottom]
    x = bottom
    for step in range(1, fuel + 1):
        y = F(x)
        if leq is not None and not leq(x, y):
            raise ValueError(f"iterate {step} does not extend iterate {step - 1}: F is not monotone")
        if y == x:
            return LfpResult(x, tuple(trace), step)
        trace.append(y)
        x = y
    raise FixpointNotReached(f"no fixed point within {fuel} iterations")


def factorial_functional(limit: int) -> Callable[[PartialFnGraph], PartialFnGraph]:
    """F(g)(0) = 1, F(g)(n) = n * g(n-1), restricted to inputs 0..limit."""
    def F(g: PartialFnGraph) -> PartialFnGraph:
        out = {0: 1}
        for n in range(1, limit + 1):
            prev = g(n - 1)
            if prev is not BOTTOM:
                out[n] = n * prev
        return PartialFnGraph.of(out)
    return F


# ---------------------------------------------------------------- extensions of terms

Table = tuple       # outputs in the order of ``argument_tuples``


def argument_tuples(n: int) -> list[tuple]:
    return list(itertools.product(BOOL_BOT.elements, repeat=n))


def _first_order_arity(t: Type) -> int:
    params, result = uncurry(t)
    if not isinstance(result, Bool) or not all(isinstance(p, Bool) for p in params):
        raise ValueError(f"expected a type B->...->B, got {show_type(t)}")
    return len(params)


def _literal(v):
    if v is BOTTOM:
        return Omega(BOOL)
    return TT if v else FF


def extension_of(t: TypedTerm, fuel: int = 10_000) -> dict:
    """Input-output table of a closed first-order boolean term; bottom inputs are ``omega[B]``."""
    if t.context:
        raise ValueError("extension_of needs a closed term")
    n = _first_order_arity(t.type)
    return {args: evaluate(check(apply(t.term, *map(_literal, args))), fuel)
            for args in argument_tuples(n)}


def as_table(ext: Mapping) -> Table:
    return tuple(ext[a] for a in sorted(ext, key=_arg_key))


def _arg_key(args):
    order = {BOTTOM: 0, True: 1, False: 2}
    return tuple(order[a] for a in args)


def table_from_function(fn: Callable, n: int) -> dict:
    return {args: fn(*args) for args in argument_tuples(n)}


def por(a, b):
    if a is True or b is True:
        return True
    if a is False and b is False:
        return False
    return BOTTOM


def lsor(a, b):
    if a is BOTTOM:
        return BOTTOM
    return True if a else b


def rsor(a, b):
    return lsor(b, a)


def definable_extensions(t: Type, size_bound: int, fuel: int = 10_000) -> dict:
    """Distinct extensions of the enumerated normal terms, each with its first witness."""
    _first_order_arity(t)
    found: dict = {}
    for term in enumerate_normal_terms(t, size_bound):
        key = as_table(extension_of(check(term), fuel))
        found.setdefault(key, term)
    return found


def census(t: Type, size_bound: int) -> dict:
    exts = definable_extensions(t, size_bound)
    out = {"type": show_type(t), "bound": size_bound, "count": len(exts)}
    if _first_order_arity(t) == 2:
        out["contains_por"] = as_table(table_from_function(por, 2)) in exts
    return out


def census_json(t: Type, size_bound: int) -> str:
    return json.dumps(census(t, size_bound)) + "\n"


def extension_csv(ext: Mapping) -> str:
    """One row per argument tuple, result last."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    n = len(next(iter(ext)))
    w.writerow([f"x{i + 1}" for i in range(n)] + ["result"])
    for args in sorted(ext, key=_arg_key):
        w.writerow([show_flat(a) for a in args] + [show_flat(ext[args])])
    return buf.getvalue()


# ---------------------------------------------------------------- the monotone function space


def _linear_extension(d: FinitePoset) -> list:
    remaining = list(d.elements)
    out = []
    while remaining:
        for x in remaining:
            if not any(y != x and d.leq(y, x) for y in remaining):
                out.append(x)
                remaining.remove(x)
                break
    return out


def enumerate_monotone(d: FinitePoset, e: FinitePoset) -> list[dict]:
    """Every monotone map d -> e, by backtracking along a linear extension of d."""
    order = _linear_extension(d)
    below = {x: [y for y in order[:i] if d.leq(y, x)] for i, x in enumerate(order)}
    out: list[dict] = []
    f: dict = {}

    def go(i: int):
        if i == len(order):
            out.append(dict(f))
            return
        x = order[i]
        for v in e.elements:
            if all(e.leq(f[y], v) for y in below[x]):
                f[x] = v
                go(i + 1)
        f.pop(x, None)

    go(0)
    return out


def same_map(f: Mapping, g: Mapping) -> bool:
    return f.keys() == g.keys() and all(
        f[k] is g[k] or (f[k] == g[k] and type(f[k]) is type(g[k])) for k in f)

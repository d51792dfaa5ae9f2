"""Arenas: the game boards of types.

A move sits at a *path*: a string of direction tags leading from the root of
the type tree to a base-type occurrence.  ``d``/``c`` step into the domain or
codomain of an arrow, ``l``/``r`` into a product component.  Each base
occurrence carries one question and one answer per value of its base type.

Polarity follows from the path: every ``d`` step swaps the roles, so a move is
an Opponent move iff its path has an even number of ``d`` tags.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import count as _naturals
from typing import Iterable, Iterator, Optional, Union

from .syntax import BOOL, NAT, UNIT, Arrow, Bool, Nat, Product, Type, Unit, show_type

O, P = "O", "P"
QUESTION, ANSWER = "Q", "A"

Payload = Union[int, bool, None]


@dataclass(frozen=True)
class Move:
    path: str
    polarity: str
    kind: str
    payload: Payload = None

    def __post_init__(self):
        if (self.kind == QUESTION) != (self.payload is None):
            raise ValueError("questions carry no payload; answers carry exactly one")

    @property
    def is_question(self) -> bool:
        return self.kind == QUESTION

    @property
    def is_answer(self) -> bool:
        return self.kind == ANSWER

    def __str__(self) -> str:
        return f"{self.polarity} {render_kind(self.kind, self.payload)} @{self.path or '.'}"


def render_payload(v: Payload) -> str:
    if isinstance(v, bool):
        return "tt" if v else "ff"
    return str(v)


def render_kind(kind: str, payload: Payload) -> str:
    return "Q" if kind == QUESTION else f"A[{render_payload(payload)}]"


def polarity_of(path: str, kind: str = QUESTION) -> str:
    """Questions at even-``d`` paths belong to O; an answer belongs to the other side."""
    even = path.count("d") % 2 == 0
    return O if even == (kind == QUESTION) else P


def question(path: str) -> Move:
    return Move(path, polarity_of(path), QUESTION)


def answer(path: str, value) -> Move:
    return Move(path, polarity_of(path, ANSWER), ANSWER, value)


def flip(m: Move) -> Move:
    return Move(m.path, P if m.polarity == O else O, m.kind, m.payload)


@lru_cache(maxsize=None)
def initial_paths(t: Type) -> tuple[str, ...]:
    """Paths of the initial questions of ``t``, relative to its root."""
    if isinstance(t, (Nat, Bool)):
        return ("",)
    if isinstance(t, Unit):
        return ()
    if isinstance(t, Arrow):
        return tuple("c" + p for p in initial_paths(t.cod))
    if isinstance(t, Product):
        return (tuple("l" + p for p in initial_paths(t.left))
                + tuple("r" + p for p in initial_paths(t.right)))
    raise TypeError(t)


def subtype_at(t: Type, path: str) -> Type:
    for tag in path:
        if tag == "d":
            t = t.dom
        elif tag == "c":
            t = t.cod
        elif tag == "l":
            t = t.left
        elif tag == "r":
            t = t.right
        else:
            raise ValueError(f"bad path tag {tag!r}")
    return t


@dataclass(frozen=True)
class Arena:
    """The arena of a type.  Immutable and determined by ``shape``."""
    shape: Type
    questions: dict = field(compare=False, hash=False, repr=False)
    initial: frozenset = field(compare=False, hash=False, repr=False)
    enablers: dict = field(compare=False, hash=False, repr=False)

    # -- move universe

    def base_at(self, path: str) -> Type:
        return self.questions[path]

    def answers(self, path: str, nat_payloads: Optional[Iterable[int]] = None) -> Iterator[Move]:
        """Answers at a base occurrence; unbounded for N unless payloads are given."""
        base = self.questions[path]
        if isinstance(base, Bool):
            values: Iterable = (True, False)
        elif nat_payloads is not None:
            values = nat_payloads
        else:
            values = _naturals()
        for v in values:
            yield answer(path, v)

    def moves(self, nat_payloads: Optional[Iterable[int]] = None) -> list[Move]:
        """All moves, with N answers restricted to ``nat_payloads``."""
        if nat_payloads is None and any(isinstance(b, Nat) for b in self.questions.values()):
            raise ValueError("N answers are unbounded; pass nat_payloads")
        nat_payloads = tuple(nat_payloads or ())
        out = []
        for path in self.questions:
            out.append(question(path))
            out.extend(self.answers(path, nat_payloads))
        return out

    def is_move(self, m: Move) -> bool:
        base = self.questions.get(m.path)
        if base is None or m.polarity != polarity_of(m.path, m.kind):
            return False
        if m.kind == QUESTION:
            return True
        if isinstance(base, Bool):
            return isinstance(m.payload, bool)
        return isinstance(m.payload, int) and not isinstance(m.payload, bool) and m.payload >= 0

    def is_initial(self, m: Move) -> bool:
        return m.kind == QUESTION and m.path in self.initial

    def enables(self, m: Move, n: Move) -> bool:
        if m.kind != QUESTION:
            return False
        if n.kind == ANSWER:
            return n.path == m.path
        return m.path in self.enablers.get(n.path, ())

    def enabled_questions(self, path: str) -> tuple[str, ...]:
        return self._enabled_by.get(path, ())

    @property
    def _enabled_by(self) -> dict:
        cache = self.__dict__.get("_enabled_cache")
        if cache is None:
            cache = {}
            for q, ens in self.enablers.items():
                for e in ens:
                    cache.setdefault(e, []).append(q)
            cache = {k: tuple(sorted(v)) for k, v in cache.items()}
            object.__setattr__(self, "_enabled_cache", cache)
        return cache

    def enabling_pairs(self) -> list[tuple[str, str]]:
        """Enabling between question schemas (answers are enabled by their own question)."""
        return sorted((e, q) for q, ens in self.enablers.items() for e in ens)

    def to_dot(self) -> str:
        lines = [f'digraph "{show_type(self.shape)}" {{', "  rankdir=TB;"]
        for path, base in sorted(self.questions.items()):
            label = f"{polarity_of(path)} q @{path or '.'}"
            lines.append(f'  "q{path}" [label="{label}", shape=box];')
            ans = "{tt,ff}" if isinstance(base, Bool) else "n"
            lines.append(f'  "a{path}" [label="{polarity_of(path, ANSWER)} a{ans} @{path or "."}"];')
            lines.append(f'  "q{path}" -> "a{path}";')
        for e, q in self.enabling_pairs():
            lines.append(f'  "q{e}" -> "q{q}";')
        for path in sorted(self.initial):
            lines.append(f'  "q{path}" [peripheries=2];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _build(shape: Type, questions: dict, enablers: dict) -> Arena:
    return Arena(shape, dict(questions), frozenset(initial_paths(shape)),
                 {k: frozenset(v) for k, v in enablers.items()})


def flat_arena(base: Type) -> Arena:
    if not isinstance(base, (Nat, Bool)):
        raise TypeError("flat arenas exist for N and B only")
    return _build(base, {"": base}, {})


def unit_arena() -> Arena:
    return _build(UNIT, {}, {})


def _prefixed(a: Arena, tag: str):
    qs = {tag + p: b for p, b in a.questions.items()}
    ens = {tag + p: {tag + e for e in es} for p, es in a.enablers.items()}
    return qs, ens


def arrow(a: Arena, b: Arena) -> Arena:
    """``a => b``: roles in ``a`` reversed, a's initial moves enabled by b's."""
    qa, ea = _prefixed(a, "d")
    qb, eb = _prefixed(b, "c")
    enablers = {**ea, **eb}
    for p in a.initial:
        enablers["d" + p] = {"c" + q for q in b.initial}
    return _build(Arrow(a.shape, b.shape), {**qa, **qb}, enablers)


def product(a: Arena, b: Arena) -> Arena:
    qa, ea = _prefixed(a, "l")
    qb, eb = _prefixed(b, "r")
    return _build(Product(a.shape, b.shape), {**qa, **qb}, {**ea, **eb})


@lru_cache(maxsize=None)
def arena_of_type(t: Type) -> Arena:
    if isinstance(t, (Nat, Bool)):
        return flat_arena(t)
    if isinstance(t, Unit):
        return unit_arena()
    if isinstance(t, Arrow):
        return arrow(arena_of_type(t.dom), arena_of_type(t.cod))
    if isinstance(t, Product):
        return product(arena_of_type(t.left), arena_of_type(t.right))
    raise TypeError(t)


def context_type(types) -> Type:
    """Right-nested product of context types; Unit when empty."""
    types = list(types)
    if not types:
        return UNIT
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Product(t, result)
    return result


def context_paths(n: int) -> list[str]:
    """Type-node paths of the components of ``context_type`` with n entries."""
    if n == 1:
        return [""]
    return ["r" * i + ("l" if i < n - 1 else "") for i in range(n)]


__all__ = [
    "Arena", "Move", "O", "P", "QUESTION", "ANSWER", "flat_arena", "arrow", "product",
    "unit_arena", "arena_of_type", "question", "answer", "polarity_of", "flip",
    "initial_paths", "subtype_at", "context_type", "context_paths", "render_payload",
    "render_kind", "NAT", "BOOL",
]

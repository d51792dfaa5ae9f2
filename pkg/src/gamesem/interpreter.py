"""Terms as innocent strategies.

The strategy of a term answers a P-view by replaying it through a call-by-name
machine.  Every O-question in the view starts a *thread*: the evaluation, to a
ground value, of the closure that question asks about.  Variables bound by O
are symbolic; evaluation that reaches one with a full spine of eliminations
becomes a P-question pointing at the binding O-question.  O's next move in the
view either answers that question (the thread resumes with the value) or asks
about one of its arguments (a fresh thread on that argument closure).  A
thread that reaches a value answers its own question.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .arena import (
    ANSWER, answer, arena_of_type, arrow, context_paths, context_type, initial_paths,
    question,
)
from .composition import InteractionTrace, interact
from .plays import Event, JustifiedPlay
from .strategy import (
    FuelExhausted, IllegalPlay, PlaySetStrategy, Strategy, ViewFunctionStrategy, all_well_bracketed,
    is_innocent, view_table,
)
from .syntax import (
    BOOL, FF, TT, Add, App, BoolLit, Cond, Fix, Fst, IfZ, Lam, Mul, NumLit, Omega, Pair, Snd, Sq,
    Sub, Term, Type, TypedTerm, Var, apply, check, finitary, is_ground, _has_product, numerals,
    show_type, uncurry,
)


class _Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOTTOM"

    def __str__(self) -> str:
        return "undefined"


BOTTOM = _Undefined()
"""The undefined value of a flat domain."""


def show_value(v) -> str:
    if v is BOTTOM:
        return "undefined"
    if isinstance(v, bool):
        return "tt" if v else "ff"
    return str(v)


# ---------------------------------------------------------------- the machine


class _Closure:
    __slots__ = ("term", "env")

    def __init__(self, term: Term, env: dict):
        self.term = term
        self.env = env


class _Sym:
    """A value supplied by Opponent: type node ``node``, bound by view move ``binder``."""
    __slots__ = ("binder", "node")

    def __init__(self, binder: int, node: str):
        self.binder = binder
        self.node = node


class _Diverge(Exception):
    pass


_FIX_ARG = "%f"


class _Run:
    def __init__(self, fuel: int):
        self.fuel = fuel

    def tick(self):
        self.fuel -= 1
        if self.fuel < 0:
            raise FuelExhausted("evaluation ran out of fuel")

    def eval(self, term: Term, env: dict, spine: list):
        """Evaluate to a ground value; ``spine`` is a stack of pending eliminations."""
        while True:
            self.tick()
            if isinstance(term, Var):
                v = env[term.name]
                if isinstance(v, _Sym):
                    path, args = v.node, {}
                    for el in reversed(spine):
                        if el[0] == "app":
                            args[path + "d"] = el[1]
                            path += "c"
                        else:
                            path += "l" if el[0] == "fst" else "r"
                    return (yield (v.binder, path, args))
                term, env = v.term, v.env
            elif isinstance(term, App):
                spine.append(("app", _Closure(term.arg, env)))
                term = term.fun
            elif isinstance(term, Lam):
                _, arg = spine.pop()
                env = {**env, term.name: arg}
                term = term.body
            elif isinstance(term, Pair):
                el = spine.pop()
                term = term.left if el[0] == "fst" else term.right
            elif isinstance(term, Fst):
                spine.append(("fst",))
                term = term.arg
            elif isinstance(term, Snd):
                spine.append(("snd",))
                term = term.arg
            elif isinstance(term, (NumLit, BoolLit)):
                return term.n if isinstance(term, NumLit) else term.b
            elif isinstance(term, (Add, Mul, Sub)):
                a = yield from self.eval(term.left, env, [])
                b = yield from self.eval(term.right, env, [])
                if isinstance(term, Add):
                    return a + b
                if isinstance(term, Mul):
                    return a * b
                return max(a - b, 0)
            elif isinstance(term, Sq):
                a = yield from self.eval(term.arg, env, [])
                return a * a
            elif isinstance(term, (IfZ, Cond)):
                v = yield from self.eval(term.test, env, [])
                taken = (v == 0) if isinstance(term, IfZ) else v
                term = term.then if taken else term.other
            elif isinstance(term, Fix):
                _, f = spine.pop()
                unfolded = _Closure(App(term, Var(_FIX_ARG)), {_FIX_ARG: f})
                spine.append(("app", unfolded))
                term, env = f.term, f.env
            elif isinstance(term, Omega):
                raise _Diverge
            else:
                raise TypeError(f"cannot evaluate {type(term).__name__}")


def _spine_for(binder: int, node: str, rel: str) -> list:
    """Eliminations that take the value at ``node`` down to the question at ``node + rel``."""
    elims = []
    for i, tag in enumerate(rel):
        if tag == "c":
            elims.append(("app", _Sym(binder, node + rel[:i] + "d")))
        elif tag == "l":
            elims.append(("fst",))
        elif tag == "r":
            elims.append(("snd",))
        else:
            raise ValueError(f"question path leaves the type node at {node!r}")
    elims.reverse()
    return elims


def _arg_node(path: str, args: dict) -> Optional[str]:
    cut = path.rfind("d")
    if cut < 0:
        return None
    node = path[:cut + 1]
    return node if node in args else None


class TermStrategy(ViewFunctionStrategy):
    """The innocent strategy of a term, computed lazily per P-view."""

    def __init__(self, typed: TypedTerm, lifted: bool = False, fuel: int = 10_000):
        self.typed = typed
        self.fuel = fuel
        ctx = typed.context
        if ctx or lifted:
            arena = arrow(arena_of_type(context_type(t for _, t in ctx)), arena_of_type(typed.type))
            self.root = "c"
            self.ctx_nodes = ["d" + p for p in context_paths(len(ctx))] if ctx else []
        else:
            arena = arena_of_type(typed.type)
            self.root = ""
            self.ctx_nodes = []
        super().__init__(arena, rule=self._replay, payloads=numerals(typed.term))

    def _root_thread(self, run: _Run, binder: int, path: str):
        if not path.startswith(self.root):
            raise IllegalPlay(f"{path!r} is not an initial question")
        env = {name: _Sym(binder, node)
               for (name, _), node in zip(self.typed.context, self.ctx_nodes)}
        spine = _spine_for(binder, self.root, path[len(self.root):])
        return run.eval(self.typed.term, env, spine)

    def _replay(self, view: JustifiedPlay):
        events = view.events
        run = _Run(self.fuel)
        first, _ = events[0]
        gen = self._root_thread(run, 0, first.path)
        thread = 0
        value = None
        pos = 1
        while True:
            try:
                binder, path, args = gen.send(value)
                move, ptr = question(path), binder
            except StopIteration as stop:
                args = None
                move, ptr = answer(events[thread].move.path, stop.value), thread
            except _Diverge:
                return None
            if pos == len(events):
                return move, ptr
            if events[pos] != Event(move, ptr):
                return None
            if pos + 1 >= len(events):
                return None
            o, j = events[pos + 1]
            if j != pos or args is None:
                return None
            if o.kind == ANSWER:
                if o.path != move.path:
                    return None
                value = o.payload
            else:
                node = _arg_node(o.path, args)
                if node is None:
                    return None
                arg = args[node]
                thread = pos + 1
                gen = run.eval(arg.term, arg.env, _spine_for(thread, node, o.path[len(node):]))
                value = None
            pos += 2


@dataclass(frozen=True)
class Denotation:
    term: TypedTerm
    strategy: TermStrategy


def denote(t: TypedTerm, lifted: bool = False, fuel: int = 10_000) -> Denotation:
    """Strategy of ``t`` on ``context => type`` (just ``type`` for closed terms unless ``lifted``)."""
    return Denotation(t, TermStrategy(t, lifted, fuel))


def evaluate(t: TypedTerm, fuel: int = 10_000):
    """Play the strategy of a closed ground term against O's opening question."""
    if t.context or not is_ground(t.type):
        raise ValueError("evaluate needs a closed term of ground type")
    sigma = TermStrategy(t, fuel=fuel)
    r = sigma.respond_view(JustifiedPlay((Event(question(""), None),)))
    if r is None:
        return BOTTOM
    return r[0].payload


def value_term(v, ty: Type) -> Term:
    if v is BOTTOM:
        return Omega(ty)
    if isinstance(v, bool):
        return TT if v else FF
    return NumLit(v)


# ---------------------------------------------------------------- application traces


def application_parts(f: TypedTerm, args: Sequence[TypedTerm]):
    """Split ``f a1 .. am`` applied to remaining inputs into (sigma, tau, n_inputs).

    tau is ``f`` uncurried over all its parameters; sigma pairs the given
    arguments with the identity on the parameters left to the environment.
    """
    if f.context:
        raise ValueError("the applied function must be closed")
    params, result = uncurry(f.type)
    if len(args) > len(params):
        raise ValueError("too many arguments")
    for i, (a, p) in enumerate(zip(args, params)):
        if a.context or a.type != p:
            raise ValueError(f"argument {i} has type {show_type(a.type)}, expected {show_type(p)}")
    names = [f"p{i}" for i in range(len(params))]
    body = apply(f.term, *(Var(n) for n in names))
    tau = check(body, list(zip(names, params)))
    rest = list(zip(names[len(args):], params[len(args):]))
    parts = [a.term for a in args] + [Var(n) for n, _ in rest]
    pair = parts[-1]
    for p in reversed(parts[:-1]):
        pair = Pair(p, pair)
    sigma = check(pair, rest)
    return sigma, tau, rest


def trace_application(f: TypedTerm, args: Sequence[TypedTerm], inputs: Sequence = (),
                      fuel: int = 10_000) -> InteractionTrace:
    """The un-hidden interaction of ``f`` with ``args``; ground ``inputs`` are
    supplied by the environment for the parameters left over."""
    sigma_t, tau_t, rest = application_parts(f, args)
    if len(inputs) != len(rest):
        raise ValueError(f"expected {len(rest)} environment inputs, got {len(inputs)}")
    if any(not is_ground(t) for _, t in rest) or not is_ground(tau_t.type):
        raise ValueError("only ground inputs and ground results can be traced")
    sigma = TermStrategy(sigma_t, lifted=True, fuel=fuel)
    tau = TermStrategy(tau_t, fuel=fuel)
    paths = context_paths(len(rest)) if rest else []
    supply = dict(zip(paths, inputs))

    def env(external):
        """Open with the result question, then answer input questions from ``supply``."""
        if not external.events:
            return [(question("c"), None)]
        top = external.stack[-1] if external.stack else None
        if top is None:
            return []
        qm = external.events[top].move
        if qm.polarity == "P" and qm.path.startswith("d"):
            v = supply.get(qm.path[1:], BOTTOM)
            if v is not BOTTOM:
                return [(answer(qm.path, v), top)]
        return []

    (trace,) = interact(sigma, tau, fuel, depth=fuel, env=env)
    return trace


# ---------------------------------------------------------------- definability


class NotDefinable(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def extract_term(sigma: Strategy, t: Type, max_len: int = 64) -> Term:
    """Read a finitary term off a compact innocent, well-bracketed strategy.

    The response to a view names the head: a P-answer gives a constant, a
    P-question names the head variable (bound by the O-question it points to),
    whose arguments are read off the views that ask into them and whose
    answers are cased on left to right (``tt`` branch first).
    """
    if not finitary(t) or _has_product(t):
        raise NotDefinable(f"extraction supports finitary arrow types only, not {show_type(t)}")
    if isinstance(sigma, PlaySetStrategy):
        v = is_innocent(sigma)
        if not v:
            raise NotDefinable(f"strategy is not innocent: {v.reason}", v.witness)
        wb = all_well_bracketed(sigma)
        if not wb:
            raise NotDefinable(f"strategy is not well-bracketed: {wb.reason}")
    if not isinstance(sigma, ViewFunctionStrategy) or sigma.rule is not None:
        sigma = view_table(sigma, max_len=max_len)
    bad = sigma.validate()
    if not bad:
        raise NotDefinable(f"strategy table is not legal and well-bracketed: {bad.reason}")
    return _Extractor(sigma, t).root()


class _Extractor:
    def __init__(self, sigma: ViewFunctionStrategy, t: Type):
        self.sigma = sigma
        self.type = t
        self.depth = 0

    def root(self) -> Term:
        (path,) = initial_paths(self.type)
        view = JustifiedPlay((Event(question(path), None),))
        return self.at_question(view, "", self.type, {}, 0)

    def at_question(self, view: JustifiedPlay, node: str, ty: Type, scope: dict, depth: int) -> Term:
        """Term for the closure asked about by the O-question ending ``view``."""
        binder = len(view) - 1
        params, _ = uncurry(ty)
        names = []
        scope = dict(scope)
        for i, p in enumerate(params):
            name = f"x{depth + i}"
            scope[(binder, node + "c" * i + "d")] = (name, p)
            names.append((name, p))
        body = self.body(view, scope, depth + len(params))
        for name, p in reversed(names):
            body = Lam(name, p, body)
        return body

    def body(self, view: JustifiedPlay, scope: dict, depth: int) -> Term:
        r = self.sigma.respond_view(view)
        if r is None:
            return Omega(BOOL)
        m, k = r
        if m.kind == ANSWER:
            return TT if m.payload else FF
        last = len(view)
        ext = view.extend(m, k)
        key = next(((b, n) for (b, n) in scope
                    if b == k and m.path.startswith(n) and set(m.path[len(n):]) <= {"c"}), None)
        if key is None:
            raise NotDefinable(f"question at @{m.path} does not name a bound variable")
        name, vty = scope[key]
        params, _ = uncurry(vty)
        args = []
        for i, arg_ty in enumerate(params):
            arg_node = key[1] + "c" * i + "d"
            (rel,) = initial_paths(arg_ty)
            o_view = ext.extend(question(arg_node + rel), last)
            args.append(self.at_question(o_view, arg_node, arg_ty, scope, depth))
        neutral = apply(Var(name), *args)
        branches = [self.body(ext.extend(answer(m.path, b), last), scope, depth)
                    for b in (True, False)]
        if branches == [TT, FF]:
            return neutral
        return Cond(neutral, *branches)

"""PCF and Finitary PCF: types, terms, parser, printer, typechecker, enumeration.

Concrete syntax::

    types   N | B | T -> T | T * T | (T)
    terms   \\x:T. e | e1 e2 | (e1, e2) | fst e | snd e | tt | ff | 0 1 2 ...
            add e1 e2 | mul e1 e2 | sub e1 e2 | sq e
            ifz e e1 e2 | cond e e1 e2 | fix[T] | omega[T]

``--`` starts a comment that runs to the end of the line.  ``->`` is right
associative, ``*`` binds tighter than ``->``.  The primitive forms take their
operands at argument level, so compound operands need parentheses.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import count
from typing import Iterable, Iterator, Optional, Sequence


# ---------------------------------------------------------------- types


class Type:
    __slots__ = ()

    def __str__(self) -> str:
        return show_type(self)


@dataclass(frozen=True)
class Nat(Type):
    pass


@dataclass(frozen=True)
class Bool(Type):
    pass


@dataclass(frozen=True)
class Arrow(Type):
    dom: Type
    cod: Type


@dataclass(frozen=True)
class Product(Type):
    left: Type
    right: Type


@dataclass(frozen=True)
class Unit(Type):
    """Empty product; only used to build arenas for empty contexts."""


NAT = Nat()
BOOL = Bool()
UNIT = Unit()


def arrows(*types: Type) -> Type:
    """``arrows(A, B, C)`` is ``A -> B -> C``."""
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Arrow(t, result)
    return result


def is_ground(t: Type) -> bool:
    return isinstance(t, (Nat, Bool))


def order(t: Type) -> int:
    if isinstance(t, Arrow):
        return max(order(t.dom) + 1, order(t.cod))
    if isinstance(t, Product):
        return max(order(t.left), order(t.right))
    return 0


def finitary(t: Type) -> bool:
    if isinstance(t, Nat):
        return False
    if isinstance(t, Arrow):
        return finitary(t.dom) and finitary(t.cod)
    if isinstance(t, Product):
        return finitary(t.left) and finitary(t.right)
    return True


def type_size(t: Type) -> int:
    if isinstance(t, Arrow):
        return 1 + type_size(t.dom) + type_size(t.cod)
    if isinstance(t, Product):
        return 1 + type_size(t.left) + type_size(t.right)
    return 1


def uncurry(t: Type) -> tuple[list[Type], Type]:
    """Split ``A1 -> ... -> An -> R`` into ``([A1..An], R)`` with R not an arrow."""
    args = []
    while isinstance(t, Arrow):
        args.append(t.dom)
        t = t.cod
    return args, t


def show_type(t: Type) -> str:
    if isinstance(t, Nat):
        return "N"
    if isinstance(t, Bool):
        return "B"
    if isinstance(t, Unit):
        return "1"
    if isinstance(t, Arrow):
        dom = show_type(t.dom)
        if isinstance(t.dom, Arrow):
            dom = f"({dom})"
        return f"{dom}->{show_type(t.cod)}"
    if isinstance(t, Product):
        left = show_type(t.left)
        right = show_type(t.right)
        if isinstance(t.left, (Arrow, Product)):
            left = f"({left})"
        if isinstance(t.right, Arrow):
            right = f"({right})"
        return f"{left}*{right}"
    raise TypeError(t)


# ---------------------------------------------------------------- terms


class Term:
    __slots__ = ()

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Lam(Term):
    name: str
    ty: Type
    body: Term


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True)
class Pair(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Fst(Term):
    arg: Term


@dataclass(frozen=True)
class Snd(Term):
    arg: Term


@dataclass(frozen=True)
class NumLit(Term):
    n: int


@dataclass(frozen=True)
class BoolLit(Term):
    b: bool


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Sub(Term):
    """Truncated subtraction (monus)."""
    left: Term
    right: Term


@dataclass(frozen=True)
class Sq(Term):
    """Square of a natural, interrogating its operand once."""
    arg: Term


@dataclass(frozen=True)
class IfZ(Term):
    test: Term
    then: Term
    other: Term


@dataclass(frozen=True)
class Cond(Term):
    test: Term
    then: Term
    other: Term


@dataclass(frozen=True)
class Fix(Term):
    at: Type


@dataclass(frozen=True)
class Omega(Term):
    at: Type


TT = BoolLit(True)
FF = BoolLit(False)

ARITH = (Add, Mul, Sub)
BRANCH = (IfZ, Cond)


def apply(f: Term, *args: Term) -> Term:
    for a in args:
        f = App(f, a)
    return f


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, Lam):
        return (t.body,)
    if isinstance(t, (App,)):
        return (t.fun, t.arg)
    if isinstance(t, (Pair, Add, Mul, Sub)):
        return (t.left, t.right)
    if isinstance(t, (Fst, Snd, Sq)):
        return (t.arg,)
    if isinstance(t, (IfZ, Cond)):
        return (t.test, t.then, t.other)
    return ()


def size(t: Term) -> int:
    """AST node count; type annotations are not counted."""
    return 1 + sum(size(c) for c in children(t))


def free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Lam):
        return free_vars(t.body) - {t.name}
    out: frozenset[str] = frozenset()
    for c in children(t):
        out |= free_vars(c)
    return out


def numerals(t: Term) -> frozenset[int]:
    if isinstance(t, NumLit):
        return frozenset((t.n,))
    out: frozenset[int] = frozenset()
    for c in children(t):
        out |= numerals(c)
    return out


def is_finitary_term(t: Term) -> bool:
    if isinstance(t, (Var, BoolLit)):
        return True
    if isinstance(t, Omega):
        return finitary(t.at)
    if isinstance(t, Lam):
        return finitary(t.ty) and is_finitary_term(t.body)
    if isinstance(t, (App, Cond)):
        return all(is_finitary_term(c) for c in children(t))
    return False


# ---------------------------------------------------------------- printing

_KEYWORDS = {
    "fst", "snd", "tt", "ff", "add", "mul", "sub", "sq", "ifz", "cond",
    "fix", "omega", "N", "B",
}

_LAM, _APP, _ATOM = 0, 1, 2


def _level(t: Term) -> int:
    if isinstance(t, Lam):
        return _LAM
    if isinstance(t, (App, Fst, Snd, Sq, Add, Mul, Sub, IfZ, Cond)):
        return _APP
    return _ATOM


def show(t: Term) -> str:
    """Print a term in the concrete syntax; ``parse(show(t)) == t``."""
    return _show(t, _LAM)


def _show(t: Term, ctx: int) -> str:
    s = _show_bare(t)
    return f"({s})" if _level(t) < ctx else s


def _show_bare(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Lam):
        return f"\\{t.name}:{show_type(t.ty)}. {_show(t.body, _LAM)}"
    if isinstance(t, App):
        return f"{_show(t.fun, _APP)} {_show(t.arg, _ATOM)}"
    if isinstance(t, Pair):
        return f"({_show(t.left, _LAM)}, {_show(t.right, _LAM)})"
    if isinstance(t, NumLit):
        return str(t.n)
    if isinstance(t, BoolLit):
        return "tt" if t.b else "ff"
    if isinstance(t, Fix):
        return f"fix[{show_type(t.at)}]"
    if isinstance(t, Omega):
        return f"omega[{show_type(t.at)}]"
    keyword = {Fst: "fst", Snd: "snd", Sq: "sq", Add: "add", Mul: "mul",
               Sub: "sub", IfZ: "ifz", Cond: "cond"}[type(t)]
    return " ".join([keyword] + [_show(c, _ATOM) for c in children(t)])


# ---------------------------------------------------------------- parsing


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>--[^\n]*)"
    r"|(?P<arrow>->)|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<punct>[\\:.(),\[\]*])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            value = m.group()
            if kind == "ident" and value in _KEYWORDS:
                kind = "kw"
            elif kind in ("punct", "arrow"):
                kind = value
            toks.append(_Tok(kind, value, line, col))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


_UNARY = {"fst": Fst, "snd": Snd, "sq": Sq}
_BINARY = {"add": Add, "mul": Mul, "sub": Sub}
_TERNARY = {"ifz": IfZ, "cond": Cond}


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str):
        raise ParseError(message, self.tok.line, self.tok.col)

    def expect(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            found = self.tok.text or "end of input"
            self.error(f"expected {kind!r}, found {found!r}")
        tok = self.tok
        self.i += 1
        return tok

    # types
    def type_(self) -> Type:
        left = self.prod_type()
        if self.tok.kind == "->":
            self.i += 1
            return Arrow(left, self.type_())
        return left

    def prod_type(self) -> Type:
        left = self.atom_type()
        if self.tok.kind == "*":
            self.i += 1
            return Product(left, self.prod_type())
        return left

    def atom_type(self) -> Type:
        tok = self.tok
        if tok.kind == "kw" and tok.text in ("N", "B"):
            self.i += 1
            return NAT if tok.text == "N" else BOOL
        if tok.kind == "(":
            self.i += 1
            t = self.type_()
            self.expect(")")
            return t
        self.error(f"expected a type, found {tok.text or 'end of input'!r}")

    # terms
    def term(self) -> Term:
        if self.tok.kind == "\\":
            self.i += 1
            name = self.expect("ident").text
            self.expect(":")
            ty = self.type_()
            self.expect(".")
            return Lam(name, ty, self.term())
        return self.application()

    def application(self) -> Term:
        tok = self.tok
        if tok.kind == "kw" and tok.text in _UNARY:
            self.i += 1
            head = _UNARY[tok.text](self.atom())
        elif tok.kind == "kw" and tok.text in _BINARY:
            self.i += 1
            head = _BINARY[tok.text](self.atom(), self.atom())
        elif tok.kind == "kw" and tok.text in _TERNARY:
            self.i += 1
            head = _TERNARY[tok.text](self.atom(), self.atom(), self.atom())
        else:
            head = self.atom()
        while self.starts_atom():
            head = App(head, self.atom())
        return head

    def starts_atom(self) -> bool:
        tok = self.tok
        if tok.kind in ("ident", "num", "("):
            return True
        return tok.kind == "kw" and tok.text in ("tt", "ff", "fix", "omega")

    def atom(self) -> Term:
        tok = self.tok
        if tok.kind == "ident":
            self.i += 1
            return Var(tok.text)
        if tok.kind == "num":
            self.i += 1
            return NumLit(int(tok.text))
        if tok.kind == "kw" and tok.text in ("tt", "ff"):
            self.i += 1
            return BoolLit(tok.text == "tt")
        if tok.kind == "kw" and tok.text in ("fix", "omega"):
            self.i += 1
            self.expect("[")
            ty = self.type_()
            self.expect("]")
            return Fix(ty) if tok.text == "fix" else Omega(ty)
        if tok.kind == "(":
            self.i += 1
            inner = self.term()
            if self.tok.kind == ",":
                self.i += 1
                right = self.term()
                self.expect(")")
                return Pair(inner, right)
            self.expect(")")
            return inner
        self.error(f"expected a term, found {tok.text or 'end of input'!r}")


def parse(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r}")
    return t


def parse_type(text: str) -> Type:
    p = _Parser(text)
    t = p.type_()
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r}")
    return t


# ---------------------------------------------------------------- typing


class TypeCheckError(Exception):
    def __init__(self, message: str, subterm: Optional[Term] = None,
                 expected: Optional[Type] = None, actual: Optional[Type] = None):
        where = f" in `{show(subterm)}`" if subterm is not None else ""
        super().__init__(message + where)
        self.subterm = subterm
        self.expected = expected
        self.actual = actual


Context = tuple[tuple[str, Type], ...]


@dataclass(frozen=True)
class TypedTerm:
    term: Term
    context: Context
    type: Type

    def __str__(self) -> str:
        ctx = ", ".join(f"{x}:{show_type(t)}" for x, t in self.context)
        return f"{ctx} |- {show(self.term)} : {show_type(self.type)}"


def _lookup(ctx: Sequence[tuple[str, Type]], name: str) -> Optional[Type]:
    for x, t in reversed(ctx):
        if x == name:
            return t
    return None


def typecheck(ctx: Sequence[tuple[str, Type]], t: Term) -> Type:
    ctx = tuple(ctx)

    def mismatch(sub, expected, actual):
        raise TypeCheckError(
            f"type mismatch: expected {show_type(expected)}, got {show_type(actual)}",
            sub, expected, actual)

    def want(sub, expected, env):
        actual = go(sub, env)
        if actual != expected:
            mismatch(sub, expected, actual)

    def go(t: Term, env) -> Type:
        if isinstance(t, Var):
            ty = _lookup(env, t.name)
            if ty is None:
                raise TypeCheckError(f"unbound variable {t.name}", t)
            return ty
        if isinstance(t, Lam):
            return Arrow(t.ty, go(t.body, env + ((t.name, t.ty),)))
        if isinstance(t, App):
            f = go(t.fun, env)
            if not isinstance(f, Arrow):
                raise TypeCheckError(
                    f"cannot apply a term of type {show_type(f)}", t.fun, None, f)
            want(t.arg, f.dom, env)
            return f.cod
        if isinstance(t, Pair):
            return Product(go(t.left, env), go(t.right, env))
        if isinstance(t, (Fst, Snd)):
            p = go(t.arg, env)
            if not isinstance(p, Product):
                raise TypeCheckError(
                    f"projection from non-product type {show_type(p)}", t.arg, None, p)
            return p.left if isinstance(t, Fst) else p.right
        if isinstance(t, NumLit):
            if t.n < 0:
                raise TypeCheckError("negative numeral", t)
            return NAT
        if isinstance(t, BoolLit):
            return BOOL
        if isinstance(t, (Add, Mul, Sub)):
            want(t.left, NAT, env)
            want(t.right, NAT, env)
            return NAT
        if isinstance(t, Sq):
            want(t.arg, NAT, env)
            return NAT
        if isinstance(t, (IfZ, Cond)):
            want(t.test, NAT if isinstance(t, IfZ) else BOOL, env)
            a = go(t.then, env)
            if not is_ground(a):
                raise TypeCheckError(
                    f"branches must have ground type, got {show_type(a)}", t.then, None, a)
            want(t.other, a, env)
            return a
        if isinstance(t, Fix):
            return Arrow(Arrow(t.at, t.at), t.at)
        if isinstance(t, Omega):
            return t.at
        raise TypeCheckError(f"unknown term node {type(t).__name__}", t)

    return go(t, ctx)


def check(t: Term, context: Sequence[tuple[str, Type]] = ()) -> TypedTerm:
    context = tuple(context)
    return TypedTerm(t, context, typecheck(context, t))


def check_text(text: str, context: Sequence[tuple[str, Type]] = ()) -> TypedTerm:
    return check(parse(text), context)


# ---------------------------------------------------------------- reduction

_fresh = count()


def _fresh_name(base: str, avoid: frozenset[str]) -> str:
    stem = base.rstrip("'0123456789") or "v"
    while True:
        name = f"{stem}_{next(_fresh)}"
        if name not in avoid:
            return name


def substitute(t: Term, name: str, value: Term) -> Term:
    """Capture-avoiding ``t[value/name]``."""
    if isinstance(t, Var):
        return value if t.name == name else t
    if isinstance(t, Lam):
        if t.name == name:
            return t
        fv = free_vars(value)
        if t.name in fv:
            fresh = _fresh_name(t.name, fv | free_vars(t.body))
            body = substitute(t.body, t.name, Var(fresh))
            return Lam(fresh, t.ty, substitute(body, name, value))
        return Lam(t.name, t.ty, substitute(t.body, name, value))
    kids = children(t)
    if not kids:
        return t
    return type(t)(*(substitute(c, name, value) for c in kids))


def beta_step(t: Term) -> Optional[Term]:
    """One leftmost-outermost beta step, or None if ``t`` is beta-normal."""
    if isinstance(t, App) and isinstance(t.fun, Lam):
        return substitute(t.fun.body, t.fun.name, t.arg)
    if isinstance(t, Lam):
        body = beta_step(t.body)
        return None if body is None else Lam(t.name, t.ty, body)
    kids = children(t)
    for i, c in enumerate(kids):
        r = beta_step(c)
        if r is not None:
            new = list(kids)
            new[i] = r
            return type(t)(*new)
    return None


def beta_normalize(t: Term, fuel: int = 10_000) -> Term:
    for _ in range(fuel):
        r = beta_step(t)
        if r is None:
            return t
        t = r
    raise RuntimeError("beta normalization did not terminate within fuel")


# ---------------------------------------------------------------- enumeration


def _var(depth: int) -> str:
    return f"x{depth}"


def _is_eta_redex(t: Term, depth: int) -> bool:
    """``\\x. M x`` with x not free in M, where x is bound at ``depth``."""
    return (isinstance(t, App) and t.arg == Var(_var(depth))
            and _var(depth) not in free_vars(t.fun))


def _check_finitary(t: Type):
    if not finitary(t) or _has_product(t):
        raise ValueError(f"enumeration needs a finitary arrow type, got {show_type(t)}")


def _has_product(t: Type) -> bool:
    if isinstance(t, Product):
        return True
    if isinstance(t, Arrow):
        return _has_product(t.dom) or _has_product(t.cod)
    return False


@lru_cache(maxsize=None)
def _normal(ctx: tuple[Type, ...], t: Type, n: int) -> tuple[Term, ...]:
    """Normal terms of exact size n at type t; variable i is named ``x{i}``."""
    if n <= 0:
        return ()
    out: list[Term] = []
    if isinstance(t, Arrow):
        depth = len(ctx)
        for body in _normal(ctx + (t.dom,), t.cod, n - 1):
            if not _is_eta_redex(body, depth):
                out.append(Lam(_var(depth), t.dom, body))
    else:
        if n == 1:
            out.extend((TT, FF, Omega(BOOL)))
        for k in range(1, n - 2):
            for test in _normal(ctx, BOOL, k):
                if isinstance(test, (BoolLit, Omega)):
                    continue
                for j in range(1, n - 1 - k):
                    rest = n - 1 - k - j
                    for a in _normal(ctx, BOOL, j):
                        for b in _normal(ctx, BOOL, rest):
                            out.append(Cond(test, a, b))
    out.extend(_neutral(ctx, t, n))
    return tuple(out)


@lru_cache(maxsize=None)
def _neutral(ctx: tuple[Type, ...], t: Type, n: int) -> tuple[Term, ...]:
    """Variable-headed spines ``x M1 .. Mj`` of exact size n at type t."""
    out: list[Term] = []
    for i, vt in enumerate(ctx):
        args, _ = uncurry(vt)
        rest = vt
        for j in range(len(args) + 1):
            if rest == t:
                for spine in _spines(ctx, tuple(args[:j]), n - 1 - j):
                    out.append(apply(Var(_var(i)), *spine))
            if j < len(args):
                rest = rest.cod
    return tuple(out)


@lru_cache(maxsize=None)
def _spines(ctx, arg_types, n) -> tuple[tuple[Term, ...], ...]:
    if not arg_types:
        return ((),) if n == 0 else ()
    out = []
    first, rest = arg_types[0], arg_types[1:]
    for k in range(1, n - len(rest) + 1):
        for a in _normal(ctx, first, k):
            for tail in _spines(ctx, rest, n - k):
                out.append((a,) + tail)
    return tuple(out)


def enumerate_normal_terms(t: Type, size_bound: int) -> Iterator[Term]:
    """Closed beta-normal finitary terms of type ``t`` by nondecreasing size.

    Excluded: eta-redexes ``\\x. M x``, conditionals whose test is a literal
    or ``omega``, and ``omega`` above ground type (``\\x. omega[B]`` covers it).
    """
    _check_finitary(t)
    if size_bound < 1:
        raise ValueError("size_bound must be at least 1")
    for n in range(1, size_bound + 1):
        yield from _normal((), t, n)


def count_normal_terms(t: Type, size_bound: int) -> int:
    """Count the terms ``enumerate_normal_terms`` yields without building them."""
    _check_finitary(t)
    return sum(_count((), t, n, False) for n in range(1, size_bound + 1))


@lru_cache(maxsize=None)
def _count(ctx, t, n, neutral_only) -> int:
    # Counts by the same grammar but tracks eta-redexes and literal tests by
    # subtraction instead of filtering built terms.
    if n <= 0:
        return 0
    total = 0
    for i, vt in enumerate(ctx):
        args, _ = uncurry(vt)
        rest = vt
        for j in range(len(args) + 1):
            if rest == t:
                total += _count_spine(ctx, tuple(args[:j]), n - 1 - j)
            if j < len(args):
                rest = rest.cod
    if neutral_only:
        return total
    if isinstance(t, Arrow):
        depth = len(ctx)
        bodies = _count(ctx + (t.dom,), t.cod, n - 1, False)
        total += bodies - _count_eta(ctx + (t.dom,), t.cod, n - 1, depth)
        return total
    if n == 1:
        total += 3
    for k in range(1, n - 2):
        tests = _count(ctx, BOOL, k, False) - (3 if k == 1 else 0)
        if tests == 0:
            continue
        for j in range(1, n - 1 - k):
            total += tests * _count(ctx, BOOL, j, False) * _count(ctx, BOOL, n - 1 - k - j, False)
    return total


@lru_cache(maxsize=None)
def _count_spine(ctx, arg_types, n) -> int:
    if not arg_types:
        return 1 if n == 0 else 0
    return sum(_count(ctx, arg_types[0], k, False) * _count_spine(ctx, arg_types[1:], n - k)
               for k in range(1, n - len(arg_types) + 2))


def _count_eta(ctx, t, n, depth) -> int:
    """Bodies of size n at type t of the form ``M x_depth`` with x_depth not free in M."""
    # M is a neutral of type (ctx[depth] -> t) over the smaller context; its
    # variables all come from ctx[:depth], so count it there.
    if n < 3:
        return 0
    return _count(ctx[:depth], Arrow(ctx[depth], t), n - 2, True)


# ---------------------------------------------------------------- terms with redexes


def _dom_types(t: Type, acc: set):
    if isinstance(t, Arrow):
        acc.add(t.dom)
        _dom_types(t.dom, acc)
        _dom_types(t.cod, acc)


@lru_cache(maxsize=None)
def _any(ctx: tuple[Type, ...], t: Type, n: int, arg_types: frozenset) -> tuple[Term, ...]:
    """All finitary terms of exact size n (redexes allowed), arguments typed from ``arg_types``."""
    if n <= 0:
        return ()
    out: list[Term] = []
    if isinstance(t, Arrow):
        depth = len(ctx)
        out.extend(Lam(_var(depth), t.dom, body) for body in _any(ctx + (t.dom,), t.cod, n - 1, arg_types))
    elif n == 1:
        out.extend((TT, FF, Omega(BOOL)))
    if n == 1:
        out.extend(Var(_var(i)) for i, vt in enumerate(ctx) if vt == t)
    if isinstance(t, Bool):
        for k in range(1, n - 2):
            for j in range(1, n - 1 - k):
                for test in _any(ctx, BOOL, k, arg_types):
                    for a in _any(ctx, BOOL, j, arg_types):
                        for b in _any(ctx, BOOL, n - 1 - k - j, arg_types):
                            out.append(Cond(test, a, b))
    for s in sorted(arg_types, key=show_type):
        for k in range(1, n - 1):
            for f in _any(ctx, Arrow(s, t), k, arg_types):
                for a in _any(ctx, s, n - 1 - k, arg_types):
                    out.append(App(f, a))
    return tuple(out)


def has_redex(t: Term) -> bool:
    if isinstance(t, App) and isinstance(t.fun, Lam):
        return True
    return any(has_redex(c) for c in children(t))


def enumerate_redex_terms(t: Type, size_bound: int, binder_types: Iterable[Type] = ()) -> Iterator[Term]:
    """Closed finitary terms of type ``t`` with at least one beta-redex, by size.

    Applications take arguments of the types in ``binder_types`` or of any
    domain occurring in ``t``.
    """
    _check_finitary(t)
    arg_types = set(binder_types)
    _dom_types(t, arg_types)
    for s in list(arg_types):
        _check_finitary(s)
        _dom_types(s, arg_types)
    frozen = frozenset(arg_types)
    for n in range(1, size_bound + 1):
        for term in _any((), t, n, frozen):
            if has_redex(term):
                yield term

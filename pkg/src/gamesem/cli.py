"""``gamesem``: command-line front end."""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import domains as dom
from .arena import answer, arena_of_type, question
from .automata import (
    equivalent, hopcroft_minimize, isomorphic, make_dfa, nerode_minimize, random_dfa,
    term_equiv,
)
from .automata.dfa import from_playset
from .composition import COMPLETE
from .interpreter import (
    BOTTOM, NotDefinable, denote, evaluate, extract_term, show_value, trace_application,
)
from .plays import JustifiedPlay, format_trace, is_legal, is_well_bracketed
from .strategy import FuelExhausted, IllegalPlay, ViewFunctionStrategy, plays_of
from .syntax import (
    ParseError, TypeCheckError, TypedTerm, apply, check, check_text, is_ground, parse,
    parse_type, show, show_type,
)

EXIT_OK, EXIT_VERDICT, EXIT_ERROR = 0, 1, 2

DEMOS = ("fig1", "fig2", "por", "fixpoint", "continuity", "nerode")


class CliError(Exception):
    pass


# ---------------------------------------------------------------- output helpers


def _color_on(stream) -> bool:
    return os.environ.get("GAMESEM_COLOR", "1") != "0" and stream.isatty()


def _paint(text: str, stream=None) -> str:
    """Colour O and P in trace lines when writing to a terminal."""
    stream = stream or sys.stdout
    if not _color_on(stream):
        return text
    out = []
    for line in text.splitlines(keepends=True):
        parts = line.split(" ", 2)
        if len(parts) == 3 and parts[1] in ("O", "P"):
            code = "34" if parts[1] == "O" else "31"
            line = f"{parts[0]} \x1b[{code}m{parts[1]}\x1b[0m {parts[2]}"
        out.append(line)
    return "".join(out)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from e


def _load(path: str) -> TypedTerm:
    return check_text(_read(path))


def _arg_terms(args: Sequence[str]) -> list[TypedTerm]:
    """Arguments are program text, or the name of a program file."""
    return [_load(a) if os.path.isfile(a) else check_text(a) for a in args]


# ---------------------------------------------------------------- commands


def cmd_check(opts) -> int:
    t = _load(opts.file)
    if opts.format == "json":
        print(json.dumps({"term": show(t.term), "type": show_type(t.type)}))
    elif opts.format == "dot":
        sys.stdout.write(arena_of_type(t.type).to_dot())
    else:
        print(f"{show(t.term)} : {show_type(t.type)}")
    return EXIT_OK


def cmd_eval(opts) -> int:
    f = _load(opts.file)
    args = _arg_terms(opts.args)
    t = check(apply(f.term, *(a.term for a in args)))
    if not is_ground(t.type):
        raise CliError(f"result has type {show_type(t.type)}; supply more arguments")
    v = evaluate(t, opts.fuel)
    if opts.format == "json":
        print(json.dumps({"value": None if v is BOTTOM else v}))
    else:
        print(show_value(v))
    return EXIT_OK


def cmd_trace(opts) -> int:
    f = _load(opts.file)
    args = _arg_terms(opts.args)
    inputs = [evaluate(check_text(v), opts.fuel) for v in opts.input]
    if is_ground(f.type) and not args:
        sigma = denote(f, fuel=opts.fuel).strategy
        s = JustifiedPlay().extend(question(""), None)
        r = sigma.respond(s)
        hidden = s if r is None else s.extend(*r)
        interaction = None
    else:
        trace = trace_application(f, args, inputs, opts.fuel)
        if trace.status not in (COMPLETE,):
            print(f"interaction stopped: {trace.status}", file=sys.stderr)
        hidden = trace.external()
        interaction = trace.render()
    if opts.format == "json":
        out = {"hidden": format_trace(hidden).splitlines()}
        if opts.show_hidden and interaction is not None:
            out["interaction"] = interaction.splitlines()
        print(json.dumps(out, indent=2))
        return EXIT_OK
    if opts.show_hidden and interaction is not None:
        print("# interaction")
        sys.stdout.write(_paint(interaction))
        print("# hidden")
    sys.stdout.write(_paint(format_trace(hidden)))
    return EXIT_OK


def cmd_equiv(opts) -> int:
    t1, t2 = _load(opts.file1), _load(opts.file2)
    v = term_equiv(t1, t2, opts.depth, complete_only=not opts.all_plays, fuel=opts.fuel)
    if opts.format == "dot":
        for t in (t1, t2):
            pi = plays_of(denote(t, fuel=opts.fuel).strategy, opts.depth)
            sys.stdout.write(from_playset(pi, not opts.all_plays).to_dot())
        return EXIT_OK if v.equal else EXIT_VERDICT
    if opts.format == "json":
        out = {"verdict": str(v)}
        if not v.equal:
            out["witness"] = format_trace(v.witness).splitlines()
            out["played_by"] = v.played_by
        print(json.dumps(out, indent=2))
    else:
        print(v)
        if not v.equal:
            print(f"# witness: a play of {opts.file1 if v.played_by == 1 else opts.file2} only")
            sys.stdout.write(_paint(format_trace(v.witness)))
    return EXIT_OK if v.equal else EXIT_VERDICT


def cmd_extract(opts) -> int:
    t = parse_type(opts.type)
    sigma = ViewFunctionStrategy.from_json(arena_of_type(t), _read(opts.strategy))
    try:
        term = extract_term(sigma, t)
    except NotDefinable as e:
        print("not definable")
        print(f"# {e}")
        return EXIT_VERDICT
    print(show(term))
    return EXIT_OK


def cmd_census(opts) -> int:
    t = parse_type(opts.type)
    sys.stdout.write(dom.census_json(t, opts.size_bound))
    return EXIT_OK


def cmd_demo(opts) -> int:
    sys.stdout.write(DEMO_FUNCS[opts.name]())
    return EXIT_OK


# ---------------------------------------------------------------- demos


FIG1 = r"\f:N->N. \x:N. add (f x) 2"
SQUARE = r"\x:N. sq x"
FACT = r"fix[N->N] (\f:N->N. \n:N. ifz n 1 (mul n (f (sub n 1))))"


def _scripted(sigma, o_moves) -> JustifiedPlay:
    """Alternate the given Opponent moves with the strategy's responses."""
    s = JustifiedPlay()
    for m, j in o_moves:
        s = s.extend(m, j)
        r = sigma.respond(s)
        if r is None:
            break
        s = s.extend(*r)
    return s


def demo_fig1() -> str:
    t = check_text(FIG1)
    sigma = denote(t).strategy
    s = _scripted(sigma, [(question("cc"), None), (question("dd"), 1),
                          (answer("cd", 3), 3), (answer("dc", 9), 1)])
    out = [f"term: {show(t.term)}", f"type: {show_type(t.type)}",
           "play (O supplies x = 3, then f returns 9):", format_trace(s).rstrip("\n"),
           f"legal: {'yes' if is_legal(sigma.arena, s) else 'no'}",
           f"well-bracketed: {'yes' if is_well_bracketed(s) else 'no'}"]
    return "\n".join(out) + "\n"


def demo_fig2() -> str:
    f = check_text(FIG1)
    arg = check_text(SQUARE)
    trace = trace_application(f, [arg], [3])
    hidden = trace.external()
    residual = check_text(r"\x:N. add (sq x) 2")
    agrees = hidden in plays_of(denote(residual).strategy, 2, (3,)).plays
    out = [f"applying {show(f.term)}", f"      to {show(arg.term)}, environment input x = 3",
           "boards: A = N (x), B = (N->N)*N, C = N; B polarity shown as sigma|tau",
           f"# interaction ({len(trace)} events)", trace.render().rstrip("\n"),
           f"# hidden ({len(hidden)} events) on N->N", format_trace(hidden).rstrip("\n"),
           f"residual is a play of {show(residual.term)}: {'yes' if agrees else 'no'}"]
    return "\n".join(out) + "\n"


def demo_por() -> str:
    t = parse_type("B->B->B")
    exts = dom.definable_extensions(t, 8)
    from .syntax import count_normal_terms
    n_terms = count_normal_terms(t, 8)
    tables = {name: dom.table_from_function(fn, 2)
              for name, fn in (("lsor", dom.lsor), ("rsor", dom.rsor), ("por", dom.por))}
    out = [f"census: {n_terms} normal terms of type B->B->B with size <= 8, "
           f"{len(exts)} distinct extensions"]
    out.append("a    b    | lsor rsor por")
    for args in dom.argument_tuples(2):
        row = " ".join(f"{dom.show_flat(v):4}" for v in args)
        vals = " ".join(f"{dom.show_flat(tables[n][args]):4}" for n in ("lsor", "rsor", "por"))
        out.append(f"{row} | {vals}".rstrip())
    for name in ("lsor", "rsor", "por"):
        key = dom.as_table(tables[name])
        if key in exts:
            out.append(f"{name}: definable, e.g. {show(exts[key])}")
        else:
            out.append(f"{name}: not definable by any term of size <= 8")
    d = dom.product_poset(dom.BOOL_BOT, dom.BOOL_BOT)
    monos = dom.enumerate_monotone(d, dom.BOOL_BOT)
    member = any(dom.same_map(m, tables["por"]) for m in monos)
    out.append(f"por is monotone: {'yes' if dom.is_monotone(tables['por'], d, dom.BOOL_BOT) else 'no'}; "
               f"among the {len(monos)} monotone maps B_bot x B_bot -> B_bot: "
               f"{'yes' if member else 'no'}")
    return "\n".join(out) + "\n"


def demo_fixpoint() -> str:
    r = dom.lfp_iterate(dom.factorial_functional(6), dom.EMPTY_GRAPH, leq=dom.graph_leq)
    out = ["factorial functional F(g)(0) = 1, F(g)(n) = n * g(n-1), inputs 0..6"]
    for k, g in enumerate(r.trace):
        out.append(f"iterate {k}: defined on {{{', '.join(map(str, sorted(g.domain())))}}}")
    out.append(f"F(iterate {len(r.trace) - 1}) = iterate {len(r.trace) - 1}: "
               f"stable after {r.steps} applications of F")
    out.append(f"lfp: {r.value}")
    fixed = [evaluate(check(apply(parse(FACT), parse(str(n))))) for n in range(6)]
    agree = all(fixed[n] == r.value(n) for n in range(6))
    out.append(f"fix-term on 0..5: {' '.join(map(str, fixed))} "
               f"(agrees with lfp: {'yes' if agree else 'no'})")
    return "\n".join(out) + "\n"


def demo_continuity() -> str:
    s = dom.stream_domain(3)
    chain = dom.zeros_chain(6)
    out = ["f : streams -> B_bot on finite words of length <= 3 and 0^inf (prefix order)",
           "chain 0, 00, ..., 000000 with lub 0^inf"]
    for k in (1, 2, 3):
        f = dom.stream_example(k)
        mono = dom.is_monotone(f, s, dom.BOOL_BOT)
        line = f"({k}) monotone: {'yes' if mono else 'no'}"
        if mono:
            c = dom.check_chain_continuity(f, chain, dom.ZEROS, dom.stream_leq, dom.BOOL_BOT)
            line += (f"; chain continuity: {'pass' if c else 'fail'} "
                     f"(lub f(x_n) = {dom.show_flat(c.lub_of_images)}, "
                     f"f(0^inf) = {dom.show_flat(c.image_of_lub)})")
        else:
            pair = dom.FinitePoset(["0", "01"], dom.stream_leq)
            x, y = dom.is_monotone(f, pair, dom.BOOL_BOT).witness
            line += (f"; on inputs {{0, 01}} the witness is ({x}, {y}): f({x}) = {dom.show_flat(f(x))}, "
                     f"f({y}) = {dom.show_flat(f(y))}")
        out.append(line)
    return "\n".join(out) + "\n"


def _ends_in_a() -> "object":
    # deliberately redundant: states 1 and 2 both mean "last symbol was a"
    return make_dfa("ab", [[1, 0], [2, 3], [2, 3], [1, 0]], 0, [False, True, True, False])


def _residual_classes(d, length: int) -> int:
    words = [""]
    for _ in range(length):
        words += [w + a for w in words for a in d.alphabet if len(w + a) <= length]
    words = sorted(set(words))
    sig = {tuple(d.accepts(u + v) for v in words) for u in words}
    return len(sig)


def demo_nerode() -> str:
    d = _ends_in_a()
    m, h = nerode_minimize(d), hopcroft_minimize(d)
    out = ["language (a|b)*a",
           f"input DFA: {d.n_states} states; Nerode quotient: {m.n_states} states; "
           f"partition refinement: {h.n_states} states; isomorphic: {'yes' if isomorphic(m, h) else 'no'}",
           f"distinct residuals over words of length <= 3: {_residual_classes(d, 3)}",
           f"equivalent to input: {'yes' if equivalent(d, m) else 'no'}"]
    rng = np.random.default_rng(0)
    mismatches = 0
    for _ in range(100):
        r = random_dfa(rng, int(rng.integers(1, 9)), 3)
        if not isomorphic(nerode_minimize(r), hopcroft_minimize(r)):
            mismatches += 1
    out.append(f"100 random DFAs (seed 0, <= 8 states, 3 symbols): {mismatches} mismatches")
    return "\n".join(out) + "\n"


DEMO_FUNCS = {"fig1": demo_fig1, "fig2": demo_fig2, "por": demo_por,
              "fixpoint": demo_fixpoint, "continuity": demo_continuity, "nerode": demo_nerode}


# ---------------------------------------------------------------- argument parsing


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=_positive, default=10_000)
    common.add_argument("--depth", type=_positive, default=8)
    common.add_argument("--size-bound", type=_positive, default=8)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--show-hidden", action="store_true",
                        help="trace: also print the interaction before hiding")
    common.add_argument("--all-plays", action="store_true",
                        help="equiv: compare all plays, not only complete ones")

    p = argparse.ArgumentParser(prog="gamesem", description="Game semantics workbench for PCF.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="parse and typecheck a program")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("eval", parents=[common], help="evaluate a program applied to arguments")
    c.add_argument("file")
    c.add_argument("args", nargs="*")
    c.set_defaults(func=cmd_eval)

    c = sub.add_parser("trace", parents=[common], help="print the play of an application")
    c.add_argument("file")
    c.add_argument("args", nargs="*")
    c.add_argument("--input", action="append", default=[],
                   help="value the environment supplies for a remaining ground parameter")
    c.set_defaults(func=cmd_trace)

    c = sub.add_parser("equiv", parents=[common], help="compare two programs' play languages")
    c.add_argument("file1")
    c.add_argument("file2")
    c.set_defaults(func=cmd_equiv)

    c = sub.add_parser("extract", parents=[common], help="read a term off a strategy table")
    c.add_argument("strategy", help="JSON view table")
    c.add_argument("type")
    c.set_defaults(func=cmd_extract)

    c = sub.add_parser("census", parents=[common], help="definable extensions at a first-order type")
    c.add_argument("type")
    c.set_defaults(func=cmd_census)

    c = sub.add_parser("demo", parents=[common], help="reproduce a worked example")
    c.add_argument("name", choices=DEMOS)
    c.set_defaults(func=cmd_demo)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    opts = build_parser().parse_args(argv)
    try:
        return opts.func(opts)
    except ParseError as e:
        print(f"gamesem: parse error at {e.line}:{e.col}: {e.message}", file=sys.stderr)
    except TypeCheckError as e:
        print(f"gamesem: type error: {e}", file=sys.stderr)
    except FuelExhausted as e:
        print(f"gamesem: fuel exhausted: {e}", file=sys.stderr)
    except (CliError, IllegalPlay, ValueError) as e:
        print(f"gamesem: error: {e}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

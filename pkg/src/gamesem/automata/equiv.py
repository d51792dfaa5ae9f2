"""Equality of terms in the game model, decided on their play languages."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..composition import composite_payloads
from ..interpreter import denote
from ..plays import JustifiedPlay
from ..strategy import plays_of
from ..syntax import TypedTerm, show_type
from .dfa import equivalent, from_words, language, needs_pointers, nerode_minimize, play_word, word_to_play


@dataclass(frozen=True)
class EquivVerdict:
    equal: bool
    witness: Optional[JustifiedPlay] = None
    played_by: Optional[int] = None       # which term (1 or 2) has the witness play

    def __bool__(self) -> bool:
        return self.equal

    def __str__(self) -> str:
        return "intensionally-equal" if self.equal else "distinct"


def term_equiv(t1: TypedTerm, t2: TypedTerm, depth: int = 8, complete_only: bool = True,
               fuel: int = 10_000) -> EquivVerdict:
    """Compare the saturated play languages of two terms of the same type and context."""
    if t1.type != t2.type or [ty for _, ty in t1.context] != [ty for _, ty in t2.context]:
        raise ValueError(f"cannot compare {show_type(t1.type)} with {show_type(t2.type)}")
    s1, s2 = denote(t1, fuel=fuel).strategy, denote(t2, fuel=fuel).strategy
    payloads = composite_payloads(s1, s2)
    p1 = language(plays_of(s1, depth, payloads).plays, complete_only)
    p2 = language(plays_of(s2, depth, payloads).plays, complete_only)
    pointers = needs_pointers(p1, p2)
    d1 = nerode_minimize(from_words(play_word(s, pointers) for s in p1))
    d2 = nerode_minimize(from_words(play_word(s, pointers) for s in p2))
    eq = equivalent(d1, d2)
    if eq.equal:
        return EquivVerdict(True)
    plays = p1 if eq.accepted_by == 1 else p2
    return EquivVerdict(False, word_to_play(eq.counterexample, plays, pointers), eq.accepted_by)

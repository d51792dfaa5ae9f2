"""Game semantics for a small typed functional language.

Programs are typed lambda terms over naturals and booleans; their meanings are
strategies on arenas, computed by an interpreter that replays views.
"""
from .syntax import check, check_text, parse, parse_type, show, show_type
from .interpreter import denote, evaluate, extract_term
from .composition import compose, interact
from .strategy import copycat, plays_of

__version__ = "0.1.0"

__all__ = ["check", "check_text", "compose", "copycat", "denote", "evaluate", "extract_term",
           "interact", "parse", "parse_type", "plays_of", "show", "show_type"]

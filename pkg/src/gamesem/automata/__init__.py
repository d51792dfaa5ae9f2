from .dfa import (
    Dfa, Equivalence, canonical, equivalent, from_playset, from_words, hopcroft_minimize, isomorphic,
    make_dfa, nerode_minimize, play_word, random_dfa, with_alphabet,
)
from .equiv import EquivVerdict, term_equiv

__all__ = [
    "Dfa", "Equivalence", "EquivVerdict", "canonical", "equivalent", "from_playset", "from_words",
    "hopcroft_minimize", "isomorphic", "make_dfa", "nerode_minimize", "play_word", "random_dfa",
    "term_equiv", "with_alphabet",
]

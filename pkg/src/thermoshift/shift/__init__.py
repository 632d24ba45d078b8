"""
Combinatorics and spectral theory of transition matrices.
"""

from .matrix import TransitionMatrix, full_shift, golden_mean, validate_matrix
from .sofic import LabeledEdge, LabeledGraph, SoficCover, graph_of_matrix, sofic_cover
from .spectral import (
    SpectralReport,
    aperiodicity_index,
    characteristic_root,
    is_irreducible,
    spectral_radius,
)
from .words import (
    Word,
    WordIndex,
    admissible_words,
    format_word,
    higher_block,
    is_admissible,
    parse_word,
    word_array,
    word_count,
)

__all__ = [
    "TransitionMatrix",
    "full_shift",
    "golden_mean",
    "validate_matrix",
    "LabeledEdge",
    "LabeledGraph",
    "SoficCover",
    "graph_of_matrix",
    "sofic_cover",
    "SpectralReport",
    "aperiodicity_index",
    "characteristic_root",
    "is_irreducible",
    "spectral_radius",
    "Word",
    "WordIndex",
    "admissible_words",
    "format_word",
    "higher_block",
    "is_admissible",
    "parse_word",
    "word_array",
    "word_count",
]

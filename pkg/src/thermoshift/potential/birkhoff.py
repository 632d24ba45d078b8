"""
Birkhoff sums S_n f = sum_{j<n} f o sigma^j of locally constant potentials.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import structlog

from ..errors import Inadmissible, InputError, WordTooShort
from ..shift.words import Word, WordIndex, format_word, word_array
from .potential import LocallyConstantPotential

logger = structlog.get_logger()


@dataclass(frozen=True)
class BirkhoffTable:
    """S_n f on every admissible (n + k - 1)-cylinder, where it is constant."""

    n: int
    k: int
    d: int
    words: np.ndarray
    values: np.ndarray

    @property
    def length(self) -> int:
        return self.n + self.k - 1

    def value(self, word: Sequence[int]) -> float:
        if len(word) < self.length:
            raise WordTooShort(len(word), self.length)
        index = WordIndex(self.words, self.d)
        try:
            return float(self.values[index.position(tuple(word[: self.length]))])
        except Inadmissible:
            raise Inadmissible(format_word(word)) from None

    def as_dict(self) -> dict[Word, float]:
        return {tuple(int(x) for x in row): float(v) for row, v in zip(self.words, self.values)}


def birkhoff_values(f: LocallyConstantPotential, words: np.ndarray, n: int) -> np.ndarray:
    """S_n f on each row of ``words`` (rows of length >= n + k - 1)."""
    total = np.zeros(words.shape[0])
    for j in range(n):
        total += f.window_values(words, j)
    return total


def birkhoff(f: LocallyConstantPotential, n: int, max_words: int | None = None) -> BirkhoffTable:
    """Exact Birkhoff sums of f over all admissible (n + k - 1)-words."""
    if n < 1:
        raise InputError("Birkhoff sums need n >= 1")
    words = word_array(f.matrix, n + f.k - 1, max_words=max_words)
    values = birkhoff_values(f, words, n)
    logger.debug("Birkhoff table", n=n, k=f.k, words=words.shape[0])
    return BirkhoffTable(n=n, k=f.k, d=f.d, words=words, values=values)

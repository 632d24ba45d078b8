"""
Admissible words, cylinder enumeration and higher-block recoding.

Words are tuples of 0-based letters. Text formats use 1-based digit strings
("121"), converted by ``parse_word`` and ``format_word``. Word arrays are
always in lexicographic order, so that the words extending a given prefix
form a contiguous block of rows.
"""

from collections.abc import Iterable, Sequence

import numpy as np
import structlog

from ..errors import Inadmissible, InputError, LengthZero, WordBudgetExceeded
from .matrix import TransitionMatrix

logger = structlog.get_logger()

Word = tuple[int, ...]


def parse_word(text: str) -> Word:
    """Parse "121" (or "1.10.2" for alphabets above 9) into a 0-based word."""
    text = text.strip()
    if not text:
        return ()
    parts = text.split(".") if "." in text else list(text)
    try:
        letters = tuple(int(p) - 1 for p in parts)
    except ValueError as e:
        raise InputError(f"Invalid word {text!r}") from e
    if any(letter < 0 for letter in letters):
        raise InputError(f"Invalid word {text!r}: letters start at 1")
    return letters


def format_word(word: Iterable[int]) -> str:
    letters = [int(x) + 1 for x in word]
    if any(letter > 9 for letter in letters):
        return ".".join(str(x) for x in letters)
    return "".join(str(x) for x in letters)


def is_admissible(A: TransitionMatrix, word: Sequence[int]) -> bool:
    if any(not 0 <= int(x) < A.d for x in word):
        return False
    return all(A.entries[word[j], word[j + 1]] for j in range(len(word) - 1))


def require_admissible(A: TransitionMatrix, word: Sequence[int]) -> None:
    if not is_admissible(A, word):
        raise Inadmissible(format_word(word))


def word_count(A: TransitionMatrix, n: int) -> int:
    """theta_n, the exact number of admissible words of length n."""
    if n < 1:
        raise LengthZero()
    M = A.entries.astype(object)
    v = np.ones(A.d, dtype=object)
    for _ in range(n - 1):
        v = M.dot(v)
    return int(sum(v))


def word_array(A: TransitionMatrix, n: int, max_words: int | None = None) -> np.ndarray:
    """All admissible n-words as rows of an integer array, lexicographically ordered."""
    if n < 1:
        raise LengthZero()
    if max_words is not None:
        count = word_count(A, n)
        if count > max_words:
            raise WordBudgetExceeded(n, count, max_words)

    allowed = A.entries.astype(bool)
    words = np.arange(A.d, dtype=np.int64).reshape(-1, 1)
    for _ in range(n - 1):
        # nonzero() walks row-major, so parents stay ordered and children follow letter order
        parent, letter = np.nonzero(allowed[words[:, -1]])
        words = np.concatenate([words[parent], letter.reshape(-1, 1)], axis=1)
    return words


def admissible_words(A: TransitionMatrix, n: int) -> list[Word]:
    """Lexicographically ordered admissible words of length n."""
    return [tuple(int(x) for x in row) for row in word_array(A, n)]


def word_codes(words: np.ndarray, d: int) -> np.ndarray:
    """Base-d integer codes; code order equals lexicographic order for equal lengths."""
    words = np.atleast_2d(words)
    codes = np.zeros(words.shape[0], dtype=np.int64)
    for j in range(words.shape[1]):
        codes = codes * d + words[:, j]
    return codes


class WordIndex:
    """Position lookup of fixed-length words inside a lexicographic word array."""

    def __init__(self, words: np.ndarray, d: int):
        self.words = words
        self.d = d
        self.length = int(words.shape[1])
        self.codes = word_codes(words, d)

    def __len__(self) -> int:
        return int(self.words.shape[0])

    def positions(self, windows: np.ndarray) -> np.ndarray:
        """Row positions of each window (rows of length ``self.length``)."""
        windows = np.atleast_2d(windows)
        out_of_range = (windows < 0) | (windows >= self.d)
        if out_of_range.any():
            raise Inadmissible(format_word(windows[int(np.argmax(out_of_range.any(axis=1)))]))
        codes = word_codes(windows, self.d)
        pos = np.searchsorted(self.codes, codes)
        pos = np.minimum(pos, len(self) - 1)
        missing = self.codes[pos] != codes
        if missing.any():
            bad = np.atleast_2d(windows)[int(np.argmax(missing))]
            raise Inadmissible(format_word(bad))
        return pos

    def position(self, word: Sequence[int]) -> int:
        return int(self.positions(np.asarray(word, dtype=np.int64).reshape(1, -1))[0])

    def as_tuples(self) -> list[Word]:
        return [tuple(int(x) for x in row) for row in self.words]


def group_starts(words: np.ndarray, prefix_length: int) -> np.ndarray:
    """Indices where a new prefix of the given length begins in a lexicographic array."""
    if words.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    if prefix_length == 0:
        return np.zeros(1, dtype=np.int64)
    prefixes = words[:, :prefix_length]
    changed = np.any(prefixes[1:] != prefixes[:-1], axis=1)
    return np.concatenate([[0], np.nonzero(changed)[0] + 1]).astype(np.int64)


def higher_block(A: TransitionMatrix, k: int) -> tuple[TransitionMatrix, dict[Word, int]]:
    """Recode Lambda_A on its admissible k-words.

    The state alpha may be followed by beta when beta is alpha shifted left by
    one letter with a new admissible letter appended.
    """
    if k < 1:
        raise LengthZero()
    if k == 1:
        return A, {(i,): i for i in range(A.d)}

    states = word_array(A, k)
    index = WordIndex(states, A.d)
    # (k+1)-words are exactly the admissible overlaps alpha -> beta
    overlaps = word_array(A, k + 1)
    src = index.positions(overlaps[:, :-1])
    dst = index.positions(overlaps[:, 1:])
    entries = np.zeros((len(index), len(index)), dtype=np.int64)
    entries[src, dst] = 1

    recoded = TransitionMatrix(entries)
    logger.debug("Higher block recoding", k=k, states=len(index))
    return recoded, {word: i for i, word in enumerate(index.as_tuples())}

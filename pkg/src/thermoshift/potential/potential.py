"""
Locally constant potentials on Lambda_A.

A potential of range k depends on the first k coordinates x_1..x_k and is
stored as one value per admissible k-word, aligned with the lexicographic
word array of its transition matrix.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np
import structlog

from ..errors import AlphabetMismatch, Inadmissible, InputError, WordTooShort
from ..shift.matrix import TransitionMatrix
from ..shift.words import (
    Word,
    WordIndex,
    format_word,
    group_starts,
    is_admissible,
    parse_word,
    word_array,
)

logger = structlog.get_logger()


@dataclass(frozen=True, eq=False)
class LocallyConstantPotential:
    """Real potential of range k over the admissible k-words of a matrix."""

    matrix: TransitionMatrix
    k: int
    values: np.ndarray
    index: WordIndex = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InputError("Potential range must be at least 1")
        index = WordIndex(word_array(self.matrix, self.k), self.matrix.d)
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.shape[0] != len(index):
            raise InputError(
                f"Potential of range {self.k} needs {len(index)} values, got {values.shape[0]}"
            )
        if not np.all(np.isfinite(values)):
            raise InputError("Potential values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "index", index)

    # Constructors

    @classmethod
    def from_table(
        cls,
        matrix: TransitionMatrix,
        k: int,
        table: Mapping[Word, float] | Mapping[str, float],
    ) -> LocallyConstantPotential:
        """Build from a word -> value map; every admissible k-word must be present."""
        normalized: dict[Word, float] = {}
        for key, value in table.items():
            word = parse_word(key) if isinstance(key, str) else tuple(int(x) for x in key)
            if len(word) != k or not is_admissible(matrix, word):
                raise Inadmissible(format_word(word))
            normalized[word] = float(value)

        words = [tuple(int(x) for x in row) for row in word_array(matrix, k)]
        missing = [format_word(w) for w in words if w not in normalized]
        if missing:
            raise InputError(f"Potential table is missing admissible words: {', '.join(missing)}")
        return cls(matrix, k, np.array([normalized[w] for w in words]))

    @classmethod
    def from_function(
        cls, matrix: TransitionMatrix, k: int, fn: Callable[[Word], float]
    ) -> LocallyConstantPotential:
        words = word_array(matrix, k)
        return cls(matrix, k, np.array([fn(tuple(int(x) for x in row)) for row in words]))

    @classmethod
    def constant(cls, matrix: TransitionMatrix, c: float, k: int = 1) -> LocallyConstantPotential:
        count = word_array(matrix, k).shape[0]
        return cls(matrix, k, np.full(count, float(c)))

    @classmethod
    def zero(cls, matrix: TransitionMatrix) -> LocallyConstantPotential:
        return cls.constant(matrix, 0.0)

    @classmethod
    def random(
        cls,
        matrix: TransitionMatrix,
        k: int,
        rng: np.random.Generator,
        low: float = -1.0,
        high: float = 1.0,
    ) -> LocallyConstantPotential:
        count = word_array(matrix, k).shape[0]
        return cls(matrix, k, rng.uniform(low, high, size=count))

    # Views

    @property
    def d(self) -> int:
        return self.matrix.d

    @property
    def words(self) -> np.ndarray:
        return self.index.words

    def table(self) -> dict[Word, float]:
        return {w: float(v) for w, v in zip(self.index.as_tuples(), self.values)}

    def max(self) -> float:
        return float(self.values.max())

    def min(self) -> float:
        return float(self.values.min())

    def sup_norm(self) -> float:
        return float(np.abs(self.values).max())

    def window_values(self, words: np.ndarray, offset: int = 0) -> np.ndarray:
        """Values of f at the windows ``words[:, offset:offset+k]``."""
        return self.values[self.index.positions(words[:, offset : offset + self.k])]

    # Range promotion and arithmetic

    def extend(self, K: int) -> LocallyConstantPotential:
        """The same function presented with range K >= k."""
        if K < self.k:
            raise InputError(f"Cannot lower the range from {self.k} to {K}")
        if K == self.k:
            return self
        words = word_array(self.matrix, K)
        return LocallyConstantPotential(self.matrix, K, self.window_values(words))

    def _aligned(self, other: LocallyConstantPotential) -> tuple[np.ndarray, np.ndarray, int]:
        if self.d != other.d or self.matrix != other.matrix:
            raise AlphabetMismatch(
                f"Potentials live on different shifts (d={self.d} vs d={other.d})"
            )
        K = max(self.k, other.k)
        return self.extend(K).values, other.extend(K).values, K

    def __add__(self, other: LocallyConstantPotential | float) -> LocallyConstantPotential:
        if isinstance(other, LocallyConstantPotential):
            a, b, K = self._aligned(other)
            return LocallyConstantPotential(self.matrix, K, a + b)
        return LocallyConstantPotential(self.matrix, self.k, self.values + float(other))

    def __sub__(self, other: LocallyConstantPotential | float) -> LocallyConstantPotential:
        if isinstance(other, LocallyConstantPotential):
            a, b, K = self._aligned(other)
            return LocallyConstantPotential(self.matrix, K, a - b)
        return LocallyConstantPotential(self.matrix, self.k, self.values - float(other))

    def __neg__(self) -> LocallyConstantPotential:
        return LocallyConstantPotential(self.matrix, self.k, -self.values)

    def __mul__(self, c: float) -> LocallyConstantPotential:
        return LocallyConstantPotential(self.matrix, self.k, float(c) * self.values)

    __rmul__ = __mul__

    def __abs__(self) -> LocallyConstantPotential:
        return LocallyConstantPotential(self.matrix, self.k, np.abs(self.values))

    def maximum(self, other: LocallyConstantPotential) -> LocallyConstantPotential:
        a, b, K = self._aligned(other)
        return LocallyConstantPotential(self.matrix, K, np.maximum(a, b))

    def minimum(self, other: LocallyConstantPotential) -> LocallyConstantPotential:
        a, b, K = self._aligned(other)
        return LocallyConstantPotential(self.matrix, K, np.minimum(a, b))

    def allclose(self, other: LocallyConstantPotential, atol: float = 1e-12) -> bool:
        a, b, _ = self._aligned(other)
        return bool(np.allclose(a, b, rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        return f"LocallyConstantPotential(d={self.d}, k={self.k}, values={self.table_text()})"

    def table_text(self) -> dict[str, float]:
        return {format_word(w): float(v) for w, v in zip(self.index.as_tuples(), self.values)}


def evaluate(f: LocallyConstantPotential, w: Sequence[int]) -> float:
    """f(x) for x in the cylinder [w]."""
    if len(w) < f.k:
        raise WordTooShort(len(w), f.k)
    if not is_admissible(f.matrix, w):
        raise Inadmissible(format_word(w))
    return float(f.values[f.index.position(tuple(w[: f.k]))])


def var_n(f: LocallyConstantPotential, n: int) -> float:
    """Oscillation of f over points agreeing in their first n coordinates."""
    if n < 0:
        raise InputError("var_n needs n >= 0")
    if n == 0:
        return f.max() - f.min()
    if n >= f.k:
        return 0.0
    starts = group_starts(f.words, n)
    spread = np.maximum.reduceat(f.values, starts) - np.minimum.reduceat(f.values, starts)
    return float(spread.max())


def coboundary_perturb(
    f: LocallyConstantPotential, g: LocallyConstantPotential
) -> LocallyConstantPotential:
    """f + g o sigma - g, of range max(k_f, k_g + 1)."""
    if f.d != g.d or f.matrix != g.matrix:
        raise AlphabetMismatch(f"Potentials live on different shifts (d={f.d} vs d={g.d})")
    K = max(f.k, g.k + 1)
    words = word_array(f.matrix, K)
    values = f.extend(K).values + g.window_values(words, 1) - g.window_values(words, 0)
    return LocallyConstantPotential(f.matrix, K, values)


def affine(f: LocallyConstantPotential, scale: float, shift: float) -> LocallyConstantPotential:
    """Pointwise scale * f + shift."""
    return LocallyConstantPotential(f.matrix, f.k, float(scale) * f.values + float(shift))


def truncation_error(f: LocallyConstantPotential, g: LocallyConstantPotential) -> float:
    """Sup-norm distance of two truncations; bounds |P(f) - P(g)|."""
    a, b, _ = f._aligned(g)
    return float(np.abs(a - b).max())

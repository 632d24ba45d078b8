"""
Transition matrices defining one-sided subshifts of finite type.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import structlog

from ..errors import InputError, NonBinaryEntry, ZeroColumn, ZeroRow

logger = structlog.get_logger()


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """A d x d 0/1 matrix A with no zero row and no zero column.

    The array is stored read-only; instances are immutable and hashable.
    """

    entries: np.ndarray
    _key: bytes = field(init=False, repr=False)

    def __post_init__(self) -> None:
        raw = np.asarray(self.entries)
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1] or raw.shape[0] < 1:
            raise InputError(f"Transition matrix must be square and nonempty, got shape {raw.shape}")

        for (i, j), value in np.ndenumerate(raw):
            if value not in (0, 1):
                raise NonBinaryEntry(i + 1, j + 1, value.item() if hasattr(value, "item") else value)

        entries = raw.astype(np.int64)
        for i in range(entries.shape[0]):
            if not entries[i].any():
                raise ZeroRow(i + 1)
        for j in range(entries.shape[1]):
            if not entries[:, j].any():
                raise ZeroColumn(j + 1)

        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_key", entries.tobytes() + bytes([entries.shape[0] % 256]))

    @property
    def d(self) -> int:
        """Alphabet size."""
        return int(self.entries.shape[0])

    def allows(self, i: int, j: int) -> bool:
        """Whether letter j may follow letter i (0-based)."""
        return bool(self.entries[i, j])

    def as_float(self) -> np.ndarray:
        return self.entries.astype(float)

    def to_lists(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.entries]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        return self.d == other.d and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"TransitionMatrix(d={self.d}, entries={self.to_lists()})"


def validate_matrix(raw: Sequence[Sequence[Any]] | np.ndarray) -> TransitionMatrix:
    """Validate a raw integer array and wrap it as a TransitionMatrix."""
    matrix = TransitionMatrix(np.asarray(raw))
    logger.debug("Transition matrix validated", d=matrix.d)
    return matrix


def full_shift(d: int) -> TransitionMatrix:
    """The full shift on d symbols."""
    return TransitionMatrix(np.ones((d, d), dtype=np.int64))


def golden_mean() -> TransitionMatrix:
    """The golden-mean shift (no two consecutive 2s)."""
    return TransitionMatrix(np.array([[1, 1], [1, 0]]))

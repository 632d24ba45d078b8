"""
Exception hierarchy.

``InputError`` subclasses are validation failures (CLI exit status 1),
``ConvergenceError`` subclasses are numerical failures (exit status 2).
Indices carried by errors are 1-based, like every human-facing word.
"""

from pathlib import Path


class ThermoshiftError(Exception):
    """Base class for all thermoshift errors."""

    exit_code = 1


class InputError(ThermoshiftError):
    """Invalid input data or violated hypotheses."""

    exit_code = 1


class ConvergenceError(ThermoshiftError):
    """An iterative solver did not converge."""

    exit_code = 2


class ZeroRow(InputError):
    def __init__(self, row: int):
        self.row = row
        super().__init__(f"Row {row} of the transition matrix is identically zero")


class ZeroColumn(InputError):
    def __init__(self, column: int):
        self.column = column
        super().__init__(f"Column {column} of the transition matrix is identically zero")


class NonBinaryEntry(InputError):
    def __init__(self, row: int, column: int, value: object):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"Entry ({row}, {column}) is {value!r}, expected 0 or 1")


class LengthZero(InputError):
    def __init__(self) -> None:
        super().__init__("Word length must be at least 1")


class WordTooShort(InputError):
    def __init__(self, length: int, required: int):
        self.length = length
        self.required = required
        super().__init__(f"Word of length {length} is shorter than the required {required}")


class Inadmissible(InputError):
    def __init__(self, word: str):
        self.word = word
        super().__init__(f"Word {word} is not admissible")


class AlphabetMismatch(InputError):
    """Two potentials (or a potential and a matrix) live on different shifts."""


class RangeMismatch(InputError):
    """A potential is not defined over the words of the given matrix."""


class NotRightResolving(InputError):
    def __init__(self, vertex: int, label: str):
        self.vertex = vertex
        self.label = label
        super().__init__(f"Vertex {vertex} has two outgoing edges labeled {label!r}")


class NotAperiodic(InputError):
    def __init__(self, detail: str = "transition matrix is not aperiodic"):
        super().__init__(detail)


class NotInvertibleCornerSum(InputError):
    def __init__(self, smallest: float):
        self.smallest = smallest
        super().__init__(f"Sum of corner projections is not invertible (min eigenvalue {smallest:g})")


class InvalidAlgebraData(InputError):
    """Malformed multimatrix algebra, element or endomorphism data."""


class WordBudgetExceeded(InputError):
    def __init__(self, length: int, count: int, budget: int):
        self.length = length
        self.count = count
        self.budget = budget
        super().__init__(
            f"Enumerating {count} words of length {length} exceeds the budget of {budget}"
        )


class ParseError(InputError):
    def __init__(self, path: Path | str, line: int, detail: str):
        self.path = str(path)
        self.line = line
        self.detail = detail
        super().__init__(f"{path}:{line}: {detail}")


class NoConvergence(ConvergenceError):
    def __init__(self, max_iter: int, residual: float | None = None):
        self.max_iter = max_iter
        self.residual = residual
        detail = f" (residual {residual:.3e})" if residual is not None else ""
        super().__init__(f"No convergence after {max_iter} iterations{detail}")

"""
Shift-invariant Markov measures on Lambda_A.

A Markov measure of memory m lives on the admissible m-words; its
transition matrix moves a state s to an overlapping state t = s[1:] j.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import structlog
from scipy.special import xlogy

from ..errors import AlphabetMismatch, InputError, LengthZero
from ..potential.potential import LocallyConstantPotential
from ..shift.matrix import TransitionMatrix
from ..shift.words import WordIndex, group_starts, higher_block, word_array

logger = structlog.get_logger()

VALIDATION_TOL = 1e-12


def support_pattern(A: TransitionMatrix, m: int) -> np.ndarray:
    """Boolean matrix of allowed transitions between admissible m-words."""
    recoded, _ = higher_block(A, m)
    return np.asarray(recoded.entries.astype(bool))


def stationary_vector(P: np.ndarray) -> np.ndarray:
    """A probability vector p with p P = p.

    Solved as the least-squares system [P^T - I; 1^T] p = [0; 1], which is
    exact for irreducible chains.
    """
    n = P.shape[0]
    system = np.vstack([P.T - np.eye(n), np.ones((1, n))])
    rhs = np.zeros(n + 1)
    rhs[-1] = 1.0
    p, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    p = np.clip(p, 0.0, None)
    return np.asarray(p / p.sum())


@dataclass(frozen=True, eq=False)
class MarkovMeasure:
    """Stationary Markov chain on the admissible m-words of a matrix."""

    matrix: TransitionMatrix
    states: np.ndarray
    P: np.ndarray
    p: np.ndarray
    index: WordIndex = field(init=False, repr=False)

    def __post_init__(self) -> None:
        states = np.atleast_2d(np.asarray(self.states, dtype=np.int64))
        P = np.array(self.P, dtype=float)
        p = np.array(self.p, dtype=float).reshape(-1)
        n = states.shape[0]

        expected = word_array(self.matrix, states.shape[1])
        if expected.shape != states.shape or not np.array_equal(expected, states):
            raise InputError("Markov states must be the admissible words of one length, in order")
        if P.shape != (n, n) or p.shape != (n,):
            raise InputError(f"Markov data must be {n}x{n} with a length-{n} stationary vector")
        if (P < 0).any() or (p < 0).any():
            raise InputError("Markov probabilities must be nonnegative")

        outside = (P > 0) & ~support_pattern(self.matrix, states.shape[1])
        if outside.any():
            i, j = np.argwhere(outside)[0]
            raise InputError(f"Transition {i + 1} -> {j + 1} has positive probability but is not admissible")
        rows = np.abs(P.sum(axis=1) - 1.0)
        if rows.max() > VALIDATION_TOL:
            raise InputError(f"Row {int(rows.argmax()) + 1} sums to {P.sum(axis=1)[rows.argmax()]!r}")
        if abs(p.sum() - 1.0) > VALIDATION_TOL:
            raise InputError("Stationary vector must sum to 1")
        defect = float(np.max(np.abs(p @ P - p)))
        if defect > VALIDATION_TOL:
            raise InputError(f"Vector is not stationary (max |pP - p| = {defect:.3e})")

        P.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "index", WordIndex(states, self.matrix.d))

    @classmethod
    def from_transition(
        cls, matrix: TransitionMatrix, states: np.ndarray, P: np.ndarray
    ) -> "MarkovMeasure":
        """Markov measure of P started from its stationary vector."""
        return cls(matrix, states, P, stationary_vector(np.asarray(P, dtype=float)))

    @property
    def m(self) -> int:
        return int(self.states.shape[1])

    @property
    def size(self) -> int:
        return int(self.states.shape[0])


def random_markov(
    A: TransitionMatrix,
    m: int,
    rng: np.random.Generator,
    concentration: float = 1.0,
) -> MarkovMeasure:
    """Markov measure with Dirichlet-distributed rows on the admissible support."""
    states = word_array(A, m)
    support = support_pattern(A, m)
    P = np.zeros(support.shape)
    for i, row in enumerate(support):
        cols = np.nonzero(row)[0]
        P[i, cols] = rng.dirichlet(np.full(cols.size, concentration))
    return MarkovMeasure.from_transition(A, states, P)


def bernoulli(A: TransitionMatrix, probs: Sequence[float]) -> MarkovMeasure:
    """Bernoulli measure; only the full shift carries one with positive weights."""
    q = np.asarray(probs, dtype=float)
    if q.shape != (A.d,) or (q < 0).any() or abs(q.sum() - 1.0) > VALIDATION_TOL:
        raise InputError(f"Bernoulli weights must be a probability vector of length {A.d}")
    if not A.entries.all():
        raise InputError("Bernoulli measures need the full shift")
    P = np.tile(q, (A.d, 1))
    return MarkovMeasure(A, word_array(A, 1), P, q)


def cylinder_probabilities(m: MarkovMeasure, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Admissible n-words and their probabilities p_{w[:m]} prod P."""
    if n < 1:
        raise LengthZero()
    if n < m.m:
        starts = group_starts(m.states, n)
        return m.states[starts, :n], np.add.reduceat(m.p, starts)

    words = word_array(m.matrix, n)
    probs = m.p[m.index.positions(words[:, : m.m])].copy()
    for j in range(n - m.m):
        src = m.index.positions(words[:, j : j + m.m])
        dst = m.index.positions(words[:, j + 1 : j + 1 + m.m])
        probs *= m.P[src, dst]
    return words, probs


def recode(m: MarkovMeasure, length: int) -> MarkovMeasure:
    """The same measure presented on admissible words of a longer length."""
    if length < m.m:
        raise InputError(f"Cannot recode memory {m.m} down to {length}")
    if length == m.m:
        return m
    words, probs = cylinder_probabilities(m, length)
    support = support_pattern(m.matrix, length)
    src, dst = np.nonzero(support)
    P = np.zeros(support.shape)
    tail = m.m
    P[src, dst] = m.P[
        m.index.positions(words[src, length - tail :]),
        m.index.positions(words[dst, length - tail :]),
    ]
    return MarkovMeasure(m.matrix, words, P, probs)


def ks_entropy(m: MarkovMeasure) -> float:
    """-sum_{s,t} p_s P_st log P_st with 0 log 0 = 0."""
    return float(-np.sum(m.p[:, np.newaxis] * xlogy(m.P, m.P)))


def integrate(m: MarkovMeasure, f: LocallyConstantPotential) -> float:
    """m(f), summed over cylinders long enough to fix both f and the chain."""
    if f.matrix != m.matrix:
        raise AlphabetMismatch("Potential and measure live on different shifts")
    length = max(f.k, m.m)
    words, probs = cylinder_probabilities(m, length)
    values = f.extend(length).values
    return math.fsum(probs * values)


@dataclass(frozen=True)
class FreeEnergyReport:
    """h_m(T) + m(f) compared with a reference pressure."""

    entropy: float
    integral: float
    free_energy: float
    pressure_gap: float


def free_energy(m: MarkovMeasure, f: LocallyConstantPotential, pressure_ref: float) -> FreeEnergyReport:
    entropy = ks_entropy(m)
    integral = integrate(m, f)
    value = entropy + integral
    if pressure_ref - value < -1e-10:
        logger.warning(
            "Free energy exceeds the reference pressure",
            free_energy=value,
            pressure=pressure_ref,
        )
    return FreeEnergyReport(
        entropy=entropy,
        integral=integral,
        free_energy=value,
        pressure_gap=pressure_ref - value,
    )

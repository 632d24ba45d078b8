"""
Cylinder partition functions and pressure brackets.

Z_n = sum over admissible n-cylinders C of exp(max_{x in C} S_n f(x)).
The sup over a cylinder is an exact max over the (n + k - 1)-words
extending it. Z_n is submultiplicative, so (1/n) log Z_n decreases to the
pressure (Fekete) and every term is an upper bound.

Lower bounds come from the transfer matrix M: for v = M^n 1 > 0,

    min_s (M v)_s / v_s  <=  lambda  <=  max_s (M v)_s / v_s.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import structlog
from scipy.special import logsumexp

from ..errors import InputError, LengthZero
from ..potential.birkhoff import BirkhoffTable, birkhoff
from ..potential.potential import LocallyConstantPotential
from ..shift.matrix import TransitionMatrix
from ..shift.spectral import aperiodicity_index, spectral_radius
from ..shift.words import group_starts
from ..transfer.operator import build_transfer
from ..transfer.rpf import rpf_solve

logger = structlog.get_logger()

DEFAULT_N_MAX = 20
DEFAULT_MAX_WORDS = 10**8
BRACKET_SLACK = 1e-10


def _check(A: TransitionMatrix, f: LocallyConstantPotential, n: int) -> None:
    if n < 1:
        raise LengthZero()
    if f.matrix != A:
        raise InputError("Potential is not defined over the given matrix")


def cylinder_extremes(
    table: BirkhoffTable, cylinder_length: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Per-cylinder max and min of S_n f over cylinders of the given length (default n)."""
    length = table.n if cylinder_length is None else cylinder_length
    if not 0 <= length <= table.length:
        raise InputError(f"Cylinder length {length} outside 0..{table.length}")
    starts = group_starts(table.words, length)
    return (
        np.maximum.reduceat(table.values, starts),
        np.minimum.reduceat(table.values, starts),
    )


def partition_function(
    A: TransitionMatrix,
    f: LocallyConstantPotential,
    n: int,
    cylinder_length: int | None = None,
    max_words: int | None = DEFAULT_MAX_WORDS,
) -> float:
    """Z_n with a compensated sum; equals theta_n exactly when f = 0."""
    _check(A, f, n)
    sups, _ = cylinder_extremes(birkhoff(f, n, max_words=max_words), cylinder_length)
    return math.fsum(np.exp(sups))


def log_partition_function(
    A: TransitionMatrix,
    f: LocallyConstantPotential,
    n: int,
    cylinder_length: int | None = None,
    max_words: int | None = DEFAULT_MAX_WORDS,
) -> float:
    """log Z_n computed with the running maximum subtracted."""
    _check(A, f, n)
    sups, _ = cylinder_extremes(birkhoff(f, n, max_words=max_words), cylinder_length)
    return float(logsumexp(sups))


@dataclass(frozen=True)
class PressureRow:
    n: int
    estimate: float
    lower: float
    upper: float
    inf_estimate: float | None = None


@dataclass(frozen=True)
class PressureEstimate:
    per_n: list[PressureRow]
    bracket: tuple[float, float]
    transfer_value: float | None
    n_max: int
    a_priori_bracket: tuple[float, float] | None = field(default=None)

    @property
    def estimate(self) -> float:
        return self.per_n[-1].estimate

    @property
    def width(self) -> float:
        return self.bracket[1] - self.bracket[0]


def collatz_wielandt(M: np.ndarray, n_max: int) -> list[tuple[float, float]]:
    """(log min ratio, log max ratio) of M v_n / v_n for v_n = M^n 1, n = 1..n_max."""
    v = np.ones(M.shape[0])
    bounds = []
    for _ in range(n_max):
        v = M @ v
        v /= v.max()
        w = M @ v
        ratios = w / v
        bounds.append((float(np.log(ratios.min())), float(np.log(ratios.max()))))
    return bounds


def pressure_estimate(
    A: TransitionMatrix,
    f: LocallyConstantPotential,
    n_max: int = DEFAULT_N_MAX,
    max_words: int | None = DEFAULT_MAX_WORDS,
    tol: float = 1e-12,
) -> PressureEstimate:
    """Rigorous pressure bracket from partition functions, checked against log lambda."""
    if n_max < 2:
        raise InputError("Pressure estimates need n_max >= 2")
    _check(A, f, 1)

    L = build_transfer(A, f)
    cw = [(lo + L.shift, hi + L.shift) for lo, hi in collatz_wielandt(L.scaled, n_max)]
    rows = []
    for n in range(1, n_max + 1):
        table = birkhoff(f, n, max_words=max_words)
        sups, infs = cylinder_extremes(table)
        estimate = float(logsumexp(sups)) / n
        rows.append(
            PressureRow(
                n=n,
                estimate=estimate,
                lower=cw[n - 1][0],
                upper=min(estimate, cw[n - 1][1]),
                inf_estimate=float(logsumexp(infs)) / n,
            )
        )
        logger.debug("Partition function", n=n, words=table.words.shape[0], estimate=estimate)

    bracket = (max(r.lower for r in rows), min(r.upper for r in rows))

    transfer_value = None
    if aperiodicity_index(A) is not None:
        transfer_value = rpf_solve(L, tol=tol).log_lambda
        if not bracket[0] - BRACKET_SLACK <= transfer_value <= bracket[1] + BRACKET_SLACK:
            logger.warning(
                "Transfer pressure outside the partition bracket",
                transfer_value=transfer_value,
                bracket=bracket,
            )

    log_r = spectral_radius(A).log_radius
    a_priori = (f.min() + log_r, f.max() + log_r)
    logger.info("Pressure bracket", bracket=bracket, transfer_value=transfer_value)
    return PressureEstimate(
        per_n=rows,
        bracket=bracket,
        transfer_value=transfer_value,
        n_max=n_max,
        a_priori_bracket=a_priori,
    )

"""
Partition functions of D-potentials.

    Z_n(a) = sum over alpha in Lambda^(n-1) of exp ||x_alpha* a^(n) x_alpha||

For positive a, s_n = Z_{n+1}(a) is submultiplicative, so (1/n) log s_n is
an upper bound for the limit, and the limit lies in [h_top, ||a|| + h_top].
"""

import math
from dataclasses import dataclass, field

import numpy as np
import structlog
from scipy.special import logsumexp

from ..errors import InputError, WordBudgetExceeded
from ..pressure.partition import PressureEstimate, PressureRow
from ..shift.words import Word
from .algebra import TOL
from .dpotential import (
    DPotential,
    birkhoff_D,
    compressed_norm,
    compression_pieces,
    promote,
    theta_apply,
)
from .system import BimoduleSystem, h_top, q_word, word_count

logger = structlog.get_logger()


def _exponents(sys: BimoduleSystem, an: DPotential, length: int, mode: str) -> np.ndarray:
    """Compressed norms of a^(n) over Lambda^(length), grouped by prefix when needed.

    Words with no extension to the range of a^(n) are dead ends of the
    subshift and carry no term.
    """
    if length >= an.m:
        return np.array([compressed_norm(sys, an, alpha, mode) for alpha in sys.words(length)])
    best: dict[Word, float] = {}
    for gamma in an.components:
        value = compressed_norm(sys, an, gamma, mode)
        prefix = gamma[:length]
        best[prefix] = max(best.get(prefix, -np.inf), value)
    return np.array([best[alpha] for alpha in sys.words(length) if alpha in best])


def theorem62_partition(sys: BimoduleSystem, a: DPotential, n: int, mode: str = "norm") -> float:
    """Z_n(a); mode "max_spec" uses the top of the spectrum on q_alpha instead of the norm."""
    if n < 1:
        raise InputError("Partition functions need n >= 1")
    sys.require_invertible_corner_sum()
    exponents = _exponents(sys, birkhoff_D(sys, a, n), n - 1, mode)
    return math.fsum(np.exp(exponents))


def log_theorem62_partition(
    sys: BimoduleSystem, a: DPotential, n: int, mode: str = "norm"
) -> float:
    if n < 1:
        raise InputError("Partition functions need n >= 1")
    sys.require_invertible_corner_sum()
    return float(logsumexp(_exponents(sys, birkhoff_D(sys, a, n), n - 1, mode)))


def _check_budget(sys: BimoduleSystem, length: int, max_words: int | None) -> None:
    if max_words is None:
        return
    count = word_count(sys, length)
    if count > max_words:
        raise WordBudgetExceeded(length, count, max_words)


def feasible_n_max(
    sys: BimoduleSystem, a: DPotential, n_max: int, max_words: int
) -> int:
    """Largest n <= n_max whose pressure rows stay within the word budget."""
    n = n_max
    while n >= 1 and word_count(sys, a.m + n) > max_words:
        n -= 1
    if n < 1:
        raise WordBudgetExceeded(a.m + 1, word_count(sys, a.m + 1), max_words)
    return n


def _log_partitions(
    sys: BimoduleSystem,
    a: DPotential,
    n_max: int,
    mode: str,
    max_words: int | None = None,
) -> list[float]:
    """log Z_1 .. log Z_{n_max}, reusing the Birkhoff recursion."""
    sys.require_invertible_corner_sum()
    values = []
    total = lifted = a
    for n in range(1, n_max + 1):
        _check_budget(sys, a.m + n - 1, max_words)
        if n > 1:
            lifted = promote(sys, lifted)
            total = lifted + theta_apply(sys, total)
        values.append(float(logsumexp(_exponents(sys, total, n - 1, mode))))
        logger.debug("Bimodule partition function", n=n, log_z=values[-1])
    return values


def theorem62_pressure(
    sys: BimoduleSystem, a: DPotential, n_max: int, max_words: int | None = None
) -> PressureEstimate:
    """Fekete upper bounds from s_n = Z_{n+1}, with the entropy bracket attached.

    a^(n) has one component per word of length m + n - 1; ``max_words``
    bounds that count before any component is built.
    """
    if n_max < 1:
        raise InputError("n_max must be at least 1")
    min_spec = a.min_spectrum()
    if min_spec < -TOL:
        logger.warning("D-potential is not positive; entropy bracket does not apply", min_spec=min_spec)

    log_z = _log_partitions(sys, a, n_max + 1, "norm", max_words)
    entropy = h_top(sys)
    norm = a.norm()
    lower = entropy + max(min_spec, 0.0)

    rows = []
    upper = np.inf
    for n in range(1, n_max + 1):
        upper = min(upper, log_z[n] / n)
        rows.append(PressureRow(n=n, estimate=log_z[n - 1] / n, lower=lower, upper=upper))

    bracket = (lower, min(upper, norm + entropy))
    logger.info("Bimodule pressure", bracket=bracket, h_top=entropy, norm=norm)
    return PressureEstimate(
        per_n=rows,
        bracket=bracket,
        transfer_value=None,
        n_max=n_max,
        a_priori_bracket=(entropy, norm + entropy),
    )


@dataclass(frozen=True)
class CommutationRow:
    length: int
    compressed: float
    projection: float


@dataclass(frozen=True)
class CommutationReport:
    rows: list[CommutationRow] = field(default_factory=list)
    stable_from: int | None = None
    tol: float = TOL


def check_commutation(
    sys: BimoduleSystem, a: DPotential, max_length: int, tol: float = TOL
) -> CommutationReport:
    """Commutator norms of the components of a with x_alpha* a x_alpha and with q_alpha.

    ``stable_from`` is the smallest p such that both vanish for every
    p <= |alpha| <= max_length, or None.
    """
    rows = []
    for length in range(1, max_length + 1):
        worst_c = worst_q = 0.0
        for alpha in sys.words(length):
            pieces = [c for _, c in compression_pieces(sys, a, alpha)]
            q = q_word(sys, alpha)
            for value in a.components.values():
                for c in pieces:
                    worst_c = max(worst_c, value.commutator(c).norm())
                worst_q = max(worst_q, value.commutator(q).norm())
        rows.append(CommutationRow(length, worst_c, worst_q))

    stable_from = None
    for row in reversed(rows):
        if row.compressed <= tol and row.projection <= tol:
            stable_from = row.length
        else:
            break
    logger.debug("Commutation check", max_length=max_length, stable_from=stable_from)
    return CommutationReport(rows=rows, stable_from=stable_from, tol=tol)

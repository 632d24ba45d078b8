"""
Eigenmeasure and equilibrium measure on cylinders.

mu is the eigenmeasure (L* mu = lambda mu) and nu(g) = mu(h g) the
equilibrium measure. Both are determined on longer cylinders by peeling
off first letters:

    mu([i w]) = exp(f(i w)) mu([w]) / lambda.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import structlog

from ..errors import InputError, LengthZero
from ..measures.markov import MarkovMeasure, stationary_vector
from ..shift.words import Word, WordIndex, group_starts, word_array
from .operator import TransferOperator
from .rpf import RPFData

logger = structlog.get_logger()


@dataclass(frozen=True)
class CylinderWeights:
    """mu and nu weights of every admissible cylinder of one length."""

    length: int
    words: np.ndarray
    mu: np.ndarray
    nu: np.ndarray
    index: WordIndex = field(repr=False)

    def weight(self, word: Sequence[int]) -> tuple[float, float]:
        """(mu, nu) weight of [word]; exactly zero for inadmissible words."""
        if len(word) != self.length or any(not 0 <= int(x) < self.index.d for x in word):
            return 0.0, 0.0
        codes = self.index.codes
        code = 0
        for letter in word:
            code = code * self.index.d + int(letter)
        pos = int(np.searchsorted(codes, code))
        if pos >= len(codes) or codes[pos] != code:
            return 0.0, 0.0
        return float(self.mu[pos]), float(self.nu[pos])

    def as_dict(self) -> dict[Word, tuple[float, float]]:
        return {
            w: (float(a), float(b)) for w, a, b in zip(self.index.as_tuples(), self.mu, self.nu)
        }

    def marginal_defect(self, longer: "CylinderWeights") -> tuple[float, float]:
        """Largest violations of nu-consistency against a table one letter longer.

        Returns (max over w of |sum_j nu([w j]) - nu([w])|,
                 max over w of |sum_i nu([i w]) - nu([w])|).
        """
        if longer.length != self.length + 1:
            raise InputError("Marginal defect needs cylinders exactly one letter longer")
        starts = group_starts(longer.words, self.length)
        right = np.add.reduceat(longer.nu, starts)
        right_defect = float(np.max(np.abs(right - self.nu)))

        left = np.zeros_like(self.nu)
        np.add.at(left, self.index.positions(longer.words[:, 1:]), longer.nu)
        left_defect = float(np.max(np.abs(left - self.nu)))
        return right_defect, left_defect


def equilibrium_markov(L: TransferOperator, rpf: RPFData) -> MarkovMeasure:
    """The equilibrium measure nu as a Markov chain on the transfer states.

    P[s, t] = M[t, s] mu[t] / (lambda mu[s]) is the probability of moving
    from state s to the overlapping state t.
    """
    M = L.scaled
    P = M.T * rpf.mu[np.newaxis, :] / (rpf.scaled_lam * rpf.mu[:, np.newaxis])
    P = P / P.sum(axis=1, keepdims=True)

    # Stationary vector of P itself; mu*h agrees up to the solver residual
    p = stationary_vector(P)
    expected = rpf.nu / rpf.nu.sum()
    logger.debug(
        "Equilibrium chain built",
        states=L.size,
        stationary_gap=float(np.max(np.abs(p - expected))),
    )
    return MarkovMeasure(L.source, L.states, P, p)


def _log_mu_weights(L: TransferOperator, rpf: RPFData, words: np.ndarray) -> np.ndarray:
    m = L.m
    n = words.shape[1]
    steps = n - m
    weights = L.potential.extend(m + 1)
    log_mu = np.log(rpf.mu[L.index.positions(words[:, steps:])]) - steps * rpf.log_lambda
    for j in range(steps):
        log_mu += weights.window_values(words, j)
    return np.asarray(log_mu)


def cylinder_weights(L: TransferOperator, rpf: RPFData, m_out: int) -> CylinderWeights:
    """mu and nu weights of all admissible m_out-cylinders."""
    if m_out < 1:
        raise LengthZero()

    m = L.m
    A = L.source
    if m_out >= m:
        words = word_array(A, m_out)
        mu = np.exp(_log_mu_weights(L, rpf, words))
        nu = rpf.h[L.index.positions(words[:, :m])] * mu
    else:
        starts = group_starts(L.states, m_out)
        words = L.states[starts, :m_out]
        mu = np.add.reduceat(rpf.mu, starts)
        nu = np.add.reduceat(rpf.nu, starts)

    logger.debug("Cylinder weights", length=m_out, words=words.shape[0])
    return CylinderWeights(
        length=m_out, words=words, mu=mu, nu=nu, index=WordIndex(words, A.d)
    )


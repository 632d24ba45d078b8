"""
Search for the equilibrium measure over Markov measures.

The free energy F(P) = h(P) + integral of f is maximized over row-stochastic
matrices supported on the transition structure of the (k-1)-block
presentation. The gradient uses the fundamental matrix
Z = (I - P + 1 p)^{-1}:

    dF/dP_ab = p_a (c_ab - 1 + (Z r)_b),   c = f - log P,   r_s = sum_t P_st c_st
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import structlog
from scipy.special import xlogy

from ..errors import NotAperiodic, RangeMismatch
from ..potential.potential import LocallyConstantPotential
from ..shift.matrix import TransitionMatrix
from ..shift.spectral import aperiodicity_index
from ..shift.words import WordIndex, word_array
from ..transfer.operator import build_transfer
from ..transfer.rpf import rpf_solve
from .markov import (
    FreeEnergyReport,
    MarkovMeasure,
    free_energy,
    stationary_vector,
    support_pattern,
)

logger = structlog.get_logger()

LOG_FLOOR = 1e-300
# smallest probability kept on a supported transition; keeps the chain irreducible
SUPPORT_FLOOR = 1e-10
ARMIJO = 1e-4
MIN_STEP = 1e-14


def project_row(values: np.ndarray, floor: float = 0.0) -> np.ndarray:
    """Euclidean projection onto {x >= floor, sum(x) = 1}."""
    shifted = values - floor
    mass = 1.0 - floor * values.size
    u = np.sort(shifted)[::-1]
    cssv = np.cumsum(u) - mass
    ks = np.arange(1, u.size + 1)
    rho = int(np.nonzero(u - cssv / ks > 0)[0][-1])
    theta = cssv[rho] / (rho + 1)
    return np.asarray(np.maximum(shifted - theta, 0.0) + floor)


@dataclass
class FreeEnergyProblem:
    """Free energy of f as a function of a transition matrix on m-words."""

    matrix: TransitionMatrix
    potential: LocallyConstantPotential
    m: int = field(init=False)
    states: np.ndarray = field(init=False, repr=False)
    support: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.m = max(self.potential.k - 1, 1)
        self.states = word_array(self.matrix, self.m)
        self.support = support_pattern(self.matrix, self.m)
        index = WordIndex(self.states, self.matrix.d)
        extended = self.potential.extend(self.m + 1)
        self.weights = np.zeros(self.support.shape)
        src = index.positions(extended.words[:, :-1])
        dst = index.positions(extended.words[:, 1:])
        self.weights[src, dst] = extended.values

    def objective(self, P: np.ndarray) -> float:
        p = stationary_vector(P)
        rows = np.sum(P * self.weights - xlogy(P, P), axis=1)
        return float(p @ rows)

    def gradient(self, P: np.ndarray) -> np.ndarray:
        n = P.shape[0]
        p = stationary_vector(P)
        c = np.where(self.support, self.weights - np.log(np.maximum(P, LOG_FLOOR)), 0.0)
        r = np.sum(P * c, axis=1)
        # Z r for the fundamental matrix; least squares stays defined when P is reducible
        Zr, *_ = np.linalg.lstsq(np.eye(n) - P + np.outer(np.ones(n), p), r, rcond=None)
        g = p[:, np.newaxis] * (c - 1.0 + Zr[np.newaxis, :])
        return np.asarray(np.where(self.support, g, 0.0))

    def project(self, P: np.ndarray) -> np.ndarray:
        out = np.zeros_like(P)
        for i, row in enumerate(self.support):
            cols = np.nonzero(row)[0]
            out[i, cols] = project_row(P[i, cols], SUPPORT_FLOOR)
        return out

    def random_start(self, rng: np.random.Generator) -> np.ndarray:
        P = np.zeros(self.support.shape)
        for i, row in enumerate(self.support):
            cols = np.nonzero(row)[0]
            P[i, cols] = rng.dirichlet(np.ones(cols.size))
        return P

    def measure(self, P: np.ndarray) -> MarkovMeasure:
        P = P / P.sum(axis=1, keepdims=True)
        return MarkovMeasure.from_transition(self.matrix, self.states, P)

    def gradient_check(self, P: np.ndarray, eps: float = 1e-6) -> float:
        """Largest gap between analytic and central-difference directional derivatives.

        Directions move mass between two support entries of one row, which
        keeps P row-stochastic.
        """
        g = self.gradient(P)
        worst = 0.0
        for a, row in enumerate(self.support):
            cols = np.nonzero(row)[0]
            for b in cols[1:]:
                c = cols[0]
                step = min(eps, 0.5 * P[a, c], 0.5 * P[a, b])
                if step <= 0:
                    continue
                up, down = P.copy(), P.copy()
                up[a, b] += step
                up[a, c] -= step
                down[a, b] -= step
                down[a, c] += step
                numeric = (self.objective(up) - self.objective(down)) / (2 * step)
                worst = max(worst, abs(numeric - (g[a, b] - g[a, c])))
        return worst


def ascend(problem: FreeEnergyProblem, P: np.ndarray, iters: int, tol: float = 1e-15) -> np.ndarray:
    """Projected gradient ascent with Armijo backtracking.

    A linear algebra failure ends the ascent at the best matrix reached so far.
    """
    value = problem.objective(P)
    step = 1.0
    for iteration in range(iters):
        try:
            g = problem.gradient(P)
        except np.linalg.LinAlgError as e:
            logger.warning("Ascent stopped on a degenerate chain", iteration=iteration, error=str(e))
            break
        p = stationary_vector(P)
        # scale rows by 1/p_a so that rarely visited states still move
        direction = g / np.maximum(p, 1e-12)[:, np.newaxis]
        while step >= MIN_STEP:
            candidate = problem.project(P + step * direction)
            new_value = problem.objective(candidate)
            slope = float(np.sum(g * (candidate - P)))
            if slope > 0 and new_value >= value + ARMIJO * slope:
                break
            step *= 0.5
        else:
            logger.debug("Line search exhausted", iteration=iteration, value=value)
            break

        gain = new_value - value
        P, value = candidate, new_value
        step = min(1.0, 2.0 * step)
        if 0 <= gain <= tol:
            break
    return P


def _run_restart(
    problem: FreeEnergyProblem,
    seed: np.random.SeedSequence,
    iters: int,
    improve: bool,
    check_gradient: bool,
) -> tuple[np.ndarray, float]:
    rng = np.random.default_rng(seed)
    P = problem.random_start(rng)
    if check_gradient:
        gap = problem.gradient_check(P)
        logger.info("Gradient check", max_gap=gap)
    if improve:
        P = ascend(problem, P, iters)
    return P, problem.objective(P)


def variational_search(
    A: TransitionMatrix,
    f: LocallyConstantPotential,
    restarts: int = 4,
    iters: int = 2000,
    seed: int = 0,
    threads: int = 1,
    check_gradient: bool = False,
) -> tuple[MarkovMeasure, FreeEnergyReport]:
    """Best Markov measure found by multi-restart projected gradient ascent.

    With restarts=0 the first random initialization is returned unimproved.
    """
    if aperiodicity_index(A) is None:
        raise NotAperiodic("Variational search requires an aperiodic transition matrix")
    if f.matrix != A:
        raise RangeMismatch("Potential is not defined over the given matrix")

    problem = FreeEnergyProblem(A, f)
    pressure = rpf_solve(build_transfer(A, f)).log_lambda
    seeds = np.random.SeedSequence(seed).spawn(max(restarts, 1))
    improve = restarts > 0

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(
            pool.map(
                lambda s: _run_restart(problem, s, iters, improve, check_gradient),
                seeds,
            )
        )

    # highest value, lowest restart index on ties
    best = max(range(len(results)), key=lambda i: (results[i][1], -i))
    measure = problem.measure(results[best][0])
    report = free_energy(measure, f, pressure)
    logger.info(
        "Variational search finished",
        restarts=restarts,
        best=best,
        free_energy=report.free_energy,
        gap=report.pressure_gap,
    )
    return measure, report

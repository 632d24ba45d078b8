"""
Perron-Frobenius-Ruelle data (lambda, h, mu) of a transfer operator.

The iteration runs on the scaled matrix exp(-max f) M held by the operator,
so lambda is carried as its logarithm; ``lam`` is inf once it leaves the
float range while ``log_lambda`` stays exact.
"""

from dataclasses import dataclass

import numpy as np
import structlog

from ..errors import NoConvergence, NotAperiodic
from ..shift.spectral import aperiodicity_index
from .operator import TransferOperator

logger = structlog.get_logger()

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100_000


@dataclass(frozen=True)
class RPFData:
    """Leading eigendata: L h = lam h, mu L = lam mu, sum(mu) = 1, mu(h) = 1.

    ``scaled_lam`` is the eigenvalue of exp(-shift) L and the residuals are
    measured on that operator.
    """

    scaled_lam: float
    shift: float
    log_lambda: float
    h: np.ndarray
    mu: np.ndarray
    mu_h: float
    residuals: tuple[float, float]
    iterations: int

    @property
    def lam(self) -> float:
        with np.errstate(over="ignore"):
            return float(np.exp(self.log_lambda))

    @property
    def nu(self) -> np.ndarray:
        """Equilibrium weights of the state cylinders."""
        return np.asarray(self.mu * self.h)


def _perron_vector(matrix: np.ndarray) -> np.ndarray:
    values, vectors = np.linalg.eig(matrix)
    leading = np.abs(vectors[:, int(np.argmax(values.real))].real)
    if not np.all(np.isfinite(leading)) or leading.min() <= 0:
        return np.full(matrix.shape[0], 1.0 / matrix.shape[0])
    return np.asarray(leading / leading.sum())


def rpf_solve(
    L: TransferOperator,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> RPFData:
    """Simultaneous power iteration on L and its transpose.

    The iteration starts from the dense eigen-decomposition and stops once
    ||L h - lam h||_inf <= tol ||h||_inf, ||mu L - lam mu||_1 <= tol and the
    two eigenvalue estimates agree within tol; the power steps certify the
    result.
    """
    if aperiodicity_index(L.source) is None:
        raise NotAperiodic("Transfer operator requires an aperiodic transition matrix")

    M = L.scaled
    h = _perron_vector(M)
    mu = _perron_vector(M.T)
    h = h / h.max()

    lam = float((mu @ M).sum())
    r1 = r2 = np.inf
    for iteration in range(1, max_iter + 1):
        Mh = M @ h
        muM = mu @ M
        lam = float(muM.sum())
        lam_h = float(mu @ Mh) / float(mu @ h)
        r1 = float(np.max(np.abs(Mh - lam * h)) / np.max(np.abs(h)))
        r2 = float(np.sum(np.abs(muM - lam * mu)))
        if r1 <= tol and r2 <= tol and abs(lam_h - lam) <= tol:
            break
        h = Mh / Mh.max()
        mu = muM / muM.sum()
    else:
        logger.warning("RPF iteration did not converge", max_iter=max_iter, residuals=(r1, r2))
        raise NoConvergence(max_iter, max(r1, r2))

    mu = mu / mu.sum()
    h = h / float(mu @ h)
    mu_h = float(mu @ h)
    log_lambda = float(np.log(lam)) + L.shift

    logger.debug("RPF solved", log_lambda=log_lambda, iterations=iteration, residuals=(r1, r2))
    return RPFData(
        scaled_lam=lam,
        shift=L.shift,
        log_lambda=log_lambda,
        h=h,
        mu=mu,
        mu_h=mu_h,
        residuals=(r1, r2),
        iterations=iteration,
    )


def convergence_profile(
    L: TransferOperator,
    f0: np.ndarray,
    n_max: int,
    rpf: RPFData | None = None,
) -> list[float]:
    """e_n = || L^n f0 / lambda^n - (mu(f0) / mu(h)) h ||_inf for n = 1..n_max."""
    rpf = rpf or rpf_solve(L)
    g = np.asarray(f0, dtype=float).copy()
    limit = (float(rpf.mu @ g) / float(rpf.mu @ rpf.h)) * rpf.h
    errors = []
    for _ in range(n_max):
        g = (L.scaled @ g) / rpf.scaled_lam
        errors.append(float(np.max(np.abs(g - limit))))
    return errors

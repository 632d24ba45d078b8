"""
Spectral theory of transition matrices: primitivity and the Perron root.
"""

from dataclasses import dataclass

import numpy as np
import structlog

from ..errors import InputError, NoConvergence
from .matrix import TransitionMatrix

logger = structlog.get_logger()

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 10_000


@dataclass(frozen=True)
class SpectralReport:
    """Perron root r(A) of a transition matrix."""

    radius: float
    iterations: int
    residual: float
    eigenvector: np.ndarray | None = None
    aperiodicity_index: int | None = None
    lower_bound: float | None = None

    @property
    def log_radius(self) -> float:
        """Topological entropy log r(A)."""
        return float(np.log(self.radius))


def aperiodicity_index(A: TransitionMatrix) -> int | None:
    """Smallest N with A^N strictly positive, searched up to the Wielandt bound."""
    d = A.d
    pattern = A.entries.astype(bool)
    power = pattern.copy()
    for n in range(1, (d - 1) ** 2 + 2):
        if power.all():
            return n
        power = (power.astype(np.int64) @ pattern.astype(np.int64)) > 0
    return None


def is_irreducible(A: TransitionMatrix) -> bool:
    """Whether every state reaches every other state."""
    d = A.d
    reach = (np.eye(d, dtype=np.int64) + A.entries) > 0
    for _ in range(max(1, int(np.ceil(np.log2(d))) + 1)):
        reach = (reach.astype(np.int64) @ reach.astype(np.int64)) > 0
    return bool(reach.all())


def spectral_radius(
    A: TransitionMatrix,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SpectralReport:
    """Perron root of A by power iteration from the uniform vector.

    Aperiodic matrices are iterated directly; otherwise the iteration runs on
    (A + I) / 2, which has the same Perron vector, and the shift is undone.
    """
    N = aperiodicity_index(A)
    M = A.as_float()
    if N is None:
        M = (M + np.eye(A.d)) / 2.0

    v = np.full(A.d, 1.0 / A.d)
    rayleigh = 0.0
    residual = np.inf
    for iteration in range(1, max_iter + 1):
        w = M @ v
        new_rayleigh = float(w.sum())
        w /= new_rayleigh
        change = abs(new_rayleigh - rayleigh)
        v, rayleigh = w, new_rayleigh
        radius = rayleigh if N is not None else 2.0 * rayleigh - 1.0
        residual = float(np.max(np.abs(A.as_float() @ v - radius * v)) / np.max(np.abs(v)))
        if change <= tol and residual <= tol:
            break
    else:
        logger.warning("Power iteration did not converge", max_iter=max_iter, residual=residual)
        raise NoConvergence(max_iter, residual)

    lower = float(A.d ** (1.0 / N)) if N is not None else None
    logger.debug("Spectral radius", radius=radius, iterations=iteration, residual=residual)
    return SpectralReport(
        radius=radius,
        iterations=iteration,
        residual=residual,
        eigenvector=v / v.sum(),
        aperiodicity_index=N,
        lower_bound=lower,
    )


def characteristic_root(A: TransitionMatrix) -> float:
    """Perron root from the characteristic polynomial, for d <= 4.

    The Perron root is the largest real root; it is bracketed between the
    minimum and maximum row sums and polished by bisection.
    """
    if A.d > 4:
        raise InputError("Characteristic polynomial fallback is limited to d <= 4")
    coefficients = np.poly(A.as_float())
    row_sums = A.entries.sum(axis=1)
    lo, hi = float(row_sums.min()) - 1e-9, float(row_sums.max()) + 1e-9

    roots = np.roots(coefficients)
    real = roots[np.abs(roots.imag) < 1e-9].real
    candidates = real[(real >= lo) & (real <= hi)]
    guess = float(candidates.max()) if candidates.size else hi

    # bisection on a sign change around the guess keeps the result a true root
    a, b = max(lo, guess - 1e-6), min(hi, guess + 1e-6)
    fa = np.polyval(coefficients, a)
    if np.sign(fa) == np.sign(np.polyval(coefficients, b)):
        return guess
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = np.polyval(coefficients, mid)
        if np.sign(fm) == np.sign(fa):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)

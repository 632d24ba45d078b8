"""
KMS analysis of the dynamics generated by a locally constant potential on O_A.

A KMS state exists exactly at beta = log lambda, the pressure of the
potential. Its gauge-invariant diagonal data is the eigenmeasure mu; the
associated equilibrium state restricts to nu = mu(h .) on C(Lambda_A).
"""

from dataclasses import dataclass

import numpy as np
import structlog

from ..errors import NotAperiodic
from ..potential.potential import LocallyConstantPotential, var_n
from ..shift.matrix import TransitionMatrix
from ..shift.spectral import aperiodicity_index, spectral_radius
from ..shift.words import Word
from ..transfer.equilibrium import CylinderWeights, cylinder_weights
from ..transfer.operator import TransferOperator, build_transfer
from ..transfer.rpf import RPFData, rpf_solve

logger = structlog.get_logger()

EQUALITY_TOL = 1e-12


@dataclass(frozen=True)
class KMSReport:
    beta: float
    lower_bound: float
    upper_bound: float
    var0: float
    log_rA: float
    unique: bool
    holder_ok: bool
    gauge_bound: float
    gauge_invariant: bool
    weights: CylinderWeights
    warning: str | None = None

    @property
    def mu(self) -> dict[Word, float]:
        """Eigenmeasure weights, the diagonal data of the KMS state."""
        return {w: a for w, (a, _) in self.weights.as_dict().items()}

    @property
    def nu(self) -> dict[Word, float]:
        return {w: b for w, (_, b) in self.weights.as_dict().items()}


def kms_analyze(
    A: TransitionMatrix,
    f: LocallyConstantPotential,
    tol: float = 1e-12,
    m_out: int | None = None,
) -> KMSReport:
    """Inverse temperature, a priori bounds and uniqueness for the potential f."""
    if aperiodicity_index(A) is None:
        raise NotAperiodic("KMS analysis requires an aperiodic transition matrix")

    L = build_transfer(A, f)
    rpf = rpf_solve(L, tol=tol)
    log_r = spectral_radius(A).log_radius
    var0 = var_n(f, 0)

    warning = None
    if abs(var0 - log_r) <= EQUALITY_TOL * max(1.0, log_r):
        warning = "var_0 equals log r(A); the strict uniqueness condition fails"
        unique = False
    else:
        unique = var0 < log_r

    lower, upper = f.min() + log_r, f.max() + log_r
    beta = rpf.log_lambda
    if not lower - tol <= beta <= upper + tol:
        logger.warning("Inverse temperature outside a priori bounds", beta=beta, bounds=(lower, upper))

    weights = cylinder_weights(L, rpf, m_out or L.m)
    logger.info("KMS analysis", beta=beta, unique=unique, var0=var0, log_rA=log_r)
    return KMSReport(
        beta=beta,
        lower_bound=lower,
        upper_bound=upper,
        var0=var0,
        log_rA=log_r,
        unique=unique,
        # locally constant potentials have summable variations
        holder_ok=True,
        gauge_bound=f.max(),
        gauge_invariant=beta > f.max(),
        weights=weights,
        warning=warning,
    )


def scaling_identity_check(
    A: TransitionMatrix,
    f: LocallyConstantPotential,
    rpf: RPFData,
    trials: int = 100,
    seed: int = 0,
) -> float:
    """max over random g of |mu(L g) - lambda mu(g)| / (lambda ||g||_inf)."""
    L = build_transfer(A, f)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        g = rng.uniform(-1.0, 1.0, size=L.size)
        residual = abs(float(rpf.mu @ (L.scaled @ g)) - rpf.scaled_lam * float(rpf.mu @ g))
        worst = max(worst, residual / (rpf.scaled_lam * float(np.max(np.abs(g)))))
    logger.debug("Scaling identity", trials=trials, residual=worst)
    return worst


def equilibrium_restriction(L: TransferOperator, rpf: RPFData, m_out: int) -> CylinderWeights:
    """nu-weights of the equilibrium state sigma(b) = omega(h b) on m_out-cylinders."""
    weights = cylinder_weights(L, rpf, m_out)
    if (weights.nu <= 0).any():
        logger.warning("Equilibrium weights are not strictly positive", length=m_out)
    return weights

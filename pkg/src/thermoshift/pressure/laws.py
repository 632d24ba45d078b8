"""
Algebraic laws of the pressure, checked on transfer-operator values.
"""

from dataclasses import dataclass, field

import numpy as np
import structlog

from ..errors import NotAperiodic
from ..potential.potential import (
    LocallyConstantPotential,
    affine,
    coboundary_perturb,
)
from ..potential.recoding import power_system
from ..shift.matrix import TransitionMatrix
from ..shift.spectral import aperiodicity_index, spectral_radius
from ..transfer.operator import build_transfer
from ..transfer.rpf import rpf_solve

logger = structlog.get_logger()

DEFAULT_TOL = 1e-8


def transfer_pressure(A: TransitionMatrix, f: LocallyConstantPotential) -> float:
    return rpf_solve(build_transfer(A, f)).log_lambda


@dataclass(frozen=True)
class LawCheck:
    """One inequality or identity, stated as lhs <= rhs (or lhs == rhs)."""

    name: str
    lhs: float
    rhs: float
    passed: bool
    relation: str = "<="
    classical_only: bool = False


@dataclass
class LawSuiteReport:
    seed: int
    tol: float
    checks: list[LawCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[LawCheck]:
        return [c for c in self.checks if not c.passed]

    def record(self, name: str, lhs: float, rhs: float, relation: str = "<=", classical_only: bool = False) -> None:
        if relation == "==":
            passed = abs(lhs - rhs) <= self.tol
        else:
            passed = lhs <= rhs + self.tol
        self.checks.append(LawCheck(name, lhs, rhs, passed, relation, classical_only))
        if not passed:
            logger.warning("Pressure law violated", law=name, lhs=lhs, rhs=rhs)


def pressure_law_suite(
    A: TransitionMatrix,
    f: LocallyConstantPotential,
    g: LocallyConstantPotential,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    powers: tuple[int, ...] = (2, 3),
) -> LawSuiteReport:
    """Check the pressure laws for f and g with random scalars drawn from ``seed``."""
    if aperiodicity_index(A) is None:
        raise NotAperiodic("The pressure law suite compares transfer values on an aperiodic matrix")

    rng = np.random.default_rng(seed)
    report = LawSuiteReport(seed=seed, tol=tol)
    P = transfer_pressure
    pf, pg = P(A, f), P(A, g)

    # monotonicity through the pointwise envelope
    low, high = f.minimum(g), f.maximum(g)
    p_low, p_high = P(A, low), P(A, high)
    report.record("monotone_min", p_low, min(pf, pg))
    report.record("monotone_max", max(pf, pg), p_high)

    c = float(rng.uniform(-2.0, 2.0))
    report.record("scalar_additivity", P(A, affine(f, 1.0, c)), pf + c, "==")

    report.record("lipschitz", abs(pf - pg), (f - g).sup_norm())

    c_up = float(rng.uniform(1.0, 3.0))
    report.record("scaling_above_one", P(A, f * c_up), c_up * pf)
    c_down = float(rng.uniform(0.0, 1.0))
    report.record("scaling_below_one", c_down * pf, P(A, f * c_down))

    report.record("abs_bound", abs(pf), P(A, abs(f)))

    log_r = spectral_radius(A).log_radius
    report.record("lower_bound", f.min() + log_r, pf)
    report.record("upper_bound", pf, f.max() + log_r)

    report.record("coboundary", P(A, coboundary_perturb(f, g)), pf, "==")

    for r in powers:
        system = power_system(A, f, r)
        report.record(f"power_{r}", P(system.matrix, system.potential), r * pf, "==")

    mid = (f + g) * 0.5
    report.record("convexity", P(A, mid), 0.5 * (pf + pg), classical_only=True)

    logger.info("Pressure law suite", passed=report.passed, checks=len(report.checks))
    return report

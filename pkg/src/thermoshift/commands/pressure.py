"""
pressure and laws: pressure brackets of a potential and the pressure law suite.
"""

import argparse
from pathlib import Path

from ..formats import read_potential
from ..models import LawSuiteModel, PressureReportModel
from ..pressure.laws import DEFAULT_TOL as LAW_TOL
from ..pressure.laws import pressure_law_suite
from ..pressure.partition import pressure_estimate
from .base import (
    BaseCommand,
    CommandResult,
    RunConfig,
    add_matrix_arguments,
    load_matrix_and_potential,
)

# second potential of the law suite when --potential2 is absent
DEFAULT_SHIFT = 0.5


class PressureCommand(BaseCommand):
    @property
    def name(self) -> str:
        return "pressure"

    @property
    def description(self) -> str:
        return "Partition-function pressure bracket checked against the transfer operator"

    def execute(self, config: RunConfig) -> CommandResult:
        A, f = load_matrix_and_potential(config)
        estimate = pressure_estimate(
            A, f, n_max=config.n_max, max_words=config.max_words, tol=config.tol
        )
        lo, hi = estimate.bracket
        diagnostics = [f"P(f) in [{lo:.12g}, {hi:.12g}] (width {estimate.width:.3g})"]
        if estimate.transfer_value is not None:
            diagnostics.append(f"log lambda = {estimate.transfer_value:.12g}")
        if estimate.a_priori_bracket is not None:
            a, b = estimate.a_priori_bracket
            diagnostics.append(f"a priori: min f + log r(A) = {a:.12g}, max f + log r(A) = {b:.12g}")
        return CommandResult(
            success=True,
            report=PressureReportModel.from_result(estimate),
            series=estimate,
            diagnostics=diagnostics,
        )


class LawsCommand(BaseCommand):
    @property
    def name(self) -> str:
        return "laws"

    @property
    def description(self) -> str:
        return "Check monotonicity, Lipschitz, scaling, coboundary and power laws of the pressure"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_matrix_arguments(parser)
        parser.add_argument(
            "--potential2",
            dest="potential2_path",
            type=Path,
            help=f"Second potential (default: the first plus {DEFAULT_SHIFT})",
        )

    def execute(self, config: RunConfig) -> CommandResult:
        A, f = load_matrix_and_potential(config)
        if config.potential2_path is None:
            g = f + DEFAULT_SHIFT
        else:
            g = read_potential(config.potential2_path, A)

        # the laws compare independent eigenvalue solves
        tol = max(config.tol, LAW_TOL)
        report = pressure_law_suite(A, f, g, seed=config.seed, tol=tol)

        diagnostics = [f"{len(report.checks)} laws checked, seed {report.seed}, tol {tol:g}"]
        for check in report.failures():
            diagnostics.append(
                f"FAILED {check.name}: {check.lhs:.12g} {check.relation} {check.rhs:.12g}"
            )
        return CommandResult(
            success=True,
            report=LawSuiteModel.from_result(report),
            diagnostics=diagnostics,
        )

"""
bimodule-pressure: pressure of a D-potential over a Hilbert bimodule system.

Either --system with --dpotential, or --matrix with an optional --potential,
which runs the Cuntz-Krieger system of the matrix on the embedded potential.
The classical potential must be nonnegative there, the norm of a compression
being the sup of f only for f >= 0.
"""

import argparse
from pathlib import Path

import structlog

from ..bimodule.dpotential import DPotential, from_classical
from ..bimodule.pressure import check_commutation, feasible_n_max, theorem62_pressure
from ..bimodule.system import BimoduleSystem, cuntz_krieger_system, h_top
from ..config import get_settings
from ..errors import InputError
from ..formats import read_dpotential, read_system
from ..models import BimodulePressureModel, CommutationModel, PressureReportModel
from .base import BaseCommand, CommandResult, RunConfig, load_matrix_and_potential

logger = structlog.get_logger()

# word lengths past the range scanned for commutation
COMMUTATION_SPAN = 2


def load_system(config: RunConfig) -> tuple[BimoduleSystem, DPotential]:
    if config.system_path is not None:
        if config.dpotential_path is None:
            raise InputError("--system needs a --dpotential")
        sys = read_system(config.system_path)
        return sys, read_dpotential(config.dpotential_path, sys)
    if config.matrix_path is None:
        raise InputError("bimodule-pressure needs --system or --matrix")
    A, f = load_matrix_and_potential(config)
    if f.min() < 0:
        raise InputError(
            f"bimodule-pressure --matrix needs a nonnegative potential (min {f.min():.6g}); "
            "add a constant c and subtract it from the result"
        )
    sys = cuntz_krieger_system(A)
    return sys, from_classical(sys, f)


class BimodulePressureCommand(BaseCommand):
    @property
    def name(self) -> str:
        return "bimodule-pressure"

    @property
    def description(self) -> str:
        return "Partition-function pressure of a D-potential with its entropy bracket"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--system", dest="system_path", type=Path, help="System JSON file")
        parser.add_argument(
            "--dpotential", dest="dpotential_path", type=Path, help="D-potential JSON file"
        )
        parser.add_argument("--matrix", dest="matrix_path", type=Path, help="Transition matrix file")
        parser.add_argument(
            "--potential", dest="potential_path", type=Path, help="Classical potential JSON file"
        )

    def execute(self, config: RunConfig) -> CommandResult:
        sys, a = load_system(config)
        budget = min(config.max_words, get_settings().bimodule_max_words)
        n_max = feasible_n_max(sys, a, config.n_max, budget)
        if n_max < config.n_max:
            logger.warning(
                "n_max lowered by the word budget", requested=config.n_max, n_max=n_max, budget=budget
            )
        estimate = theorem62_pressure(sys, a, n_max, max_words=budget)
        commutation = check_commutation(sys, a, max_length=max(1, a.m) + COMMUTATION_SPAN)
        entropy = h_top(sys)

        lo, hi = estimate.bracket
        diagnostics = [
            f"h_top = {entropy:.12g}, ||a|| = {a.norm():.12g}",
            f"P(a) in [{lo:.12g}, {hi:.12g}]",
        ]
        if n_max < config.n_max:
            diagnostics.append(f"n_max lowered from {config.n_max} to {n_max} by the word budget of {budget}")
        if commutation.stable_from is None:
            diagnostics.append("components do not commute with the compressions up to the scanned length")
        else:
            diagnostics.append(f"commutation holds from word length {commutation.stable_from}")

        return CommandResult(
            success=True,
            report=BimodulePressureModel(
                h_top=entropy,
                norm=a.norm(),
                pressure=PressureReportModel.from_result(estimate),
                commutation=CommutationModel.from_result(commutation),
            ),
            series=estimate,
            diagnostics=diagnostics,
        )

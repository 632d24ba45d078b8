"""
entropy: topological entropy log r(A) of a Markov subshift.
"""

import argparse

import structlog

from ..config import get_settings
from ..errors import NoConvergence
from ..models import EntropyReportModel
from ..shift.spectral import (
    SpectralReport,
    aperiodicity_index,
    characteristic_root,
    is_irreducible,
    spectral_radius,
)
from .base import BaseCommand, CommandResult, RunConfig, add_matrix_arguments, load_matrix

logger = structlog.get_logger()


class EntropyCommand(BaseCommand):
    @property
    def name(self) -> str:
        return "entropy"

    @property
    def description(self) -> str:
        return "Topological entropy log r(A) of the subshift of a 0-1 matrix"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_matrix_arguments(parser, potential=False)

    def execute(self, config: RunConfig) -> CommandResult:
        settings = get_settings()
        A = load_matrix(config)
        method = "power_iteration"
        try:
            report = spectral_radius(
                A, tol=settings.spectral_tol, max_iter=settings.spectral_max_iter
            )
        except NoConvergence as e:
            logger.warning("Power iteration failed, using the characteristic polynomial", error=str(e))
            method = "characteristic_polynomial"
            report = SpectralReport(
                radius=characteristic_root(A),
                iterations=0,
                residual=0.0,
                aperiodicity_index=aperiodicity_index(A),
            )

        irreducible = is_irreducible(A)
        diagnostics = [f"log r(A) = {report.log_radius:.12g} ({method})"]
        if report.aperiodicity_index is None:
            diagnostics.append("A is not aperiodic")
        else:
            diagnostics.append(f"A^{report.aperiodicity_index} > 0")
        if not irreducible:
            diagnostics.append("A is not irreducible")

        return CommandResult(
            success=True,
            report=EntropyReportModel.from_result(report, irreducible, method),
            diagnostics=diagnostics,
        )

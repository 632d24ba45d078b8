"""
kms: inverse temperature and uniqueness of KMS states on O_A.
"""

import argparse

from ..kms.analysis import kms_analyze
from ..models import KMSReportModel
from .base import (
    BaseCommand,
    CommandResult,
    RunConfig,
    add_matrix_arguments,
    load_matrix_and_potential,
)


class KMSCommand(BaseCommand):
    @property
    def name(self) -> str:
        return "kms"

    @property
    def description(self) -> str:
        return "KMS inverse temperature, its a priori bounds and the uniqueness condition"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_matrix_arguments(parser)
        parser.add_argument(
            "--m-out", dest="m_out", type=int, help="Cylinder length of the reported weights"
        )

    def execute(self, config: RunConfig) -> CommandResult:
        A, f = load_matrix_and_potential(config)
        report = kms_analyze(A, f, tol=config.tol, m_out=config.m_out)

        diagnostics = [
            f"beta = {report.beta:.12g}",
            f"bounds: {report.lower_bound:.12g} <= beta <= {report.upper_bound:.12g}",
            f"var_0 = {report.var0:.12g}, log r(A) = {report.log_rA:.12g}, "
            f"unique = {report.unique}",
        ]
        if report.gauge_invariant:
            diagnostics.append(f"beta > max f = {report.gauge_bound:.12g}: the state is gauge invariant")
        if report.warning:
            diagnostics.append(f"warning: {report.warning}")

        return CommandResult(
            success=True,
            report=KMSReportModel.from_result(report),
            diagnostics=diagnostics,
        )

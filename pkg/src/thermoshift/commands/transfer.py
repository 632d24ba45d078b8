"""
rpf, equilibrium and variational: the transfer operator and its equilibrium state.
"""

import argparse

import numpy as np

from ..config import get_settings
from ..measures.markov import free_energy
from ..measures.variational import variational_search
from ..models import (
    EquilibriumReportModel,
    FreeEnergyModel,
    MarkovFile,
    RPFReportModel,
    VariationalReportModel,
    cylinder_table,
)
from ..shift.words import format_word
from ..transfer.equilibrium import cylinder_weights, equilibrium_markov
from ..transfer.operator import build_transfer
from ..transfer.rpf import convergence_profile, rpf_solve
from .base import (
    BaseCommand,
    CommandResult,
    RunConfig,
    add_matrix_arguments,
    load_matrix_and_potential,
)


class RPFCommand(BaseCommand):
    @property
    def name(self) -> str:
        return "rpf"

    @property
    def description(self) -> str:
        return "Leading eigenvalue, eigenfunction and eigenmeasure of the transfer operator"

    def execute(self, config: RunConfig) -> CommandResult:
        A, f = load_matrix_and_potential(config)
        L = build_transfer(A, f)
        rpf = rpf_solve(L, tol=config.tol, max_iter=get_settings().rpf_max_iter)

        e1 = np.zeros(L.size)
        e1[0] = 1.0
        profile = convergence_profile(L, e1, config.n_max, rpf)

        states = [format_word(w) for w in L.index.as_tuples()]
        r_h, r_mu = rpf.residuals
        return CommandResult(
            success=True,
            report=RPFReportModel.from_result(rpf, states),
            series=profile,
            diagnostics=[
                f"lambda = {rpf.lam:.12g}, log lambda = {rpf.log_lambda:.12g}",
                f"residuals {r_h:.2e} (h), {r_mu:.2e} (mu) after {rpf.iterations} iterations",
            ],
        )


def _add_m_out(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--m-out", dest="m_out", type=int, help="Cylinder length of the reported weights"
    )


class EquilibriumCommand(BaseCommand):
    @property
    def name(self) -> str:
        return "equilibrium"

    @property
    def description(self) -> str:
        return "Equilibrium Markov measure and cylinder weights from the transfer operator"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_matrix_arguments(parser)
        _add_m_out(parser)

    def execute(self, config: RunConfig) -> CommandResult:
        A, f = load_matrix_and_potential(config)
        L = build_transfer(A, f)
        rpf = rpf_solve(L, tol=config.tol, max_iter=get_settings().rpf_max_iter)
        measure = equilibrium_markov(L, rpf)
        energy = free_energy(measure, f, rpf.log_lambda)
        weights = cylinder_weights(L, rpf, config.m_out or L.m)

        return CommandResult(
            success=True,
            report=EquilibriumReportModel(
                log_lambda=rpf.log_lambda,
                measure=MarkovFile.from_result(measure),
                free_energy=FreeEnergyModel.from_result(energy),
                cylinders=cylinder_table(weights),
            ),
            diagnostics=[
                f"h + integral of f = {energy.free_energy:.12g}, log lambda = {rpf.log_lambda:.12g}",
                f"gap {energy.pressure_gap:.2e}",
            ],
        )


class VariationalCommand(BaseCommand):
    @property
    def name(self) -> str:
        return "variational"

    @property
    def description(self) -> str:
        return "Maximize the free energy over Markov measures by projected gradient ascent"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_matrix_arguments(parser)
        parser.add_argument("--restarts", type=int, help="Random restarts (0: no ascent)")
        parser.add_argument("--iters", type=int, help="Gradient steps per restart")

    def execute(self, config: RunConfig) -> CommandResult:
        A, f = load_matrix_and_potential(config)
        measure, energy = variational_search(
            A,
            f,
            restarts=config.restarts,
            iters=config.iters,
            seed=config.seed,
            threads=config.threads,
        )
        return CommandResult(
            success=True,
            report=VariationalReportModel(
                restarts=config.restarts,
                seed=config.seed,
                measure=MarkovFile.from_result(measure),
                free_energy=FreeEnergyModel.from_result(energy),
            ),
            diagnostics=[
                f"best free energy {energy.free_energy:.12g}, "
                f"gap to the pressure {energy.pressure_gap:.2e}"
            ],
        )

"""
Tests for the command registry and the subcommands.
"""

import math
from unittest.mock import patch

import numpy as np
import pytest
from pydantic import ValidationError

from thermoshift.commands.base import BaseCommand, CommandResult, RunConfig
from thermoshift.commands.registry import CommandRegistry, get_command_registry
from thermoshift.errors import NoConvergence
from thermoshift.models import (
    BimodulePressureModel,
    EntropyReportModel,
    EquilibriumReportModel,
    KMSReportModel,
    LawSuiteModel,
    PressureReportModel,
    RPFReportModel,
    VariationalReportModel,
)
from thermoshift.shift.matrix import TransitionMatrix

LOG_PHI = 0.4812118250596


class FailingCommand(BaseCommand):
    """A command that raises the given error."""

    def __init__(self, error: Exception):
        self.error = error

    @property
    def name(self) -> str:
        return "entropy"

    @property
    def description(self) -> str:
        return "Always fails"

    def execute(self, config: RunConfig) -> CommandResult:
        raise self.error


def test_command_result():
    """Test CommandResult defaults."""
    result = CommandResult(success=True)
    assert result.report is None
    assert result.series is None
    assert result.diagnostics == []
    assert result.exit_code == 0


def test_default_registry():
    """Test that every subcommand is registered."""
    registry = get_command_registry()
    assert set(registry.list_commands()) == {
        "entropy",
        "pressure",
        "rpf",
        "equilibrium",
        "variational",
        "kms",
        "bimodule-pressure",
        "laws",
    }
    for name in registry.list_commands():
        command = registry.get(name)
        assert command.name == name
        assert command.description


def test_register_and_unregister():
    """Test adding and removing commands."""
    registry = CommandRegistry()
    command = FailingCommand(NoConvergence(10))
    registry.register(command)
    assert registry.get("entropy") is command
    registry.unregister("entropy")
    assert registry.get("entropy") is None
    registry.unregister("entropy")


def test_missing_command_exit_code(golden, write_matrix):
    """Test that an unregistered command fails with exit code 1."""
    registry = CommandRegistry()
    result = registry.execute(RunConfig(command="entropy", matrix_path=write_matrix(golden)))
    assert not result.success
    assert result.exit_code == 1
    assert "not found" in result.error


def test_convergence_exit_code(golden, write_matrix):
    """Test that convergence failures exit with 2."""
    registry = CommandRegistry()
    registry.register(FailingCommand(NoConvergence(100, 1e-3)))
    result = registry.execute(RunConfig(command="entropy", matrix_path=write_matrix(golden)))
    assert not result.success
    assert result.exit_code == 2


def test_parse_error_exit_code(tmp_path):
    """Test that a malformed matrix file exits with 1."""
    path = tmp_path / "bad.txt"
    path.write_text("2\n1 1\n")
    result = get_command_registry().execute(RunConfig(command="entropy", matrix_path=path))
    assert not result.success
    assert result.exit_code == 1
    assert "bad.txt:3" in result.error


def test_run_config_validation(tmp_path):
    """Test that missing files and nonpositive numbers are rejected."""
    with pytest.raises(ValidationError):
        RunConfig(command="entropy", matrix_path=tmp_path / "absent.txt")
    with pytest.raises(ValidationError):
        RunConfig(command="pressure", n_max=0)
    with pytest.raises(ValidationError):
        RunConfig(command="pressure", tol=-1.0)
    with pytest.raises(ValidationError):
        RunConfig(command="nonsense")
    with pytest.raises(ValidationError):
        RunConfig(command="pressure", unknown=1)


def test_run_config_defaults_from_settings(monkeypatch):
    """Test that numeric defaults come from the environment settings."""
    monkeypatch.setenv("THERMOSHIFT_N_MAX", "7")
    monkeypatch.setenv("THERMOSHIFT_SEED", "42")
    config = RunConfig(command="pressure")
    assert config.n_max == 7
    assert config.seed == 42


def test_entropy_command(golden, write_matrix):
    """Test the entropy report of the golden mean shift."""
    result = get_command_registry().execute(
        RunConfig(command="entropy", matrix_path=write_matrix(golden))
    )
    assert result.success
    assert isinstance(result.report, EntropyReportModel)
    assert result.report.log_rA == pytest.approx(LOG_PHI, abs=1e-12)
    assert result.report.aperiodicity_index == 2
    assert result.series is None


def test_entropy_command_falls_back(golden, write_matrix):
    """Test the characteristic polynomial fallback when power iteration fails."""
    with patch(
        "thermoshift.commands.entropy.spectral_radius", side_effect=NoConvergence(5, 1.0)
    ):
        result = get_command_registry().execute(
            RunConfig(command="entropy", matrix_path=write_matrix(golden))
        )
    assert result.success
    assert result.report.method == "characteristic_polynomial"
    assert result.report.log_rA == pytest.approx(LOG_PHI, abs=1e-12)


def test_entropy_command_periodic(write_matrix):
    """Test that periodic matrices are reported, not rejected."""
    A = TransitionMatrix([[0, 1], [1, 0]])
    result = get_command_registry().execute(
        RunConfig(command="entropy", matrix_path=write_matrix(A))
    )
    assert result.success
    assert result.report.aperiodicity_index is None
    assert "A is not aperiodic" in result.diagnostics


def test_pressure_command(full2, log2_potential, write_matrix, write_json):
    """Test the pressure bracket of the {0, log 2} potential."""
    potential = write_json({"d": 2, "k": 1, "values": log2_potential.table_text()}, "f.json")
    result = get_command_registry().execute(
        RunConfig(
            command="pressure",
            matrix_path=write_matrix(full2),
            potential_path=potential,
            n_max=12,
        )
    )
    assert result.success
    assert isinstance(result.report, PressureReportModel)
    lo, hi = result.report.bracket
    assert lo - 1e-12 <= math.log(3) <= hi + 1e-12
    assert len(result.series.per_n) == 12


def test_rpf_command(golden, write_matrix):
    """Test the RPF report and its convergence profile."""
    result = get_command_registry().execute(
        RunConfig(command="rpf", matrix_path=write_matrix(golden), n_max=30)
    )
    assert result.success
    assert isinstance(result.report, RPFReportModel)
    assert result.report.log_lambda == pytest.approx(LOG_PHI, abs=1e-9)
    assert result.report.states == ["1", "2"]
    assert len(result.series) == 30


def test_equilibrium_command(full2, log2_potential, write_matrix, write_json):
    """Test the equilibrium chain and cylinder weights at a requested length."""
    potential = write_json({"d": 2, "k": 1, "values": log2_potential.table_text()}, "f.json")
    result = get_command_registry().execute(
        RunConfig(
            command="equilibrium",
            matrix_path=write_matrix(full2),
            potential_path=potential,
            m_out=2,
        )
    )
    assert result.success
    assert isinstance(result.report, EquilibriumReportModel)
    assert result.report.log_lambda == pytest.approx(math.log(3))
    assert set(result.report.cylinders) == {"11", "12", "21", "22"}
    mu, _ = result.report.cylinders["22"]
    assert mu == pytest.approx(4 / 9)
    assert abs(result.report.free_energy.pressure_gap) <= 1e-8


def test_variational_command(golden, write_matrix):
    """Test that the search reaches the entropy of the golden mean shift."""
    result = get_command_registry().execute(
        RunConfig(command="variational", matrix_path=write_matrix(golden), restarts=2, seed=3)
    )
    assert result.success
    assert isinstance(result.report, VariationalReportModel)
    assert result.report.seed == 3
    assert result.report.free_energy.pressure_gap <= 1e-6


def test_kms_command(golden, write_matrix):
    """Test beta = log phi for the zero potential."""
    result = get_command_registry().execute(
        RunConfig(command="kms", matrix_path=write_matrix(golden))
    )
    assert result.success
    assert isinstance(result.report, KMSReportModel)
    assert result.report.beta == pytest.approx(LOG_PHI, abs=1e-9)
    assert result.report.unique


def test_kms_command_periodic(write_matrix):
    """Test that the KMS analysis rejects periodic matrices with exit code 1."""
    A = TransitionMatrix([[0, 1], [1, 0]])
    result = get_command_registry().execute(RunConfig(command="kms", matrix_path=write_matrix(A)))
    assert not result.success
    assert result.exit_code == 1


def test_laws_command(golden, write_matrix):
    """Test the law suite with the default second potential."""
    result = get_command_registry().execute(
        RunConfig(command="laws", matrix_path=write_matrix(golden), seed=5)
    )
    assert result.success
    assert isinstance(result.report, LawSuiteModel)
    assert result.report.passed
    assert result.report.tol >= 1e-8
    assert result.report.seed == 5


def test_bimodule_pressure_from_matrix(golden, write_matrix):
    """Test the Cuntz-Krieger route of bimodule-pressure."""
    result = get_command_registry().execute(
        RunConfig(command="bimodule-pressure", matrix_path=write_matrix(golden), n_max=8)
    )
    assert result.success
    assert isinstance(result.report, BimodulePressureModel)
    assert result.report.h_top == pytest.approx(LOG_PHI, abs=1e-9)
    lo, hi = result.report.pressure.bracket
    assert lo - 1e-9 <= LOG_PHI <= hi + 1e-9
    assert result.report.commutation.stable_from == 1


def test_bimodule_pressure_from_system(m2c_system, write_json):
    """Test bimodule-pressure on system and D-potential files."""
    from thermoshift.bimodule.dpotential import DPotential
    from thermoshift.formats import dpotential_to_file, system_to_file

    system = write_json(system_to_file(m2c_system).model_dump(), "system.json")
    dpotential = write_json(
        dpotential_to_file(DPotential.constant(m2c_system, 0.25)).model_dump(), "a.json"
    )
    result = get_command_registry().execute(
        RunConfig(
            command="bimodule-pressure",
            system_path=system,
            dpotential_path=dpotential,
            n_max=6,
        )
    )
    assert result.success
    assert result.report.h_top == pytest.approx(math.log(2))
    lo, hi = result.report.pressure.bracket
    assert lo - 1e-9 <= math.log(2) + 0.25 <= hi + 1e-9


def test_bimodule_pressure_needs_dpotential(m2c_system, write_json):
    """Test that --system without --dpotential is an input error."""
    from thermoshift.formats import system_to_file

    system = write_json(system_to_file(m2c_system).model_dump(), "system.json")
    result = get_command_registry().execute(
        RunConfig(command="bimodule-pressure", system_path=system)
    )
    assert result.exit_code == 1
    assert "--dpotential" in result.error


def test_linear_algebra_failure_exit_code(golden, write_matrix):
    """Test that a singular solve exits with 2 instead of a traceback."""
    registry = CommandRegistry()
    registry.register(FailingCommand(np.linalg.LinAlgError("Singular matrix")))
    result = registry.execute(RunConfig(command="entropy", matrix_path=write_matrix(golden)))
    assert not result.success
    assert result.exit_code == 2
    assert "Singular matrix" in result.error


def test_unexpected_error_exit_code(golden, write_matrix):
    """Test that any other exception becomes a failed result with exit code 1."""
    registry = CommandRegistry()
    registry.register(FailingCommand(KeyError((1, 1))))
    result = registry.execute(RunConfig(command="entropy", matrix_path=write_matrix(golden)))
    assert not result.success
    assert result.exit_code == 1
    assert "Internal error" in result.error


def test_pressure_and_rpf_commands_large_constant(golden, write_matrix, write_json):
    """Test that f = 800 gives finite reports with log lambda = 800 + log phi."""
    matrix = write_matrix(golden)
    potential = write_json({"d": 2, "k": 1, "values": {"1": 800.0, "2": 800.0}}, "f.json")
    registry = get_command_registry()
    pressure = registry.execute(
        RunConfig(command="pressure", matrix_path=matrix, potential_path=potential, n_max=6)
    )
    assert pressure.success
    lo, hi = pressure.report.bracket
    assert lo - 1e-9 <= 800.0 + LOG_PHI <= hi + 1e-9
    rpf = registry.execute(RunConfig(command="rpf", matrix_path=matrix, potential_path=potential))
    assert rpf.success
    assert rpf.report.log_lambda == pytest.approx(800.0 + LOG_PHI, abs=1e-9)
    assert rpf.report.lambda_ is None
    assert all(math.isfinite(e) for e in rpf.series)


def test_bimodule_pressure_rejects_signed_potential(golden, write_matrix, write_json):
    """Test that the Cuntz-Krieger route refuses potentials with negative values."""
    potential = write_json({"d": 2, "k": 1, "values": {"1": -0.5, "2": 1.0}}, "f.json")
    result = get_command_registry().execute(
        RunConfig(
            command="bimodule-pressure",
            matrix_path=write_matrix(golden),
            potential_path=potential,
            n_max=4,
        )
    )
    assert not result.success
    assert result.exit_code == 1
    assert "nonnegative" in result.error


def test_bimodule_pressure_lowers_n_max_to_budget(golden, write_matrix, monkeypatch):
    """Test that the word budget shortens the series instead of running unbounded."""
    monkeypatch.setenv("THERMOSHIFT_BIMODULE_MAX_WORDS", "100")
    result = get_command_registry().execute(
        RunConfig(command="bimodule-pressure", matrix_path=write_matrix(golden), n_max=20)
    )
    assert result.success
    assert len(result.report.pressure.per_n) == 9
    assert result.report.pressure.n_max == 9
    assert any("lowered from 20 to 9" in line for line in result.diagnostics)

"""
Base classes for CLI commands.
"""

import argparse
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..config import get_settings
from ..errors import InputError
from ..formats import read_matrix, read_potential
from ..potential.potential import LocallyConstantPotential
from ..shift.matrix import TransitionMatrix

CommandName = Literal[
    "entropy",
    "pressure",
    "rpf",
    "equilibrium",
    "variational",
    "kms",
    "bimodule-pressure",
    "laws",
]


class RunConfig(BaseModel):
    """Everything one command invocation needs."""

    model_config = ConfigDict(extra="forbid")

    command: CommandName
    matrix_path: Path | None = None
    potential_path: Path | None = None
    potential2_path: Path | None = None
    system_path: Path | None = None
    dpotential_path: Path | None = None
    n_max: int = Field(default_factory=lambda: get_settings().n_max, gt=0)
    tol: float = Field(default_factory=lambda: get_settings().rpf_tol, gt=0)
    seed: int = Field(default_factory=lambda: get_settings().seed, ge=0)
    threads: int = Field(default_factory=lambda: get_settings().threads, ge=1)
    restarts: int = Field(default_factory=lambda: get_settings().variational_restarts, ge=0)
    iters: int = Field(default_factory=lambda: get_settings().variational_iters, ge=0)
    max_words: int = Field(default_factory=lambda: get_settings().max_words, gt=0)
    m_out: int | None = Field(default=None, gt=0)
    format: Literal["json", "csv"] = "json"
    out: Path | None = None
    verbose: bool = False

    @field_validator(
        "matrix_path", "potential_path", "potential2_path", "system_path", "dpotential_path"
    )
    @classmethod
    def must_exist(cls, v: Path | None) -> Path | None:
        if v is not None and not v.is_file():
            raise ValueError(f"file not found: {v}")
        return v


@dataclass
class CommandResult:
    """Result from a command execution."""

    success: bool
    report: BaseModel | None = None
    series: Any = None
    diagnostics: list[str] = field(default_factory=list)
    error: str | None = None
    exit_code: int = 0


class BaseCommand(ABC):
    """Base class for all commands."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Get the command name."""

    @property
    @abstractmethod
    def description(self) -> str:
        """Get the command description."""

    @abstractmethod
    def execute(self, config: RunConfig) -> CommandResult:
        """Run the command."""

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Add the input flags this command reads."""
        add_matrix_arguments(parser)


def add_matrix_arguments(parser: argparse.ArgumentParser, potential: bool = True) -> None:
    parser.add_argument(
        "--matrix", dest="matrix_path", type=Path, required=True, help="Transition matrix file"
    )
    if not potential:
        return
    parser.add_argument(
        "--potential",
        dest="potential_path",
        type=Path,
        help="Potential JSON file (default: the zero potential)",
    )


def load_matrix(config: RunConfig) -> TransitionMatrix:
    if config.matrix_path is None:
        raise InputError("--matrix is required")
    return read_matrix(config.matrix_path)


def load_matrix_and_potential(config: RunConfig) -> tuple[TransitionMatrix, LocallyConstantPotential]:
    """Matrix from --matrix and potential from --potential, zero when absent."""
    A = load_matrix(config)
    if config.potential_path is None:
        return A, LocallyConstantPotential.zero(A)
    return A, read_potential(config.potential_path, A)

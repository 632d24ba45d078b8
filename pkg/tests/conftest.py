"""
Shared fixtures.
"""

import json
import math
from pathlib import Path

import numpy as np
import pytest

from thermoshift.bimodule.algebra import Endomorphism, MultiMatrixAlgebra
from thermoshift.bimodule.system import BimoduleSystem
from thermoshift.cli import configure_logging
from thermoshift.config import get_settings
from thermoshift.potential.potential import LocallyConstantPotential
from thermoshift.shift.matrix import TransitionMatrix, full_shift, golden_mean

LOG_PHI = math.log((1 + math.sqrt(5)) / 2)


@pytest.fixture(autouse=True, scope="session")
def quiet_logging():
    """Keep structlog output on stderr and out of captured reports."""
    configure_logging("WARNING")


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def golden() -> TransitionMatrix:
    return golden_mean()


@pytest.fixture
def full2() -> TransitionMatrix:
    return full_shift(2)


@pytest.fixture
def log2_potential(full2) -> LocallyConstantPotential:
    """f = 0 on [1] and log 2 on [2]; its pressure on the full 2-shift is log 3."""
    return LocallyConstantPotential.from_table(full2, 1, {"1": 0.0, "2": math.log(2)})


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def aperiodic_matrices() -> list[TransitionMatrix]:
    """Five aperiodic matrices with d <= 4."""
    return [
        golden_mean(),
        full_shift(2),
        full_shift(3),
        TransitionMatrix(np.array([[1, 1, 0], [0, 0, 1], [1, 1, 1]])),
        TransitionMatrix(np.array([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 0, 1]])),
    ]


@pytest.fixture
def m2c_algebra() -> MultiMatrixAlgebra:
    return MultiMatrixAlgebra((2, 1))


@pytest.fixture
def m2c_system(m2c_algebra) -> BimoduleSystem:
    """M_2 + C with rho_1(A, c) = (c I, c) and rho_2(A, c) = (diag(c, 0), c).

    Every word has a nonzero projection, so Lambda is the full 2-shift.
    """
    rho1 = Endomorphism(m2c_algebra, np.array([[0, 2], [0, 1]]))
    rho2 = Endomorphism(m2c_algebra, np.array([[0, 1], [0, 1]]))
    return BimoduleSystem(m2c_algebra, (rho1, rho2))


@pytest.fixture
def write_matrix(tmp_path):
    def write(A: TransitionMatrix, name: str = "matrix.txt") -> Path:
        path = tmp_path / name
        rows = [" ".join(str(int(x)) for x in row) for row in A.entries]
        path.write_text("\n".join([str(A.d), *rows]) + "\n")
        return path

    return write


@pytest.fixture
def write_json(tmp_path):
    def write(payload: dict, name: str) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return path

    return write

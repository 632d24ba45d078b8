"""
Tests for partition functions, pressure brackets and the pressure laws.
"""

import math

import numpy as np
import pytest

from thermoshift.errors import InputError, NotAperiodic
from thermoshift.potential.birkhoff import birkhoff
from thermoshift.potential.potential import LocallyConstantPotential
from thermoshift.pressure.laws import pressure_law_suite, transfer_pressure
from thermoshift.pressure.partition import (
    collatz_wielandt,
    cylinder_extremes,
    log_partition_function,
    partition_function,
    pressure_estimate,
)
from thermoshift.shift.matrix import TransitionMatrix
from thermoshift.shift.words import word_count
from thermoshift.transfer.operator import build_transfer

LOG_PHI = 0.4812118250596


def test_partition_function_counts_words(golden):
    """Test that Z_n of the zero potential is the word count."""
    zero = LocallyConstantPotential.zero(golden)
    for n in range(1, 12):
        assert partition_function(golden, zero, n) == word_count(golden, n)


def test_partition_function_uses_cylinder_sup(golden):
    """Test that a range-2 potential is maximized over extensions of each cylinder."""
    f = LocallyConstantPotential.from_table(golden, 2, {"11": 0.0, "12": 1.0, "21": 0.5})
    # cylinders [1] and [2]: sup S_1 f is 1 on [1] and 0.5 on [2]
    assert partition_function(golden, f, 1) == pytest.approx(math.exp(1.0) + math.exp(0.5))
    sups, infs = cylinder_extremes(birkhoff(f, 1))
    assert sups.tolist() == [1.0, 0.5]
    assert infs.tolist() == [0.0, 0.5]


def test_log_partition_function_matches(golden, rng):
    """Test the log-sum-exp form against the direct sum."""
    f = LocallyConstantPotential.random(golden, 2, rng)
    for n in (1, 5, 10):
        assert log_partition_function(golden, f, n) == pytest.approx(
            math.log(partition_function(golden, f, n)), rel=1e-12
        )


def test_partition_function_rejects_foreign_potential(golden, log2_potential):
    """Test that the potential must live over the matrix."""
    with pytest.raises(InputError):
        partition_function(golden, log2_potential, 3)


def test_golden_pressure_bracket(golden):
    """Test the entropy bracket of the golden-mean shift at n_max = 20."""
    estimate = pressure_estimate(golden, LocallyConstantPotential.zero(golden), n_max=20)
    lo, hi = estimate.bracket
    assert lo <= LOG_PHI <= hi
    assert estimate.width <= 5e-3
    assert estimate.transfer_value == pytest.approx(LOG_PHI, abs=1e-9)
    assert len(estimate.per_n) == 20
    assert estimate.a_priori_bracket == pytest.approx((LOG_PHI, LOG_PHI), abs=1e-9)


def test_full_shift_pressure_bracket(full2, log2_potential):
    """Test that the bracket contains log 3 for the {0, log 2} potential."""
    estimate = pressure_estimate(full2, log2_potential, n_max=12)
    lo, hi = estimate.bracket
    assert lo - 1e-12 <= math.log(3) <= hi + 1e-12
    assert estimate.transfer_value == pytest.approx(math.log(3), abs=1e-9)


def test_upper_bounds_decrease_on_doubling(golden, rng):
    """Test the Fekete upper bounds along n = 1, 2, 4, 8, 16."""
    f = LocallyConstantPotential.random(golden, 2, rng)
    estimate = pressure_estimate(golden, f, n_max=16)
    uppers = [estimate.per_n[n - 1].upper for n in (1, 2, 4, 8, 16)]
    assert all(b <= a + 1e-12 for a, b in zip(uppers, uppers[1:]))


def test_rows_bracket_the_transfer_value(aperiodic_matrices, rng):
    """Test that every row gives a valid lower and upper bound."""
    for A in aperiodic_matrices:
        f = LocallyConstantPotential.random(A, 2, rng)
        estimate = pressure_estimate(A, f, n_max=6)
        p = estimate.transfer_value
        for row in estimate.per_n:
            assert row.lower <= p + 1e-10
            assert p <= row.upper + 1e-10
            assert row.inf_estimate <= row.estimate


def test_collatz_wielandt_tightens(golden):
    """Test that the eigenvalue bounds of M^n 1 close in on log lambda."""
    M = build_transfer(golden, LocallyConstantPotential.zero(golden)).matrix
    bounds = collatz_wielandt(M, 30)
    lo, hi = bounds[-1]
    assert lo <= LOG_PHI + 1e-12
    assert hi >= LOG_PHI - 1e-12
    assert hi - lo < 1e-10


def test_pressure_estimate_needs_two_lengths(golden):
    """Test that n_max below 2 is rejected."""
    with pytest.raises(InputError):
        pressure_estimate(golden, LocallyConstantPotential.zero(golden), n_max=1)


def test_periodic_matrix_has_no_transfer_value():
    """Test that periodic matrices still get a bracket."""
    A = TransitionMatrix(np.array([[0, 1], [1, 0]]))
    estimate = pressure_estimate(A, LocallyConstantPotential.zero(A), n_max=4)
    assert estimate.transfer_value is None
    assert estimate.bracket[0] <= 1e-12
    assert estimate.bracket[1] >= -1e-12


def test_pressure_laws_hold(aperiodic_matrices):
    """Test every pressure law on 100 seeded random potentials of range at most 2."""
    rng = np.random.default_rng(2024)
    for A in aperiodic_matrices:
        for trial in range(20):
            k = 1 + trial % 2
            f = LocallyConstantPotential.random(A, k, rng, -2.0, 2.0)
            g = LocallyConstantPotential.random(A, 2 - trial % 2, rng, -2.0, 2.0)
            report = pressure_law_suite(A, f, g, seed=trial)
            assert report.passed, [c.name for c in report.failures()]


def test_law_suite_contents(golden, rng):
    """Test the recorded law names and the classical-only flag."""
    f = LocallyConstantPotential.random(golden, 2, rng)
    report = pressure_law_suite(golden, f, f + 0.5, seed=3)
    names = [c.name for c in report.checks]
    for name in ("monotone_min", "lipschitz", "coboundary", "power_2", "power_3", "convexity"):
        assert name in names
    convexity = next(c for c in report.checks if c.name == "convexity")
    assert convexity.classical_only


def test_scalar_shift(golden):
    """Test that P(f + c) = P(f) + c for a constant."""
    f = LocallyConstantPotential.zero(golden)
    assert transfer_pressure(golden, f + 1.25) == pytest.approx(LOG_PHI + 1.25, abs=1e-10)


def test_law_suite_requires_aperiodic():
    """Test that the suite rejects periodic matrices."""
    A = TransitionMatrix(np.array([[0, 1], [1, 0]]))
    f = LocallyConstantPotential.zero(A)
    with pytest.raises(NotAperiodic):
        pressure_law_suite(A, f, f)


def test_pressure_estimate_large_constant(golden):
    """Test that f = 800 brackets 800 + log phi and the transfer value agrees."""
    f = LocallyConstantPotential.constant(golden, 800.0)
    estimate = pressure_estimate(golden, f, n_max=6)
    lo, hi = estimate.bracket
    assert lo - 1e-9 <= 800.0 + LOG_PHI <= hi + 1e-9
    assert estimate.transfer_value == pytest.approx(800.0 + LOG_PHI, abs=1e-9)
    assert all(math.isfinite(row.upper) and math.isfinite(row.lower) for row in estimate.per_n)
    assert log_partition_function(golden, f, 6) == pytest.approx(
        4800.0 + math.log(word_count(golden, 6)), abs=1e-9
    )

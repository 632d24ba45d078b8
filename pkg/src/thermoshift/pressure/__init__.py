"""
Topological pressure: partition functions, brackets and the law suite.
"""

from .laws import LawCheck, LawSuiteReport, pressure_law_suite, transfer_pressure
from .partition import (
    PressureEstimate,
    PressureRow,
    collatz_wielandt,
    cylinder_extremes,
    log_partition_function,
    partition_function,
    pressure_estimate,
)

__all__ = [
    "LawCheck",
    "LawSuiteReport",
    "pressure_law_suite",
    "transfer_pressure",
    "PressureEstimate",
    "PressureRow",
    "collatz_wielandt",
    "cylinder_extremes",
    "log_partition_function",
    "partition_function",
    "pressure_estimate",
]

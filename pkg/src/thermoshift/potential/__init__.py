"""
Locally constant potentials, Birkhoff sums and block recodings.
"""

from .birkhoff import BirkhoffTable, birkhoff, birkhoff_values
from .potential import (
    LocallyConstantPotential,
    affine,
    coboundary_perturb,
    evaluate,
    truncation_error,
    var_n,
)
from .recoding import PowerSystem, power_system

__all__ = [
    "BirkhoffTable",
    "birkhoff",
    "birkhoff_values",
    "LocallyConstantPotential",
    "affine",
    "coboundary_perturb",
    "evaluate",
    "truncation_error",
    "var_n",
    "PowerSystem",
    "power_system",
]

"""
Ruelle transfer operators, their Perron-Frobenius-Ruelle data and the
resulting eigen- and equilibrium measures.
"""

from .equilibrium import CylinderWeights, cylinder_weights, equilibrium_markov
from .operator import TransferOperator, build_transfer
from .rpf import RPFData, convergence_profile, rpf_solve

__all__ = [
    "CylinderWeights",
    "cylinder_weights",
    "equilibrium_markov",
    "TransferOperator",
    "build_transfer",
    "RPFData",
    "convergence_profile",
    "rpf_solve",
]

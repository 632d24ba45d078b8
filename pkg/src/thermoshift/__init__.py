"""
thermoshift: thermodynamic formalism for Markov subshifts.

Pressure via partition functions and transfer operators, equilibrium
measures, the variational principle over Markov measures, KMS inverse
temperatures for Cuntz-Krieger algebras, and the bimodule pressure formula
over finite-dimensional coefficient algebras.
"""

__version__ = "1.0.0"
__author__ = "thermoshift developers"

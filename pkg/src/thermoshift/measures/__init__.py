"""
Markov measures: entropy, integrals, free energy and the variational search.
"""

from .markov import (
    FreeEnergyReport,
    MarkovMeasure,
    bernoulli,
    cylinder_probabilities,
    free_energy,
    integrate,
    ks_entropy,
    random_markov,
    recode,
    stationary_vector,
    support_pattern,
)
from .variational import FreeEnergyProblem, variational_search

__all__ = [
    "FreeEnergyReport",
    "MarkovMeasure",
    "bernoulli",
    "cylinder_probabilities",
    "free_energy",
    "integrate",
    "ks_entropy",
    "random_markov",
    "recode",
    "stationary_vector",
    "support_pattern",
    "FreeEnergyProblem",
    "variational_search",
]

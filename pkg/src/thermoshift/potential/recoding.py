"""
Block recodings of potentials.

``power_system`` presents (Lambda_A, T^r) as a subshift of finite type on
the admissible r-words and carries S_r f along, so that the pressure of the
recoded potential is r times the pressure of f.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import InputError
from ..shift.matrix import TransitionMatrix
from ..shift.words import word_array
from .birkhoff import birkhoff_values
from .potential import LocallyConstantPotential


@dataclass(frozen=True)
class PowerSystem:
    """The r-block presentation of T^r and the recoded Birkhoff sum S_r f."""

    r: int
    matrix: TransitionMatrix
    blocks: np.ndarray
    potential: LocallyConstantPotential


def power_system(A: TransitionMatrix, f: LocallyConstantPotential, r: int) -> PowerSystem:
    if r < 1:
        raise InputError("Power must be at least 1")
    if f.matrix != A:
        raise InputError("Potential is not defined over the given matrix")

    blocks = word_array(A, r)
    entries = A.entries[blocks[:, -1]][:, blocks[:, 0]]
    block_matrix = TransitionMatrix(entries)

    # S_r f reads r + k - 1 letters, i.e. this many consecutive blocks
    span = 1 + -(-(f.k - 1) // r)
    block_words = word_array(block_matrix, span)
    letters = blocks[block_words].reshape(block_words.shape[0], span * r)
    values = birkhoff_values(f, letters, r)
    return PowerSystem(r, block_matrix, blocks, LocallyConstantPotential(block_matrix, span, values))

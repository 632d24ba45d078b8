"""
Finite matrix representation of the Ruelle transfer operator.

For a potential f of range k the operator

    (L_f g)(x) = sum_{i : A[i, x_1] = 1} exp(f(ix)) g(ix)

maps functions of the first m = max(k - 1, 1) coordinates to functions of
the first m coordinates. States are the admissible m-words; the entry
M[s, t] is exp(f(i s)) when t = (i s)[:m] and i s is admissible.

The matrix is stored as exp(-max f) M, with entries in (0, 1], so that
potentials far from zero neither overflow nor underflow; ``shift`` is the
subtracted max f and comes back in on the log scale.
"""

from dataclasses import dataclass, field

import numpy as np
import structlog

from ..errors import RangeMismatch
from ..potential.potential import LocallyConstantPotential
from ..shift.matrix import TransitionMatrix
from ..shift.words import WordIndex, word_array

logger = structlog.get_logger()


@dataclass(frozen=True)
class TransferOperator:
    source: TransitionMatrix
    potential: LocallyConstantPotential
    states: np.ndarray
    scaled: np.ndarray
    shift: float
    index: WordIndex = field(repr=False)

    @property
    def m(self) -> int:
        """Length of the state words."""
        return int(self.states.shape[1])

    @property
    def size(self) -> int:
        return int(self.states.shape[0])

    @property
    def matrix(self) -> np.ndarray:
        """The unscaled matrix M; entries overflow to inf once max f passes ~709."""
        with np.errstate(over="ignore"):
            return np.asarray(np.exp(self.shift) * self.scaled)

    def apply(self, g: np.ndarray) -> np.ndarray:
        """L g for a function g of the first m coordinates."""
        with np.errstate(over="ignore"):
            return np.asarray(np.exp(self.shift) * (self.scaled @ np.asarray(g, dtype=float)))

    def apply_dual(self, mu: np.ndarray) -> np.ndarray:
        """L* mu for a measure given by its m-cylinder weights."""
        with np.errstate(over="ignore"):
            return np.asarray(np.exp(self.shift) * (np.asarray(mu, dtype=float) @ self.scaled))


def build_transfer(A: TransitionMatrix, f: LocallyConstantPotential) -> TransferOperator:
    """Transfer matrix of f acting on functions of the first max(k-1, 1) coordinates."""
    if f.matrix != A:
        raise RangeMismatch(
            f"Potential of range {f.k} over d={f.d} is not defined over the given matrix"
        )

    m = max(f.k - 1, 1)
    weights = f.extend(m + 1)
    states = word_array(A, m)
    index = WordIndex(states, A.d)

    shift = float(np.max(weights.values))
    transitions = weights.words
    s = index.positions(transitions[:, 1:])
    t = index.positions(transitions[:, :-1])
    scaled = np.zeros((len(index), len(index)))
    scaled[s, t] = np.exp(weights.values - shift)
    scaled.setflags(write=False)

    logger.debug("Transfer operator built", states=len(index), k=f.k, shift=shift)
    return TransferOperator(
        source=A, potential=f, states=states, scaled=scaled, shift=shift, index=index
    )

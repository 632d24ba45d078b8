"""
Hilbert bimodule systems X = q_1 A + ... + q_d A over a multimatrix algebra.

The generators satisfy a x_i = x_i rho_i(a) and x_i* x_i = q_i. For a word
alpha the projection q_alpha = x_alpha* x_alpha follows the recursion

    q_() = I,    q_(alpha j) = rho_j(q_alpha),

and alpha belongs to the subshift Lambda exactly when q_alpha != 0.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import structlog

from ..errors import InvalidAlgebraData, NotInvertibleCornerSum
from ..shift.matrix import TransitionMatrix
from ..shift.words import Word
from .algebra import TOL, AlgebraElement, Endomorphism, MultiMatrixAlgebra

logger = structlog.get_logger()


@dataclass(frozen=True, eq=False)
class BimoduleSystem:
    algebra: MultiMatrixAlgebra
    endos: tuple[Endomorphism, ...]
    matrix: TransitionMatrix | None = None
    _projections: dict[Word, AlgebraElement] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.endos:
            raise InvalidAlgebraData("A bimodule system needs at least one endomorphism")
        for i, endo in enumerate(self.endos):
            if endo.algebra != self.algebra:
                raise InvalidAlgebraData(f"Endomorphism {i + 1} acts on a different algebra")
        object.__setattr__(self, "endos", tuple(self.endos))

    @property
    def d(self) -> int:
        return len(self.endos)

    def rho(self, i: int, a: AlgebraElement) -> AlgebraElement:
        return self.endos[i](a)

    def corner_sum(self) -> AlgebraElement:
        total = self.algebra.zero()
        for endo in self.endos:
            total = total + endo.corner
        return total

    def require_invertible_corner_sum(self) -> None:
        smallest = float(np.min(self.corner_sum().spectrum()))
        if smallest <= TOL:
            raise NotInvertibleCornerSum(smallest)

    def words(self, n: int) -> list[Word]:
        """Lambda^(n): words of length n with nonzero q, lexicographically."""
        layer: list[Word] = [()]
        for _ in range(n):
            layer = [w + (j,) for w in layer for j in range(self.d) if is_admissible(self, w + (j,))]
        return layer


def q_word(sys: BimoduleSystem, alpha: Sequence[int]) -> AlgebraElement:
    word = tuple(int(x) for x in alpha)
    if any(not 0 <= x < sys.d for x in word):
        raise InvalidAlgebraData(f"Word letters must lie in 1..{sys.d}")
    cache = sys._projections
    if word in cache:
        return cache[word]
    q = sys.algebra.identity() if not word else sys.rho(word[-1], q_word(sys, word[:-1]))
    cache[word] = q
    return q


def is_admissible(sys: BimoduleSystem, alpha: Sequence[int]) -> bool:
    return not q_word(sys, alpha).is_zero()


def word_count(sys: BimoduleSystem, n: int) -> int:
    """theta_n, the number of labeled paths of length n in the projection graph."""
    nodes, adjacency = subshift_graph(sys)
    v = np.zeros(len(nodes), dtype=object)
    v[0] = 1
    A = adjacency.astype(object)
    for _ in range(n):
        v = v.dot(A)
    return int(sum(v))


def subshift_graph(sys: BimoduleSystem) -> tuple[list[AlgebraElement], np.ndarray]:
    """Distinct nonzero projections q_alpha reachable from I, with labeled-edge counts.

    adjacency[u, v] counts letters j with rho_j(node u) = node v. Node 0 is I.
    """
    nodes = [sys.algebra.identity()]
    seen = {nodes[0].key(): 0}
    edges: list[tuple[int, int]] = []
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for j in range(sys.d):
            image = sys.rho(j, nodes[u])
            if image.is_zero():
                continue
            k = image.key()
            if k not in seen:
                seen[k] = len(nodes)
                nodes.append(image)
                queue.append(seen[k])
            edges.append((u, seen[k]))

    adjacency = np.zeros((len(nodes), len(nodes)), dtype=np.int64)
    for u, v in edges:
        adjacency[u, v] += 1
    logger.debug("Projection graph", nodes=len(nodes), edges=len(edges))
    return nodes, adjacency


def h_top(sys: BimoduleSystem) -> float:
    """Topological entropy of Lambda, the log Perron root of the projection graph."""
    _, adjacency = subshift_graph(sys)
    radius = float(np.max(np.abs(np.linalg.eigvals(adjacency.astype(float)))))
    if radius < 0.5:
        raise InvalidAlgebraData("The subshift of the bimodule system is empty")
    return float(np.log(radius))


def cuntz_krieger_system(A: TransitionMatrix) -> BimoduleSystem:
    """Commutative system over C^d with rho_i(a) = a_i q_i and q_i = sum_j A[i, j] p_j."""
    d = A.d
    algebra = MultiMatrixAlgebra((1,) * d)
    endos = []
    for i in range(d):
        M = np.zeros((d, d), dtype=np.int64)
        M[:, i] = A.entries[i]
        endos.append(Endomorphism(algebra, M))
    return BimoduleSystem(algebra, tuple(endos), matrix=A)

"""
Elements of the diagonal subalgebra D.

A D-potential of range m is a = sum_{|gamma| = m} x_gamma a_gamma x_gamma*
with a_gamma = q_gamma a_gamma q_gamma in the coefficient algebra. Range 0
means an element of the coefficient algebra itself, keyed by the empty word.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np
import structlog

from ..errors import InputError, InvalidAlgebraData, WordTooShort
from ..potential.potential import LocallyConstantPotential
from ..shift.words import Word, format_word
from .algebra import TOL, AlgebraElement
from .system import BimoduleSystem, q_word

logger = structlog.get_logger()


@dataclass(frozen=True, eq=False)
class DPotential:
    system: BimoduleSystem
    m: int
    components: Mapping[Word, AlgebraElement]

    def __post_init__(self) -> None:
        if self.m < 0:
            raise InputError("D-potential range must be nonnegative")
        words = self.system.words(self.m)
        table = {tuple(int(x) for x in k): v for k, v in self.components.items()}
        extra = set(table) - set(words)
        if extra:
            raise InvalidAlgebraData(
                f"Components at words outside Lambda^({self.m}): "
                + ", ".join(sorted(format_word(w) for w in extra))
            )
        missing = [w for w in words if w not in table]
        if missing:
            raise InvalidAlgebraData(
                "Missing components for " + ", ".join(format_word(w) or "()" for w in missing)
            )
        for word, a in table.items():
            if not a.is_self_adjoint():
                raise InvalidAlgebraData(f"Component {format_word(word) or '()'} is not self-adjoint")
            q = q_word(self.system, word)
            if not (q @ a @ q).allclose(a):
                raise InvalidAlgebraData(
                    f"Component {format_word(word) or '()'} is not supported on q_{format_word(word)}"
                )
        object.__setattr__(self, "components", {w: table[w] for w in words})

    @classmethod
    def constant(cls, sys: BimoduleSystem, c: float) -> DPotential:
        return cls(sys, 0, {(): sys.algebra.scalar(c)})

    @classmethod
    def from_element(cls, sys: BimoduleSystem, a: AlgebraElement) -> DPotential:
        return cls(sys, 0, {(): a})

    def __add__(self, other: DPotential) -> DPotential:
        a, b = common_range(self, other)
        return DPotential(self.system, a.m, {w: a.components[w] + b.components[w] for w in a.components})

    def __mul__(self, c: float) -> DPotential:
        return DPotential(self.system, self.m, {w: v * c for w, v in self.components.items()})

    __rmul__ = __mul__

    def norm(self) -> float:
        """||a|| = max_gamma ||a_gamma||, the components being orthogonal."""
        return max(v.norm() for v in self.components.values())

    def min_spectrum(self) -> float:
        """Smallest eigenvalue of a, each a_gamma read on the range of q_gamma."""
        values = [
            float(v.corner_spectrum(q_word(self.system, w)).min(initial=np.inf))
            for w, v in self.components.items()
        ]
        return min(values)


def common_range(a: DPotential, b: DPotential) -> tuple[DPotential, DPotential]:
    if a.system is not b.system:
        raise InvalidAlgebraData("D-potentials belong to different systems")
    while a.m < b.m:
        a = promote(a.system, a)
    while b.m < a.m:
        b = promote(b.system, b)
    return a, b


def compress(sys: BimoduleSystem, a: DPotential, beta: Sequence[int]) -> AlgebraElement:
    """x_beta* a x_beta for |beta| >= m: rho_{beta'}(a_gamma) with beta = gamma beta'.

    The letters of beta' act in reading order, so rho_{beta'_1} is applied first.
    """
    word = tuple(int(x) for x in beta)
    if len(word) < a.m:
        raise WordTooShort(len(word), a.m)
    if q_word(sys, word).is_zero():
        return sys.algebra.zero()
    b = a.components[word[: a.m]]
    for j in word[a.m :]:
        b = sys.rho(j, b)
    return b


def compression_pieces(
    sys: BimoduleSystem, a: DPotential, alpha: Sequence[int]
) -> list[tuple[Word, AlgebraElement]]:
    """Blocks of x_alpha* a x_alpha keyed by the word whose corner they live on.

    For |alpha| >= m this is the single compression; shorter words give the
    components of a at the extensions of alpha.
    """
    word = tuple(int(x) for x in alpha)
    if len(word) >= a.m:
        return [(word, compress(sys, a, word))]
    return [(w, v) for w, v in a.components.items() if w[: len(word)] == word]


def compressed_norm(
    sys: BimoduleSystem, a: DPotential, alpha: Sequence[int], mode: str = "norm"
) -> float:
    """||x_alpha* a x_alpha||, or its top eigenvalue on q_alpha when mode is "max_spec".

    For |alpha| < m the compression is block diagonal over the extensions of
    alpha, so its value is the max over those components.
    """
    pieces = compression_pieces(sys, a, alpha)
    if not pieces:
        return 0.0
    if mode == "norm":
        return max(v.norm() for _, v in pieces)
    if mode == "max_spec":
        return max(
            float(v.corner_spectrum(q_word(sys, w)).max(initial=-np.inf)) for w, v in pieces
        )
    raise InputError(f"Unknown norm mode {mode!r}")


def promote(sys: BimoduleSystem, a: DPotential) -> DPotential:
    """The same element presented with range m + 1: component gamma i is rho_i(a_gamma)."""
    components = {}
    for gamma, value in a.components.items():
        for i in range(sys.d):
            word = gamma + (i,)
            if not q_word(sys, word).is_zero():
                components[word] = sys.rho(i, value)
    return DPotential(sys, a.m + 1, components)


def theta_apply(sys: BimoduleSystem, a: DPotential) -> DPotential:
    """theta(a) = sum_i x_i a x_i*: component i gamma is q_{i gamma} a_gamma q_{i gamma}."""
    components = {}
    for i in range(sys.d):
        for gamma, value in a.components.items():
            word = (i,) + gamma
            q = q_word(sys, word)
            if not q.is_zero():
                components[word] = q @ value @ q
    return DPotential(sys, a.m + 1, components)


def birkhoff_D(sys: BimoduleSystem, a: DPotential, n: int) -> DPotential:
    """a^(n) = sum_{j<n} theta^j(a), of range m + n - 1."""
    if n < 1:
        raise InputError("Birkhoff sums need n >= 1")
    total = a
    lifted = a
    for _ in range(n - 1):
        lifted = promote(sys, lifted)
        total = lifted + theta_apply(sys, total)
    return total


def from_classical(sys: BimoduleSystem, f: LocallyConstantPotential) -> DPotential:
    """Embed a range-k potential of C(Lambda_A) into D of a Cuntz-Krieger system.

    The result has range k - 1; the coefficient at word gamma carries
    f(gamma t) in its t-th entry.
    """
    if sys.matrix is None or sys.matrix != f.matrix:
        raise InvalidAlgebraData("from_classical needs the Cuntz-Krieger system of f's matrix")
    m = f.k - 1
    table = f.table()
    components = {}
    for gamma in sys.words(m):
        values = [table.get(gamma + (t,), 0.0) for t in range(sys.d)]
        components[gamma] = sys.algebra.element([[[v]] for v in values])
    return DPotential(sys, m, components)

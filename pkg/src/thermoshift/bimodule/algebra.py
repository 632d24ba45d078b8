"""
Finite-dimensional coefficient algebras M_{n_1} + ... + M_{n_r} and their
canonical endomorphisms.

An endomorphism is given by a Bratteli multiplicity matrix: ``M[t, s]``
copies of block s sit on the diagonal of block t, in order of s, starting
at the top-left corner. Whatever is left of block t stays zero.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import structlog

from ..errors import InvalidAlgebraData

logger = structlog.get_logger()

TOL = 1e-12


@dataclass(frozen=True)
class MultiMatrixAlgebra:
    block_sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        sizes = tuple(int(n) for n in self.block_sizes)
        if not sizes:
            raise InvalidAlgebraData("A multimatrix algebra needs at least one block")
        if any(n < 1 for n in sizes):
            raise InvalidAlgebraData(f"Block sizes must be positive, got {list(sizes)}")
        object.__setattr__(self, "block_sizes", sizes)

    @property
    def total_dim(self) -> int:
        return sum(n * n for n in self.block_sizes)

    @property
    def n_blocks(self) -> int:
        return len(self.block_sizes)

    def element(self, blocks: Sequence[np.ndarray | Sequence[Sequence[complex]]]) -> AlgebraElement:
        return AlgebraElement(self, tuple(np.asarray(b, dtype=complex) for b in blocks))

    def identity(self) -> AlgebraElement:
        return self.element([np.eye(n) for n in self.block_sizes])

    def zero(self) -> AlgebraElement:
        return self.element([np.zeros((n, n)) for n in self.block_sizes])

    def scalar(self, c: float) -> AlgebraElement:
        return self.identity() * c

    def random(self, rng: np.random.Generator) -> AlgebraElement:
        return self.element(
            [rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)) for n in self.block_sizes]
        )

    def random_hermitian(self, rng: np.random.Generator) -> AlgebraElement:
        x = self.random(rng)
        return (x + x.adjoint()) * 0.5

    def random_positive(self, rng: np.random.Generator) -> AlgebraElement:
        x = self.random(rng)
        return x.adjoint() @ x


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """One complex square matrix per block."""

    algebra: MultiMatrixAlgebra
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.blocks) != self.algebra.n_blocks:
            raise InvalidAlgebraData(
                f"Expected {self.algebra.n_blocks} blocks, got {len(self.blocks)}"
            )
        for i, (block, n) in enumerate(zip(self.blocks, self.algebra.block_sizes)):
            if block.shape != (n, n):
                raise InvalidAlgebraData(f"Block {i + 1} must be {n}x{n}, got {block.shape}")

    def _combine(self, other: AlgebraElement) -> None:
        if other.algebra != self.algebra:
            raise InvalidAlgebraData("Elements belong to different algebras")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._combine(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        self._combine(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __mul__(self, c: complex) -> AlgebraElement:
        return AlgebraElement(self.algebra, tuple(c * a for a in self.blocks))

    __rmul__ = __mul__

    def __matmul__(self, other: AlgebraElement) -> AlgebraElement:
        self._combine(other)
        return AlgebraElement(self.algebra, tuple(a @ b for a, b in zip(self.blocks, other.blocks)))

    def adjoint(self) -> AlgebraElement:
        return AlgebraElement(self.algebra, tuple(a.conj().T for a in self.blocks))

    def commutator(self, other: AlgebraElement) -> AlgebraElement:
        return self @ other - other @ self

    def distance(self, other: AlgebraElement) -> float:
        """Operator-norm distance."""
        return (self - other).norm()

    def allclose(self, other: AlgebraElement, tol: float = TOL) -> bool:
        return self.distance(other) <= tol

    def is_self_adjoint(self, tol: float = TOL) -> bool:
        return all(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol for a in self.blocks)

    def is_projection(self, tol: float = TOL) -> bool:
        return self.is_self_adjoint(tol) and self.allclose(self @ self, tol)

    def is_zero(self, tol: float = TOL) -> bool:
        return self.norm() <= tol

    def norm(self) -> float:
        """C*-norm: the largest block operator norm."""
        if self.is_self_adjoint():
            return max(
                float(np.max(np.abs(np.linalg.eigvalsh(_hermitian(a))), initial=0.0))
                for a in self.blocks
            )
        return max(float(np.linalg.norm(a, ord=2)) for a in self.blocks)

    def spectrum(self) -> np.ndarray:
        """Eigenvalues of a self-adjoint element, all blocks together."""
        return np.concatenate([np.linalg.eigvalsh(_hermitian(a)) for a in self.blocks])

    def corner_spectrum(self, q: AlgebraElement) -> np.ndarray:
        """Spectrum of q a q restricted to the range of the projection q."""
        values = []
        for a, p in zip(self.blocks, q.blocks):
            weights, vectors = np.linalg.eigh(_hermitian(p))
            basis = vectors[:, weights > 0.5]
            if basis.shape[1]:
                values.append(np.linalg.eigvalsh(_hermitian(basis.conj().T @ a @ basis)))
        return np.concatenate(values) if values else np.zeros(0)

    def key(self, decimals: int = 9) -> bytes:
        """Hashable fingerprint, used to identify projections."""
        return b"|".join(np.round(a, decimals).tobytes() for a in self.blocks)

    def to_lists(self) -> list[list[list[list[float]]]]:
        """Blocks as nested [re, im] pairs."""
        return [
            [[[float(z.real), float(z.imag)] for z in row] for row in a] for a in self.blocks
        ]

    def __repr__(self) -> str:
        return f"AlgebraElement(blocks={[np.round(a, 6).tolist() for a in self.blocks]})"


def _hermitian(a: np.ndarray) -> np.ndarray:
    return np.asarray(0.5 * (a + a.conj().T))


@dataclass(frozen=True, eq=False)
class Endomorphism:
    """rho(a) built from a multiplicity matrix with canonical block-diagonal copies."""

    algebra: MultiMatrixAlgebra
    multiplicities: np.ndarray
    placements: tuple[tuple[tuple[int, int], ...], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        M = np.asarray(self.multiplicities)
        r = self.algebra.n_blocks
        if M.shape != (r, r):
            raise InvalidAlgebraData(f"Multiplicity matrix must be {r}x{r}, got {M.shape}")
        if not np.issubdtype(M.dtype, np.integer):
            if not np.all(np.equal(np.mod(M, 1), 0)):
                raise InvalidAlgebraData("Multiplicities must be integers")
            M = M.astype(np.int64)
        if (M < 0).any():
            raise InvalidAlgebraData("Multiplicities must be nonnegative")

        sizes = self.algebra.block_sizes
        placements = []
        for t in range(r):
            offset = 0
            spots = []
            for s in range(r):
                for _ in range(int(M[t, s])):
                    spots.append((s, offset))
                    offset += sizes[s]
            if offset > sizes[t]:
                raise InvalidAlgebraData(
                    f"Block {t + 1} of size {sizes[t]} cannot hold {offset} rows of copies"
                )
            placements.append(tuple(spots))

        M.setflags(write=False)
        object.__setattr__(self, "multiplicities", M)
        object.__setattr__(self, "placements", tuple(placements))

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        sizes = self.algebra.block_sizes
        blocks = []
        for t, spots in enumerate(self.placements):
            out = np.zeros((sizes[t], sizes[t]), dtype=complex)
            for s, offset in spots:
                n = sizes[s]
                out[offset : offset + n, offset : offset + n] = a.blocks[s]
            blocks.append(out)
        return AlgebraElement(self.algebra, tuple(blocks))

    @property
    def corner(self) -> AlgebraElement:
        """q = rho(I)."""
        return self(self.algebra.identity())


@dataclass(frozen=True)
class EndomorphismCheck:
    multiplicative: float
    star: float
    corner: float
    corner_is_projection: bool

    def ok(self, tol: float = 1e-10) -> bool:
        return (
            self.multiplicative <= tol
            and self.star <= tol
            and self.corner <= tol
            and self.corner_is_projection
        )


def validate_endomorphism(
    endo: Endomorphism, rng: np.random.Generator, pairs: int = 20
) -> EndomorphismCheck:
    """Largest violations of rho(ab) = rho(a)rho(b), rho(a*) = rho(a)* and rho(I) = q."""
    algebra = endo.algebra
    mult = star = 0.0
    for _ in range(pairs):
        a, b = algebra.random(rng), algebra.random(rng)
        mult = max(mult, endo(a @ b).distance(endo(a) @ endo(b)))
        star = max(star, endo(a.adjoint()).distance(endo(a).adjoint()))
    q = endo.corner
    corner = max(q.distance(q @ q), q.distance(q.adjoint()))
    check = EndomorphismCheck(mult, star, corner, q.is_projection())
    if not check.ok():
        logger.warning("Endomorphism check failed", check=check)
    return check

"""
Sofic shifts through right-resolving labeled graphs and their edge-shift covers.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
import structlog

from ..errors import InputError, NotRightResolving
from .matrix import TransitionMatrix
from .words import word_array

if TYPE_CHECKING:
    from ..potential import LocallyConstantPotential

logger = structlog.get_logger()


@dataclass(frozen=True)
class LabeledEdge:
    source: int
    target: int
    label: str


@dataclass(frozen=True)
class LabeledGraph:
    """A labeled graph presentation; vertices are 0-based."""

    vertices: int
    edges: tuple[LabeledEdge, ...]

    def alphabet(self) -> list[str]:
        return sorted({edge.label for edge in self.edges})


@dataclass(frozen=True)
class SoficCover:
    """Edge shift covering a sofic shift, with the letter labeling of each edge."""

    matrix: TransitionMatrix
    edges: tuple[LabeledEdge, ...]
    alphabet: tuple[str, ...]
    labeling: np.ndarray

    def label_words(self, n: int) -> set[tuple[str, ...]]:
        """The sofic language of length n, as images of admissible edge words."""
        images = self.labeling[word_array(self.matrix, n)]
        return {tuple(self.alphabet[i] for i in row) for row in np.unique(images, axis=0)}

    def pull_back(
        self,
        values: Mapping[tuple[str, ...], float] | Callable[[tuple[str, ...]], float],
        k: int,
    ) -> LocallyConstantPotential:
        """Pull a range-k potential on the sofic shift back to the edge shift."""
        from ..potential import LocallyConstantPotential

        lookup = values if callable(values) else values.__getitem__
        edge_words = word_array(self.matrix, k)
        table = np.array(
            [lookup(tuple(self.alphabet[self.labeling[e]] for e in row)) for row in edge_words],
            dtype=float,
        )
        return LocallyConstantPotential(self.matrix, k, table)


def essential_edges(graph: LabeledGraph) -> list[LabeledEdge]:
    """Remove edges that cannot be continued forward or reached backward."""
    edges = list(graph.edges)
    while True:
        sources = {edge.source for edge in edges}
        targets = {edge.target for edge in edges}
        kept = [edge for edge in edges if edge.target in sources and edge.source in targets]
        if len(kept) == len(edges):
            return kept
        edges = kept


def sofic_cover(graph: LabeledGraph) -> SoficCover:
    """Build the edge SFT covering the sofic shift presented by ``graph``."""
    seen: set[tuple[int, str]] = set()
    for edge in graph.edges:
        key = (edge.source, edge.label)
        if key in seen:
            raise NotRightResolving(edge.source + 1, edge.label)
        seen.add(key)

    edges = essential_edges(graph)
    if len(edges) < len(graph.edges):
        logger.info("Removed stranded edges", removed=len(graph.edges) - len(edges))
    if not edges:
        raise InputError("Labeled graph has no bi-infinite path")

    entries = np.array(
        [[1 if e.target == f.source else 0 for f in edges] for e in edges], dtype=np.int64
    )
    alphabet = tuple(graph.alphabet())
    labeling = np.array([alphabet.index(e.label) for e in edges], dtype=np.int64)
    logger.debug("Sofic cover built", edges=len(edges), labels=len(alphabet))
    return SoficCover(TransitionMatrix(entries), tuple(edges), alphabet, labeling)


def graph_of_matrix(A: TransitionMatrix) -> LabeledGraph:
    """Present an SFT as its own vertex-labeled graph (edge i -> j labeled j)."""
    edges = tuple(
        LabeledEdge(i, j, str(j + 1)) for i in range(A.d) for j in range(A.d) if A.entries[i, j]
    )
    return LabeledGraph(A.d, edges)

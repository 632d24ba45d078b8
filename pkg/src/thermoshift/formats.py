"""
Text and JSON file formats, plus CSV data series.

Matrix text:      "d" on the first line, then d lines of d space-separated 0/1 digits.
Labeled graph:    "vertices V", then one "from to label" line per edge (1-based).
Potential JSON:   { "d": int, "k": int, "values": { "121": real } }.
System JSON:      { "blocks": [...], "endos": [ { "multiplicities": [[...]] } ] }.
D-potential JSON: { "range": m, "components": { "12": { "blocks": [[[re, im], ...]] } } }.
Markov JSON:      { "states": [...], "P": [[...]], "p": [...] }.
"""

from __future__ import annotations

import csv
import json
from collections.abc import Sequence
from pathlib import Path
from typing import Any, TextIO, TypeVar

import numpy as np
import structlog
from pydantic import BaseModel, ValidationError

from .bimodule.algebra import Endomorphism, MultiMatrixAlgebra
from .bimodule.dpotential import DPotential
from .bimodule.system import BimoduleSystem
from .errors import AlphabetMismatch, InputError, ParseError
from .measures.markov import MarkovMeasure
from .models import (
    DPotentialFile,
    MarkovFile,
    PotentialFile,
    SystemFile,
)
from .potential.potential import LocallyConstantPotential
from .pressure.partition import PressureEstimate
from .shift.matrix import TransitionMatrix
from .shift.sofic import LabeledEdge, LabeledGraph
from .shift.words import format_word, parse_word

logger = structlog.get_logger()

Model = TypeVar("Model", bound=BaseModel)


def _lines(text: str) -> list[tuple[int, str]]:
    """Numbered lines with trailing whitespace removed and trailing blank lines dropped."""
    lines = [(i + 1, line.rstrip()) for i, line in enumerate(text.splitlines())]
    while lines and not lines[-1][1]:
        lines.pop()
    return lines


def _read(path: Path | str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(path, 0, f"cannot read file: {e.strerror or e}") from e


# Matrices and graphs


def parse_matrix(text: str, path: Path | str = "<string>") -> TransitionMatrix:
    lines = _lines(text)
    if not lines:
        raise ParseError(path, 1, "empty matrix file")
    number, header = lines[0]
    try:
        d = int(header.strip())
    except ValueError:
        raise ParseError(path, number, f"expected the dimension d, got {header!r}") from None
    if d < 1:
        raise ParseError(path, number, "dimension must be positive")
    if len(lines) < d + 1:
        raise ParseError(path, lines[-1][0] + 1, f"expected {d} matrix rows, found {len(lines) - 1}")
    if len(lines) > d + 1:
        raise ParseError(path, lines[d + 1][0], f"unexpected row after {d} matrix rows")

    rows = []
    for number, line in lines[1:]:
        tokens = line.split()
        if len(tokens) != d:
            raise ParseError(path, number, f"expected {d} entries, got {len(tokens)}")
        try:
            rows.append([int(t) for t in tokens])
        except ValueError:
            raise ParseError(path, number, f"non-integer entry in {line!r}") from None
    return TransitionMatrix(np.array(rows))


def read_matrix(path: Path | str) -> TransitionMatrix:
    matrix = parse_matrix(_read(path), path)
    logger.debug("Matrix loaded", path=str(path), d=matrix.d)
    return matrix


def format_matrix(A: TransitionMatrix) -> str:
    rows = [" ".join(str(int(x)) for x in row) for row in A.entries]
    return "\n".join([str(A.d), *rows]) + "\n"


def parse_labeled_graph(text: str, path: Path | str = "<string>") -> LabeledGraph:
    lines = [(n, line) for n, line in _lines(text) if line.strip()]
    if not lines:
        raise ParseError(path, 1, "empty graph file")
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "vertices":
        raise ParseError(path, number, f"expected 'vertices V', got {header!r}")
    try:
        vertices = int(parts[1])
    except ValueError:
        raise ParseError(path, number, f"vertex count {parts[1]!r} is not an integer") from None
    if vertices < 1:
        raise ParseError(path, number, "vertex count must be positive")

    edges = []
    for number, line in lines[1:]:
        tokens = line.split()
        if len(tokens) != 3:
            raise ParseError(path, number, f"expected 'from to label', got {line!r}")
        try:
            source, target = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(path, number, "edge endpoints must be integers") from None
        if not (1 <= source <= vertices and 1 <= target <= vertices):
            raise ParseError(path, number, f"edge endpoints must lie in 1..{vertices}")
        edges.append(LabeledEdge(source - 1, target - 1, tokens[2]))
    return LabeledGraph(vertices, tuple(edges))


def read_labeled_graph(path: Path | str) -> LabeledGraph:
    return parse_labeled_graph(_read(path), path)


# JSON payloads


def _load_json(text: str, model: type[Model], path: Path | str) -> Model:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(path, e.lineno, e.msg) from e
    try:
        return model.model_validate(payload)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "document"
        raise ParseError(path, 1, f"{where}: {first['msg']}") from e


def potential_from_file(data: PotentialFile, A: TransitionMatrix) -> LocallyConstantPotential:
    if data.d != A.d:
        raise AlphabetMismatch(f"Potential is over d={data.d} but the matrix has d={A.d}")
    return LocallyConstantPotential.from_table(A, data.k, data.values)


def potential_to_file(f: LocallyConstantPotential) -> PotentialFile:
    return PotentialFile(d=f.d, k=f.k, values=f.table_text())


def read_potential(path: Path | str, A: TransitionMatrix) -> LocallyConstantPotential:
    data = _load_json(_read(path), PotentialFile, path)
    try:
        return potential_from_file(data, A)
    except InputError as e:
        if isinstance(e, AlphabetMismatch):
            raise
        raise ParseError(path, 1, str(e)) from e


def system_from_file(data: SystemFile) -> BimoduleSystem:
    algebra = MultiMatrixAlgebra(tuple(data.blocks))
    endos = tuple(Endomorphism(algebra, np.array(e.multiplicities, dtype=np.int64)) for e in data.endos)
    return BimoduleSystem(algebra, endos)


def system_to_file(sys: BimoduleSystem) -> SystemFile:
    return SystemFile.model_validate(
        {
            "blocks": list(sys.algebra.block_sizes),
            "endos": [{"multiplicities": e.multiplicities.tolist()} for e in sys.endos],
        }
    )


def read_system(path: Path | str) -> BimoduleSystem:
    return system_from_file(_load_json(_read(path), SystemFile, path))


def dpotential_from_file(data: DPotentialFile, sys: BimoduleSystem) -> DPotential:
    components = {}
    for key, spec in data.components.items():
        word = parse_word(key)
        if len(word) != data.range:
            raise InputError(f"Component {key!r} does not have length {data.range}")
        blocks = [
            np.array([[complex(re, im) for re, im in row] for row in block]).reshape(len(block), -1)
            for block in spec.blocks
        ]
        components[word] = sys.algebra.element(blocks)
    return DPotential(sys, data.range, components)


def dpotential_to_file(a: DPotential) -> DPotentialFile:
    return DPotentialFile.model_validate(
        {
            "range": a.m,
            "components": {
                format_word(w): {"blocks": v.to_lists()} for w, v in a.components.items()
            },
        }
    )


def read_dpotential(path: Path | str, sys: BimoduleSystem) -> DPotential:
    return dpotential_from_file(_load_json(_read(path), DPotentialFile, path), sys)


def markov_from_file(data: MarkovFile, A: TransitionMatrix) -> MarkovMeasure:
    states = [parse_word(s) for s in data.states]
    if not states or len({len(s) for s in states}) != 1:
        raise InputError("Markov states must be nonempty words of one length")
    return MarkovMeasure(A, np.array(states, dtype=np.int64), np.array(data.P), np.array(data.p))


def read_markov(path: Path | str, A: TransitionMatrix) -> MarkovMeasure:
    return markov_from_file(_load_json(_read(path), MarkovFile, path), A)


# Output


def write_json(model: BaseModel, out: TextIO) -> None:
    out.write(model.model_dump_json(indent=2, by_alias=True))
    out.write("\n")


def _cell(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def emit_series(report: PressureEstimate | Sequence[float], out: TextIO) -> int:
    """Write a plot-ready CSV series; returns the number of data rows.

    Pressure estimates give (n, estimate, lower, upper); a convergence
    profile gives (n, e_n).
    """
    writer = csv.writer(out, lineterminator="\n")
    if isinstance(report, PressureEstimate):
        writer.writerow(["n", "estimate", "lower", "upper"])
        rows: list[list[Any]] = [[r.n, r.estimate, r.lower, r.upper] for r in report.per_n]
    else:
        writer.writerow(["n", "e_n"])
        rows = [[n, e] for n, e in enumerate(report, start=1)]
    for row in rows:
        writer.writerow([_cell(x) for x in row])
    return len(rows)

"""
Pydantic schemas for input files and JSON reports.

Input models validate the JSON payloads read by ``thermoshift.formats``.
Report models mirror the result objects of the library; each has a
``from_result`` constructor and re-parses from its own JSON with equality.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .bimodule.pressure import CommutationReport
from .kms.analysis import KMSReport
from .measures.markov import FreeEnergyReport, MarkovMeasure
from .pressure.laws import LawSuiteReport
from .pressure.partition import PressureEstimate
from .shift.spectral import SpectralReport
from .shift.words import format_word
from .transfer.equilibrium import CylinderWeights
from .transfer.rpf import RPFData


def _floats(values: Any) -> list[float]:
    return [float(x) for x in np.asarray(values, dtype=float).reshape(-1)]


# Input files


class PotentialFile(BaseModel):
    """{ "d": int, "k": int, "values": { "121": real, ... } }"""

    model_config = ConfigDict(extra="forbid")

    d: int = Field(ge=1)
    k: int = Field(ge=1)
    values: dict[str, float]


class EndomorphismSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    multiplicities: list[list[int]]


class SystemFile(BaseModel):
    """{ "blocks": [n_1, ...], "endos": [ { "multiplicities": [[...]] }, ... ] }"""

    model_config = ConfigDict(extra="forbid")

    blocks: list[int] = Field(min_length=1)
    endos: list[EndomorphismSpec] = Field(min_length=1)


class ElementSpec(BaseModel):
    """Blocks as rows of [re, im] pairs."""

    model_config = ConfigDict(extra="forbid")

    blocks: list[list[list[tuple[float, float]]]]


class DPotentialFile(BaseModel):
    """{ "range": m, "components": { "word": { "blocks": ... } } }; "" is the empty word."""

    model_config = ConfigDict(extra="forbid")

    range: int = Field(ge=0)
    components: dict[str, ElementSpec]


class MarkovFile(BaseModel):
    """{ "states": ["11", "12", ...], "P": [[...]], "p": [...] }"""

    model_config = ConfigDict(extra="forbid")

    states: list[str]
    P: list[list[float]]
    p: list[float]

    @classmethod
    def from_result(cls, m: MarkovMeasure) -> MarkovFile:
        return cls(
            states=[format_word(w) for w in m.index.as_tuples()],
            P=[_floats(row) for row in m.P],
            p=_floats(m.p),
        )


# Reports


class EntropyReportModel(BaseModel):
    log_rA: float
    radius: float
    iterations: int
    residual: float
    aperiodicity_index: int | None
    irreducible: bool
    lower_bound: float | None
    method: str = "power_iteration"

    @classmethod
    def from_result(
        cls, report: SpectralReport, irreducible: bool, method: str = "power_iteration"
    ) -> EntropyReportModel:
        return cls(
            log_rA=report.log_radius,
            radius=report.radius,
            iterations=report.iterations,
            residual=report.residual,
            aperiodicity_index=report.aperiodicity_index,
            irreducible=irreducible,
            lower_bound=report.lower_bound,
            method=method,
        )


class RPFReportModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lambda_: float | None = Field(alias="lambda")
    log_lambda: float
    h: list[float]
    mu: list[float]
    residuals: tuple[float, float]
    iterations: int
    states: list[str] = Field(default_factory=list)

    @classmethod
    def from_result(cls, rpf: RPFData, states: list[str] | None = None) -> RPFReportModel:
        return cls(
            lambda_=rpf.lam if math.isfinite(rpf.lam) else None,
            log_lambda=rpf.log_lambda,
            h=_floats(rpf.h),
            mu=_floats(rpf.mu),
            residuals=(float(rpf.residuals[0]), float(rpf.residuals[1])),
            iterations=rpf.iterations,
            states=states or [],
        )


class PressureRowModel(BaseModel):
    n: int
    estimate: float
    lower: float
    upper: float
    inf_estimate: float | None = None


class PressureReportModel(BaseModel):
    per_n: list[PressureRowModel]
    bracket: tuple[float, float]
    transfer_value: float | None
    n_max: int
    a_priori_bracket: tuple[float, float] | None = None

    @classmethod
    def from_result(cls, estimate: PressureEstimate) -> PressureReportModel:
        return cls(
            per_n=[
                PressureRowModel(
                    n=r.n,
                    estimate=r.estimate,
                    lower=r.lower,
                    upper=r.upper,
                    inf_estimate=r.inf_estimate,
                )
                for r in estimate.per_n
            ],
            bracket=estimate.bracket,
            transfer_value=estimate.transfer_value,
            n_max=estimate.n_max,
            a_priori_bracket=estimate.a_priori_bracket,
        )


class FreeEnergyModel(BaseModel):
    entropy: float
    integral: float
    free_energy: float
    pressure_gap: float

    @classmethod
    def from_result(cls, report: FreeEnergyReport) -> FreeEnergyModel:
        return cls(
            entropy=report.entropy,
            integral=report.integral,
            free_energy=report.free_energy,
            pressure_gap=report.pressure_gap,
        )


def cylinder_table(weights: CylinderWeights) -> dict[str, tuple[float, float]]:
    return {format_word(w): (mu, nu) for w, (mu, nu) in weights.as_dict().items()}


class EquilibriumReportModel(BaseModel):
    log_lambda: float
    measure: MarkovFile
    free_energy: FreeEnergyModel
    cylinders: dict[str, tuple[float, float]]


class VariationalReportModel(BaseModel):
    restarts: int
    seed: int
    measure: MarkovFile
    free_energy: FreeEnergyModel


class KMSReportModel(BaseModel):
    beta: float
    lower_bound: float
    upper_bound: float
    var0: float
    log_rA: float
    unique: bool
    holder_ok: bool
    gauge_bound: float
    gauge_invariant: bool
    mu: dict[str, float]
    nu: dict[str, float]
    warning: str | None = None

    @classmethod
    def from_result(cls, report: KMSReport) -> KMSReportModel:
        return cls(
            beta=report.beta,
            lower_bound=report.lower_bound,
            upper_bound=report.upper_bound,
            var0=report.var0,
            log_rA=report.log_rA,
            unique=report.unique,
            holder_ok=report.holder_ok,
            gauge_bound=report.gauge_bound,
            gauge_invariant=report.gauge_invariant,
            mu={format_word(w): v for w, v in report.mu.items()},
            nu={format_word(w): v for w, v in report.nu.items()},
            warning=report.warning,
        )


class LawCheckModel(BaseModel):
    name: str
    lhs: float
    rhs: float
    relation: str
    passed: bool
    classical_only: bool = False


class LawSuiteModel(BaseModel):
    seed: int
    tol: float
    passed: bool
    checks: list[LawCheckModel]

    @classmethod
    def from_result(cls, report: LawSuiteReport) -> LawSuiteModel:
        return cls(
            seed=report.seed,
            tol=report.tol,
            passed=report.passed,
            checks=[
                LawCheckModel(
                    name=c.name,
                    lhs=c.lhs,
                    rhs=c.rhs,
                    relation=c.relation,
                    passed=c.passed,
                    classical_only=c.classical_only,
                )
                for c in report.checks
            ],
        )


class CommutationRowModel(BaseModel):
    length: int
    compressed: float
    projection: float


class CommutationModel(BaseModel):
    rows: list[CommutationRowModel]
    stable_from: int | None
    tol: float

    @classmethod
    def from_result(cls, report: CommutationReport) -> CommutationModel:
        return cls(
            rows=[
                CommutationRowModel(length=r.length, compressed=r.compressed, projection=r.projection)
                for r in report.rows
            ],
            stable_from=report.stable_from,
            tol=report.tol,
        )


class BimodulePressureModel(BaseModel):
    h_top: float
    norm: float
    pressure: PressureReportModel
    commutation: CommutationModel | None = None

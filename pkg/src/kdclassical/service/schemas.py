"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ..core import DEFAULT_TOL, Tolerances
from ..dft import dft_matrix

ComplexPair = tuple[float, float]


class ToleranceOverrides(BaseModel):
    eps_zero: Optional[float] = None
    eps_angle: Optional[float] = None
    eps_unitary: Optional[float] = None
    eps_eig: Optional[float] = None

    def resolve(self) -> Tolerances:
        overrides = {k: v for k, v in self.model_dump().items() if v is not None}
        return Tolerances(**overrides) if overrides else DEFAULT_TOL


class MatrixIn(BaseModel):
    """A transition matrix: explicit entries, or a DFT dimension shortcut."""

    d: Optional[int] = None
    entries: Optional[list[list[ComplexPair]]] = None
    dft: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _one_source(self):
        explicit = self.entries is not None
        if explicit == (self.dft is not None):
            raise ValueError("provide exactly one of entries+d or dft")
        if explicit and (self.d is None or self.d < 1):
            raise ValueError("explicit entries need a positive d")
        return self

    def to_array(self) -> np.ndarray:
        if self.dft is not None:
            return dft_matrix(self.dft)
        if len(self.entries) != self.d or any(len(r) != self.d for r in self.entries):
            raise ValueError(f"entries must form a {self.d} x {self.d} matrix")
        return np.array(
            [[complex(re, im) for re, im in row] for row in self.entries],
            dtype=np.complex128,
        )


class StateIn(BaseModel):
    d: int = Field(ge=1)
    coeffs: list[ComplexPair]

    def to_array(self) -> np.ndarray:
        if len(self.coeffs) != self.d:
            raise ValueError(f"coeffs must have length {self.d}")
        vec = np.array([complex(re, im) for re, im in self.coeffs], dtype=np.complex128)
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > 1e-8:
            raise ValueError(f"state is not normalized: ||psi|| = {norm!r}")
        return vec / norm


class TableRequest(BaseModel):
    matrix: MatrixIn
    state: StateIn
    tolerances: ToleranceOverrides = ToleranceOverrides()


class TableResponse(BaseModel):
    q: list[list[ComplexPair]]
    row_marginals: list[float]
    col_marginals: list[float]


class SupportModel(BaseModel):
    s_a: list[int]
    s_b: list[int]
    n_a: int
    n_b: int


class ClassifyRequest(TableRequest):
    pass


class ClassifyResponse(BaseModel):
    classical: bool
    min_real: float
    max_abs_imag: float
    offending_cells: list[tuple[int, int]]
    support: SupportModel


class BlocksRequest(BaseModel):
    matrix: MatrixIn
    state: Optional[StateIn] = None
    rows: Optional[list[int]] = None
    cols: Optional[list[int]] = None
    tolerances: ToleranceOverrides = ToleranceOverrides()


class BlockModel(BaseModel):
    rows: list[int]
    cols: list[int]


class RankRelationsModel(BaseModel):
    rank_ok: list[bool]
    bound_support: bool
    bound_s: bool


class BlocksResponse(BaseModel):
    s: int
    blocks: list[BlockModel]
    row_perm: list[int]
    col_perm: list[int]
    support: Optional[SupportModel] = None
    classical: Optional[bool] = None
    rank_relations: Optional[RankRelationsModel] = None


class ClusterRequest(BaseModel):
    vectors: list[list[ComplexPair]]
    tolerances: ToleranceOverrides = ToleranceOverrides()

    def to_array(self) -> np.ndarray:
        return np.array(
            [[complex(re, im) for re, im in vec] for vec in self.vectors],
            dtype=np.complex128,
        )


class ClusterModel(BaseModel):
    members: list[int]
    kind: Literal["singleton", "antipodal", "obtuse"]


class ClusterResponse(BaseModel):
    clusters: list[ClusterModel]
    dimension_law: bool
    norms: list[float]


class WitnessRequest(TableRequest):
    pass


class WitnessVerdictModel(BaseModel):
    name: str
    fired: bool
    implies: Literal["nonclassical", "bound_only"]


class WitnessResponse(BaseModel):
    n_zeros: int
    s_full: int
    z_r: int
    z_c: int
    n_a: int
    n_b: int
    certifies_nonclassical: bool
    verdicts: list[WitnessVerdictModel]


class OracleRequest(BaseModel):
    matrix: MatrixIn
    max_d: int = Field(default=8, ge=1)
    tolerances: ToleranceOverrides = ToleranceOverrides()


class OracleEntryModel(BaseModel):
    s_a: list[int]
    s_b: list[int]
    null_space_dim: int
    state: list[ComplexPair]


class OracleResponse(BaseModel):
    d: int
    unitary_id: str
    count: int
    feasible: list[OracleEntryModel]


class SweepRequest(BaseModel):
    matrix: MatrixIn
    trials: int = Field(ge=1)
    seed: int = 0
    tolerances: ToleranceOverrides = ToleranceOverrides()


class SweepViolationModel(BaseModel):
    trial: int
    state: list[ComplexPair]


class SweepResponse(BaseModel):
    trials: int
    checked: int
    fired: int
    skipped: bool
    reason: Optional[str]
    ok: bool
    violation: Optional[SweepViolationModel]


class VerifyRequest(BaseModel):
    matrix: MatrixIn
    sa: list[int] = Field(min_length=1)
    sb: list[int] = Field(min_length=1)
    tolerances: ToleranceOverrides = ToleranceOverrides()


class PhasesModel(BaseModel):
    alpha: list[tuple[int, float]]
    beta: list[tuple[int, float]]


class AmplitudesModel(BaseModel):
    a: list[tuple[int, float]]
    b: list[tuple[int, float]]
    null_space_dim: int
    tolerance_warning: bool


class RefutationModel(BaseModel):
    kind: Literal["phase_cycle", "no_positive_amplitude", "off_support_leak"]
    j1: Optional[int] = None
    j2: Optional[int] = None
    k1: Optional[int] = None
    k2: Optional[int] = None
    low_confidence: Optional[bool] = None
    index: Optional[int] = None
    side: Optional[str] = None


class VerifyResponse(BaseModel):
    feasible: bool
    support: SupportModel
    state: Optional[list[ComplexPair]]
    phases: Optional[PhasesModel]
    amplitudes: Optional[AmplitudesModel]
    refutation: Optional[RefutationModel]


class DftEnumRequest(BaseModel):
    d: int = Field(ge=1)
    tolerances: ToleranceOverrides = ToleranceOverrides()


class DftEnumRecord(BaseModel):
    d1: int
    d2: int
    j0: int
    k0: int
    coeffs: list[ComplexPair]
    support_a: list[int]
    support_b: list[int]
    verified: bool


class DftEnumResponse(BaseModel):
    d: int
    count: int
    records: list[DftEnumRecord]

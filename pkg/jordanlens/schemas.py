import math
from enum import Enum
from datetime import datetime
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, field_serializer, field_validator, model_validator

from jordanlens.config import DEFAULT_SAMPLES, DEFAULT_TOL
from jordanlens.exchange import parse_complex
from jordanlens.models import OperatorKind

SCHEMA_VERSION = 1


class Interval(BaseModel):
    lo: float
    hi: float

    @model_validator(mode="after")
    def lo_not_above_hi(self):
        if self.lo > self.hi:
            raise ValueError(f"Interval lower end {self.lo} exceeds upper end {self.hi}")
        return self

    @property
    def radius(self) -> float:
        """Numerical radius of a Hermitian operator whose range is this interval"""
        return max(abs(self.lo), abs(self.hi))


class DimensionCheck(BaseModel):
    name: str
    first: int
    second: int
    passed: bool


class EquivalenceReport(BaseModel):
    equivalent: bool
    dim_checks: List[DimensionCheck]
    angle_deviation: float
    tol: float = DEFAULT_TOL

    @model_validator(mode="after")
    def verdict_matches_checks(self):
        expected = all(check.passed for check in self.dim_checks) and self.angle_deviation <= self.tol
        if self.equivalent != expected:
            raise ValueError("Equivalence verdict disagrees with its dimension and angle checks")
        return self

    @field_serializer("angle_deviation", when_used="json")
    def finite_or_null(self, value: float) -> Optional[float]:
        return value if math.isfinite(value) else None


class NormIdentityReport(BaseModel):
    norm_sum: float = Field(..., description="‖P+Q‖")
    norm_product: float = Field(..., description="‖PQ‖")
    cos_dixmier: float = Field(..., description="cos θ₁ (0 when a subspace is zero)")
    sum_deviation: float = Field(..., description="|‖P+Q‖ − (1 + ‖PQ‖)|")
    product_deviation: float = Field(..., description="|‖PQ‖ − cos θ₁|")
    combined_deviation: float = Field(..., description="|‖P+Q‖ − (1 + cos θ₁)|")

    @property
    def max_deviation(self) -> float:
        return max(self.sum_deviation, self.product_deviation, self.combined_deviation)


class ClauseCheck(BaseModel):
    name: str
    passed: bool
    max_deviation: float

    @field_serializer("max_deviation", when_used="json")
    def finite_or_null(self, value: float) -> Optional[float]:
        return value if math.isfinite(value) else None


class ComplementAngleReport(BaseModel):
    theta: List[float]
    eta: List[float]
    a: int
    b: int
    c: int
    d: int
    r: int
    clauses: List[ClauseCheck]

    @property
    def passed(self) -> bool:
        return all(clause.passed for clause in self.clauses)


class BoundingBox(BaseModel):
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def contains(self, z: complex, atol: float = 1e-9) -> bool:
        return (self.re_lo - atol <= z.real <= self.re_hi + atol
                and self.im_lo - atol <= z.imag <= self.im_hi + atol)


class CheckResult(BaseModel):
    name: str
    value: float
    threshold: float
    passed: bool
    detail: Optional[str] = None


class VerificationReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    pairs_checked: int = 1
    checks: List[CheckResult] = []

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]


class Command(str, Enum):
    ANGLES = "angles"
    DECOMPOSE = "decompose"
    FRAMES = "frames"
    EQUIV = "equiv"
    SWAP_UNITARY = "swap-unitary"
    SPECTRUM = "spectrum"
    NUMRANGE_SUM = "numrange-sum"
    NUMRANGE_PRODUCT = "numrange-product"
    VERIFY = "verify"
    RANDOM_PAIR = "random-pair"


class OutputFormat(str, Enum):
    TEXT = "text"
    CSV = "csv"
    SVG = "svg"
    JSON = "json"


INPUT_ARITY = {
    Command.EQUIV: 4,
    Command.RANDOM_PAIR: 0,
}


class RunConfig(BaseModel):
    command: Command
    inputs: List[str] = []
    tol: float = Field(DEFAULT_TOL, gt=0, lt=0.1)
    samples: int = Field(DEFAULT_SAMPLES, ge=3)
    seed: Optional[int] = None
    output: Optional[str] = None
    format: OutputFormat = OutputFormat.TEXT
    kind: OperatorKind = OperatorKind.PQ
    degrees: bool = False
    angles: List[float] = []
    a: int = Field(0, ge=0)
    b: int = Field(0, ge=0)
    c: int = Field(0, ge=0)
    d: int = Field(0, ge=0)
    corpus: Optional[int] = Field(None, ge=1)
    workers: int = Field(1, ge=1)

    @model_validator(mode="after")
    def inputs_match_command(self):
        expected = INPUT_ARITY.get(self.command, 2)
        if self.command == Command.VERIFY and self.corpus is not None:
            expected = 0
        if len(self.inputs) != expected:
            raise ValueError(
                f"'{self.command.value}' expects {expected} input file(s), got {len(self.inputs)}"
            )
        if self.format in (OutputFormat.CSV, OutputFormat.SVG) and self.command != Command.NUMRANGE_PRODUCT:
            raise ValueError(f"{self.format.value.upper()} output is only available for numrange-product")
        return self


class MatrixPayload(BaseModel):
    """A complex matrix as rows of exchange-format literals such as "0.5-0.866i" """

    rows: List[List[str]]

    @field_validator("rows")
    def rows_are_rectangular(cls, v):
        if not v:
            raise ValueError("Matrix must have at least one row")
        widths = {len(row) for row in v}
        if len(widths) != 1:
            raise ValueError("All matrix rows must have the same number of entries")
        for row in v:
            for literal in row:
                parse_complex(literal)
        return v

    def to_array(self) -> np.ndarray:
        return np.array([[parse_complex(literal) for literal in row] for row in self.rows], dtype=complex)


class PairRequest(BaseModel):
    M: MatrixPayload
    N: MatrixPayload
    tol: Optional[float] = Field(None, gt=0, lt=0.1)


class ProductRangeRequest(PairRequest):
    samples: Optional[int] = Field(None, ge=3)


class EquivalenceRequest(BaseModel):
    pair1: PairRequest
    pair2: PairRequest
    tol: Optional[float] = Field(None, gt=0, lt=0.1)


class RandomPairRequest(BaseModel):
    angles: List[float] = []
    a: int = Field(0, ge=0)
    b: int = Field(0, ge=0)
    c: int = Field(0, ge=0)
    d: int = Field(0, ge=0)
    seed: int = 0

    @field_validator("angles")
    def angles_are_interior(cls, v):
        for theta in v:
            if not 0 < theta < math.pi / 2:
                raise ValueError(f"Interior angles must lie in (0, π/2), got {theta}")
        return v


class AngleResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    angles: List[float]
    dixmier_angle: Optional[float]
    friedrichs_angle: Optional[float]
    n_zero: int
    n_interior: int
    n_right: int


class DecompositionResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    a: int
    b: int
    c: int
    d: int
    r: int
    generic: bool
    generalized_generic: bool


class DiskResponse(BaseModel):
    center_re: float
    center_im: float
    semi_major: float
    semi_minor: float


class ProductRangeResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    vertices: List[List[float]]
    disks: List[DiskResponse]
    numerical_radius: float


class RandomPairResponse(BaseModel):
    M: List[List[str]]
    N: List[List[str]]


class HealthResponse(BaseModel):
    status: str
    timestamp: datetime

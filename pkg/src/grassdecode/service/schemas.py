"""Request and response models shared by the HTTP service and the CLI.

File inputs travel as their text content so the server does all parsing.
Every response carries a ``text`` field holding the CLI's plain-text rendering.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

Metric = Literal["subspace", "injection"]
Method = Literal["plucker", "rational", "oracle"]


class CodeSpec(BaseModel):
    q: int = Field(ge=2)
    ell: int = Field(ge=1)
    k: int = Field(ge=1)
    delta: int = Field(ge=1)
    modulus: Optional[list[int]] = None
    g: Optional[list[str]] = None


class CodeRequest(BaseModel):
    spec: CodeSpec


class CodeInfoResponse(BaseModel):
    spec: CodeSpec
    n: int
    size: int
    dimension: int
    min_rank_distance: int
    min_subspace_distance: int
    generator: list[list[str]]
    text: str


class CodewordEntry(BaseModel):
    message: list[str]
    matrix: list[list[int]]
    lifted: list[list[int]]
    plucker: str


class CodeEnumerateResponse(BaseModel):
    codewords: list[CodewordEntry]
    text: str


class EncodeRequest(BaseModel):
    spec: CodeSpec
    message: list[str]


class MatrixResponse(BaseModel):
    rows: list[list[int]]
    text: str


class MatrixInput(BaseModel):
    q: int = 2
    matrix: str


class SubspaceResponse(BaseModel):
    n: int
    k: int
    rows: list[list[int]]
    text: str


class PluckerResponse(BaseModel):
    n: int
    k: int
    coords: list[int]
    text: str


class PluckerInvertRequest(BaseModel):
    q: int = 2
    vector: str
    n: Optional[int] = None
    k: Optional[int] = None


class BallEqsRequest(BaseModel):
    q: int = 2
    center: str
    metric: Metric
    radius: int = Field(ge=0)
    dim_k: int = Field(ge=0)


class BallEqsResponse(BaseModel):
    outcome: Literal["equations", "everything", "empty"]
    variables: list[str]
    forbidden: list[str]
    rows: list[list[int]]
    text: str


class DecodeRequest(BaseModel):
    spec: CodeSpec
    received: str
    method: Method
    metric: Metric
    radius: int = Field(ge=0)


class DecodeResponse(BaseModel):
    method: Method
    metric: Metric
    radius: int
    codewords: list[list[list[int]]]
    solutions: list[list[int]]
    text: str


class BoundsRequest(BaseModel):
    spec: CodeSpec
    metric: Metric
    radius: int = Field(ge=0)
    epsilon: float = Field(default=0.0, ge=0.0, lt=1.0)


class Rational(BaseModel):
    numerator: int
    denominator: int


class BoundsResponse(BaseModel):
    metric: Metric
    radius: int
    n: int
    k: int
    delta: int
    q: int
    lower_bound: Rational
    asymptotic_exponent: int
    threshold_radius: Optional[float]
    text: str


class SimulateRequest(BaseModel):
    spec: CodeSpec
    deletions: int = Field(ge=0)
    insertions: int = Field(ge=0)
    trials: int = Field(ge=0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    method: Method = "plucker"
    metric: Metric = "subspace"
    radius: int = Field(ge=0)


class TrialModel(BaseModel):
    trial: int
    sent: int
    received_dim: int
    list_size: int
    success: bool


class SimulateResponse(BaseModel):
    method: Method
    metric: Metric
    radius: int
    deletions: int
    insertions: int
    seed: int
    rng: str
    success_rate: float
    unique_rate: float
    mean_list_size: float
    trials: list[TrialModel]
    text: str


class ErrorResponse(BaseModel):
    error: Literal["invalid_input", "budget_exceeded"]
    detail: str

"""Pydantic request and response models for the service endpoints."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator

from .ffield import check_prime

MAX_PRIME = 97
MAX_PATH_LENGTH = 22
MAX_TABLE_LENGTH = 64
MAX_BLOCKS = 8


def _validate_prime(value: int) -> int:
    try:
        check_prime(value)
    except ValueError as exc:
        raise ValueError(str(exc)) from None
    if value > MAX_PRIME:
        raise ValueError(f"primes up to {MAX_PRIME} are supported, got {value}")
    return value


class _PrimeModel(BaseModel):
    p: int

    @field_validator("p")
    @classmethod
    def p_must_be_prime(cls, value: int) -> int:
        return _validate_prime(value)


class CountsRequest(_PrimeModel):
    dmax: int = Field(ge=0, le=MAX_TABLE_LENGTH)


class CountsResponse(BaseModel):
    p: int
    dmax: int
    mu: list[list[int]]
    nu: list[list[int]]
    nu_bar: list[int]


class PathsRequest(_PrimeModel):
    d: int = Field(ge=0, le=MAX_PATH_LENGTH)


class PathEntry(BaseModel):
    word: str
    kind: str = Field(alias="class")
    finishing_height: Optional[int] = None
    summand_dimension: int

    model_config = {"populate_by_name": True}


class PathsResponse(BaseModel):
    p: int
    d: int
    pdp_count: int
    idp_count: int
    paths: list[PathEntry]


class TensorRequest(_PrimeModel):
    d: int = Field(ge=0, le=MAX_PATH_LENGTH)


class TensorResponse(BaseModel):
    p: int
    d: int
    summands: dict[str, int]
    total_dimension: int
    summand_count: int


class DecomposeRequest(_PrimeModel):
    multidegree: list[int] = Field(min_length=1, max_length=MAX_BLOCKS)
    method: Literal["rank", "paths"] = "rank"

    @field_validator("multidegree")
    @classmethod
    def entries_non_negative(cls, value: list[int]) -> list[int]:
        if any(v < 0 for v in value):
            raise ValueError("multidegree entries must be non-negative")
        return value


class DecomposeResponse(BaseModel):
    p: int
    multidegree: list[int]
    summands: dict[str, int]


class SagbiRequest(_PrimeModel):
    m: int = Field(ge=1, le=MAX_BLOCKS)
    max_total_degree: int = Field(ge=0, le=12)
    variant: Literal["full", "minimal"] = "minimal"
    jobs: int = Field(default=1, ge=1, le=16)


class SagbiFailure(BaseModel):
    multidegree: list[int]
    lead: str


class SagbiResponse(BaseModel):
    p: int
    m: int
    variant: str
    max_total_degree: int
    generator_count: int
    components_checked: int
    invariants_checked: int
    failures: list[SagbiFailure]
    ok: bool


class SL2Request(_PrimeModel):
    m: int = Field(ge=1, le=MAX_BLOCKS)
    dmax: int = Field(ge=2, le=64)
    budget_secs: Optional[float] = Field(default=None, gt=0)


class SL2Response(BaseModel):
    p: int
    m: int
    dmax: int
    per_degree: dict[str, int]
    total_generators: int
    noether_number: int
    noether_bound: int
    s_m_size: int


class SelftestRequest(BaseModel):
    level: Literal["quick", "full"] = "quick"
    jobs: int = Field(default=1, ge=1, le=16)
    seed: int = Field(default=0, ge=0)


class CheckResult(BaseModel):
    name: str
    ok: bool
    detail: str


class SelftestResponse(BaseModel):
    level: str
    checks: list[CheckResult]
    passed: int
    failed: int
    ok: bool

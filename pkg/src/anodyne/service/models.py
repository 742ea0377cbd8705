"""Request/response models for the certifier service."""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field


class BuildRequest(BaseModel):
    object: Literal[
        "q",
        "r",
        "j",
        "simplex",
        "boundary",
        "horn",
        "generalized-horn",
        "cube",
        "boundary-cube",
        "left-box",
        "walk-span",
    ]
    n: int = Field(ge=0)
    i: Optional[int] = None
    faces: Optional[list[int]] = None


class BuildResponse(BaseModel):
    text: str


class CubeOrderRequest(BaseModel):
    n: int = Field(ge=1)


class CubeOrderResponse(BaseModel):
    perms: list[list[int]]


class CubeFillRequest(BaseModel):
    n: int = Field(ge=1)
    part: Literal["full", "inner", "tail"] = "full"


class VnRequest(BaseModel):
    n: int = Field(ge=0)
    bound: int = 4


class CertificateResponse(BaseModel):
    found: bool
    certificate: Optional[dict[str, Any]] = None


class VerifyRequest(BaseModel):
    certificate: dict[str, Any]


class VerifyResponse(BaseModel):
    ok: bool
    steps_applied: int
    failure_index: Optional[int] = None
    reason: Optional[str] = None
    fully_primitive: bool = True


class SearchRequest(BaseModel):
    ambient: str = Field(description="ambient spec, e.g. linear:3 or cube:2")
    regime: Literal["plain", "marked", "marked_scaled"] = "plain"
    start: str = Field(description="complex in the text format")
    target: str
    budget: int = 200_000
    inner_only: bool = False


class OracleRequest(BaseModel):
    suite: Literal["subsets"] = "subsets"
    n: int = Field(ge=1, le=12)
    trials: int = Field(ge=1, le=100_000)
    seed: int = 0


class OracleResponse(BaseModel):
    ok: bool
    checks: int
    failures: list[str]


class TwEnumerateRequest(BaseModel):
    ambient: str = "linear:1"
    n: int = Field(ge=0, le=3)
    scale_all: bool = True


class TwEnumerateResponse(BaseModel):
    simplices: list[list[int]]

"""Pydantic request/response models for the service and the CLI."""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field

COMMANDS = (
    "solve-box",
    "tornheim",
    "approx",
    "congruence",
    "isotropy",
    "minimize",
    "small-multiple",
    "four-square",
    "enumerator",
    "constants",
)

Status = Literal["ok", "none", "rejected", "aborted"]


class Request(BaseModel):
    command: Literal[
        "solve-box",
        "tornheim",
        "approx",
        "congruence",
        "isotropy",
        "minimize",
        "small-multiple",
        "four-square",
        "enumerator",
        "constants",
    ]
    payload: dict = Field(default_factory=dict)
    seed: Optional[int] = None


class TranscriptEntry(BaseModel):
    check: str
    lhs: str
    rel: str
    rhs: str
    holds: bool


class Report(BaseModel):
    status: Status
    solution: Any = None
    transcript: list[TranscriptEntry] = Field(default_factory=list)
    error: Optional[str] = None
    seed: Optional[int] = None


class DomainModel(BaseModel):
    kind: Literal["integers", "poly_fp"]
    p: Optional[int] = None


class LatticeModel(BaseModel):
    domain: DomainModel
    n: int
    basis: list[list[Any]]


class QuadFormModel(BaseModel):
    domain: DomainModel
    n: int
    coeffs: list[list[Any]]


class SolveBoxPayload(BaseModel):
    lattice: LatticeModel
    eps: Optional[list[Any]] = None
    e: Optional[list[int]] = None
    istar: Optional[int] = None  # 1-based distinguished non-strict index


class TornheimPayload(BaseModel):
    p: int
    matrix: list[list[Any]]
    e: list[int]


class ApproxPayload(BaseModel):
    domain: DomainModel
    theta: list[Any]
    m: Any = Field(alias="M")

    model_config = {"populate_by_name": True}


class CongruencePayload(BaseModel):
    domain: DomainModel
    rows: list[list[Any]]
    moduli: list[Any]
    eps: Optional[list[Any]] = None
    e: Optional[list[int]] = None
    istar: Optional[int] = None


class IsotropyPayload(BaseModel):
    form: QuadFormModel
    ceiling: Optional[int] = None


class MinimizePayload(BaseModel):
    form: QuadFormModel
    seed: list[Any]


class SmallMultiplePayload(BaseModel):
    form: QuadFormModel
    d: Any


class FourSquarePayload(BaseModel):
    n: int


class EnumeratorPayload(BaseModel):
    lattice: LatticeModel
    widths: list[Any]
    r: int


class ConstantsPayload(BaseModel):
    domain: DomainModel
    n_max: int
    trials: int
    seed: int = 0


PAYLOAD_MODELS = {
    "solve-box": SolveBoxPayload,
    "tornheim": TornheimPayload,
    "approx": ApproxPayload,
    "congruence": CongruencePayload,
    "isotropy": IsotropyPayload,
    "minimize": MinimizePayload,
    "small-multiple": SmallMultiplePayload,
    "four-square": FourSquarePayload,
    "enumerator": EnumeratorPayload,
    "constants": ConstantsPayload,
}

EXIT_CODES = {"ok": 0, "none": 3, "rejected": 4, "aborted": 5}

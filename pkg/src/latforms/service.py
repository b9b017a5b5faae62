"""FastAPI service exposing every solver with JSON request/response models.

Run with:  uvicorn latforms.service:app

One generic endpoint accepts a full Request envelope; each command also
gets its own typed endpoint for schema-validated payloads.
"""

from __future__ import annotations

from fastapi import FastAPI

from . import api
from .schemas import (
    ApproxPayload,
    CongruencePayload,
    ConstantsPayload,
    EnumeratorPayload,
    FourSquarePayload,
    IsotropyPayload,
    MinimizePayload,
    Report,
    Request,
    SmallMultiplePayload,
    SolveBoxPayload,
    TornheimPayload,
)

app = FastAPI(
    title="latforms",
    description="Exact lattice solvers, small zeros of quadratic forms, "
    "and small multiples over Z and F_p[t].",
)


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/v1/run", response_model=Report)
def run_request(request: Request) -> Report:
    return api.run(request)


@app.post("/v1/solve-box", response_model=Report)
def solve_box(payload: SolveBoxPayload) -> Report:
    return api.run(Request(command="solve-box", payload=payload.model_dump()))


@app.post("/v1/tornheim", response_model=Report)
def tornheim(payload: TornheimPayload) -> Report:
    return api.run(Request(command="tornheim", payload=payload.model_dump()))


@app.post("/v1/approx", response_model=Report)
def approx(payload: ApproxPayload) -> Report:
    return api.run(Request(command="approx", payload=payload.model_dump(by_alias=True)))


@app.post("/v1/congruence", response_model=Report)
def congruence(payload: CongruencePayload) -> Report:
    return api.run(Request(command="congruence", payload=payload.model_dump()))


@app.post("/v1/isotropy", response_model=Report)
def isotropy(payload: IsotropyPayload) -> Report:
    return api.run(Request(command="isotropy", payload=payload.model_dump()))


@app.post("/v1/minimize", response_model=Report)
def minimize(payload: MinimizePayload) -> Report:
    return api.run(Request(command="minimize", payload=payload.model_dump()))


@app.post("/v1/small-multiple", response_model=Report)
def small_multiple(payload: SmallMultiplePayload) -> Report:
    return api.run(Request(command="small-multiple", payload=payload.model_dump()))


@app.post("/v1/four-square", response_model=Report)
def four_square(payload: FourSquarePayload) -> Report:
    return api.run(Request(command="four-square", payload=payload.model_dump()))


@app.post("/v1/enumerator", response_model=Report)
def enumerator(payload: EnumeratorPayload) -> Report:
    return api.run(Request(command="enumerator", payload=payload.model_dump()))


@app.post("/v1/constants", response_model=Report)
def constants(payload: ConstantsPayload) -> Report:
    return api.run(Request(command="constants", payload=payload.model_dump()))

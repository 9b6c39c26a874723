"""HTTP facade over the report builders.

Run with ``uvicorn modinv.service:app``.  Every endpoint is a POST taking a
typed request body and returning a typed report; verification outcomes ride
in the report's ``ok`` field while resource refusals map to HTTP 400.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import reports
from .errors import InfeasibleSize
from .schemas import (
    CountsRequest,
    CountsResponse,
    DecomposeRequest,
    DecomposeResponse,
    PathsRequest,
    PathsResponse,
    SL2Request,
    SL2Response,
    SagbiRequest,
    SagbiResponse,
    SelftestRequest,
    SelftestResponse,
    TensorRequest,
    TensorResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="modinv",
        version="0.1.0",
        description=(
            "Modular vector invariants of the cyclic group and SL2 over a prime "
            "field: counting tables, tensor and graded-component decompositions, "
            "generating-set verification and minimal-generator reports."
        ),
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/v1/counts", response_model=CountsResponse)
    def counts(request: CountsRequest) -> dict:
        return reports.counts_report(request.p, request.dmax)

    @app.post("/v1/paths", response_model=PathsResponse)
    def paths(request: PathsRequest) -> dict:
        return reports.paths_report(request.p, request.d)

    @app.post("/v1/tensor", response_model=TensorResponse)
    def tensor(request: TensorRequest) -> dict:
        return reports.tensor_report(request.p, request.d)

    @app.post("/v1/decompose", response_model=DecomposeResponse)
    def decompose(request: DecomposeRequest) -> dict:
        try:
            return reports.decompose_report(request.p, request.multidegree, request.method)
        except InfeasibleSize as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None

    @app.post("/v1/sagbi", response_model=SagbiResponse)
    def sagbi(request: SagbiRequest) -> dict:
        return reports.sagbi_report(
            request.p, request.m, request.max_total_degree, request.variant, request.jobs
        )

    @app.post("/v1/sl2", response_model=SL2Response)
    def sl2(request: SL2Request) -> dict:
        try:
            return reports.sl2_report(request.p, request.m, request.dmax, request.budget_secs)
        except InfeasibleSize as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None

    @app.post("/v1/selftest", response_model=SelftestResponse)
    def selftest(request: SelftestRequest) -> dict:
        return reports.selftest_report(request.level, request.jobs, request.seed)

    return app


app = create_app()

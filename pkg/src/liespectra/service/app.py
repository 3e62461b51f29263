"""FastAPI application exposing the runner over HTTP.

One POST route per command under /v1, a fixture listing, and a health probe.
Domain errors map to HTTP statuses but always carry the CLI exit status in
the body, so a thin client can exit exactly as the library would.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import InputError, LieSpectraError, ToleranceError, VerificationError
from ..fixtures import FIXTURES, fixture_names
from ..runner import run
from .models import (
    ComputeRequest,
    FixtureEntry,
    FixturesResponse,
    HealthResponse,
    HomologyRequest,
    RunResponse,
    SlodkowskiRequest,
    TensorRequest,
    VerifyRequest,
)

_FAMILY_DESCRIPTION = (
    "strictly upper triangular family: m = matrix size, n = generators, "
    "seed = deterministic stream (e.g. strict-upper-4-3-0)"
)


def create_app() -> FastAPI:
    app = FastAPI(title="liespectra", description="joint spectra of Lie algebra modules")

    @app.exception_handler(InputError)
    async def _input_error(request: Request, exc: InputError):
        body = {"error": str(exc), "exit_status": 2}
        if exc.field is not None:
            body["field"] = exc.field
        return JSONResponse(status_code=422, content=body)

    @app.exception_handler(ToleranceError)
    async def _tolerance_error(request: Request, exc: ToleranceError):
        return JSONResponse(status_code=500, content={"error": str(exc), "exit_status": 1})

    @app.exception_handler(VerificationError)
    async def _verification_error(request: Request, exc: VerificationError):
        return JSONResponse(status_code=500, content={"error": str(exc), "exit_status": 1})

    @app.exception_handler(LieSpectraError)
    async def _domain_error(request: Request, exc: LieSpectraError):
        return JSONResponse(status_code=500, content={"error": str(exc), "exit_status": 1})

    @app.get("/healthz", response_model=HealthResponse)
    def healthz() -> HealthResponse:
        return HealthResponse()

    @app.get("/v1/fixtures", response_model=FixturesResponse)
    def fixtures() -> FixturesResponse:
        rows = [
            FixtureEntry(name=name, description=FIXTURES[name]["description"])
            for name in sorted(FIXTURES)
        ]
        family = [n for n in fixture_names() if n not in FIXTURES]
        rows += [FixtureEntry(name=n, description=_FAMILY_DESCRIPTION) for n in family]
        return FixturesResponse(fixtures=rows)

    def _respond(command: str, request: ComputeRequest, **kw) -> RunResponse:
        document, status = run(
            command, request.input.to_document(), workers=request.workers, **kw
        )
        return RunResponse(document=document.to_jsonable(), exit_status=status)

    @app.post("/v1/check", response_model=RunResponse)
    def check(request: ComputeRequest) -> RunResponse:
        return _respond("check", request)

    @app.post("/v1/weights", response_model=RunResponse)
    def weights(request: ComputeRequest) -> RunResponse:
        return _respond("weights", request)

    @app.post("/v1/spectrum", response_model=RunResponse)
    def spectrum(request: ComputeRequest) -> RunResponse:
        return _respond("spectrum", request)

    @app.post("/v1/slodkowski", response_model=RunResponse)
    def slodkowski_route(request: SlodkowskiRequest) -> RunResponse:
        return _respond("slodkowski", request, k=request.k)

    @app.post("/v1/homology", response_model=RunResponse)
    def homology(request: HomologyRequest) -> RunResponse:
        return _respond("homology", request, character=request.character)

    @app.post("/v1/dual", response_model=RunResponse)
    def dual(request: ComputeRequest) -> RunResponse:
        return _respond("dual", request)

    @app.post("/v1/tensor", response_model=RunResponse)
    def tensor(request: TensorRequest) -> RunResponse:
        return _respond("tensor", request, other=request.with_.to_document())

    @app.post("/v1/verify", response_model=RunResponse)
    def verify(request: VerifyRequest) -> RunResponse:
        other = request.with_.to_document() if request.with_ is not None else None
        return _respond("verify", request, other=other)

    return app

"""FastAPI wiring for the certifier service."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..certificates import CertificateError
from ..complexes import ComplexError
from ..cube import CubeError
from ..rules import RuleError
from ..textio import TextFormatError
from ..twisted import TwistedError
from . import handlers, models

app = FastAPI(
    title="anodyne",
    description=(
        "Build decorated complexes over finite posets, emit anodyne filling "
        "certificates, and verify them by replay."
    ),
)

_BAD_REQUEST = (
    handlers.HandlerError,
    ComplexError,
    CubeError,
    TwistedError,
    RuleError,
    CertificateError,
    TextFormatError,
    KeyError,
)


def _guard(fn, *args):
    try:
        return fn(*args)
    except _BAD_REQUEST as e:
        raise HTTPException(status_code=422, detail=str(e)) from e


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok"}


@app.post("/build", response_model=models.BuildResponse)
def build(req: models.BuildRequest):
    return _guard(handlers.build, req)


@app.post("/cube/order", response_model=models.CubeOrderResponse)
def cube_order(req: models.CubeOrderRequest):
    return _guard(handlers.cube_order, req)


@app.post("/cube/fill", response_model=models.CertificateResponse)
def cube_fill(req: models.CubeFillRequest):
    return _guard(handlers.cube_fill, req)


@app.post("/twisted/vn", response_model=models.CertificateResponse)
def vn(req: models.VnRequest):
    return _guard(handlers.vn, req)


@app.post("/twisted/enumerate", response_model=models.TwEnumerateResponse)
def tw_enumerate(req: models.TwEnumerateRequest):
    return _guard(handlers.tw_enumerate, req)


@app.post("/verify", response_model=models.VerifyResponse)
def verify(req: models.VerifyRequest):
    return _guard(handlers.verify, req)


@app.post("/certify", response_model=models.CertificateResponse)
def certify(req: models.SearchRequest):
    return _guard(handlers.run_search, req)


@app.post("/oracle", response_model=models.OracleResponse)
def oracle(req: models.OracleRequest):
    return _guard(handlers.oracle, req)

"""Service handlers: the single implementation behind the API and the CLI."""

from __future__ import annotations

from .. import cube as cube_mod
from .. import twisted as twisted_mod
from ..certificates import (
    Regime,
    certificate_from_json,
    certificate_to_json,
    replay,
    search,
)
from ..complexes import (
    ComplexError,
    DecoratedComplex,
    boundary,
    generalized_horn,
    horn,
    nerve,
    standard_simplex,
)
from ..oracle import run_subset_fuzz
from ..rules import InnerHorn
from ..textio import ambient_from_spec, format_decorated, parse_decorated
from . import models


class HandlerError(ValueError):
    pass


def build(req: models.BuildRequest) -> models.BuildResponse:
    n = req.n
    if req.object == "q":
        deco = twisted_mod.q(n)
    elif req.object == "r":
        deco = twisted_mod.r(n)
    elif req.object == "j":
        deco = twisted_mod.j(n)
    elif req.object == "simplex":
        deco = DecoratedComplex(standard_simplex(n))
    elif req.object == "boundary":
        deco = DecoratedComplex(boundary(n))
    elif req.object == "horn":
        if req.i is None:
            raise HandlerError("horn needs an index i")
        deco = DecoratedComplex(horn(n, req.i))
    elif req.object == "generalized-horn":
        if not req.faces:
            raise HandlerError("generalized-horn needs a face list")
        deco = DecoratedComplex(generalized_horn(n, req.faces))
    elif req.object == "cube":
        deco = DecoratedComplex(cube_mod.cube_complex(n))
    elif req.object == "boundary-cube":
        deco = DecoratedComplex(cube_mod.boundary_cube(n))
    elif req.object == "left-box":
        deco = DecoratedComplex(cube_mod.left_box(n))
    elif req.object == "walk-span":
        deco = DecoratedComplex(cube_mod.j_box(n))
    else:  # pragma: no cover - pydantic rejects other literals
        raise HandlerError(f"unknown object {req.object}")
    return models.BuildResponse(text=format_decorated(deco))


def cube_order(req: models.CubeOrderRequest) -> models.CubeOrderResponse:
    return models.CubeOrderResponse(
        perms=[list(t) for t in cube_mod.sorted_perms(req.n)]
    )


def cube_fill(req: models.CubeFillRequest) -> models.CertificateResponse:
    if req.part == "inner":
        cert = cube_mod.inner_filtration(req.n)
    elif req.part == "tail":
        cert = cube_mod.marked_tail(req.n)
    else:
        cert = cube_mod.cube_fill(req.n)
    return models.CertificateResponse(found=True, certificate=certificate_to_json(cert))


def vn(req: models.VnRequest) -> models.CertificateResponse:
    cert = twisted_mod.v_certificate(req.n, bound=max(req.bound, req.n))
    return models.CertificateResponse(found=True, certificate=certificate_to_json(cert))


def verify(req: models.VerifyRequest) -> models.VerifyResponse:
    cert = certificate_from_json(req.certificate)
    report = replay(cert)
    return models.VerifyResponse(
        ok=report.ok,
        steps_applied=report.steps_applied,
        failure_index=report.failure_index,
        reason=report.reason,
        fully_primitive=report.fully_primitive,
    )


def run_search(req: models.SearchRequest) -> models.CertificateResponse:
    ambient = ambient_from_spec(req.ambient)
    regime = Regime(req.regime)
    try:
        start = parse_decorated(req.start, ambient, regime)
        target = parse_decorated(req.target, ambient, regime)
    except ComplexError as e:
        raise HandlerError(str(e)) from e
    kinds = (InnerHorn,) if req.inner_only else None
    cert = search(start, target, regime, budget=req.budget, rule_kinds=kinds)
    if cert is None:
        return models.CertificateResponse(found=False)
    return models.CertificateResponse(found=True, certificate=certificate_to_json(cert))


def oracle(req: models.OracleRequest) -> models.OracleResponse:
    report = run_subset_fuzz(req.n, req.trials, req.seed)
    return models.OracleResponse(
        ok=report.ok, checks=report.checks, failures=report.failures
    )


def tw_enumerate(req: models.TwEnumerateRequest) -> models.TwEnumerateResponse:
    ambient = ambient_from_spec(req.ambient)
    base = nerve(ambient)
    scaled = (
        frozenset(c for c in base.cells if len(c) == 3)
        if req.scale_all
        else frozenset()
    )
    deco = DecoratedComplex(base, frozenset(), scaled, Regime.MARKED_SCALED)
    rows = twisted_mod.tw_enumerate(deco, req.n)
    return models.TwEnumerateResponse(simplices=[list(t.vertices) for t in rows])

"""Batch front end.

The CLI is a thin client over the service handlers: each subcommand builds
the corresponding request model, invokes the handler in-process, and renders
the response.  Exit codes: 0 on success, 1 on verification or check failure,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .certificates import CertificateError
from .complexes import ComplexError
from .cube import CubeError
from .rules import RuleError
from .service import handlers, models
from .textio import TextFormatError
from .twisted import TwistedError, pushout_decoration_check

_USER_ERRORS = (
    handlers.HandlerError,
    ComplexError,
    CubeError,
    TwistedError,
    RuleError,
    CertificateError,
    TextFormatError,
)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_certificate(resp: models.CertificateResponse, out: str | None) -> int:
    if not resp.found:
        print("no certificate found within budget", file=sys.stderr)
        return 1
    _emit(json.dumps(resp.certificate, indent=1, sort_keys=True) + "\n", out)
    return 0


def _cmd_build(args) -> int:
    resp = handlers.build(
        models.BuildRequest(
            object=args.object, n=args.n, i=args.i, faces=args.faces
        )
    )
    _emit(resp.text, args.out)
    return 0


def _cmd_cube(args) -> int:
    if args.action == "order":
        resp = handlers.cube_order(models.CubeOrderRequest(n=args.n))
        line = " < ".join("(" + ",".join(map(str, p)) + ")" for p in resp.perms)
        _emit(line + "\n", args.out)
        return 0
    if args.action == "fill":
        return _emit_certificate(
            handlers.cube_fill(models.CubeFillRequest(n=args.n, part=args.part)),
            args.out,
        )
    raise AssertionError(args.action)


def _cmd_twisted(args) -> int:
    if args.action == "vn":
        return _emit_certificate(
            handlers.vn(models.VnRequest(n=args.n, bound=args.bound)), args.out
        )
    if args.action == "enumerate":
        resp = handlers.tw_enumerate(
            models.TwEnumerateRequest(
                ambient=args.ambient, n=args.n, scale_all=not args.flat
            )
        )
        _emit(
            "".join(",".join(map(str, row)) + "\n" for row in resp.simplices),
            args.out,
        )
        return 0
    if args.action == "pushout-check":
        ok = pushout_decoration_check(args.n)
        print(f"pushout decoration check n={args.n}: {'ok' if ok else 'FAIL'}")
        return 0 if ok else 1
    raise AssertionError(args.action)


def _cmd_verify(args) -> int:
    payload = json.loads(Path(args.certificate).read_text())
    resp = handlers.verify(models.VerifyRequest(certificate=payload))
    if resp.ok:
        kind = "primitive" if resp.fully_primitive else "uses cited lemmas"
        print(f"ok: {resp.steps_applied} steps replayed ({kind})")
        return 0
    where = (
        "final state"
        if resp.failure_index is None
        else f"step {resp.failure_index}"
    )
    print(f"FAIL at {where}: {resp.reason}")
    return 1


def _cmd_certify(args) -> int:
    resp = handlers.run_search(
        models.SearchRequest(
            ambient=args.ambient,
            regime=args.regime,
            start=Path(args.start).read_text(),
            target=Path(args.target).read_text(),
            budget=args.budget,
            inner_only=args.inner_only,
        )
    )
    return _emit_certificate(resp, args.out)


def _cmd_oracle(args) -> int:
    resp = handlers.oracle(
        models.OracleRequest(
            suite=args.suite, n=args.n, trials=args.trials, seed=args.seed
        )
    )
    print(f"suite={args.suite} n={args.n} trials={args.trials} seed={args.seed}")
    print(f"checks={resp.checks} failures={len(resp.failures)}")
    for f in resp.failures[:20]:
        print(f"  {f}")
    return 0 if resp.ok else 1


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="anodyne", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="print a named object in the text format")
    b.add_argument("object", choices=[
        "q", "r", "j", "simplex", "boundary", "horn", "generalized-horn",
        "cube", "boundary-cube", "left-box", "walk-span",
    ])
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--i", type=int)
    b.add_argument("--faces", type=lambda s: [int(x) for x in s.split(",")])
    b.add_argument("--out")
    b.set_defaults(fn=_cmd_build)

    c = sub.add_parser("cube", help="cube filling: walk order and certificates")
    c.add_argument("action", choices=["order", "fill"])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--part", choices=["full", "inner", "tail"], default="full")
    c.add_argument("--out")
    c.set_defaults(fn=_cmd_cube)

    t = sub.add_parser("twisted", help="twisted-arrow objects and certificates")
    t.add_argument("action", choices=["vn", "enumerate", "pushout-check"])
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--bound", type=int, default=4)
    t.add_argument("--ambient", default="linear:1")
    t.add_argument("--flat", action="store_true", help="leave the target unscaled")
    t.add_argument("--out")
    t.set_defaults(fn=_cmd_twisted)

    v = sub.add_parser("verify", help="replay a certificate JSON file")
    v.add_argument("certificate")
    v.set_defaults(fn=_cmd_verify)

    s = sub.add_parser("certify", help="search for a primitive certificate")
    s.add_argument("--ambient", required=True, help="linear:N, cube:N, or prism:N")
    s.add_argument("--regime", choices=["plain", "marked", "marked_scaled"],
                   default="plain")
    s.add_argument("--start", required=True, help="path to the start complex")
    s.add_argument("--target", required=True, help="path to the target complex")
    s.add_argument("--budget", type=int, default=200_000)
    s.add_argument("--inner-only", action="store_true")
    s.add_argument("--out")
    s.set_defaults(fn=_cmd_certify)

    o = sub.add_parser("oracle", help="run a seeded identity fuzz suite")
    o.add_argument("suite", choices=["subsets"])
    o.add_argument("--n", type=int, default=6)
    o.add_argument("--trials", type=int, default=1000)
    o.add_argument("--seed", type=int, default=0)
    o.set_defaults(fn=_cmd_oracle)

    srv = sub.add_parser("serve", help="run the HTTP service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)
    srv.set_defaults(fn=_cmd_serve)

    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _USER_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

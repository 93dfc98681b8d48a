"""Command line client for the HTTP service.

The CLI performs no probability work itself. Every compute command builds
a request, sends it to the service, and renders the response: by default
the app is driven in process through an ASGI transport, and ``--server``
points the same client at a remote instance instead. File reading and
writing stay on this side, so the service never touches the filesystem.

Exit codes: 0 success, 1 malformed input (HTTP 400 and local file
problems), 2 undefined computation (HTTP 422), 3 usage errors. Machine
readable output goes to stdout, diagnostics go to stderr, never mixed.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path
from typing import Sequence

import httpx

from .audit import TOLERANCE_GRID
from .classify import DEFAULT_CLASS_TOLERANCE, IndependenceVariant
from .service import create_app

_CLIENT_TIMEOUT = 600.0


class UsageError(Exception):
    """Command line that cannot be interpreted; exits with code 3."""


class _ExitWithCode(Exception):
    def __init__(self, code: int) -> None:
        super().__init__(code)
        self.code = code


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; we reserve 2 for
    computation failures, so usage problems are rethrown and mapped to 3."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def fmt(value: float) -> str:
    """Human-facing float rendering at 12 significant digits."""
    return format(float(value), ".12g")


def parse_evidence(text: str) -> dict[str, bool]:
    """Parse ``name=true,name=false`` lists; unmentioned attributes stay unknown."""
    mapping: dict[str, bool] = {}
    for part in text.split(","):
        item = part.strip()
        name, sep, raw = item.partition("=")
        name = name.strip()
        value = raw.strip().lower()
        if not sep or not name or value not in ("true", "false"):
            raise UsageError(
                f"evidence items must look like name=true or name=false, got {item!r}"
            )
        if name in mapping:
            raise UsageError(f"evidence mentions {name!r} twice")
        mapping[name] = value == "true"
    return mapping


def parse_tolerances(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"tolerances must be comma-separated numbers, got {text!r}") from None
    if not values:
        raise UsageError("tolerance list is empty")
    return values


async def _post_async(server: str | None, path: str, payload: dict) -> tuple[int, dict]:
    if server is None:
        transport = httpx.ASGITransport(app=create_app())
        client = httpx.AsyncClient(
            transport=transport, base_url="http://cfbayes.local", timeout=_CLIENT_TIMEOUT
        )
    else:
        client = httpx.AsyncClient(base_url=server, timeout=_CLIENT_TIMEOUT)
    async with client:
        response = await client.post(path, json=payload)
        try:
            body = response.json()
        except ValueError:
            body = {"detail": {"error": "BadResponse", "message": response.text}}
        return response.status_code, body


def _request(server: str | None, path: str, payload: dict) -> dict:
    try:
        status, body = asyncio.run(_post_async(server, path, payload))
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        raise _ExitWithCode(1) from None
    if status == 200:
        return body
    detail = body.get("detail", {}) if isinstance(body, dict) else {}
    if not isinstance(detail, dict):
        detail = {"error": "ServiceError", "message": str(detail)}
    name = detail.get("error", "ServiceError")
    message = detail.get("message", "")
    print(f"error: {name}: {message}", file=sys.stderr)
    raise _ExitWithCode(1 if status == 400 else 2)


def _load_distribution_payload(path: str) -> dict:
    """Read a distribution file as raw JSON; the service does the validating."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise _ExitWithCode(1) from None
    except json.JSONDecodeError as exc:
        print(f"error: {path} is not valid JSON: {exc}", file=sys.stderr)
        raise _ExitWithCode(1) from None
    if not isinstance(payload, dict):
        print(f"error: {path} does not hold a distribution object", file=sys.stderr)
        raise _ExitWithCode(1)
    return {
        "attributes": payload.get("attributes"),
        "probabilities": payload.get("probabilities"),
    }


def cmd_gen(args: argparse.Namespace) -> int:
    body = _request(
        args.server,
        "/generate",
        {"family": args.family, "attrs": args.attrs, "seed": args.seed},
    )
    out = Path(args.out)
    payload = {
        "attributes": body["attributes"],
        "probabilities": body["probabilities"],
    }
    out.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"hypothesis={body['hypothesis']}")
    for report in body["classifications"]:
        print(
            f"{report['variant']}: {report['problem_class']}"
            f" ci_gap={fmt(report['ci_gap'])}"
            f" marginal_gap={fmt(report['marginal_gap'])}"
            f" tol={fmt(report['tol'])}"
        )
    print(f"wrote distribution to {out}", file=sys.stderr)
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    body = _request(
        args.server,
        "/classify",
        {
            "distribution": _load_distribution_payload(args.dist),
            "hypothesis": args.hypothesis,
            "variant": args.variant,
            "tol": args.tol,
        },
    )
    print(
        f"{body['problem_class']} variant={body['variant']}"
        f" ci_gap={fmt(body['ci_gap'])}"
        f" marginal_gap={fmt(body['marginal_gap'])}"
        f" tol={fmt(body['tol'])}"
    )
    return 0


def cmd_cf(args: argparse.Namespace) -> int:
    evidence = parse_evidence(args.evidence)
    body = _request(
        args.server,
        "/cf",
        {
            "distribution": _load_distribution_payload(args.dist),
            "hypothesis": args.hypothesis,
            "evidence": evidence,
        },
    )
    print(f"prior={fmt(body['prior'])} posterior={fmt(body['posterior'])}")
    for label in ("direct", "combined"):
        m = body[label]
        print(f"{label}: mb={fmt(m['mb'])} md={fmt(m['md'])} cf={fmt(m['cf'])}")
    print(
        f"gaps: m1={fmt(body['m1_gap'])}"
        f" m2={fmt(body['m2_gap'])}"
        f" cf={fmt(body['cf_gap'])}"
    )
    return 0


def cmd_audit(args: argparse.Namespace) -> int:
    families = [part.strip() for part in args.families.split(",") if part.strip()]
    if not families:
        raise UsageError("need at least one family")
    body = _request(
        args.server,
        "/audit",
        {
            "families": families,
            "count": args.count,
            "attrs": args.attrs,
            "seed": args.seed,
            "tolerances": parse_tolerances(args.tols),
            "threads": args.threads,
        },
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows_path = out_dir / "audit_rows.csv"
    summary_path = out_dir / "audit_summary.csv"
    rows_path.write_text(body["rows_csv"], encoding="utf-8")
    summary_path.write_text(body["summary_csv"], encoding="utf-8")
    print(f"wrote {body['row_count']} rows to {rows_path}", file=sys.stderr)
    print(f"wrote summary to {summary_path}", file=sys.stderr)
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    body = _request(
        args.server,
        "/decompose",
        {
            "distribution": _load_distribution_payload(args.dist),
            "hypothesis": args.hypothesis,
            "tol": args.tol,
            "max_group_size": args.max_group_size,
        },
    )
    print(json.dumps(body, indent=2))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="cfbayes", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    client = _Parser(add_help=False)
    client.add_argument(
        "--server",
        default=None,
        help="base URL of a running service; default runs the app in process",
    )

    gen = sub.add_parser("gen", parents=[client], help="sample a distribution")
    gen.add_argument("--family", required=True)
    gen.add_argument("--attrs", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="distribution JSON file to write")
    gen.set_defaults(func=cmd_gen)

    cls = sub.add_parser("classify", parents=[client], help="classify decomposability")
    cls.add_argument("--dist", required=True, help="distribution JSON file")
    cls.add_argument("--hypothesis", required=True)
    cls.add_argument(
        "--variant",
        choices=[v.value for v in IndependenceVariant],
        default=IndependenceVariant.SYMMETRIC.value,
    )
    cls.add_argument("--tol", type=float, default=DEFAULT_CLASS_TOLERANCE)
    cls.set_defaults(func=cmd_classify)

    cf = sub.add_parser("cf", parents=[client], help="direct vs combined measures")
    cf.add_argument("--dist", required=True, help="distribution JSON file")
    cf.add_argument("--hypothesis", required=True)
    cf.add_argument(
        "--evidence",
        required=True,
        help="comma list like a=true,b=false; omitted attributes stay unknown",
    )
    cf.set_defaults(func=cmd_cf)

    audit = sub.add_parser("audit", parents=[client], help="batch consistency audit")
    audit.add_argument("--families", required=True, help="comma list of families")
    audit.add_argument("--count", type=int, required=True)
    audit.add_argument("--attrs", type=int, required=True)
    audit.add_argument("--seed", type=int, default=0)
    audit.add_argument(
        "--tols",
        default=",".join(repr(t) for t in TOLERANCE_GRID),
        help="comma list of tolerances for the summary grid",
    )
    audit.add_argument("--threads", type=int, default=1)
    audit.add_argument("--out-dir", required=True)
    audit.set_defaults(func=cmd_audit)

    dec = sub.add_parser("decompose", parents=[client], help="greedy evidence grouping")
    dec.add_argument("--dist", required=True, help="distribution JSON file")
    dec.add_argument("--hypothesis", required=True)
    dec.add_argument("--tol", type=float, default=1e-9)
    dec.add_argument("--max-group-size", type=int, default=None)
    dec.set_defaults(func=cmd_decompose)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "func", None) is None:
            raise UsageError("choose a command: gen, classify, cf, audit, decompose, serve")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 3
    except _ExitWithCode as exc:
        return exc.code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main(sys.argv[1:]))

"""Command line front end.

The CLI is a thin client of the HTTP service: by default it mounts the
FastAPI app in-process through an ASGI transport, and --server points the
same requests at a running instance instead. Reports always go through the
canonical writer here, on the client side, so output bytes do not depend on
the transport.
"""

from __future__ import annotations

import argparse
import json
import sys

import httpx

from .documents import canonical_text
from .runner import COMMANDS

_PROG = "liespectra"
_LOCAL_BASE = "http://liespectra.internal"


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog=_PROG,
        description="joint spectra and weight decompositions of matrix Lie algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    listing = sub.add_parser("fixtures", help="list built-in fixtures")
    listing.add_argument("--server", default=None, metavar="URL")
    listing.add_argument("--json", action="store_true", default=True)
    listing.add_argument("--pretty", action="store_true")

    for name in COMMANDS:
        cmd = sub.add_parser(name, help=f"run the {name} computation")
        source = cmd.add_mutually_exclusive_group(required=True)
        source.add_argument("--input", metavar="PATH", help="input document file")
        source.add_argument("--fixture", metavar="NAME", help="built-in fixture name")
        cmd.add_argument("--eps-rank", type=float, default=None, metavar="R")
        cmd.add_argument("--eps-cluster", type=float, default=None, metavar="R")
        cmd.add_argument("--eps-residual", type=float, default=None, metavar="R")
        cmd.add_argument("--workers", type=int, default=None)
        cmd.add_argument("--server", default=None, metavar="URL",
                         help="use a running service instead of in-process")
        style = cmd.add_mutually_exclusive_group()
        style.add_argument("--json", action="store_true", default=True)
        style.add_argument("--pretty", action="store_true")
        if name == "slodkowski":
            cmd.add_argument("--k", type=int, required=True)
        if name == "homology":
            cmd.add_argument("--character", required=True, metavar="LIST",
                             help="comma-separated coordinates, e.g. '0,0.5' or '1+2j,0'")
        if name in ("tensor", "verify"):
            second = cmd.add_mutually_exclusive_group(required=(name == "tensor"))
            second.add_argument("--with-input", metavar="PATH",
                                help="second operand document file")
            second.add_argument("--with-fixture", metavar="NAME",
                                help="second operand fixture name")

    return parser.parse_args(argv)


def _fail(message: str, status: int = 2) -> int:
    print(f"{_PROG}: error: {message}", file=sys.stderr)
    return status


def _load_document_arg(path: str | None, fixture: str | None):
    if fixture is not None:
        return {"fixture": fixture}
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(
            f"{path}: invalid document syntax at line {exc.lineno}, "
            f"column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(obj, dict):
        raise ValueError(f"{path}: input document must be a JSON object")
    return obj


def _character_arg(text: str) -> list:
    coords = []
    for token in text.split(","):
        token = token.strip()
        try:
            z = complex(token)
        except ValueError:
            raise ValueError(f"bad character coordinate {token!r}") from None
        coords.append([z.real, z.imag])
    return coords


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    # sync client over the in-process ASGI app; starlette's portal client is
    # the supported way to drive an async app from synchronous code
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient

    from .service import create_app

    return TestClient(create_app(), base_url=_LOCAL_BASE, raise_server_exceptions=False)


def _scalar(pair) -> str:
    re_txt = canonical_text(float(pair[0]))
    im = float(pair[1])
    if abs(im) <= 1e-12:
        return re_txt
    sign = "+" if im > 0 else "-"
    return f"{re_txt}{sign}{canonical_text(abs(im))}i"


def _char(values) -> str:
    return "(" + ", ".join(_scalar(v) for v in values) + ")"


def _char_list(chars) -> str:
    return ", ".join(_char(c) for c in chars) if chars else "(empty)"


def _pretty_report(doc: dict) -> str:
    lines = []
    if "input" not in doc:
        # an input document produced by dual/tensor
        lines.append(f"derived representation on dim {doc['dim']}")
        for gen in doc["generators"]:
            lines.append(f"generator {gen['name']}:")
            for row in gen["matrix"]:
                lines.append("  [" + ", ".join(_scalar(v) for v in row) + "]")
        return "\n".join(lines) + "\n"

    echo = doc["input"]
    source = echo.get("fixture", "explicit input")
    names = ", ".join(g["name"] for g in echo["generators"])
    lines.append(f"{echo['command']} on {source} (dim {echo['dim']}; generators {names})")
    if "nilpotent" in doc:
        lines.append(f"nilpotent: {'yes' if doc['nilpotent'] else 'no'}"
                     f"   solvable: {'yes' if doc['solvable'] else 'no'}")
    if "flag" in doc:
        flag = doc["flag"]
        lines.append(f"flag: {flag['kind']}, derived prefix {flag['derived_prefix']}")
    if "weights" in doc:
        lines.append("weights:")
        for row in doc["weights"]:
            lines.append(f"  {_char(row['weight'])}  multiplicity {row['multiplicity']}")
    if "candidates" in doc:
        lines.append("candidates (character: homology dims):")
        for row in doc["candidates"]:
            dims = " ".join(str(d) for d in row["homology"])
            lines.append(f"  {_char(row['character'])}: {dims}")
    if "sp" in doc:
        lines.append(f"sp: {_char_list(doc['sp'])}")
    if "slodkowski" in doc:
        slod = doc["slodkowski"]
        if "k" in slod:
            lines.append(f"slodkowski k={slod['k']}:")
            lines.append(f"  delta: {_char_list(slod['delta'])}")
            lines.append(f"  pi:    {_char_list(slod['pi'])}")
        else:
            for family in ("delta", "pi"):
                for k, chars in enumerate(slod[family]):
                    lines.append(f"  {family}[{k}]: {_char_list(chars)}")
    if "verification" in doc:
        lines.append("verification:")
        for row in doc["verification"]:
            lines.append(f"  {row['status']:>14}  {row['name']}  ({row['detail']})")
    for note in doc.get("notes", []):
        lines.append(f"note: {note}")
    if "diagnostics" in doc:
        d = doc["diagnostics"]
        lines.append(f"rank decisions: {d['rank_calls']}")
    return "\n".join(lines) + "\n"


def _emit(doc: dict, pretty: bool) -> None:
    if pretty:
        sys.stdout.write(_pretty_report(doc))
    else:
        sys.stdout.write(canonical_text(doc) + "\n")


def _post(client: httpx.Client, command: str, payload: dict, pretty: bool) -> int:
    try:
        response = client.post(f"/v1/{command}", json=payload)
    except httpx.HTTPError as exc:
        return _fail(f"service unreachable: {exc}", status=1)
    try:
        body = response.json()
    except ValueError:
        return _fail(f"malformed service response (HTTP {response.status_code})", status=1)
    if response.status_code != 200 or "document" not in body:
        message = body.get("error")
        if message is None:
            message = json.dumps(body.get("detail", body))
        fallback = 2 if response.status_code < 500 else 1
        print(f"{_PROG}: error: {message}", file=sys.stderr)
        return int(body.get("exit_status", fallback))
    _emit(body["document"], pretty)
    return int(body["exit_status"])


def main(argv=None) -> int:
    args = _parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0

    if args.command == "fixtures":
        with _client(args.server) as client:
            try:
                response = client.get("/v1/fixtures")
            except httpx.HTTPError as exc:
                return _fail(f"service unreachable: {exc}", status=1)
            body = response.json()
            if args.pretty:
                for row in body["fixtures"]:
                    print(f"{row['name']}: {row['description']}")
            else:
                sys.stdout.write(canonical_text(body) + "\n")
        return 0

    try:
        payload: dict = {"input": _load_document_arg(args.input, args.fixture)}
        overrides = {
            "eps_rank": args.eps_rank,
            "eps_cluster": args.eps_cluster,
            "eps_residual": args.eps_residual,
        }
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if overrides:
            merged = dict(payload["input"].get("tolerances", {}))
            merged.update(overrides)
            payload["input"]["tolerances"] = merged
        if args.workers is not None:
            payload["workers"] = args.workers
        if args.command == "slodkowski":
            payload["k"] = args.k
        if args.command == "homology":
            payload["character"] = _character_arg(args.character)
        if args.command in ("tensor", "verify"):
            if args.with_input or args.with_fixture:
                payload["with"] = _load_document_arg(args.with_input, args.with_fixture)
    except ValueError as exc:
        return _fail(str(exc))

    with _client(args.server) as client:
        return _post(client, args.command, payload, args.pretty)


if __name__ == "__main__":
    sys.exit(main())

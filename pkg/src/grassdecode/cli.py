"""Command-line front end; a thin client over the service handlers.

Requests run in-process unless --server (or GRASSDECODE_SERVER) points at a
running instance of the HTTP service. Exit codes: 0 success, 2 invalid
input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .client import HttpClient, LocalClient
from .errors import BudgetExceededError, InvalidInputError

EXIT_OK, EXIT_INVALID, EXIT_BUDGET = 0, 2, 3
METRICS = ("subspace", "injection")
METHODS = ("plucker", "rational", "oracle")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InvalidInputError(f"cannot read {path}: {e.strerror}") from None


def _spec(path: str) -> dict:
    try:
        spec = json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"{path} is not valid JSON: {e}") from None
    if not isinstance(spec, dict):
        raise InvalidInputError(f"{path} must hold a JSON object")
    return spec


def _emit(resp: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps({k: v for k, v in resp.items() if k != "text"}, indent=2))
    else:
        print(resp["text"])


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grassdecode", description="List decoding of lifted Gabidulin codes.")
    p.add_argument("--server", default=os.environ.get("GRASSDECODE_SERVER"),
                   help="base URL of a running service; default runs in-process")
    sub = p.add_subparsers(dest="command", required=True)

    code = sub.add_parser("code", help="inspect a code")
    code.add_argument("action", choices=("info", "enumerate"))
    code.add_argument("--spec", required=True)
    code.add_argument("--json", action="store_true")

    enc = sub.add_parser("encode", help="encode a message")
    enc.add_argument("--spec", required=True)
    enc.add_argument("--message", required=True, help="extension-field elements separated by spaces or commas")
    enc.add_argument("--json", action="store_true")

    lift = sub.add_parser("lift", help="lift a k x l matrix to rs[I | A]")
    lift.add_argument("--matrix", required=True)
    lift.add_argument("--q", type=int, default=2)
    lift.add_argument("--json", action="store_true")

    pl = sub.add_parser("plucker", help="Plücker embedding and its inverse")
    pl.add_argument("action", choices=("embed", "invert"))
    pl.add_argument("--input", required=True)
    pl.add_argument("--q", type=int, default=2)
    pl.add_argument("--n", type=int)
    pl.add_argument("--k", type=int)
    pl.add_argument("--json", action="store_true")

    ball = sub.add_parser("ball", help="linear equations of a ball")
    ball.add_argument("action", choices=("eqs",))
    ball.add_argument("--center", required=True)
    ball.add_argument("--metric", choices=METRICS, required=True)
    ball.add_argument("--radius", type=int, required=True)
    ball.add_argument("--dim-k", type=int, required=True)
    ball.add_argument("--q", type=int, default=2)
    ball.add_argument("--json", action="store_true")

    dec = sub.add_parser("decode", help="list-decode a received subspace")
    dec.add_argument("--spec", required=True)
    dec.add_argument("--received", required=True)
    dec.add_argument("--method", choices=METHODS, default="plucker")
    dec.add_argument("--metric", choices=METRICS, default="subspace")
    dec.add_argument("--radius", type=int, required=True)
    dec.add_argument("--json", action="store_true")

    bd = sub.add_parser("bounds", help="list-size lower bound (JSON)")
    bd.add_argument("--spec", required=True)
    bd.add_argument("--metric", choices=METRICS, default="subspace")
    bd.add_argument("--radius", type=int, required=True)
    bd.add_argument("--epsilon", type=float, default=0.0)

    sim = sub.add_parser("simulate", help="run encode/channel/decode trials")
    sim.add_argument("--spec", required=True)
    sim.add_argument("--deletions", type=int, default=0)
    sim.add_argument("--insertions", type=int, default=0)
    sim.add_argument("--trials", type=int, default=100)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--method", choices=METHODS, default="plucker")
    sim.add_argument("--metric", choices=METRICS, default="subspace")
    sim.add_argument("--radius", type=int, required=True)
    sim.add_argument("--json", action="store_true")

    srv = sub.add_parser("serve", help="run the HTTP service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)
    return p


def _request(args) -> tuple[str, dict, bool]:
    """Map parsed arguments to (route name, payload, print as JSON)."""
    cmd = args.command
    if cmd == "code":
        return f"code_{args.action}", {"spec": _spec(args.spec)}, args.json
    if cmd == "encode":
        msg = [t for t in args.message.replace(",", " ").split() if t]
        return "encode", {"spec": _spec(args.spec), "message": msg}, args.json
    if cmd == "lift":
        return "lift", {"q": args.q, "matrix": _read(args.matrix)}, args.json
    if cmd == "plucker":
        if args.action == "embed":
            return "plucker_embed", {"q": args.q, "matrix": _read(args.input)}, args.json
        return "plucker_invert", {"q": args.q, "vector": _read(args.input), "n": args.n, "k": args.k}, args.json
    if cmd == "ball":
        return "ball_eqs", {"q": args.q, "center": _read(args.center), "metric": args.metric,
                            "radius": args.radius, "dim_k": args.dim_k}, args.json
    if cmd == "decode":
        return "decode", {"spec": _spec(args.spec), "received": _read(args.received),
                          "method": args.method, "metric": args.metric, "radius": args.radius}, args.json
    if cmd == "bounds":
        return "bounds", {"spec": _spec(args.spec), "metric": args.metric, "radius": args.radius,
                          "epsilon": args.epsilon}, True
    if cmd == "simulate":
        return "simulate", {"spec": _spec(args.spec), "deletions": args.deletions,
                            "insertions": args.insertions, "trials": args.trials, "seed": args.seed,
                            "method": args.method, "metric": args.metric, "radius": args.radius}, args.json
    raise AssertionError(cmd)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        uvicorn.run("grassdecode.service.app:app", host=args.host, port=args.port)
        return EXIT_OK
    client = HttpClient(args.server) if args.server else LocalClient()
    try:
        name, payload, as_json = _request(args)
        _emit(client.call(name, payload), as_json)
    except InvalidInputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceededError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Thin CLI over the solver service.

Each subcommand reads a JSON payload (inline argument, --in file, or
stdin), builds a Request, and prints the Report as JSON.  By default the
request is dispatched in-process; --server posts it to a running
latforms service instead.  Exit codes: 0 ok, 3 none, 4 rejected,
5 aborted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import api
from .schemas import COMMANDS, EXIT_CODES, Report, Request


def _read_payload(args) -> dict:
    if args.payload is not None:
        text = args.payload
    elif args.infile is not None:
        with open(args.infile, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    text = text.strip()
    if not text:
        return {}
    return json.loads(text)


def _dispatch_remote(server: str, request: Request) -> Report:
    import httpx

    url = server.rstrip("/") + "/v1/run"
    resp = httpx.post(url, json=request.model_dump(), timeout=600.0)
    resp.raise_for_status()
    return Report.model_validate(resp.json())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latforms",
        description="Exact lattice solvers, small zeros of quadratic forms, "
        "and small multiples over Z and F_p[t].",
    )
    parser.add_argument("--server", help="base URL of a running service; default runs in-process")
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in COMMANDS:
        p = sub.add_parser(cmd, help=f"run the {cmd} solver")
        p.add_argument("payload", nargs="?", help="inline JSON payload")
        p.add_argument("--in", dest="infile", help="read the JSON payload from a file")
        p.add_argument("--out", dest="outfile", help="write the JSON report to a file")
        p.add_argument("--seed", type=int, default=None, help="seed recorded in the report")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload = _read_payload(args)
    except (OSError, json.JSONDecodeError) as exc:
        report = Report(status="rejected", error=f"bad payload: {exc}")
        print(report.model_dump_json())
        return EXIT_CODES["rejected"]
    try:
        request = Request(command=args.command, payload=payload, seed=args.seed)
    except Exception as exc:
        report = Report(status="rejected", error=str(exc))
        print(report.model_dump_json())
        return EXIT_CODES["rejected"]
    if args.server:
        report = _dispatch_remote(args.server, request)
    else:
        report = api.run(request)
    text = report.model_dump_json()
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_CODES[report.status]


if __name__ == "__main__":
    sys.exit(main())

"""Command line client: run session scripts locally or against a server.

    relcoh run [script.lc] [--window A..B] [--tmax N] [--streak N]
               [--strict] [--threads N] [--server URL]
    relcoh serve [--host H] [--port P]

`run` reads the script from the file argument or stdin, writes one JSON
report per line to stdout and a human-readable summary to stderr.  Exit
codes: 0 success, 1 usage or parse error, 2 kernel error, 3 strict-mode
violation.  With --server the script is posted to a running service and
the same outputs and exit codes are reproduced from the response.
"""

from __future__ import annotations

import argparse
import json
import sys

from .localcoh import DEFAULT_STREAK, DEFAULT_TMAX, DEFAULT_WINDOW
from .runner import RunOptions, run_session
from .session import ParseError, parse_session


def _parse_window(text: str):
    try:
        lo, hi = text.split("..")
        return (int(lo), int(hi))
    except ValueError:
        raise argparse.ArgumentTypeError(
            "window must look like -8..2, got %r" % text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relcoh",
        description="Local cohomology, duality and base-change checks for "
                    "graded modules over QQ[x] and QQ[t][x].",
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    runp = sub.add_parser("run", help="run a session script")
    runp.add_argument("script", nargs="?",
                      help="session file (stdin when omitted)")
    runp.add_argument("--window", type=_parse_window,
                      default=DEFAULT_WINDOW,
                      help="default degree window, e.g. -12..4")
    runp.add_argument("--tmax", type=int, default=DEFAULT_TMAX,
                      help="largest ideal power for the oracle route")
    runp.add_argument("--streak", type=int, default=DEFAULT_STREAK,
                      help="consecutive agreeing powers for stability")
    runp.add_argument("--strict", action="store_true",
                      help="exit 3 on theorem-contradicting results")
    runp.add_argument("--threads", type=int, default=1,
                      help="worker threads for command dispatch")
    runp.add_argument("--server", default=None,
                      help="URL of a running service; act as a thin client")
    servep = sub.add_parser("serve", help="start the HTTP service")
    servep.add_argument("--host", default="127.0.0.1")
    servep.add_argument("--port", type=int, default=8000)
    return parser


def _read_script(path):
    if path is None:
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        print("relcoh: cannot read %s: %s" % (path, exc), file=sys.stderr)
        raise SystemExit(1)


def _emit(reports, summary, exit_code) -> int:
    for report in reports:
        sys.stdout.write(json.dumps(report) + "\n")
    for line in summary:
        sys.stderr.write(line + "\n")
    return exit_code


def run_local(args) -> int:
    text = _read_script(args.script)
    try:
        session = parse_session(text)
    except ParseError as exc:
        print("relcoh: %s" % exc, file=sys.stderr)
        return 1
    options = RunOptions(window=args.window, t_max=args.tmax,
                         streak=args.streak, strict=args.strict,
                         threads=args.threads)
    result = run_session(session, options)
    return _emit(result.reports, result.summary, result.exit_code)


def run_remote(args) -> int:
    import httpx

    text = _read_script(args.script)
    payload = {
        "script": text,
        "options": {
            "window": list(args.window),
            "t_max": args.tmax,
            "streak": args.streak,
            "strict": args.strict,
            "threads": args.threads,
        },
    }
    url = args.server.rstrip("/") + "/session"
    try:
        response = httpx.post(url, json=payload, timeout=600.0)
    except httpx.HTTPError as exc:
        print("relcoh: server unreachable: %s" % exc, file=sys.stderr)
        return 1
    if response.status_code == 400:
        detail = response.json().get("detail", {})
        print("relcoh: %s" % detail.get("message", "parse error"),
              file=sys.stderr)
        return 1
    if response.status_code != 200:
        print("relcoh: server error %d: %s"
              % (response.status_code, response.text), file=sys.stderr)
        return 2
    body = response.json()
    return _emit(body["reports"], body["summary"], body["exit_code"])


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.mode == "serve":
        import uvicorn

        from .service import app
        uvicorn.run(app, host=args.host, port=args.port)
        return 0
    if args.server:
        return run_remote(args)
    return run_local(args)


if __name__ == "__main__":
    sys.exit(main())

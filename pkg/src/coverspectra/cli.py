"""Command-line entry point.

Subcommands: gassmann, isometry, homwide, graph, table1, selftest.  An
optional verb ("check", "test", "bench") may precede the file arguments, so
`gassmann check pair.grp` and `gassmann pair.grp` are the same command.

Machine-readable JSON goes to stdout; a short human summary goes to stderr
(suppressed with `--format json`, exclusive with `--format text`).  Exit
codes: 0 success/pass, 1 a mathematical cross-check failed, 2 malformed
input or usage error.  With `--server URL` the same request is POSTed to a
running service instead of being computed in-process.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import CoverSpectraError, ParseError
from .service import (
    run_gassmann,
    run_graph,
    run_homwide,
    run_isometry,
    run_selftest,
    run_table1,
    DEFAULT_SEED,
)

_VERBS = {"check", "test", "bench"}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    for flag, kwargs in (
        ("--format", dict(choices=["json", "text"],
                          help="json: JSON on stdout only; text: summary only")),
        ("--output", dict(metavar="PATH",
                          help="write the JSON report to PATH instead of stdout")),
        ("--server", dict(metavar="URL",
                          help="POST the request to a running service")),
        ("--seed", dict(type=int,
                        help="seed for randomized searches (fixed seed gives "
                        "byte-identical output)")),
        ("--jobs", dict(type=int, help="parallelism hint")),
    ):
        common.add_argument(flag, default=argparse.SUPPRESS, **kwargs)

    parser = argparse.ArgumentParser(
        prog="coverspectra",
        description="equivalence of covers: group-theoretic tests with exact "
        "spectral verification on graph covers",
        parents=[common],
    )
    parser.set_defaults(format=None, output=None, server=None,
                        seed=DEFAULT_SEED, jobs=1)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("gassmann", parents=[common],
                       help="weak conjugacy / conjugacy report")
    p.add_argument("args", nargs="+", metavar="[check] groupfile")

    p = sub.add_parser("isometry", parents=[common],
                       help="wreath solitary-character isometry test")
    p.add_argument("args", nargs="+", metavar="[test] groupfile")
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--pintonello", action="store_true")

    p = sub.add_parser("homwide", parents=[common],
                       help="homological wideness of a module")
    p.add_argument("args", nargs="+", metavar="[check] groupfile modulefile")
    p.add_argument("--budget", type=int, default=5**6)

    p = sub.add_parser("graph", parents=[common],
                       help="spectral bench on a voltage graph")
    p.add_argument("args", nargs="+", metavar="[bench] groupfile graphfile")
    p.add_argument("--solo", action="store_true",
                   help="raise the size cap for the four solo operators")
    p.add_argument("--wreath", action="store_true",
                   help="also realize the wreath cover and compare verdicts")
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("table1", parents=[common],
                       help="recompute the named-example table")
    p.add_argument("--diff", action="store_true")

    sub.add_parser("selftest", parents=[common],
                   help="run the built-in invariant suite")

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _positionals(raw: list[str], expected: int, usage: str) -> list[str]:
    args = list(raw)
    if args and args[0] in _VERBS:
        args = args[1:]
    if len(args) != expected:
        raise ParseError(f"expected {usage}")
    return args


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _remote(server: str, endpoint: str, payload: dict) -> dict:
    import httpx

    response = httpx.post(server.rstrip("/") + endpoint, json=payload, timeout=600.0)
    if response.status_code == 422:
        raise ParseError(response.json().get("detail", "invalid input"))
    if response.status_code != 200:
        raise AssertionError(response.json().get("detail", response.text))
    return response.json()


def _dispatch(opts) -> tuple[dict, str]:
    """Returns (json-ready report, human summary)."""
    if opts.subcommand == "gassmann":
        (path,) = _positionals(opts.args, 1, "gassmann [check] <groupfile>")
        payload = {"group_text": _read(path)}
        out = (
            _remote(opts.server, "/gassmann", payload)
            if opts.server
            else run_gassmann(**payload)
        )
        summary = (
            f"weakly conjugate: {out['weakly_conjugate']}   "
            f"conjugate: {out['conjugate']}   |G| = {out['group_order']}"
        )
        return out, summary

    if opts.subcommand == "isometry":
        (path,) = _positionals(opts.args, 1, "isometry [test] <groupfile>")
        payload = {
            "group_text": _read(path),
            "ell": opts.ell,
            "pintonello": opts.pintonello,
        }
        out = (
            _remote(opts.server, "/isometry", payload)
            if opts.server
            else run_isometry(**payload)
        )
        summary = (
            f"equivalent: {out['equivalent']}   ell = {out['ell']}   "
            f"checks = {out['checks_performed']}/{out['budget']}"
        )
        return out, summary

    if opts.subcommand == "homwide":
        gpath, mpath = _positionals(
            opts.args, 2, "homwide [check] <groupfile> <modulefile>"
        )
        payload = {
            "group_text": _read(gpath),
            "module_text": _read(mpath),
            "budget": opts.budget,
        }
        out = (
            _remote(opts.server, "/homwide", payload)
            if opts.server
            else run_homwide(**payload)
        )
        summary = f"homologically wide: {out['homologically_wide']}"
        return out, summary

    if opts.subcommand == "graph":
        gpath, xpath = _positionals(
            opts.args, 2, "graph [bench] <groupfile> <graphfile>"
        )
        payload = {
            "group_text": _read(gpath),
            "graph_text": _read(xpath),
            "solo": opts.solo,
            "wreath": opts.wreath,
            "ell": opts.ell,
            "tol": opts.tol,
        }
        out = (
            _remote(opts.server, "/graph", payload)
            if opts.server
            else run_graph(**payload)
        )
        flags = "  ".join(
            f"{name}={'pass' if value else 'FAIL'}"
            for name, value in out["identities"].items()
        )
        summary = flags + ("" if out["all_identities_hold"] else "  [FAILED]")
        if not out["all_identities_hold"]:
            raise AssertionError("a spectral identity failed: " + flags)
        return out, summary

    if opts.subcommand == "table1":
        payload = {"diff": opts.diff}
        out = (
            _remote(opts.server, "/table1", payload)
            if opts.server
            else run_table1(**payload)
        )
        lines = []
        for row in out["rows"]:
            lines.append(
                f"{row['name']:>12}: |G|={row['group_order']} |H|="
                f"{row['subgroup_order']} ell={row['ell']} dim={row['dimension']} "
                f"checks={row['checks']} {'ok' if row['matches'] else 'MISMATCH'}"
            )
        summary = "\n".join(lines)
        if not out["all_match"]:
            diff_lines = "\n".join(out["mismatches"]) or "(rerun with --diff)"
            raise AssertionError("table mismatch:\n" + diff_lines)
        return out, summary

    if opts.subcommand == "selftest":
        payload = {"seed": opts.seed}
        out = (
            _remote(opts.server, "/selftest", payload)
            if opts.server
            else run_selftest(**payload)
        )
        lines = [
            f"{name}: {'pass' if value else 'FAIL'}"
            for name, value in out["checks"].items()
        ]
        summary = "\n".join(lines)
        if not out["passed"]:
            raise AssertionError("selftest failures:\n" + summary)
        return out, summary

    raise ParseError(f"unknown subcommand {opts.subcommand!r}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        opts = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if opts.subcommand == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=opts.host, port=opts.port)
        return 0
    try:
        out, summary = _dispatch(opts)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"mathematical check failed: {exc}", file=sys.stderr)
        return 1
    except CoverSpectraError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(out, indent=2, sort_keys=True, default=_json_default)
    if opts.output:
        with open(opts.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if opts.format == "text":
        print(summary)
    else:
        if opts.output is None:
            print(text)
        if opts.format != "json":
            print(summary, file=sys.stderr)
    return 0


def _json_default(value):
    if isinstance(value, (set, frozenset, tuple)):
        return sorted(value) if isinstance(value, (set, frozenset)) else list(value)
    if hasattr(value, "to_json"):
        return value.to_json()
    if hasattr(value, "images"):
        return str(value)
    raise TypeError(f"not JSON-serializable: {type(value)!r}")


if __name__ == "__main__":
    sys.exit(main())

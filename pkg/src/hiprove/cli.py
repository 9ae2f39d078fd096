"""Command-line entry point.

Commands: run, flatten, pack, export, check.  Data goes to stdout (or a
file via -o), diagnostics to stderr.  Errors print one machine-parseable
line ``ERROR <category>: <detail> at <pos>`` and exit 1; an incomplete
proof exits 2.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import refactor, script, session
from .errors import HiproveError, IncompleteProofError
from .hiproof import decode_json, to_json, truncate, well_formed
from .kernel import hiproof_of

DEFAULT_TAU = 1000


def _detect_format(path: str, override: str | None) -> str:
    if override:
        return override
    if path.endswith(".pk"):
        return "packaged"
    if path.endswith(".fl"):
        return "flat"
    raise HiproveError(f"cannot tell format of {path!r}; use --format")


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_output(data: str | bytes, out: str | None) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(out, "wb") as fh:
            fh.write(data)


def _execute(path: str, fmt: str | None) -> session.Session:
    fmt = _detect_format(path, fmt)
    text = _read(path)
    parsed = script.parse_script(text, fmt)
    if isinstance(parsed, script.PackagedScript):
        s = session.set_goal(parsed.goal)
        s.apply(script.interpret(parsed.tactic))
        return s
    return session.run_flat(parsed)


def _cmd_run(args) -> int:
    s = _execute(args.file, args.format)
    if s.finished is not None:
        print(s.finished)
        return 0
    print(s.state_text())
    return 2


def _cmd_flatten(args) -> int:
    parsed = script.parse_packaged(_read(args.file))
    flat = refactor.flatten(parsed)
    _write_output(script.print_flat(flat), args.output)
    return 0


def _cmd_pack(args) -> int:
    parsed = script.parse_flat(_read(args.file))
    packaged = refactor.pack(parsed)
    _write_output(script.print_packaged(packaged), args.output)
    return 0


def _cmd_export(args) -> int:
    s = _execute(args.file, args.format)
    if args.mode == "kernel":
        if s.finished is None:
            raise IncompleteProofError([xg.goal for xg in s.pending])
        proof = hiproof_of(s.finished)
    else:
        proof = refactor.gtree_to_hiproof(s.tree)
    tau = args.tau if args.tau is not None else \
        int(os.environ.get("HIPROVE_TAU", DEFAULT_TAU))
    proof = truncate(proof, tau)
    _write_output(to_json(proof), args.output)
    return 0


def _cmd_check(args) -> int:
    with open(args.file, "rb") as fh:
        data = fh.read()
    report = well_formed(decode_json(data))
    print(report)
    return 0 if report else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hiprove",
        description="Run, refactor and export hiproof-recorded tactic proofs.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a proof script")
    run.add_argument("file")
    run.add_argument("--format", choices=["flat", "packaged"])
    run.set_defaults(fn=_cmd_run)

    flat = sub.add_parser("flatten", help="rewrite a packaged proof as steps")
    flat.add_argument("file")
    flat.add_argument("-o", "--output")
    flat.set_defaults(fn=_cmd_flatten)

    pk = sub.add_parser("pack", help="rewrite a flat script as one tactic")
    pk.add_argument("file")
    pk.add_argument("-o", "--output")
    pk.set_defaults(fn=_cmd_pack)

    export = sub.add_parser("export", help="run a script and emit hiproof JSON")
    export.add_argument("file")
    export.add_argument("--format", choices=["flat", "packaged"])
    export.add_argument("--mode", choices=["tactic", "kernel"], default="tactic")
    export.add_argument("--tau", type=int)
    export.add_argument("-o", "--output")
    export.set_defaults(fn=_cmd_export)

    check = sub.add_parser("check", help="well-formedness report for a JSON proof")
    check.add_argument("file")
    check.set_defaults(fn=_cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except IncompleteProofError as e:
        print(f"ERROR {e.category}: {e.message} at -", file=sys.stderr)
        return 2
    except HiproveError as e:
        pos = str(e.position) if e.position is not None else "-"
        print(f"ERROR {e.category}: {e.message} at {pos}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"ERROR io: {e} at -", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Concrete syntax of whole proof scripts, and script interpretation.

Flat scripts are interactive transcripts:

    g "<term>";;
    e (<tacexpr>);;
    (* *** Subgoal <n>(.<n>)* *** *)    -- before branch-opening steps

Packaged scripts are single-tactic proofs:

    let <ident> = prove("<term>", <tacexpr>);;
    prove("<term>", <tacexpr>);;

Statements end with ';;'.  Comments other than subgoal markers are
skipped and not preserved.  Double quotes delimit embedded terms.

`interpret` resolves a script expression to a runnable xtactic against a
wrapper registry; THEN, THENL, REPEAT, ORELSE and LABEL map onto the
recorder's tacticals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import InterpretError, Position, ScriptSyntaxError
from .recorder import (
    DEFAULT_REGISTRY, Registry, XTactic, hilabel_tac, orelse_, repeat_, then_, thenl_,
)
from .syntax import (
    App, ListExpr, Name, ScriptExpr, Str, Term, TermArg, _Lexer, _parse_chain,
    parse_term, print_tactic_expr, print_term,
)

SubgoalNumber = tuple[int, ...]


def format_subgoal_number(n: SubgoalNumber) -> str:
    return ".".join(str(i) for i in n)


_SUBGOAL_COMMENT = re.compile(r"\(\* \*\*\* Subgoal (\d+(?:\.\d+)*) \*\*\* \*\)\Z")


@dataclass(frozen=True)
class FlatStep:
    expr: ScriptExpr
    comment: SubgoalNumber | None = None
    line: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class FlatScript:
    goal: Term
    steps: tuple[FlatStep, ...]


@dataclass(frozen=True)
class PackagedScript:
    goal: Term
    tactic: ScriptExpr
    name: str | None = None


# ---------------------------------------------------------------------------
# Parsing


def _comment_to_number(text: str) -> SubgoalNumber | None:
    m = _SUBGOAL_COMMENT.match(text)
    if m is None:
        return None
    return tuple(int(p) for p in m.group(1).split("."))


def parse_flat(text: str) -> FlatScript:
    lx = _Lexer(text, keep_comments=True)
    kind, value, off = _skip_comments(lx)
    if kind != "ident" or value != "g":
        lx.fail("flat script must start with g \"<term>\";;", off)
    kind, value, off = lx.next()
    if kind != "string":
        lx.fail("expected a quoted goal term", off)
    goal = parse_term(_unquote(value))
    lx.expect("semisemi")
    steps: list[FlatStep] = []
    pending_comment: SubgoalNumber | None = None
    while True:
        kind, value, off = lx.peek()
        if kind == "eof":
            break
        if kind == "comment":
            lx.next()
            number = _comment_to_number(value)
            if number is not None:
                pending_comment = number
            continue
        if kind != "ident" or value != "e":
            lx.fail("expected an e (<tactic>);; step", off)
        line = Position.from_text(text, off).line
        lx.next()
        lx.expect("punct", "(")
        expr = _parse_chain(lx)
        lx.expect("punct", ")")
        lx.expect("semisemi")
        steps.append(FlatStep(expr, pending_comment, line))
        pending_comment = None
    return FlatScript(goal, tuple(steps))


def _skip_comments(lx: _Lexer):
    while lx.peek()[0] == "comment":
        lx.next()
    return lx.next()


def _unquote(raw: str) -> str:
    return raw[1:-1]


def parse_packaged(text: str) -> PackagedScript:
    lx = _Lexer(text, keep_comments=True)
    kind, value, off = _skip_comments(lx)
    name = None
    if kind == "ident" and value == "let":
        kind, value, off = lx.next()
        if kind not in ("ident", "name"):
            lx.fail("expected a binding name after let", off)
        name = value
        lx.expect("punct", "=")
        kind, value, off = lx.next()
    if kind != "ident" or value != "prove":
        lx.fail("expected prove(\"<term>\", <tactic>)", off)
    lx.expect("punct", "(")
    kind, value, off = lx.next()
    if kind != "string":
        lx.fail("expected a quoted goal term", off)
    goal = parse_term(_unquote(value))
    lx.expect("punct", ",")
    tactic = _parse_chain(lx)
    lx.expect("punct", ")")
    lx.expect("semisemi")
    while lx.peek()[0] == "comment":
        lx.next()
    kind, _, off = lx.peek()
    if kind != "eof":
        lx.fail("trailing input after packaged proof", off)
    return PackagedScript(goal, tactic, name)


def parse_script(text: str, fmt: str) -> FlatScript | PackagedScript:
    if fmt == "flat":
        return parse_flat(text)
    if fmt == "packaged":
        return parse_packaged(text)
    raise ValueError(f"unknown script format {fmt!r}")


# ---------------------------------------------------------------------------
# Printing.  Canonical layout: one tactic atom per line in flat output;
# packaged output breaks before THEN/THENL at column 72 with a 2-space
# continuation indent.

_WRAP_COLUMN = 72


def print_flat(script: FlatScript) -> str:
    lines = [f'g "{print_term(script.goal)}";;']
    for step in script.steps:
        if step.comment is not None:
            lines.append(f"(* *** Subgoal {format_subgoal_number(step.comment)} *** *)")
        lines.append(f"e ({print_tactic_expr(step.expr)});;")
    return "\n".join(lines) + "\n"


def _chain_segments(e: ScriptExpr) -> list[str]:
    """Split the top-level THEN/THENL chain into printable segments."""
    if isinstance(e, App) and isinstance(e.head, Name) and e.head.binding in ("THEN", "THENL"):
        left, right = e.args
        segments = _chain_segments(left)
        op = e.head.binding
        if op == "THENL":
            rendered = "[" + "; ".join(print_tactic_expr(i) for i in right.items) + "]" \
                if isinstance(right, ListExpr) else print_tactic_expr(right)
        else:
            rendered = print_tactic_expr(right) if not _is_chain(right) \
                else "(" + print_tactic_expr(right) + ")"
        segments.append(f"{op} {rendered}")
        return segments
    return [print_tactic_expr(e)]


def _is_chain(e: ScriptExpr) -> bool:
    return isinstance(e, App) and isinstance(e.head, Name) \
        and e.head.binding in ("THEN", "THENL")


def print_packaged(script: PackagedScript) -> str:
    head = f'let {script.name} = prove' if script.name else "prove"
    opening = f'{head}("{print_term(script.goal)}",'
    segments = _chain_segments(script.tactic)
    lines = [opening]
    current = "  " + segments[0]
    for seg in segments[1:]:
        if len(current) + 1 + len(seg) > _WRAP_COLUMN:
            lines.append(current)
            current = "  " + seg
        else:
            current += " " + seg
    lines.append(current + ");;")
    return "\n".join(lines) + "\n"


def print_script(script: FlatScript | PackagedScript) -> str:
    if isinstance(script, FlatScript):
        return print_flat(script)
    return print_packaged(script)


# ---------------------------------------------------------------------------
# Interpretation

_COMBINATORS = ("THEN", "THENL", "REPEAT", "ORELSE", "LABEL")


def interpret(expr: ScriptExpr, registry: Registry | None = None) -> XTactic:
    """Resolve a script expression to an xtactic via the registry."""
    registry = DEFAULT_REGISTRY if registry is None else registry

    def bad(e: ScriptExpr, why: str):
        raise InterpretError(f"{why}: {print_tactic_expr(e)}")

    def go(e: ScriptExpr) -> XTactic:
        if isinstance(e, Name):
            if e.binding in registry.nullary:
                return registry.nullary[e.binding]
            if e.binding in registry.term_arg:
                bad(e, f"{e.binding} needs a term argument")
            if e.binding in _COMBINATORS:
                bad(e, f"{e.binding} needs operands")
            bad(e, "unknown tactic")
        if isinstance(e, App) and isinstance(e.head, Name):
            name, args = e.head.binding, e.args
            if name == "THEN":
                if len(args) != 2:
                    bad(e, "THEN takes two tactics")
                return then_(go(args[0]), go(args[1]))
            if name == "THENL":
                if len(args) != 2 or not isinstance(args[1], ListExpr):
                    bad(e, "THENL takes a tactic and a bracketed list")
                return thenl_(go(args[0]), [go(i) for i in args[1].items])
            if name == "REPEAT":
                if len(args) != 1:
                    bad(e, "REPEAT takes one tactic")
                return repeat_(go(args[0]))
            if name == "ORELSE":
                if len(args) != 2:
                    bad(e, "ORELSE takes two tactics")
                return orelse_(go(args[0]), go(args[1]))
            if name == "LABEL":
                if len(args) != 2 or not isinstance(args[0], Str):
                    bad(e, 'LABEL takes a quoted label and a tactic')
                return hilabel_tac(args[0].text, go(args[1]))
            if name in registry.term_arg:
                if len(args) != 1 or not isinstance(args[0], TermArg):
                    bad(e, f"{name} takes exactly one term argument")
                return registry.term_arg[name](args[0].term)
            if name in registry.nullary:
                bad(e, f"{name} takes no arguments")
            bad(e, "unknown tactic")
        bad(e, "not a tactic expression")

    return go(expr)

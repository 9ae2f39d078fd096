"""Exception hierarchy shared by all modules.

Every error carries a ``category`` (a short machine-readable word used by
the CLI's single-line error format) and an optional source ``position``.
"""

from __future__ import annotations


class HiproveError(Exception):
    category = "error"

    def __init__(self, message: str, position: "Position | None" = None):
        super().__init__(message)
        self.message = message
        self.position = position


class Position:
    """Offset (and, when known, line/column) into a source text."""

    __slots__ = ("offset", "line", "column")

    def __init__(self, offset: int, line: int | None = None, column: int | None = None):
        self.offset = offset
        self.line = line
        self.column = column

    @classmethod
    def from_text(cls, text: str, offset: int) -> "Position":
        line = text.count("\n", 0, offset) + 1
        column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        return cls(offset, line, column)

    def __str__(self) -> str:
        if self.line is not None:
            return f"{self.line}:{self.column}"
        return f"offset {self.offset}"

    def __repr__(self) -> str:
        return f"Position({self.offset}, {self.line}, {self.column})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Position) and self.offset == other.offset


class ScriptSyntaxError(HiproveError):
    """Raised by any of the parsers; position always set."""

    category = "syntax"

    def __init__(self, message: str, position: Position):
        super().__init__(message, position)

    @property
    def offset(self) -> int:
        return self.position.offset


class RuleError(HiproveError):
    """A kernel primitive was applied outside its precondition."""

    category = "rule"

    def __init__(self, rule: str, message: str):
        super().__init__(f"{rule}: {message}")
        self.rule = rule


class MalformedProofError(HiproveError):
    """A hiproof violates well-formedness; carries the offending report."""

    category = "malformed"

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


class TacticFailure(HiproveError):
    """A tactic did not apply; names the tactic and the goal it refused."""

    category = "tactic"

    def __init__(self, tactic: str, message: str):
        super().__init__(f"{tactic}: {message}")
        self.tactic = tactic


class RecordingError(HiproveError):
    category = "recording"


class SessionError(HiproveError):
    category = "session"


class IncompleteProofError(HiproveError):
    """A proof finished executing with subgoals still pending."""

    category = "incomplete"

    def __init__(self, pending):
        goals = "; ".join(str(g) for g in pending)
        super().__init__(f"{len(pending)} unsolved goal(s): {goals}")
        self.pending = list(pending)


class InterpretError(HiproveError):
    """A script expression does not resolve against the tactic registry."""

    category = "interpret"

"""The interactive subgoal package.

A session keeps a stack of (pending xgoals, justification, tree snapshot)
entries so interactive steps can be undone exactly.  `apply` plays a
tactic on the first pending subgoal, `back` pops one step, and `prove`
runs a whole packaged tactic non-interactively.

A session is single-threaded; distinct sessions are independent.
"""

from __future__ import annotations

from typing import Callable, Sequence as Seq

from .errors import IncompleteProofError, RecordingError, SessionError
from .kernel import Thm
from .recorder import RecordingContext, Registry, XGoal, XTactic
from .script import FlatScript, ScriptExpr, interpret
from .syntax import Goal, Term

_Just = Callable[[Seq[Thm]], Thm]


class Session:
    """One proof attempt: goal stack plus recording context in lockstep."""

    def __init__(self, goal: Term):
        self.goal = goal
        self.tree = RecordingContext()
        root = self.tree.fresh_root(Goal((), goal))
        self._stack: list[tuple[tuple[XGoal, ...], _Just, dict, Thm | None]] = [
            ((root,), lambda ths: ths[0], self.tree.snapshot(), None)
        ]

    # -- inspection ---------------------------------------------------------

    @property
    def pending(self) -> tuple[XGoal, ...]:
        return self._stack[-1][0]

    @property
    def finished(self) -> Thm | None:
        return self._stack[-1][3]

    def top_thm(self) -> Thm:
        thm = self.finished
        if thm is None:
            raise SessionError("proof is not complete")
        return thm

    def state_text(self) -> str:
        """Plain textual proof state (the `p` command)."""
        if self.finished is not None:
            return f"Proof complete: {self.finished}"
        lines = [f"{len(self.pending)} subgoal(s):"]
        lines += [f"  {i}. {xg.goal}" for i, xg in enumerate(self.pending, 1)]
        return "\n".join(lines)

    # -- commands -----------------------------------------------------------

    def apply(self, tactic: XTactic) -> "Session":
        """The `e` command: run the tactic on the first pending subgoal."""
        goals, justification, _, _ = self._stack[-1]
        if not goals:
            raise SessionError("no pending subgoals")
        state = tactic(goals[0])
        new_goals = tuple(state.xsubgoals) + goals[1:]
        k = len(state.xsubgoals)

        def new_just(ths: Seq[Thm], _inner=state.justification,
                     _outer=justification, _k=k) -> Thm:
            return _outer([_inner(list(ths[:_k]))] + list(ths[_k:]))

        finished = None
        if not new_goals:
            finished = new_just([])
            if finished.conclusion != self.goal or finished.assumptions != ():
                raise RecordingError(
                    f"justification produced {finished}, not the root goal")
        self._stack.append((new_goals, new_just, self.tree.snapshot(), finished))
        return self

    def back(self) -> "Session":
        """The `b` command: undo one step; ids are not reused."""
        if len(self._stack) < 2:
            raise SessionError("nothing to undo")
        self._stack.pop()
        self.tree.restore(self._stack[-1][2])
        return self


def set_goal(t: Term) -> Session:
    """The `g` command: start a fresh proof attempt for one goal."""
    return Session(t)


def prove(t: Term, expr: ScriptExpr, registry: Registry | None = None) -> tuple[Thm, RecordingContext]:
    """Prove the goal with a single packaged tactic expression."""
    session = set_goal(t)
    session.apply(interpret(expr, registry))
    if session.finished is None:
        raise IncompleteProofError([xg.goal for xg in session.pending])
    return session.finished, session.tree


def run_flat(script: FlatScript, registry: Registry | None = None) -> Session:
    """Replay a flat script step by step; may leave goals pending."""
    session = set_goal(script.goal)
    for step in script.steps:
        if session.finished is not None:
            where = f"line {step.line}" if step.line is not None else "a step"
            raise SessionError(f"script continues past QED at {where}")
        session.apply(interpret(step.expr, registry))
    return session

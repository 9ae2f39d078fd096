"""Plain goal-directed tactics over the toy logic.

A tactic maps a goal to a list of subgoals plus a justification function
that rebuilds a theorem of the goal from theorems of the subgoals.  The
`meta` slot of a goal state is an inert placeholder and never inspected.

All tactics are deterministic pure functions; failure is always signalled
with TacticFailure, never a silently wrong proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence as Seq

from . import kernel
from .errors import TacticFailure
from .kernel import Thm
from .syntax import Conj, Disj, Goal, Imp, Term, Truth, print_goal, print_term

Justification = Callable[[Seq[Thm]], Thm]


@dataclass(frozen=True)
class GoalState:
    subgoals: tuple[Goal, ...]
    justification: Justification
    meta: None = field(default=None)


Tactic = Callable[[Goal], GoalState]


def _fail(name: str, goal: Goal, why: str):
    raise TacticFailure(name, f"{why} (goal: {print_goal(goal)})")


def _replace_assumption(asms: tuple[Term, ...], old: Term,
                        new: Seq[Term]) -> tuple[Term, ...]:
    # Insert replacements at the removed assumption's position, then drop
    # later duplicates so the sequence stays duplicate-free.
    out: list[Term] = []
    for a in asms:
        for item in (new if a == old else [a]):
            if item not in out:
                out.append(item)
    return tuple(out)


def _ensure_assumed(t: Term, th: Thm) -> Thm:
    # Add t to the theorem's assumptions when it is not already there.
    if t in th.assumptions:
        return th
    return kernel.mp(kernel.disch(t, th), kernel.assume(t))


def conj_tac(goal: Goal) -> GoalState:
    """A ?- l /\\ r   becomes   A ?- l  and  A ?- r."""
    c = goal.conclusion
    if not isinstance(c, Conj):
        _fail("CONJ_TAC", goal, "conclusion is not a conjunction")
    subgoals = (Goal(goal.assumptions, c.left), Goal(goal.assumptions, c.right))

    def justify(ths: Seq[Thm]) -> Thm:
        a, b = ths
        return kernel.conj(a, b)

    return GoalState(subgoals, justify)


def disch_tac(goal: Goal) -> GoalState:
    """A ?- x ==> y   becomes   A, x ?- y."""
    c = goal.conclusion
    if not isinstance(c, Imp):
        _fail("DISCH_TAC", goal, "conclusion is not an implication")
    asms = goal.assumptions if c.antecedent in goal.assumptions \
        else goal.assumptions + (c.antecedent,)
    subgoal = Goal(asms, c.consequent)

    def justify(ths: Seq[Thm]) -> Thm:
        return kernel.disch(c.antecedent, ths[0])

    return GoalState((subgoal,), justify)


def truth_tac(goal: Goal) -> GoalState:
    """Closes A ?- T."""
    if not isinstance(goal.conclusion, Truth):
        _fail("TRUTH_TAC", goal, "conclusion is not T")
    return GoalState((), lambda ths: kernel.truth())


def assumption_tac(goal: Goal) -> GoalState:
    """Closes a goal whose conclusion is among its assumptions."""
    if goal.conclusion not in goal.assumptions:
        _fail("ASSUMPTION_TAC", goal, "conclusion is not an assumption")
    return GoalState((), lambda ths: kernel.assume(goal.conclusion))


def conj_assum_tac(t: Term) -> Tactic:
    """Split the conjunctive assumption t into its two conjuncts."""

    def tactic(goal: Goal) -> GoalState:
        if not isinstance(t, Conj):
            _fail("CONJ_ASSUM_TAC", goal, f"{print_term(t)} is not a conjunction")
        if t not in goal.assumptions:
            _fail("CONJ_ASSUM_TAC", goal, f"{print_term(t)} is not an assumption")
        l, r = t.left, t.right
        subgoal = Goal(_replace_assumption(goal.assumptions, t, (l, r)), goal.conclusion)

        def justify(ths: Seq[Thm]) -> Thm:
            step = kernel.disch(l, kernel.disch(r, ths[0]))
            pair = kernel.assume(t)
            return kernel.mp(kernel.mp(step, kernel.conjunct1(pair)),
                             kernel.conjunct2(pair))

        return GoalState((subgoal,), justify)

    return tactic


def disj_cases_tac(t: Term) -> Tactic:
    """Case-split on the disjunctive assumption t."""

    def tactic(goal: Goal) -> GoalState:
        if not isinstance(t, Disj):
            _fail("DISJ_CASES_TAC", goal, f"{print_term(t)} is not a disjunction")
        if t not in goal.assumptions:
            _fail("DISJ_CASES_TAC", goal, f"{print_term(t)} is not an assumption")
        l, r = t.left, t.right
        subgoals = (Goal(_replace_assumption(goal.assumptions, t, (l,)), goal.conclusion),
                    Goal(_replace_assumption(goal.assumptions, t, (r,)), goal.conclusion))

        def justify(ths: Seq[Thm]) -> Thm:
            return kernel.disj_cases(kernel.assume(t),
                                     _ensure_assumed(l, ths[0]),
                                     _ensure_assumed(r, ths[1]))

        return GoalState(subgoals, justify)

    return tactic


def disj_cases3_tac(t: Term) -> Tactic:
    """Three-way case split on the assumption t = a \\/ (b \\/ c)."""

    def tactic(goal: Goal) -> GoalState:
        if not (isinstance(t, Disj) and isinstance(t.right, Disj)):
            _fail("DISJ_CASES3_TAC", goal,
                  f"{print_term(t)} is not a three-way disjunction")
        if t not in goal.assumptions:
            _fail("DISJ_CASES3_TAC", goal, f"{print_term(t)} is not an assumption")
        a, rest = t.left, t.right
        b, c = rest.left, rest.right
        subgoals = tuple(
            Goal(_replace_assumption(goal.assumptions, t, (case,)), goal.conclusion)
            for case in (a, b, c))

        def justify(ths: Seq[Thm]) -> Thm:
            inner = kernel.disj_cases(kernel.assume(rest),
                                      _ensure_assumed(b, ths[1]),
                                      _ensure_assumed(c, ths[2]))
            return kernel.disj_cases(kernel.assume(t),
                                     _ensure_assumed(a, ths[0]),
                                     inner)

        return GoalState(subgoals, justify)

    return tactic

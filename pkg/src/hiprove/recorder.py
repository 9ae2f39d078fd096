"""Tactic recording: goal trees, promoted tactics and tacticals.

A recording context holds a mutable goal tree whose nodes remember which
script expression was applied to which goal.  Goals are promoted to
xgoals carrying a unique id that resolves to a tree node; tactics are
promoted to xtactics by the wrapper functions below, which run the plain
tactic and then extend the tree.

Tacticals record only their constituent atoms: THEN/THENL/REPEAT/ORELSE
leave no node of their own, so the tree reflects the parts of the proof
that actually ran.  A compound application is atomic with respect to the
tree; on failure every partial record is rolled back (ids, however, are
never reused).  Explicit hierarchy comes from `hilabel_tac`, which marks
the subtree of steps a tactic produced as belonging to a labelled box.

One recording context serves one proof attempt at a time; distinct
contexts are independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence as Seq

from .errors import RecordingError, TacticFailure
from .kernel import Thm
from .syntax import App, Goal, Name, ScriptExpr, Term, TermArg
from .tactics import GoalState, Justification, Tactic

GoalId = int


class GNode:
    """One goal in the tree; Active until a step is recorded on it."""

    __slots__ = ("id", "goal", "expr", "children", "marks")

    def __init__(self, node_id: GoalId, goal: Goal):
        self.id = node_id
        self.goal = goal
        self.expr: ScriptExpr | None = None
        self.children: list[GoalId] = []
        # Box marks from hilabel_tac, innermost first: (label text, ids of
        # the subgoals that were the box's outputs when it closed).
        self.marks: list[tuple[str, tuple[GoalId, ...]]] = []

    @property
    def applied(self) -> bool:
        return self.expr is not None


Snapshot = dict


class RecordingContext:
    """Goal tree, node index and id counter for one proof attempt."""

    def __init__(self):
        self.nodes: dict[GoalId, GNode] = {}
        self._next_id = 1
        self.root_id: GoalId | None = None

    def _allocate(self, goal: Goal) -> GNode:
        node = GNode(self._next_id, goal)
        self._next_id += 1
        self.nodes[node.id] = node
        return node

    def fresh_root(self, goal: Goal) -> "XGoal":
        if self.root_id is not None:
            raise RecordingError("context already has a root goal")
        node = self._allocate(goal)
        self.root_id = node.id
        return XGoal(goal, node.id, self)

    def node(self, node_id: GoalId) -> GNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise RecordingError(f"unknown goal id {node_id}") from None

    def extend_gtree(self, node_id: GoalId, expr: ScriptExpr,
                     subgoals: Seq[Goal]) -> list["XGoal"]:
        """Record `expr` at the node and grow one Active child per subgoal."""
        node = self.node(node_id)
        if node.applied:
            raise RecordingError(f"goal id {node_id} already has a recorded step")
        node.expr = expr
        xgoals = []
        for g in subgoals:
            child = self._allocate(g)
            node.children.append(child.id)
            xgoals.append(XGoal(g, child.id, self))
        return xgoals

    def add_mark(self, node_id: GoalId, label: str, boundary: Seq[GoalId]) -> None:
        self.node(node_id).marks.append((label, tuple(boundary)))

    def active_ids(self) -> list[GoalId]:
        return [n.id for n in self.nodes.values() if not n.applied and self._is_leaf(n)]

    def _is_leaf(self, node: GNode) -> bool:
        return not node.children

    def snapshot(self) -> Snapshot:
        return {
            "root": self.root_id,
            "nodes": {
                nid: (n.goal, n.expr, tuple(n.children), tuple(n.marks))
                for nid, n in self.nodes.items()
            },
        }

    def restore(self, snap: Snapshot) -> None:
        # The id counter is deliberately left alone: ids are never reused
        # within a proof attempt, even across undo or rollback.
        self.root_id = snap["root"]
        self.nodes = {}
        for nid, (goal, expr, children, marks) in snap["nodes"].items():
            node = GNode(nid, goal)
            node.expr = expr
            node.children = list(children)
            node.marks = list(marks)
            self.nodes[nid] = node


@dataclass(frozen=True)
class XGoal:
    """A goal paired with its id and the tree the id resolves into."""

    goal: Goal
    id: GoalId
    tree: RecordingContext

    def __str__(self) -> str:
        return f"[{self.id}] {self.goal}"


@dataclass(frozen=True)
class XGoalState:
    xsubgoals: tuple[XGoal, ...]
    justification: Justification
    meta: None = field(default=None)


XTactic = Callable[[XGoal], XGoalState]


# ---------------------------------------------------------------------------
# Wrapper functions


class Registry:
    """Dispatch table mapping script binding names to promoted tactics."""

    def __init__(self):
        self.nullary: dict[str, XTactic] = {}
        self.term_arg: dict[str, Callable[[Term], XTactic]] = {}

    def __contains__(self, name: str) -> bool:
        return name in self.nullary or name in self.term_arg


DEFAULT_REGISTRY = Registry()


def tactic_wrap(name: str, tac: Tactic, registry: Registry | None = None) -> XTactic:
    """Promote a plain tactic; records `name` as the applied expression."""
    registry = DEFAULT_REGISTRY if registry is None else registry

    def xtactic(xg: XGoal) -> XGoalState:
        state = tac(xg.goal)
        xgs = xg.tree.extend_gtree(xg.id, Name(name), state.subgoals)
        return XGoalState(tuple(xgs), state.justification)

    registry.nullary[name] = xtactic
    return xtactic


def term_tactic_wrap(name: str, tac: Callable[[Term], Tactic], arg: Term,
                     registry: Registry | None = None) -> XTactic:
    """Promote a term-argument tactic applied to `arg`."""
    registry = DEFAULT_REGISTRY if registry is None else registry
    registry.term_arg[name] = lambda t: term_tactic_wrap(name, tac, t, registry)
    plain = tac(arg)
    expr = App(Name(name), (TermArg(arg),))

    def xtactic(xg: XGoal) -> XGoalState:
        state = plain(xg.goal)
        xgs = xg.tree.extend_gtree(xg.id, expr, state.subgoals)
        return XGoalState(tuple(xgs), state.justification)

    return xtactic


# ---------------------------------------------------------------------------
# Tacticals


def _guarded(tree: RecordingContext, run):
    """Run `run()`; on any failure restore the tree and re-raise."""
    snap = tree.snapshot()
    try:
        return run()
    except Exception:
        tree.restore(snap)
        raise


def _compose(outer: Justification, states: Seq[XGoalState]) -> tuple[tuple[XGoal, ...], Justification]:
    subgoals = tuple(x for st in states for x in st.xsubgoals)
    sizes = [len(st.xsubgoals) for st in states]

    def justification(ths: Seq[Thm]) -> Thm:
        inner = []
        i = 0
        for st, k in zip(states, sizes):
            inner.append(st.justification(list(ths[i:i + k])))
            i += k
        return outer(inner)

    return subgoals, justification


def then_(a: XTactic, b: XTactic) -> XTactic:
    """Apply a, then b to every resulting subgoal in order."""

    def xtactic(xg: XGoal) -> XGoalState:
        def run():
            st = a(xg)
            states = [b(x) for x in st.xsubgoals]
            subgoals, justification = _compose(st.justification, states)
            return XGoalState(subgoals, justification)

        return _guarded(xg.tree, run)

    return xtactic


def thenl_(a: XTactic, bs: Seq[XTactic]) -> XTactic:
    """Apply a, then bs[i] to its i-th subgoal; arities must match."""
    bs = list(bs)

    def xtactic(xg: XGoal) -> XGoalState:
        def run():
            st = a(xg)
            if len(st.xsubgoals) != len(bs):
                raise TacticFailure(
                    "THENL", f"{len(bs)} tactics for {len(st.xsubgoals)} subgoals")
            states = [b(x) for b, x in zip(bs, st.xsubgoals)]
            subgoals, justification = _compose(st.justification, states)
            return XGoalState(subgoals, justification)

        return _guarded(xg.tree, run)

    return xtactic


def repeat_(a: XTactic) -> XTactic:
    """Apply a until it fails, recursively on all produced subgoals.

    Failure on the initial goal yields the identity step with no record.
    """

    def xtactic(xg: XGoal) -> XGoalState:
        def run():
            try:
                st = a(xg)
            except TacticFailure:
                return XGoalState((xg,), lambda ths: ths[0])
            states = [xtactic(x) for x in st.xsubgoals]
            subgoals, justification = _compose(st.justification, states)
            return XGoalState(subgoals, justification)

        return _guarded(xg.tree, run)

    return xtactic


def orelse_(a: XTactic, b: XTactic) -> XTactic:
    """Apply a; on failure apply b.  Only the successful branch is recorded."""

    def xtactic(xg: XGoal) -> XGoalState:
        try:
            return a(xg)
        except TacticFailure as first:
            try:
                return b(xg)
            except TacticFailure as second:
                raise TacticFailure(
                    "ORELSE", f"both branches failed: {first.message}; {second.message}"
                ) from None

    return xtactic


def hilabel_tac(label: str, t: XTactic) -> XTactic:
    """Mark the steps `t` produces as a box labelled `label`.

    The box's entry is t's input goal; its outputs are the subgoals t
    returns.  Boxes nest.  Nothing is recorded when t fails.
    """

    def xtactic(xg: XGoal) -> XGoalState:
        st = t(xg)
        xg.tree.add_mark(xg.id, label, [x.id for x in st.xsubgoals])
        return st

    return xtactic


# ---------------------------------------------------------------------------
# The standard promoted tactic set.  Promoted bindings shadow the plain
# ones, so scripts mention the same names interactive users would type.

from . import tactics as _t  # noqa: E402  (wrappers need the defs above)

CONJ_TAC = tactic_wrap("CONJ_TAC", _t.conj_tac)
DISCH_TAC = tactic_wrap("DISCH_TAC", _t.disch_tac)
TRUTH_TAC = tactic_wrap("TRUTH_TAC", _t.truth_tac)
ASSUMPTION_TAC = tactic_wrap("ASSUMPTION_TAC", _t.assumption_tac)


def CONJ_ASSUM_TAC(arg: Term) -> XTactic:
    return term_tactic_wrap("CONJ_ASSUM_TAC", _t.conj_assum_tac, arg)


def DISJ_CASES_TAC(arg: Term) -> XTactic:
    return term_tactic_wrap("DISJ_CASES_TAC", _t.disj_cases_tac, arg)


def DISJ_CASES3_TAC(arg: Term) -> XTactic:
    return term_tactic_wrap("DISJ_CASES3_TAC", _t.disj_cases3_tac, arg)


# Register the term-argument constructors up front so scripts can resolve
# them before any direct use.
for _name, _ctor in (("CONJ_ASSUM_TAC", _t.conj_assum_tac),
                     ("DISJ_CASES_TAC", _t.disj_cases_tac),
                     ("DISJ_CASES3_TAC", _t.disj_cases3_tac)):
    DEFAULT_REGISTRY.term_arg[_name] = (
        lambda t, _n=_name, _c=_ctor: term_tactic_wrap(_n, _c, t))

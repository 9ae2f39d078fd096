"""Refactoring transformations over recorded proofs.

`gtree_to_hiproof` abstracts a recorded goal tree into a hiproof, turning
each recorded step into an atomic labelled with its script expression and
each box mark into a Box.  `flatten` rewrites a packaged proof into an
interactive step sequence with subgoal comments; `pack` rebuilds a single
THEN/THENL tactic from a flat script by greedy frontier factoring.
"""

from __future__ import annotations

from typing import Iterable

from .errors import IncompleteProofError, RecordingError
from .hiproof import (
    Atomic, Box, Hiproof, IdentityLabel, Sequence, Tensor, TacticLabel, UserLabel,
    identity, normalize, variable,
)
from .kernel import fresh_variable_name
from .recorder import GNode, GoalId, RecordingContext
from .script import FlatScript, FlatStep, PackagedScript, SubgoalNumber
from .session import prove, run_flat
from .syntax import App, ListExpr, Name, ScriptExpr, print_goal


# ---------------------------------------------------------------------------
# Goal tree -> hiproof

VARIABLE = "variable"
OPEN = "open"


def gtree_to_hiproof(tree: RecordingContext, keep_active_as: str = OPEN) -> Hiproof:
    """Abstract the recorded tree into a normalized, well-formed hiproof.

    Active leaves become variable placeholders (arity 0) with
    ``keep_active_as="variable"``, or stay open outputs with ``"open"``
    (identity wires are inserted where tensor arities require them, and
    the out count then equals the number of active leaves).
    """
    if keep_active_as not in (VARIABLE, OPEN):
        raise ValueError(f"keep_active_as must be {VARIABLE!r} or {OPEN!r}")
    if tree.root_id is None:
        raise RecordingError("empty recording context")
    check_tree(tree)

    nodes = tree.nodes

    def wire(node: GNode) -> tuple[Hiproof, list[GoalId]]:
        return identity(print_goal(node.goal)), [node.id]

    def is_wire(h: Hiproof) -> bool:
        return isinstance(h, Atomic) and isinstance(h.label, IdentityLabel)

    def tr_node(nid: GoalId, stop: frozenset[GoalId]) -> tuple[Hiproof, list[GoalId]]:
        node = nodes[nid]
        if nid in stop:
            return wire(node)
        return tr_marks(node, len(node.marks) - 1, stop)

    def tr_marks(node: GNode, i: int, stop: frozenset[GoalId]) -> tuple[Hiproof, list[GoalId]]:
        if i < 0:
            if node.id in stop:
                return wire(node)
            return tr_step(node, stop)
        label, boundary = node.marks[i]
        inner, inner_outs = tr_marks(node, i - 1, stop | frozenset(boundary))
        boxed = Box(UserLabel(label), inner)
        if not inner_outs:
            return boxed, []
        tails = []
        for b in inner_outs:
            if b == node.id and b not in stop:
                tails.append(tr_step(node, stop))
            else:
                tails.append(tr_node(b, stop))
        outs = [o for _, part_outs in tails for o in part_outs]
        parts = [h for h, _ in tails]
        if all(is_wire(p) for p in parts):
            return boxed, outs
        tail = parts[0] if len(parts) == 1 else Tensor(tuple(parts))
        return Sequence((boxed, tail)), outs

    def tr_step(node: GNode, stop: frozenset[GoalId]) -> tuple[Hiproof, list[GoalId]]:
        goal = print_goal(node.goal)
        if not node.applied:
            if keep_active_as == VARIABLE:
                return variable(fresh_variable_name(), goal), []
            return wire(node)
        head = Atomic(TacticLabel(node.expr), goal, len(node.children))
        if not node.children:
            return head, []
        parts = [tr_node(c, stop) for c in node.children]
        outs = [o for _, part_outs in parts for o in part_outs]
        hs = [h for h, _ in parts]
        if all(is_wire(h) for h in hs):
            return head, outs
        tail = hs[0] if len(hs) == 1 else Tensor(tuple(hs))
        return Sequence((head, tail)), outs

    h, _ = tr_node(tree.root_id, frozenset())
    return normalize(h, keep_identities=False)


def check_tree(tree: RecordingContext) -> None:
    """Verify the tree's structural invariants (index and child links)."""
    for nid, node in tree.nodes.items():
        if node.id != nid:
            raise RecordingError(f"index key {nid} points at node {node.id}")
        if not node.applied and node.children:
            raise RecordingError(f"active node {nid} has children")
        for c in node.children:
            if c not in tree.nodes:
                raise RecordingError(f"node {nid} has unindexed child {c}")


def active_leaf_count(tree: RecordingContext) -> int:
    return sum(1 for n in tree.nodes.values() if not n.applied)


# ---------------------------------------------------------------------------
# Flattening


def flatten(p: PackagedScript, registry=None) -> FlatScript:
    """Execute the packaged proof and emit its interactive step sequence.

    Subgoal comments label every branch of a node with two or more
    children, the first included; numbering nests with branch depth.
    """
    _, tree = prove(p.goal, p.tactic, registry)
    return FlatScript(p.goal, tuple(_walk_steps(tree)))


def _walk_steps(tree: RecordingContext) -> Iterable[FlatStep]:
    nodes = tree.nodes

    def walk(nid: GoalId, comment: SubgoalNumber | None,
             prefix: SubgoalNumber) -> Iterable[FlatStep]:
        node = nodes[nid]
        if not node.applied:
            raise IncompleteProofError([node.goal])
        yield FlatStep(node.expr, comment)
        kids = node.children
        if len(kids) == 1:
            yield from walk(kids[0], None, prefix)
        else:
            for i, kid in enumerate(kids, 1):
                yield from walk(kid, prefix + (i,), prefix + (i,))

    return walk(tree.root_id, None, ())


# ---------------------------------------------------------------------------
# Packaging


def pack(f: FlatScript, registry=None) -> PackagedScript:
    """Execute the flat script and rebuild one compound tactic.

    Greedy frontier factoring: while every open branch's next step is the
    same expression it is emitted once under THEN; at the first
    divergence the branches are packed separately under THENL.
    """
    session = run_flat(f, registry)
    if session.finished is None:
        raise IncompleteProofError([xg.goal for xg in session.pending])
    tree = session.tree
    return PackagedScript(f.goal, _pack_nodes([tree.root_id], tree.nodes), None)


def _pack_nodes(frontier: list[GoalId], nodes: dict[GoalId, GNode]) -> ScriptExpr:
    acc: ScriptExpr | None = None
    while frontier:
        exprs = [nodes[nid].expr for nid in frontier]
        if all(e == exprs[0] for e in exprs):
            acc = exprs[0] if acc is None else App(Name("THEN"), (acc, exprs[0]))
            frontier = [c for nid in frontier for c in nodes[nid].children]
        else:
            branches = tuple(_pack_nodes([nid], nodes) for nid in frontier)
            return App(Name("THENL"), (acc, ListExpr(branches)))
    return acc


# ---------------------------------------------------------------------------
# Tree comparison used by the round-trip laws


def tree_shape(tree: RecordingContext) -> tuple:
    """Canonical (goal, expression, children) form, ids renamed DFS."""

    def walk(nid: GoalId) -> tuple:
        node = tree.nodes[nid]
        return (print_goal(node.goal),
                None if node.expr is None else node.expr,
                tuple(walk(c) for c in node.children))

    return walk(tree.root_id)

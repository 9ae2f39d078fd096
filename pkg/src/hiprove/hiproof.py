"""The hiproof algebra.

A hiproof is a hierarchical proof tree built from four constructors:

    Atomic(label, goal, n)   one proof step on `goal` leaving n subgoals
    Sequence([e1, ..., ek])  e1's open subgoals fed to e2, and so on
    Tensor([e1, ..., ek])    side-by-side composition
    Box(label, inner)        a labelled, collapsible sub-proof

`in_count` gives the number of goals a proof consumes, `out_count` the
number of subgoals it leaves open.  Well-formed proofs have sequences and
tensors of length >= 2, boxes whose inner proof consumes exactly one goal,
and adjacent sequence elements with matching arities.

Goals are stored in printed form so serialized proofs are self-contained;
parse the text back when structural access is needed.

All values here are immutable and all operations pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import MalformedProofError, Position, ScriptSyntaxError
from .syntax import ScriptExpr, parse_tactic_expr, print_tactic_expr

# ---------------------------------------------------------------------------
# Labels


class Label:
    __slots__ = ()


@dataclass(frozen=True)
class RuleLabel(Label):
    name: str


@dataclass(frozen=True)
class TacticLabel(Label):
    expr: ScriptExpr


@dataclass(frozen=True)
class UserLabel(Label):
    text: str


@dataclass(frozen=True)
class IdentityLabel(Label):
    pass


@dataclass(frozen=True)
class DuplicateLabel(Label):
    pass


@dataclass(frozen=True)
class VariableLabel(Label):
    name: str


IDENTITY = IdentityLabel()
DUPLICATE = DuplicateLabel()


def label_text(label: Label) -> str:
    if isinstance(label, RuleLabel):
        return label.name
    if isinstance(label, TacticLabel):
        return print_tactic_expr(label.expr)
    if isinstance(label, UserLabel):
        return label.text
    if isinstance(label, VariableLabel):
        return label.name
    return ""


# ---------------------------------------------------------------------------
# Hiproofs


class Hiproof:
    __slots__ = ()


@dataclass(frozen=True)
class Atomic(Hiproof):
    label: Label
    goal: str
    arity: int
    # Variable names a truncated box contained; empty everywhere else.
    vars: tuple[str, ...] = field(default=())


@dataclass(frozen=True)
class Sequence(Hiproof):
    items: tuple[Hiproof, ...]


@dataclass(frozen=True)
class Tensor(Hiproof):
    items: tuple[Hiproof, ...]


@dataclass(frozen=True)
class Box(Hiproof):
    label: Label
    inner: Hiproof


def sequence(items) -> Sequence:
    return Sequence(tuple(items))


def tensor(items) -> Tensor:
    return Tensor(tuple(items))


def identity(goal: str) -> Atomic:
    return Atomic(IDENTITY, goal, 1)


def duplicate(goal: str) -> Atomic:
    return Atomic(DUPLICATE, goal, 0)


def variable(name: str, goal: str) -> Atomic:
    return Atomic(VariableLabel(name), goal, 0)


def in_count(h: Hiproof) -> int:
    """Number of goals the proof consumes."""
    if isinstance(h, Atomic):
        return 1
    if isinstance(h, Sequence):
        return in_count(h.items[0]) if h.items else 0
    if isinstance(h, Tensor):
        return sum(in_count(e) for e in h.items)
    if isinstance(h, Box):
        return in_count(h.inner)
    raise TypeError(f"not a hiproof: {h!r}")


def out_count(h: Hiproof) -> int:
    """Number of subgoals the proof leaves open."""
    if isinstance(h, Atomic):
        return h.arity
    if isinstance(h, Sequence):
        return out_count(h.items[-1]) if h.items else 0
    if isinstance(h, Tensor):
        return sum(out_count(e) for e in h.items)
    if isinstance(h, Box):
        return out_count(h.inner)
    raise TypeError(f"not a hiproof: {h!r}")


def shallow_size(h: Hiproof) -> int:
    """Size with every box counted as a single node."""
    if isinstance(h, (Atomic, Box)):
        return 1
    if isinstance(h, (Sequence, Tensor)):
        return 1 + sum(shallow_size(e) for e in h.items)
    raise TypeError(f"not a hiproof: {h!r}")


# ---------------------------------------------------------------------------
# Well-formedness


@dataclass(frozen=True)
class WellFormedReport:
    """Pass, or the first violated constraint and the path to its node.

    The path addresses child positions from the root: item indices for
    sequences and tensors, 0 for a box's inner proof.
    """

    ok: bool
    path: tuple[int, ...] = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "pass"
        where = "root" + "".join(f".{i}" for i in self.path)
        return f"fail: {self.message} at {where}"


_PASS = WellFormedReport(True)

_SPECIAL_ARITY = {IdentityLabel: 1, DuplicateLabel: 0, VariableLabel: 0}


def well_formed(h: Hiproof) -> WellFormedReport:
    def check(node: Hiproof, path: tuple[int, ...]) -> WellFormedReport:
        if isinstance(node, Atomic):
            want = _SPECIAL_ARITY.get(type(node.label))
            if want is not None and node.arity != want:
                return WellFormedReport(
                    False, path,
                    f"{type(node.label).__name__} atomic must have arity {want}, got {node.arity}")
            if node.arity < 0:
                return WellFormedReport(False, path, f"negative arity {node.arity}")
            return _PASS
        if isinstance(node, (Sequence, Tensor)):
            kind = "sequence" if isinstance(node, Sequence) else "tensor"
            if len(node.items) < 2:
                what = "singleton" if len(node.items) == 1 else "empty"
                return WellFormedReport(False, path, f"{what} {kind}")
            if isinstance(node, Sequence):
                for i in range(len(node.items) - 1):
                    out_i, in_next = out_count(node.items[i]), in_count(node.items[i + 1])
                    if out_i != in_next:
                        return WellFormedReport(
                            False, path,
                            f"sequence arity mismatch: OUT={out_i} != IN={in_next} "
                            f"at position {i + 1}->{i + 2}")
            for i, item in enumerate(node.items):
                r = check(item, path + (i,))
                if not r:
                    return r
            return _PASS
        if isinstance(node, Box):
            n = in_count(node.inner)
            if n != 1:
                return WellFormedReport(False, path, f"box inner must have IN=1, got IN={n}")
            return check(node.inner, path + (0,))
        return WellFormedReport(False, path, f"not a hiproof: {node!r}")

    return check(h, ())


# ---------------------------------------------------------------------------
# Normalization


def normalize(h: Hiproof, keep_identities: bool = True) -> Hiproof:
    """Collapse singleton sequences/tensors and splice nested sequences.

    With ``keep_identities=False`` also removes identity atomics that sit
    as direct sequence items (pure pass-through wires).  Raises
    MalformedProofError when no restructuring yields a well-formed proof.
    Idempotent.
    """
    result = _norm(h, keep_identities)
    report = well_formed(result)
    if not report:
        raise MalformedProofError(report)
    return result


def _is_identity(h: Hiproof) -> bool:
    return isinstance(h, Atomic) and isinstance(h.label, IdentityLabel)


def _norm(h: Hiproof, keep: bool) -> Hiproof:
    if isinstance(h, Atomic):
        return h
    if isinstance(h, Box):
        return Box(h.label, _norm(h.inner, keep))
    if isinstance(h, Tensor):
        items = [_norm(e, keep) for e in h.items]
        if len(items) == 1:
            return items[0]
        return Tensor(tuple(items))
    if isinstance(h, Sequence):
        items: list[Hiproof] = []
        for e in h.items:
            e = _norm(e, keep)
            if isinstance(e, Sequence):
                items.extend(e.items)
            else:
                items.append(e)
        if not keep:
            kept = [e for e in items if not _is_identity(e)]
            if not kept and items:
                kept = [items[0]]
            items = kept
        if len(items) == 1:
            return items[0]
        return Sequence(tuple(items))
    raise TypeError(f"not a hiproof: {h!r}")


# ---------------------------------------------------------------------------
# Truncation


def truncate(h: Hiproof, tau: int) -> Hiproof:
    """Collapse, bottom-up, every box whose inner shallow size exceeds tau.

    A collapsed box becomes an atomic keeping the box's label, its entry
    goal, its open-subgoal count, and the variable names it contained.
    """
    if tau < 1:
        raise ValueError("tau must be a positive integer")
    report = well_formed(h)
    if not report:
        raise MalformedProofError(report)
    return _truncate(h, tau)


def _truncate(h: Hiproof, tau: int) -> Hiproof:
    if isinstance(h, Atomic):
        return h
    if isinstance(h, Sequence):
        return Sequence(tuple(_truncate(e, tau) for e in h.items))
    if isinstance(h, Tensor):
        return Tensor(tuple(_truncate(e, tau) for e in h.items))
    inner = _truncate(h.inner, tau)
    if shallow_size(inner) <= tau:
        return Box(h.label, inner)
    return Atomic(h.label, entry_goal(inner), out_count(inner), contained_vars(inner))


def entry_goal(h: Hiproof) -> str:
    """Goal of the leftmost atomic reachable through first items."""
    while not isinstance(h, Atomic):
        if isinstance(h, Box):
            h = h.inner
        elif isinstance(h, (Sequence, Tensor)) and h.items:
            h = h.items[0]
        else:
            raise MalformedProofError(WellFormedReport(False, (), "no entry goal in empty node"))
    return h.goal


def contained_vars(h: Hiproof) -> tuple[str, ...]:
    """Variable names occurring in `h`, in document order, first wins."""
    names: list[str] = []
    seen: set[str] = set()

    def walk(node: Hiproof):
        if isinstance(node, Atomic):
            found = [node.label.name] if isinstance(node.label, VariableLabel) else []
            for name in list(found) + list(node.vars):
                if name not in seen:
                    seen.add(name)
                    names.append(name)
        elif isinstance(node, Box):
            walk(node.inner)
        else:
            for item in node.items:
                walk(item)

    walk(h)
    return tuple(names)


# ---------------------------------------------------------------------------
# Serialization (schema version 1)

SCHEMA_VERSION = 1

_LABEL_KINDS = {
    RuleLabel: "rule",
    TacticLabel: "tactic",
    UserLabel: "user",
    IdentityLabel: "identity",
    DuplicateLabel: "duplicate",
    VariableLabel: "variable",
}


def _label_to_obj(label: Label) -> dict:
    return {"kind": _LABEL_KINDS[type(label)], "text": label_text(label)}


def _label_from_obj(obj, path: str) -> Label:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ScriptSyntaxError(f"bad label object at {path}", Position(0))
    kind, text = obj.get("kind"), obj.get("text", "")
    if kind == "rule":
        return RuleLabel(text)
    if kind == "tactic":
        return TacticLabel(parse_tactic_expr(text))
    if kind == "user":
        return UserLabel(text)
    if kind == "identity":
        return IDENTITY
    if kind == "duplicate":
        return DUPLICATE
    if kind == "variable":
        return VariableLabel(text)
    raise ScriptSyntaxError(f"unknown label kind {kind!r} at {path}", Position(0))


def _node_to_obj(h: Hiproof) -> dict:
    if isinstance(h, Atomic):
        return {"kind": "atomic", "label": _label_to_obj(h.label), "goal": h.goal,
                "arity": h.arity, "vars": list(h.vars)}
    if isinstance(h, Sequence):
        return {"kind": "sequence", "items": [_node_to_obj(e) for e in h.items]}
    if isinstance(h, Tensor):
        return {"kind": "tensor", "items": [_node_to_obj(e) for e in h.items]}
    return {"kind": "box", "label": _label_to_obj(h.label), "inner": _node_to_obj(h.inner)}


def _node_from_obj(obj, path: str) -> Hiproof:
    if not isinstance(obj, dict):
        raise ScriptSyntaxError(f"expected a node object at {path}", Position(0))
    kind = obj.get("kind")
    if kind == "atomic":
        goal, arity = obj.get("goal"), obj.get("arity")
        if not isinstance(goal, str) or not isinstance(arity, int) or isinstance(arity, bool):
            raise ScriptSyntaxError(f"atomic needs string goal and int arity at {path}",
                                    Position(0))
        vars_ = obj.get("vars", [])
        if not isinstance(vars_, list) or not all(isinstance(v, str) for v in vars_):
            raise ScriptSyntaxError(f"vars must be a list of strings at {path}", Position(0))
        return Atomic(_label_from_obj(obj.get("label"), path + ".label"),
                      goal, arity, tuple(vars_))
    if kind in ("sequence", "tensor"):
        items = obj.get("items")
        if not isinstance(items, list):
            raise ScriptSyntaxError(f"{kind} needs an items list at {path}", Position(0))
        parsed = tuple(_node_from_obj(e, f"{path}.items[{i}]") for i, e in enumerate(items))
        return Sequence(parsed) if kind == "sequence" else Tensor(parsed)
    if kind == "box":
        return Box(_label_from_obj(obj.get("label"), path + ".label"),
                   _node_from_obj(obj.get("inner"), path + ".inner"))
    raise ScriptSyntaxError(f"unknown node kind {kind!r} at {path}", Position(0))


def to_json(h: Hiproof) -> bytes:
    report = well_formed(h)
    if not report:
        raise MalformedProofError(report)
    doc = {"version": SCHEMA_VERSION, "root": _node_to_obj(h)}
    return json.dumps(doc, ensure_ascii=False, indent=1).encode("utf-8")


def decode_json(data: bytes) -> Hiproof:
    """Parse bytes into a hiproof without checking well-formedness."""
    try:
        text = data.decode("utf-8")
        doc = json.loads(text)
    except UnicodeDecodeError as e:
        raise ScriptSyntaxError("invalid UTF-8", Position(e.start)) from None
    except json.JSONDecodeError as e:
        raise ScriptSyntaxError(e.msg, Position(e.pos)) from None
    if not isinstance(doc, dict):
        raise ScriptSyntaxError("expected a JSON object document", Position(0))
    if doc.get("version") != SCHEMA_VERSION:
        raise ScriptSyntaxError(f"unsupported schema version {doc.get('version')!r}",
                                Position(0))
    return _node_from_obj(doc.get("root"), "root")


def from_json(data: bytes) -> Hiproof:
    h = decode_json(data)
    report = well_formed(h)
    if not report:
        raise MalformedProofError(report)
    return h

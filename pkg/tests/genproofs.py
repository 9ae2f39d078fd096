"""Random hiproof generation and brute-force arity oracles.

The oracle threads explicit wire tokens through the tree instead of
computing counts, so it cannot share a bug with the arity functions under
test.  `naive_well_formed` rechecks every constraint from scratch.
"""

import random

from hiprove.hiproof import (
    Atomic, Box, Hiproof, IdentityLabel, DuplicateLabel, RuleLabel, Sequence,
    TacticLabel, Tensor, UserLabel, VariableLabel,
)
from hiprove.syntax import Name


class WiringError(Exception):
    pass


def wire_sim(h):
    """Return (input wires, output wires) as fresh token lists."""
    if isinstance(h, Atomic):
        return [object()], [object() for _ in range(h.arity)]
    if isinstance(h, Sequence):
        if not h.items:
            raise WiringError("empty sequence")
        ins, cur = wire_sim(h.items[0])
        for e in h.items[1:]:
            nxt_in, nxt_out = wire_sim(e)
            if len(cur) != len(nxt_in):
                raise WiringError("arity break")
            cur = nxt_out
        return ins, cur
    if isinstance(h, Tensor):
        if not h.items:
            raise WiringError("empty tensor")
        ins, outs = [], []
        for e in h.items:
            i, o = wire_sim(e)
            ins += i
            outs += o
        return ins, outs
    if isinstance(h, Box):
        return wire_sim(h.inner)
    raise WiringError(f"not a hiproof: {h!r}")


def brute_in_out(h):
    ins, outs = wire_sim(h)
    return len(ins), len(outs)


def naive_well_formed(h) -> bool:
    """Independent recursive re-check of all well-formedness constraints."""
    try:
        if isinstance(h, Atomic):
            if h.arity < 0:
                return False
            if isinstance(h.label, IdentityLabel):
                return h.arity == 1
            if isinstance(h.label, (DuplicateLabel, VariableLabel)):
                return h.arity == 0
            return True
        if isinstance(h, Sequence):
            if len(h.items) < 2:
                return False
            for a, b in zip(h.items, h.items[1:]):
                if brute_in_out(a)[1] != brute_in_out(b)[0]:
                    return False
            return all(naive_well_formed(e) for e in h.items)
        if isinstance(h, Tensor):
            return len(h.items) >= 2 and all(naive_well_formed(e) for e in h.items)
        if isinstance(h, Box):
            return brute_in_out(h.inner)[0] == 1 and naive_well_formed(h.inner)
        return False
    except WiringError:
        return False


def node_count(h) -> int:
    if isinstance(h, Atomic):
        return 1
    if isinstance(h, Box):
        return 1 + node_count(h.inner)
    return 1 + sum(node_count(e) for e in h.items)


_GOALS = ["?- p", "?- q", "p ?- q", "?- T", "p, q ?- p /\\ q"]


def _label(rng: random.Random, arity: int):
    if arity == 1 and rng.random() < 0.2:
        return IdentityLabel()
    if arity == 0 and rng.random() < 0.2:
        return rng.choice([DuplicateLabel(), VariableLabel(f"v{rng.randrange(4)}")])
    return rng.choice([
        RuleLabel(f"RULE{rng.randrange(5)}"),
        UserLabel(f"step {rng.randrange(5)}"),
        TacticLabel(Name(f"TAC{rng.randrange(5)}")),
    ])


def _atomic(rng: random.Random, arity=None) -> Atomic:
    if arity is None:
        arity = rng.choice([0, 0, 1, 1, 2, 3])
    return Atomic(_label(rng, arity), rng.choice(_GOALS), arity)


def gen_well_formed(rng: random.Random, budget: int, consume: int = 1) -> Hiproof:
    """A random well-formed hiproof consuming `consume` goals."""
    if consume == 1:
        if budget <= 1:
            return _atomic(rng)
        kind = rng.choice(["atomic", "box", "sequence", "sequence"])
        if kind == "atomic":
            return _atomic(rng)
        if kind == "box":
            return Box(UserLabel(f"box {rng.randrange(5)}"),
                       gen_well_formed(rng, budget - 1, 1))
        return _gen_sequence(rng, budget, 1)
    # consume >= 2: tensor of parts, or a sequence headed by such a tensor
    if budget <= consume or rng.random() < 0.7:
        return _gen_tensor(rng, budget, consume)
    return _gen_sequence(rng, budget, consume)


def _gen_tensor(rng: random.Random, budget: int, consume: int) -> Hiproof:
    k = rng.randint(2, min(consume, 3))
    cuts = sorted(rng.sample(range(1, consume), k - 1))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [consume])]
    parts = []
    left = max(budget - 1, consume)
    for i, m in enumerate(sizes):
        share = max(m, left // (len(sizes) - i))
        part = gen_well_formed(rng, share, m)
        left = max(m, left - node_count(part))
        parts.append(part)
    return Tensor(tuple(parts))


def _gen_sequence(rng: random.Random, budget: int, consume: int) -> Hiproof:
    left = budget - 1
    first = gen_well_formed(rng, max(1, left // 2), consume)
    left -= node_count(first)
    items = [first]
    from hiprove.hiproof import out_count
    while left >= 1 and out_count(items[-1]) >= 1 \
            and (len(items) < 2 or rng.random() < 0.5):
        nxt = gen_well_formed(rng, left, out_count(items[-1]))
        left -= node_count(nxt)
        items.append(nxt)
    if len(items) == 1:
        return first
    return Sequence(tuple(items))


def sample_well_formed(rng: random.Random, max_nodes: int = 12) -> Hiproof:
    while True:
        h = gen_well_formed(rng, rng.randint(1, 10))
        if node_count(h) <= max_nodes:
            return h


def count_boxes(h) -> int:
    if isinstance(h, Atomic):
        return 0
    if isinstance(h, Box):
        return 1 + count_boxes(h.inner)
    return sum(count_boxes(e) for e in h.items)


def sample_boxed(rng: random.Random, min_boxes: int = 2, max_nodes: int = 30) -> Hiproof:
    """A well-formed proof guaranteed to contain nested boxes."""
    while True:
        h = gen_well_formed(rng, rng.randint(6, 20))
        boxed = Box(UserLabel("outer"), h)
        if count_boxes(boxed) >= min_boxes and node_count(boxed) <= max_nodes:
            return boxed


def gen_arbitrary(rng: random.Random, budget: int) -> Hiproof:
    """A random tree with no constraints; usually ill-formed."""
    if budget <= 1:
        return _atomic(rng, rng.randrange(4))
    kind = rng.choice(["atomic", "sequence", "tensor", "box"])
    if kind == "atomic":
        return _atomic(rng, rng.randrange(4))
    if kind == "box":
        return Box(UserLabel("b"), gen_arbitrary(rng, budget - 1))
    n = rng.randrange(0, 4)
    items = []
    left = budget - 1
    for _ in range(n):
        item = gen_arbitrary(rng, max(1, left // 2))
        left -= node_count(item)
        items.append(item)
    return Sequence(tuple(items)) if kind == "sequence" else Tensor(tuple(items))

"""Minimal logical kernel whose theorems carry hierarchical proofs.

The logic has truth, conjunction, implication and disjunction over atoms.
Nine primitive rules build theorems; every primitive also builds the
theorem's internal hiproof.  A k-premise primitive records

    k = 0:   Atomic(rule, goal, 0)
    k = 1:   Sequence[Atomic(rule, goal, 1), premise proof]
    k >= 2:  Sequence[Atomic(rule, goal, k), Tensor[premise proofs]]

where `goal` is the printed sequent of the result.

`hilabel` draws a labelled box around a rule's contribution while keeping
the premise proofs outside the box; `turnvars` does the rewriting that
makes this possible.  Nothing outside this module should construct a Thm
except through the primitives and `hilabel`.

Theorems, terms and hiproofs are immutable and safe to share across
threads.  The only mutable state is the fresh-variable counter, an
itertools.count whose increment is atomic under CPython.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence as Seq

from .errors import RuleError
from .hiproof import (
    Atomic, Box, Hiproof, RuleLabel, Label, Sequence, Tensor, VariableLabel,
    duplicate, identity, in_count, normalize, out_count, variable, well_formed,
)
from .syntax import Conj, Disj, Goal, Imp, Term, Truth, print_goal, print_term

_fresh_numbers = itertools.count()


def fresh_variable_name() -> str:
    return f"v{next(_fresh_numbers)}"


@dataclass(frozen=True)
class Thm:
    """Sequent (assumptions |- conclusion) bundled with its hiproof.

    Always satisfies in_count(proof) = 1 and out_count(proof) = 0.
    """

    proof: Hiproof
    assumptions: tuple[Term, ...]
    conclusion: Term

    def __str__(self) -> str:
        if self.assumptions:
            return ", ".join(print_term(a) for a in self.assumptions) \
                + " |- " + print_term(self.conclusion)
        return "|- " + print_term(self.conclusion)


Rule = Callable[[Seq[Thm]], Thm]


def goal_of(thm: Thm) -> Goal:
    return Goal(thm.assumptions, thm.conclusion)


def equals_thm(a: Thm, b: Thm) -> bool:
    """Sequent equality; the proofs are ignored."""
    return a.assumptions == b.assumptions and a.conclusion == b.conclusion


def hiproof_of(a: Thm) -> Hiproof:
    return a.proof


def _union(a: Iterable[Term], b: Iterable[Term]) -> tuple[Term, ...]:
    out = list(a)
    for t in b:
        if t not in out:
            out.append(t)
    return tuple(out)


def _remove(asms: Iterable[Term], t: Term) -> tuple[Term, ...]:
    return tuple(a for a in asms if a != t)


def _record(name: str, asms: tuple[Term, ...], concl: Term, premises: Seq[Thm]) -> Thm:
    goal = print_goal(Goal(asms, concl))
    head = Atomic(RuleLabel(name), goal, len(premises))
    if not premises:
        proof: Hiproof = head
    elif len(premises) == 1:
        proof = Sequence((head, premises[0].proof))
    else:
        proof = Sequence((head, Tensor(tuple(p.proof for p in premises))))
    return Thm(proof, asms, concl)


# ---------------------------------------------------------------------------
# Primitive rules


def assume(t: Term) -> Thm:
    """{t} |- t"""
    return _record("ASSUME", (t,), t, ())


def truth() -> Thm:
    """|- T"""
    return _record("TRUTH", (), Truth(), ())


def conj(a: Thm, b: Thm) -> Thm:
    """A1, A2 |- l /\\ r  from  A1 |- l  and  A2 |- r"""
    return _record("CONJ", _union(a.assumptions, b.assumptions),
                   Conj(a.conclusion, b.conclusion), (a, b))


def conjunct1(a: Thm) -> Thm:
    c = a.conclusion
    if not isinstance(c, Conj):
        raise RuleError("CONJUNCT1", f"conclusion is not a conjunction: {print_term(c)}")
    return _record("CONJUNCT1", a.assumptions, c.left, (a,))


def conjunct2(a: Thm) -> Thm:
    c = a.conclusion
    if not isinstance(c, Conj):
        raise RuleError("CONJUNCT2", f"conclusion is not a conjunction: {print_term(c)}")
    return _record("CONJUNCT2", a.assumptions, c.right, (a,))


def disch(t: Term, a: Thm) -> Thm:
    """A - {t} |- t ==> c; removes t from the assumptions if present."""
    return _record("DISCH", _remove(a.assumptions, t), Imp(t, a.conclusion), (a,))


def mp(imp: Thm, ant: Thm) -> Thm:
    c = imp.conclusion
    if not isinstance(c, Imp):
        raise RuleError("MP", f"conclusion is not an implication: {print_term(c)}")
    if c.antecedent != ant.conclusion:
        raise RuleError("MP", f"antecedent {print_term(c.antecedent)} does not match "
                              f"{print_term(ant.conclusion)}")
    return _record("MP", _union(imp.assumptions, ant.assumptions), c.consequent, (imp, ant))


def disj1(a: Thm, t: Term) -> Thm:
    return _record("DISJ1", a.assumptions, Disj(a.conclusion, t), (a,))


def disj2(t: Term, a: Thm) -> Thm:
    return _record("DISJ2", a.assumptions, Disj(t, a.conclusion), (a,))


def disj_cases(d: Thm, l: Thm, r: Thm) -> Thm:
    c = d.conclusion
    if not isinstance(c, Disj):
        raise RuleError("DISJ_CASES", f"conclusion is not a disjunction: {print_term(c)}")
    if c.left not in l.assumptions:
        raise RuleError("DISJ_CASES", f"left case {print_term(c.left)} not assumed "
                                      f"in first branch")
    if c.right not in r.assumptions:
        raise RuleError("DISJ_CASES", f"right case {print_term(c.right)} not assumed "
                                      f"in second branch")
    if l.conclusion != r.conclusion:
        raise RuleError("DISJ_CASES", f"branch conclusions differ: "
                                      f"{print_term(l.conclusion)} vs {print_term(r.conclusion)}")
    asms = _union(_union(d.assumptions, _remove(l.assumptions, c.left)),
                  _remove(r.assumptions, c.right))
    return _record("DISJ_CASES", asms, l.conclusion, (d, l, r))


# ---------------------------------------------------------------------------
# Rule boxing


def turnvars(names: set[str], h: Hiproof) -> tuple[list[str], Hiproof]:
    """Rewrite the named variable leaves of `h` into wires.

    The first occurrence of each named variable (in left-to-right output
    order) becomes an identity wire, later occurrences become duplicate
    markers.  Returns the variable name for each open output of the
    rewritten proof, in output order, together with the proof.
    """
    seen: set[str] = set()
    order: list[str] = []

    def go(node: Hiproof) -> Hiproof:
        if isinstance(node, Atomic):
            if isinstance(node.label, VariableLabel) and node.label.name in names:
                if node.label.name in seen:
                    return duplicate(node.goal)
                seen.add(node.label.name)
                order.append(node.label.name)
                return identity(node.goal)
            return node
        if isinstance(node, Sequence):
            return Sequence(tuple(go(e) for e in node.items))
        if isinstance(node, Tensor):
            return Tensor(tuple(go(e) for e in node.items))
        return Box(node.label, go(node.inner))

    return order, normalize(go(h), keep_identities=True)


def hilabel(label: Label, rule: Rule, premises: Seq[Thm]) -> Thm:
    """Apply `rule` with a labelled box drawn around its contribution.

    The premises' proofs stay outside the box; inside, each premise used
    by the rule shows up as an identity wire (first use) or a duplicate
    marker (later uses).  Unused premises do not appear at all.

    The rule must consume its premises through the given sequence only;
    passing premise theorems in through a closure instead is undefined
    behaviour.
    """
    names = [fresh_variable_name() for _ in premises]
    doctored = [Thm(variable(n, print_goal(goal_of(p))), p.assumptions, p.conclusion)
                for n, p in zip(names, premises)]
    beta = rule(doctored)
    order, inner = turnvars(set(names), beta.proof)
    boxed: Hiproof = Box(label, inner)
    tails = [premises[names.index(n)].proof for n in order]
    if not tails:
        proof = boxed
    elif len(tails) == 1:
        proof = Sequence((boxed, tails[0]))
    else:
        proof = Sequence((boxed, Tensor(tuple(tails))))
    return Thm(proof, beta.assumptions, beta.conclusion)


def check_thm(t: Thm) -> None:
    """Assert the theorem invariants; used by tests and debugging."""
    report = well_formed(t.proof)
    if not report:
        raise AssertionError(f"theorem proof ill-formed: {report}")
    if in_count(t.proof) != 1 or out_count(t.proof) != 0:
        raise AssertionError(
            f"theorem proof has IN={in_count(t.proof)}, OUT={out_count(t.proof)}")

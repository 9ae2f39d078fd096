import random

import pytest

from hiprove.errors import ScriptSyntaxError
from hiprove.syntax import (
    App, Atom, Conj, Disj, Goal, Imp, ListExpr, Name, ScriptExpr, Str, TermArg,
    Truth, parse_goal, parse_tactic_expr, parse_term, print_goal,
    print_tactic_expr, print_term,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")


class TestTerms:
    def test_precedence(self):
        # ==> binds loosest; /\ over \/ over ==>; all right-associative
        assert parse_term("p /\\ q ==> r") == Imp(Conj(p, q), r)
        assert parse_term("p \\/ q /\\ r") == Disj(p, Conj(q, r))
        assert parse_term("p ==> q ==> r") == Imp(p, Imp(q, r))
        assert parse_term("p /\\ q /\\ r") == Conj(p, Conj(q, r))

    def test_canonicalization(self):
        assert print_term(parse_term("((p))")) == "p"
        assert print_term(parse_term("(p /\\ q) /\\ r")) == "(p /\\ q) /\\ r".replace("\\\\", "\\")
        assert print_term(Conj(Conj(p, q), r)) == "(p /\\ q) /\\ r"
        assert print_term(Imp(Conj(p, q), r)) == "p /\\ q ==> r"
        assert print_term(Disj(p, Disj(q, r))) == "p \\/ q \\/ r"

    def test_truth_atom(self):
        assert parse_term("T") == Truth()
        assert parse_term("tee") == Atom("tee")

    def test_error_offset(self):
        with pytest.raises(ScriptSyntaxError) as e:
            parse_term("p /\\")
        assert e.value.offset == 4

    def test_error_unbalanced(self):
        with pytest.raises(ScriptSyntaxError):
            parse_term("(p /\\ q")
        with pytest.raises(ScriptSyntaxError):
            parse_term("p q")

    def test_round_trip_random(self):
        rng = random.Random(7)
        for _ in range(300):
            t = random_term(rng, 6)
            assert parse_term(print_term(t)) == t


def random_term(rng, budget):
    if budget <= 1:
        return rng.choice([p, q, r, Atom("s"), Truth()])
    kind = rng.choice([Conj, Disj, Imp, None])
    if kind is None:
        return rng.choice([p, q, r, Truth()])
    half = budget // 2
    return kind(random_term(rng, half), random_term(rng, half))


class TestGoals:
    def test_print(self):
        assert print_goal(Goal((p, q), r)) == "p, q ?- r"
        assert print_goal(Goal((), Truth())) == "?- T"

    def test_parse(self):
        assert parse_goal("p, q ?- r") == Goal((p, q), r)
        assert parse_goal("?- T") == Goal((), Truth())
        assert parse_goal(print_goal(Goal((Conj(p, q),), p))) == Goal((Conj(p, q),), p)


class TestTacticExprs:
    def test_equal_precedence_left_assoc(self):
        e = parse_tactic_expr("A THEN B THENL [C; D] THEN E")
        assert e == App(Name("THEN"), (
            App(Name("THENL"), (
                App(Name("THEN"), (Name("A"), Name("B"))),
                ListExpr((Name("C"), Name("D"))))),
            Name("E")))

    def test_term_argument(self):
        e = parse_tactic_expr('CONJ_ASSUM_TAC "p /\\ q"')
        assert e == App(Name("CONJ_ASSUM_TAC"), (TermArg(Conj(p, q)),))
        assert print_tactic_expr(e) == 'CONJ_ASSUM_TAC "p /\\ q"'

    def test_label_keeps_string(self):
        e = parse_tactic_expr('LABEL "prepare" (A THEN B)')
        assert e == App(Name("LABEL"), (
            Str("prepare"), App(Name("THEN"), (Name("A"), Name("B")))))

    def test_prefix_combinators(self):
        assert parse_tactic_expr("REPEAT CONJ_TAC") == \
            App(Name("REPEAT"), (Name("CONJ_TAC"),))
        assert parse_tactic_expr("ORELSE A B") == \
            App(Name("ORELSE"), (Name("A"), Name("B")))
        # application binds tighter than THEN
        assert parse_tactic_expr("REPEAT A THEN B") == \
            App(Name("THEN"), (App(Name("REPEAT"), (Name("A"),)), Name("B")))

    def test_thenl_needs_left_operand(self):
        with pytest.raises(ScriptSyntaxError):
            parse_tactic_expr("THENL [A]")

    def test_empty_list(self):
        assert parse_tactic_expr("A THENL []") == \
            App(Name("THENL"), (Name("A"), ListExpr(())))

    def test_parenthesized_right_operand(self):
        e = parse_tactic_expr("A THEN (B THEN C)")
        printed = print_tactic_expr(e)
        assert printed == "A THEN (B THEN C)"
        assert parse_tactic_expr(printed) == e

    def test_round_trip_random(self):
        rng = random.Random(11)
        for _ in range(300):
            e = random_tactic_expr(rng, 6)
            assert parse_tactic_expr(print_tactic_expr(e)) == e


def random_tactic_expr(rng, budget) -> ScriptExpr:
    names = ["A_TAC", "B_TAC", "C1", "DD"]
    if budget <= 1:
        return Name(rng.choice(names))
    kind = rng.randrange(6)
    half = budget // 2
    if kind == 0:
        return App(Name("THEN"), (random_tactic_expr(rng, half),
                                  random_tactic_expr(rng, half)))
    if kind == 1:
        items = tuple(random_tactic_expr(rng, half)
                      for _ in range(rng.randrange(0, 3)))
        return App(Name("THENL"), (random_tactic_expr(rng, half), ListExpr(items)))
    if kind == 2:
        return App(Name("REPEAT"), (random_tactic_expr(rng, half),))
    if kind == 3:
        return App(Name("LABEL"), (Str(f"note {rng.randrange(9)}"),
                                   random_tactic_expr(rng, half)))
    if kind == 4:
        return App(Name(rng.choice(names)), (TermArg(random_term(rng, half)),))
    return Name(rng.choice(names))

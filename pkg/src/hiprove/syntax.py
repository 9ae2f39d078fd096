"""Abstract and concrete syntax of terms and tactic expressions.

Term grammar (canonical concrete syntax):

    term   :  imp
    imp    :  disj ('==>' imp)?          # loosest, right-assoc
    disj   :  conj ('\\/' disj)?
    conj   :  atomic ('/\\' conj)?       # tightest, right-assoc
    atomic :  NAME | 'T' | '(' term ')'
    NAME   :  /[a-z][a-zA-Z0-9_]*/

Tactic-expression grammar:

    tacexpr :  item (('THEN' item) | ('THENL' list))*    # equal precedence, left-assoc
    item    :  primary+                                  # juxtaposition is application
    primary :  NAME | STRING | list | '(' tacexpr ')'
    list    :  '[' (tacexpr (';' tacexpr)*)? ']'
    NAME    :  /[A-Z][A-Z0-9_]*/
    STRING  :  double-quoted; a term argument, except directly after LABEL

Goals print as ``a1, a2 ?- c`` and theorem sequents as ``a1, a2 |- c``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import Position, ScriptSyntaxError

# ---------------------------------------------------------------------------
# Terms


class Term:
    __slots__ = ()

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True, repr=False)
class Atom(Term):
    name: str

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Truth(Term):
    def __repr__(self):
        return "Truth()"


@dataclass(frozen=True, repr=False)
class Conj(Term):
    left: Term
    right: Term

    def __repr__(self):
        return f"Conj({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Imp(Term):
    antecedent: Term
    consequent: Term

    def __repr__(self):
        return f"Imp({self.antecedent!r}, {self.consequent!r})"


@dataclass(frozen=True, repr=False)
class Disj(Term):
    left: Term
    right: Term

    def __repr__(self):
        return f"Disj({self.left!r}, {self.right!r})"


# Precedence levels used by both the parser and the printer.  Higher binds
# tighter; all infixes are right-associative.
_PREC_IMP, _PREC_DISJ, _PREC_CONJ, _PREC_ATOM = 1, 2, 3, 4


def print_term(t: Term, _ctx: int = 0) -> str:
    if isinstance(t, Atom):
        return t.name
    if isinstance(t, Truth):
        return "T"
    if isinstance(t, Conj):
        prec, sym, l, r = _PREC_CONJ, "/\\", t.left, t.right
    elif isinstance(t, Disj):
        prec, sym, l, r = _PREC_DISJ, "\\/", t.left, t.right
    elif isinstance(t, Imp):
        prec, sym, l, r = _PREC_IMP, "==>", t.antecedent, t.consequent
    else:
        raise TypeError(f"not a term: {t!r}")
    text = f"{print_term(l, prec + 1)} {sym} {print_term(r, prec)}"
    return f"({text})" if prec < _ctx else text


_TERM_TOKEN = re.compile(r"\s*(?:(?P<name>[a-z][a-zA-Z0-9_]*)|(?P<truth>T)"
                         r"|(?P<conj>/\\)|(?P<disj>\\/)|(?P<imp>==>)"
                         r"|(?P<lpar>\()|(?P<rpar>\)))")


class _TermParser:
    def __init__(self, text: str, base: int = 0):
        self.text = text
        self.base = base  # offset of `text` within an enclosing source
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TERM_TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                stripped = pos + len(text[pos:]) - len(text[pos:].lstrip())
                if stripped >= len(text):
                    break
                self._fail("unexpected character", stripped)
            self.tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
            pos = m.end()
        self.tokens.append(("eof", "", len(text)))
        self.i = 0

    def _fail(self, message: str, offset: int):
        raise ScriptSyntaxError(message, Position(self.base + offset))

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Term:
        t = self.imp()
        kind, _, off = self.peek()
        if kind != "eof":
            self._fail("trailing input after term", off)
        return t

    def imp(self) -> Term:
        left = self.disj()
        if self.peek()[0] == "imp":
            self.next()
            return Imp(left, self.imp())
        return left

    def disj(self) -> Term:
        left = self.conj()
        if self.peek()[0] == "disj":
            self.next()
            return Disj(left, self.disj())
        return left

    def conj(self) -> Term:
        left = self.atomic()
        if self.peek()[0] == "conj":
            self.next()
            return Conj(left, self.conj())
        return left

    def atomic(self) -> Term:
        kind, value, off = self.next()
        if kind == "name":
            return Atom(value)
        if kind == "truth":
            return Truth()
        if kind == "lpar":
            t = self.imp()
            kind, _, off = self.next()
            if kind != "rpar":
                self._fail("expected ')'", off)
            return t
        self._fail("expected a term", off)


def parse_term(text: str, base_offset: int = 0) -> Term:
    return _TermParser(text, base_offset).parse()


# ---------------------------------------------------------------------------
# Goals (assumption sequence + conclusion), printed form shared by the
# kernel and tactic layers.


@dataclass(frozen=True)
class Goal:
    assumptions: tuple[Term, ...]
    conclusion: Term

    def __str__(self) -> str:
        return print_goal(self)


def print_goal(g: Goal) -> str:
    if g.assumptions:
        return ", ".join(print_term(a) for a in g.assumptions) + " ?- " + print_term(g.conclusion)
    return "?- " + print_term(g.conclusion)


def parse_goal(text: str) -> Goal:
    head, sep, tail = text.partition("?-")
    if not sep:
        raise ScriptSyntaxError("expected '?-' in goal", Position(0))
    head = head.strip()
    asms = tuple(parse_term(p) for p in head.split(",")) if head else ()
    return Goal(asms, parse_term(tail))


# ---------------------------------------------------------------------------
# Script expressions (the abstract syntax of tactic text)


class ScriptExpr:
    __slots__ = ()

    def __str__(self) -> str:
        return print_tactic_expr(self)


@dataclass(frozen=True, repr=False)
class Name(ScriptExpr):
    binding: str

    def __repr__(self):
        return f"Name({self.binding!r})"


@dataclass(frozen=True, repr=False)
class Str(ScriptExpr):
    text: str

    def __repr__(self):
        return f"Str({self.text!r})"


@dataclass(frozen=True, repr=False)
class ListExpr(ScriptExpr):
    items: tuple[ScriptExpr, ...]

    def __repr__(self):
        return f"ListExpr({list(self.items)!r})"


@dataclass(frozen=True, repr=False)
class App(ScriptExpr):
    head: ScriptExpr
    args: tuple[ScriptExpr, ...]

    def __repr__(self):
        return f"App({self.head!r}, {list(self.args)!r})"


@dataclass(frozen=True, repr=False)
class TermArg(ScriptExpr):
    term: Term

    def __repr__(self):
        return f"TermArg({self.term!r})"


# The two infix combinators.  They are ordinary ALL-CAPS names; the parser
# and printer treat them specially, everything else is juxtaposition.
_INFIX = ("THEN", "THENL")


def _quote(text: str) -> str:
    # Strings are verbatim (terms are full of backslashes), so a double
    # quote cannot occur inside one.
    if '"' in text:
        raise ValueError(f"double quote not representable in string literal: {text!r}")
    return '"' + text + '"'


def _print_primary(e: ScriptExpr) -> str:
    if isinstance(e, Name):
        return e.binding
    if isinstance(e, Str):
        return _quote(e.text)
    if isinstance(e, TermArg):
        return _quote(print_term(e.term))
    if isinstance(e, ListExpr):
        return "[" + "; ".join(print_tactic_expr(i) for i in e.items) + "]"
    return "(" + print_tactic_expr(e) + ")"


def print_tactic_expr(e: ScriptExpr) -> str:
    if isinstance(e, App) and isinstance(e.head, Name) and e.head.binding in _INFIX:
        left, right = e.args
        if e.head.binding == "THENL":
            return f"{print_tactic_expr(left)} THENL {_print_primary(right)}"
        right_text = _print_primary(right) if _is_chain(right) else _print_app_or_primary(right)
        return f"{print_tactic_expr(left)} THEN {right_text}"
    return _print_app_or_primary(e)


def _is_chain(e: ScriptExpr) -> bool:
    return isinstance(e, App) and isinstance(e.head, Name) and e.head.binding in _INFIX


def _print_app_or_primary(e: ScriptExpr) -> str:
    if isinstance(e, App) and not _is_chain(e):
        parts = [_print_primary(e.head)]
        parts += [_print_primary(a) for a in e.args]
        return " ".join(parts)
    return _print_primary(e)


_SCRIPT_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<comment>\(\*.*?\*\))"
    r"|(?P<string>\"[^\"]*\")"
    r"|(?P<semisemi>;;)"
    r"|(?P<name>[A-Z][A-Z0-9_]*)"
    r"|(?P<ident>[a-z_][a-zA-Z0-9_']*)"
    r"|(?P<punct>[()\[\];=,])",
    re.DOTALL,
)


def _unquote(raw: str) -> str:
    return raw[1:-1]


class _Lexer:
    """Tokenizer shared by the tactic-expression and script-file parsers."""

    def __init__(self, text: str, keep_comments: bool = False):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text.startswith("(*", pos) and "*)" not in text[pos:]:
                raise ScriptSyntaxError("unterminated comment",
                                        Position.from_text(text, pos))
            m = _SCRIPT_TOKEN.match(text, pos)
            if m is None:
                raise ScriptSyntaxError("unexpected character",
                                        Position.from_text(text, pos))
            kind = m.lastgroup
            if kind != "ws" and (kind != "comment" or keep_comments):
                self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.tokens.append(("eof", "", len(text)))
        self.i = 0

    def fail(self, message: str, offset: int | None = None):
        if offset is None:
            offset = self.peek()[2]
        raise ScriptSyntaxError(message, Position.from_text(self.text, offset))

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        k, v, off = self.peek()
        if k != kind or (value is not None and v != value):
            want = value if value is not None else kind
            self.fail(f"expected {want!r}", off)
        return self.next()

    def at_punct(self, value: str) -> bool:
        k, v, _ = self.peek()
        return k == "punct" and v == value


def _parse_chain(lx: _Lexer) -> ScriptExpr:
    expr = _parse_item(lx)
    while True:
        kind, value, _ = lx.peek()
        if kind == "name" and value == "THEN":
            lx.next()
            expr = App(Name("THEN"), (expr, _parse_item(lx)))
        elif kind == "name" and value == "THENL":
            lx.next()
            expr = App(Name("THENL"), (expr, _parse_list(lx)))
        else:
            return expr


def _parse_item(lx: _Lexer) -> ScriptExpr:
    head = _parse_primary(lx)
    args = []
    while True:
        kind, value, _ = lx.peek()
        if kind == "string" or (kind == "name" and value not in _INFIX) \
                or lx.at_punct("(") or lx.at_punct("["):
            args.append(_parse_primary(lx))
        else:
            break
    if not args:
        return _string_to_termarg(head)
    label_form = isinstance(head, Name) and head.binding == "LABEL"
    fixed = []
    for i, a in enumerate(args):
        if label_form and i == 0:
            fixed.append(a)  # LABEL's first argument is text, not a term
        else:
            fixed.append(_string_to_termarg(a))
    return App(head, tuple(fixed))


def _string_to_termarg(e: ScriptExpr) -> ScriptExpr:
    if isinstance(e, Str):
        return TermArg(parse_term(e.text))
    return e


def _parse_primary(lx: _Lexer) -> ScriptExpr:
    kind, value, off = lx.peek()
    if kind == "name":
        if value in _INFIX:
            lx.fail(f"{value} needs a left operand", off)
        lx.next()
        return Name(value)
    if kind == "string":
        lx.next()
        return Str(_unquote(value))
    if lx.at_punct("["):
        return _parse_list(lx)
    if lx.at_punct("("):
        lx.next()
        e = _parse_chain(lx)
        lx.expect("punct", ")")
        return e
    lx.fail("expected a tactic expression", off)


def _parse_list(lx: _Lexer) -> ListExpr:
    lx.expect("punct", "[")
    items: list[ScriptExpr] = []
    if not lx.at_punct("]"):
        items.append(_parse_chain(lx))
        while lx.at_punct(";"):
            lx.next()
            items.append(_parse_chain(lx))
    lx.expect("punct", "]")
    return ListExpr(tuple(items))


def parse_tactic_expr(text: str) -> ScriptExpr:
    lx = _Lexer(text)
    e = _parse_chain(lx)
    kind, _, off = lx.peek()
    if kind != "eof":
        lx.fail("trailing input after tactic expression", off)
    return e

"""Concrete syntax: lexer and recursive-descent parser.

The grammar is fully bracketed in printed form but the parser is more
liberal (it backtracks between parenthesized computations and values).
Comments start with `--` and run to end of line. Machine-only constants
(spelled with a leading `%`) are rejected unless `allow_machine` is set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Union

from . import syntax as S

KEYWORDS = {
    "let", "in", "match", "as", "case", "catch", "throw", "handle", "with",
    "new", "new_exn", "callcc", "void", "deref", "if", "then", "else",
    "new_exn_v", "resumable_exn", "tt", "ff",
}

TOKEN_RE = re.compile(
    r"""\s*(?:
        (?P<comment>--[^\n]*)
      | (?P<arrow>->)
      | (?P<assign>:=)
      | (?P<ident>%?[A-Za-z_][A-Za-z0-9_']*)
      | (?P<sym>[()\[\]<>,.\\|;#*+=01])
    )""",
    re.VERBOSE,
)


class ParseError(Exception):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {msg}" if line else msg)
        self.line = line
        self.col = col


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    toks = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            line += text.count("\n", line_start, pos)
            raise ParseError(f"unexpected character {stripped[0]!r}",
                             line, pos - line_start + 1)
        line += text.count("\n", pos, m.start(1) if m.lastindex else m.end())
        nl = text.rfind("\n", pos, m.end())
        if nl >= 0:
            line_start = nl + 1
        if m.lastgroup != "comment" and m.lastindex:
            txt = m.group(m.lastgroup)
            toks.append(Token(m.lastgroup, txt, line, m.start() - line_start + 1))
        pos = m.end()
    return toks


class Parser:
    def __init__(self, toks: List[Token], allow_machine: bool = False):
        self.toks = toks
        self.i = 0
        self.allow_machine = allow_machine

    # -- token helpers ------------------------------------------------------

    def peek(self, k: int = 0) -> Optional[Token]:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def at(self, text: str, k: int = 0) -> bool:
        t = self.peek(k)
        return t is not None and t.text == text

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input")
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t is None or t.text != text:
            got = t.text if t else "end of input"
            line = t.line if t else 0
            col = t.col if t else 0
            raise ParseError(f"expected {text!r}, got {got!r}", line, col)
        return self.next()

    def ident(self) -> str:
        t = self.next()
        if t.kind != "ident" or t.text in KEYWORDS or t.text.startswith("%"):
            raise ParseError(f"expected identifier, got {t.text!r}",
                             t.line, t.col)
        return t.text

    # -- types --------------------------------------------------------------

    def parse_type(self) -> S.TypeExpr:
        left = self.parse_type_atom()
        if self.at("->"):
            self.next()
            return S.Arrow(left, self.parse_type())
        if self.at("*"):
            self.next()
            return S.Prod(left, self.parse_type_nonarrow())
        if self.at("+"):
            self.next()
            return S.Sum(left, self.parse_type_nonarrow())
        return left

    def parse_type_nonarrow(self) -> S.TypeExpr:
        left = self.parse_type_atom()
        if self.at("*"):
            self.next()
            return S.Prod(left, self.parse_type_nonarrow())
        if self.at("+"):
            self.next()
            return S.Sum(left, self.parse_type_nonarrow())
        return left

    def parse_type_atom(self) -> S.TypeExpr:
        t = self.next()
        if t.text == "0":
            return S.Zero()
        if t.text == "1":
            return S.One()
        if t.text == "(":
            ty = self.parse_type()
            self.expect(")")
            return ty
        if t.text == "var":
            self.expect("[")
            inner = self.parse_type()
            self.expect("]")
            return S.var_type(inner)
        if t.text == "exn":
            return S.exn_type()
        raise ParseError(f"expected a type, got {t.text!r}", t.line, t.col)

    # -- values -------------------------------------------------------------

    def parse_value(self) -> S.ValueTerm:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input")
        if t.text == "(":
            if self.at(")", 1):
                self.next(), self.next()
                return S.Unit()
            # parenthesized value (e.g. a lambda)
            save = self.i
            self.next()
            try:
                v = self.parse_value()
                self.expect(")")
                return v
            except ParseError:
                self.i = save
                raise
        if t.text == "\\":
            self.next()
            x = self.ident()
            self.expect(".")
            body = self.parse_comp()
            return S.Lambda(x, body)
        if t.text == "<":
            self.next()
            left = self.parse_value()
            self.expect(",")
            right = self.parse_value()
            self.expect(">")
            return S.Pair(left, right)
        if t.text in ("in1", "in2"):
            self.next()
            self.expect("(")
            v = self.parse_value()
            self.expect(")")
            return S.Inj1(v) if t.text == "in1" else S.Inj2(v)
        if t.text == "tt":
            self.next()
            return S.TRUE
        if t.text == "ff":
            self.next()
            return S.FALSE
        if t.text == "new":
            self.next()
            ann = None
            if self.at("["):
                self.next()
                ann = self.parse_type()
                self.expect("]")
            return S.New(ann)
        if t.text == "new_exn":
            self.next()
            return S.NewExn()
        if t.text == "new_exn_v":
            self.next()
            self.expect("[")
            ann = self.parse_type()
            self.expect("]")
            return S.NewExnV(ann)
        if t.text == "callcc":
            self.next()
            ann = None
            if self.at("["):
                self.next()
                t1 = self.parse_type()
                self.expect(",")
                t2 = self.parse_type()
                self.expect("]")
                ann = (t1, t2)
            return S.Callcc(ann)
        if t.text.startswith("%"):
            if not self.allow_machine:
                raise ParseError(
                    f"reserved machine constant {t.text!r} in source",
                    t.line, t.col)
            self.next()
            self.expect("(")
            name = self.next().text
            self.expect(")")
            if t.text == "%set":
                return S.SetC(name)
            if t.text == "%get":
                return S.GetC(name)
            if t.text == "%throw":
                return S.ThrowC(name)
            if t.text == "%catch":
                return S.CatchC(name)
            raise ParseError(f"unknown machine constant {t.text!r}",
                             t.line, t.col)
        if t.kind == "ident" and t.text not in KEYWORDS:
            self.next()
            return S.Var(t.text)
        raise ParseError(f"expected a value, got {t.text!r}", t.line, t.col)

    def _starts_value(self) -> bool:
        t = self.peek()
        if t is None:
            return False
        if t.text in ("(", "\\", "<", "in1", "in2", "tt", "ff", "new",
                      "new_exn", "new_exn_v", "callcc"):
            return True
        if t.text.startswith("%"):
            return True
        return t.kind == "ident" and t.text not in KEYWORDS

    # -- computations -------------------------------------------------------

    def parse_comp(self) -> S.CompTerm:
        first = self.parse_comp_one()
        if self.at(";"):
            self.next()
            return S.Seq(first, self.parse_comp())
        return first

    def parse_comp_one(self) -> S.CompTerm:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input")
        if t.text == "[":
            self.next()
            v = self.parse_value()
            self.expect("]")
            return S.Return(v)
        if t.text == "let":
            self.next()
            x = self.ident()
            self.expect("=")
            bound = self.parse_comp()
            self.expect("in")
            body = self.parse_comp()
            return S.Let(x, bound, body)
        if t.text == "match":
            self.next()
            v = self.parse_value()
            self.expect("as")
            self.expect("(")
            x = self.ident()
            self.expect(",")
            y = self.ident()
            self.expect(")")
            self.expect(".")
            body = self.parse_comp()
            return S.Match(v, x, y, body)
        if t.text == "case":
            self.next()
            v = self.parse_value()
            self.expect("as")
            self.expect("in1")
            self.expect("(")
            x = self.ident()
            self.expect(")")
            self.expect(".")
            body1 = self.parse_comp_one()
            self.expect("|")
            self.expect("in2")
            self.expect("(")
            y = self.ident()
            self.expect(")")
            self.expect(".")
            body2 = self.parse_comp_one()
            return S.Case(v, x, body1, y, body2)
        if t.text == "void":
            self.next()
            ann = None
            if self.at("["):
                self.next()
                ann = self.parse_type()
                self.expect("]")
            return S.Void(self.parse_value(), ann)
        if t.text == "catch":
            # the body binds tighter than `;` (it has the empty type, so a
            # trailing sequence necessarily lives outside the catch)
            self.next()
            e = self.parse_value()
            self.expect("in")
            body = self.parse_comp_one()
            return S.CatchIn(e, body)
        if t.text == "throw":
            self.next()
            self.expect("(")
            e = self.parse_value()
            self.expect(")")
            return S.ThrowS(e)
        if t.text == "deref":
            self.next()
            self.expect("(")
            v = self.parse_value()
            self.expect(")")
            return S.Deref(v)
        if t.text == "handle":
            self.next()
            e = self.parse_value()
            self.expect("in")
            body = self.parse_comp()
            self.expect("with")
            handler = self.parse_comp()
            return S.HandleWith(e, body, handler)
        if t.text == "if":
            self.next()
            cond = self.parse_value()
            self.expect("then")
            then = self.parse_comp()
            self.expect("else")
            els = self.parse_comp()
            return S.If(cond, then, els)
        if t.text == "resumable_exn":
            self.next()
            self.expect("[")
            ann = self.parse_type()
            self.expect("]")
            return S.ResumableExn(ann)
        if t.text == "#":
            if not self.allow_machine:
                raise ParseError("reserved operator '#' in source",
                                 t.line, t.col)
            self.next()
            return S.Mark(self.parse_comp_one())
        if t.text == "new" and self.peek(1) is not None \
                and self.peek(1).kind == "ident" \
                and self.peek(1).text not in KEYWORDS \
                and (self.at(":=", 2) or self.at("[", 2)):
            self.next()
            x = self.ident()
            ann = None
            if self.at("["):
                self.expect("[")
                ann = self.parse_type()
                self.expect("]")
            self.expect(":=")
            init = self.parse_value()
            self.expect(".")
            body = self.parse_comp()
            return S.NewIn(x, init, body, ann)
        # value-led: application, assignment, or parenthesized computation
        if t.text == "(" and not self.at(")", 1):
            save = self.i
            try:
                return self._value_led()
            except ParseError:
                self.i = save
            self.next()
            m = self.parse_comp()
            self.expect(")")
            return m
        return self._value_led()

    def _value_led(self) -> S.CompTerm:
        u = self.parse_value()
        if self.at(":="):
            self.next()
            return S.Assign(u, self.parse_value())
        if self._starts_value():
            return S.App(u, self.parse_value())
        raise ParseError("expected application or assignment after value")


def parse_value(text: str, allow_machine: bool = False) -> S.ValueTerm:
    p = Parser(tokenize(text), allow_machine)
    v = p.parse_value()
    if p.peek() is not None:
        t = p.peek()
        raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
    return S.desugar(v)


def parse_comp(text: str, allow_machine: bool = False) -> S.CompTerm:
    p = Parser(tokenize(text), allow_machine)
    m = p.parse_comp()
    if p.peek() is not None:
        t = p.peek()
        raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
    return S.desugar(m)


def parse(text: str, allow_machine: bool = False) -> Union[S.CompTerm,
                                                           S.ValueTerm]:
    """Parse a computation, falling back to a value."""
    try:
        return parse_comp(text, allow_machine)
    except ParseError:
        return parse_value(text, allow_machine)


def parse_type(text: str) -> S.TypeExpr:
    p = Parser(tokenize(text))
    ty = p.parse_type()
    if p.peek() is not None:
        t = p.peek()
        raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
    return ty

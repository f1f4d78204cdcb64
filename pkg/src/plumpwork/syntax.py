"""Text syntax for names and formulas.

Names::

    {}                    the empty name
    {(N, w), M}           entry N with weight label w; a bare M has weight top
    ord:k                 the check name of von Neumann k

Formulas::

    eq(t,u)  mem(t,u)  sub(t,u)  false  true  not(f)  and(f,g)  or(f,g)  imp(f,g)
    all x in t . f    ex x in t . f    all x sub t . f    ex x sub t . f

Terms are variables or name literals.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .heyting import HeytingAlgebra
from .logic import (
    FALSE, TRUE, And, Const, Eq, ExistsIn, ExistsSubset, ForallIn, ForallSubset,
    Formula, Implies, Mem, Not, Or, Sub, Var, check_scope, Falsum,
)
from .names import Context, Name, check_name, check_ordinal_value

KEYWORDS = {"all", "ex", "in", "sub", "eq", "mem", "and", "or", "imp", "not", "false", "true"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<ord>ord:\d+)
  | (?P<word>[A-Za-z0-9_+'⊤⊥]+)
  | (?P<punct>[{}(),.])
""", re.VERBOSE)


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.col = line, col
        super().__init__(f"{msg} at line {line}, column {col}")


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, ctx: Context):
        self.text = text
        self.ctx = ctx
        self.h = ctx.h
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        raise ParseError(msg, self.text, tok.pos)

    def expect(self, text: str) -> _Tok:
        t = self.tok
        if t.text != text:
            self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.text == text

    def done(self):
        if self.tok.kind != "eof":
            self.error(f"unexpected trailing input {self.tok.text!r}")

    # names

    def name(self) -> Name:
        t = self.tok
        if t.kind == "ord":
            self.i += 1
            return check_name(self.h, int(t.text[4:]))
        if t.text != "{":
            self.error(f"expected a name literal, found {t.text or 'end of input'!r}")
        self.i += 1
        entries = []
        if not self.at("}"):
            entries.append(self.entry())
            while self.at(","):
                self.i += 1
                entries.append(self.entry())
        self.expect("}")
        return self.ctx.make(entries, where="parse_name")

    def entry(self):
        if self.at("("):
            self.i += 1
            child = self.name()
            self.expect(",")
            lab = self.tok
            if lab.kind != "word":
                self.error("expected a truth-value label")
            self.i += 1
            try:
                w = self.h.index(lab.text)
            except KeyError as e:
                self.error(e.args[0], lab)
            self.expect(")")
            return child, w
        return self.name(), self.h.top

    # formulas

    def term(self):
        t = self.tok
        if t.kind == "ord" or t.text == "{":
            return Const(self.name())
        if t.kind == "word" and t.text not in KEYWORDS and re.match(r"[A-Za-z_]", t.text):
            self.i += 1
            return Var(t.text)
        self.error(f"expected a term, found {t.text or 'end of input'!r}")

    def formula(self) -> Formula:
        t = self.tok
        w = t.text
        if w == "(":
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        if w == "false":
            self.i += 1
            return FALSE
        if w == "true":
            self.i += 1
            return TRUE
        if w in ("eq", "mem", "sub") and self.toks[self.i + 1].text == "(":
            self.i += 2
            a = self.term()
            self.expect(",")
            b = self.term()
            self.expect(")")
            return {"eq": Eq, "mem": Mem, "sub": Sub}[w](a, b)
        if w in ("and", "or", "imp"):
            self.i += 1
            self.expect("(")
            f = self.formula()
            self.expect(",")
            g = self.formula()
            self.expect(")")
            return {"and": And, "or": Or, "imp": Implies}[w](f, g)
        if w == "not":
            self.i += 1
            self.expect("(")
            f = self.formula()
            self.expect(")")
            return Not(f)
        if w in ("all", "ex"):
            self.i += 1
            v = self.tok
            if v.kind != "word" or v.text in KEYWORDS or not re.match(r"[A-Za-z_]", v.text):
                self.error("expected a variable name")
            self.i += 1
            kind = self.tok.text
            if kind not in ("in", "sub"):
                self.error(f"expected 'in' or 'sub', found {kind or 'end of input'!r}")
            self.i += 1
            bound = self.term()
            self.expect(".")
            body = self.formula()
            cls = {("all", "in"): ForallIn, ("ex", "in"): ExistsIn,
                   ("all", "sub"): ForallSubset, ("ex", "sub"): ExistsSubset}[(w, kind)]
            return cls(v.text, bound, body)
        self.error(f"expected a formula, found {w or 'end of input'!r}")


def parse_name(text: str, ctx: Context | HeytingAlgebra) -> Name:
    if isinstance(ctx, HeytingAlgebra):
        ctx = Context(ctx)
    p = _Parser(text, ctx)
    x = p.name()
    p.done()
    return x


def parse_formula(text: str, ctx: Context | HeytingAlgebra) -> Formula:
    if isinstance(ctx, HeytingAlgebra):
        ctx = Context(ctx)
    p = _Parser(text, ctx)
    f = p.formula()
    p.done()
    check_scope(f)
    return f


def format_name(x: Name) -> str:
    k = check_ordinal_value(x)
    if k is not None:
        return f"ord:{k}"
    labels = x.algebra.labels
    return "{" + ", ".join(f"({format_name(c)}, {labels[w]})" for c, w in x.entries) + "}"


def _fmt_term(t) -> str:
    return t.name if isinstance(t, Var) else format_name(t.value)


def format_formula(f: Formula) -> str:
    if isinstance(f, Falsum):
        return "false"
    if isinstance(f, (Eq, Mem, Sub)):
        op = {Eq: "eq", Mem: "mem", Sub: "sub"}[type(f)]
        return f"{op}({_fmt_term(f.left)}, {_fmt_term(f.right)})"
    if isinstance(f, Implies) and isinstance(f.right, Falsum):
        return f"not({format_formula(f.left)})"
    if isinstance(f, (And, Or, Implies)):
        op = {And: "and", Or: "or", Implies: "imp"}[type(f)]
        return f"{op}({format_formula(f.left)}, {format_formula(f.right)})"
    q = {ForallIn: ("all", "in"), ExistsIn: ("ex", "in"),
         ForallSubset: ("all", "sub"), ExistsSubset: ("ex", "sub")}[type(f)]
    return f"{q[0]} {f.var} {q[1]} {_fmt_term(f.bound)} . {format_formula(f.body)}"

"""Concrete syntax: tokenizer, recursive-descent parser and printer.

Grammar (precedence high to low): ``~``, ``/\\``, ``\\/``, ``->``
(right associative); ``forall x.`` and ``exists x.`` extend as far right as
possible. Terms use ``+`` and ``*`` (``*`` binds tighter), ``S(t)``,
``f(t, ...)`` and decimal literals, which are read as iterated ``S``.
"""
from __future__ import annotations

import re

from .ast import (
    And, App, Bot, Eq, Exists, Forall, Formula, Implies, Not, Or, Param,
    Pred, Term, Top, Var, numeral, numeral_value,
)

KEYWORDS = {"forall", "exists", "true", "false"}

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_']*)"
    r"|(?P<op>/\\|\\/|->|\|-|⊢|[~()=+*,.])"
)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


def tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, signature=None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.sig = signature

    # helpers
    def peek(self, offset=0):
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def at(self, value):
        k, v, _ = self.peek()
        return k != "eof" and v == value

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        k, v, p = self.peek()
        if v != value or k == "eof":
            raise FormulaSyntaxError(f"expected {value!r}, found {v or 'end of input'!r}", p, self.text)
        return self.take()

    def error(self, message):
        raise FormulaSyntaxError(message, self.peek()[2], self.text)

    # formulas
    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.take()
            return Implies(left, self.formula())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.at("\\/"):
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.unary()
        while self.at("/\\"):
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self):
        k, v, p = self.peek()
        if v == "~" and k == "op":
            self.take()
            return Not(self.unary())
        if k == "ident" and v in ("forall", "exists"):
            self.take()
            kv, name, pv = self.peek()
            if kv != "ident" or name in KEYWORDS:
                raise FormulaSyntaxError("expected a bound variable", pv, self.text)
            self.take()
            self.expect(".")
            body = self.formula()
            return Forall(name, body) if v == "forall" else Exists(name, body)
        return self.atom()

    def atom(self):
        k, v, p = self.peek()
        if k == "ident" and v == "true":
            self.take()
            return Top()
        if k == "ident" and v == "false":
            self.take()
            return Bot()
        if v == "(" and k == "op":
            save = self.i
            try:
                t = self.term()
                if self.at("="):
                    self.take()
                    return Eq(t, self.term())
            except FormulaSyntaxError:
                pass
            self.i = save
            self.take()
            f = self.formula()
            self.expect(")")
            return f
        if k in ("ident", "num"):
            t = self.term()
            if self.at("="):
                self.take()
                return Eq(t, self.term())
            return self._as_predicate(t, p)
        if k == "eof":
            self.error("unexpected end of input")
        self.error(f"unexpected token {v!r}")

    def _as_predicate(self, t, pos):
        if isinstance(t, Var):
            name, args = t.name, ()
        elif isinstance(t, App) and t.fn not in ("+", "*", "0", "S") and t.fn[0].isalpha():
            name, args = t.fn, t.args
        else:
            raise FormulaSyntaxError("expected '=' after term", self.peek()[2], self.text)
        if self.sig is not None:
            preds = self.sig.predicate_arities
            if name not in preds:
                raise FormulaSyntaxError(f"unknown predicate symbol {name!r}", pos, self.text)
            if preds[name] != len(args):
                raise FormulaSyntaxError(
                    f"arity mismatch for {name!r}: expected {preds[name]}, got {len(args)}", pos, self.text)
        return Pred(name, args)

    # terms
    def term(self) -> Term:
        left = self.product()
        while self.at("+"):
            self.take()
            left = App("+", (left, self.product()))
        return left

    def product(self):
        left = self.primary()
        while self.at("*"):
            self.take()
            left = App("*", (left, self.primary()))
        return left

    def primary(self):
        k, v, p = self.peek()
        if k == "num":
            self.take()
            return numeral(int(v))
        if k == "op" and v == "(":
            self.take()
            t = self.term()
            self.expect(")")
            return t
        if k == "ident" and v not in KEYWORDS:
            self.take()
            if self.at("("):
                self.take()
                args = [self.term()]
                while self.at(","):
                    self.take()
                    args.append(self.term())
                self.expect(")")
                return self._app(v, tuple(args), p)
            if self.sig is not None and self.sig.function_arities.get(v) == 0:
                return App(v)
            return Var(v)
        self.error(f"expected a term, found {v or 'end of input'!r}")

    def _app(self, name, args, pos):
        if self.sig is not None:
            funs = self.sig.function_arities
            preds = self.sig.predicate_arities
            if name in funs:
                if funs[name] != len(args):
                    raise FormulaSyntaxError(
                        f"arity mismatch for {name!r}: expected {funs[name]}, got {len(args)}", pos, self.text)
            elif name not in preds:
                raise FormulaSyntaxError(f"unknown function symbol {name!r}", pos, self.text)
        elif name == "S" and len(args) != 1:
            raise FormulaSyntaxError("S takes one argument", pos, self.text)
        return App(name, args)


def parse_formula(text: str, signature=None) -> Formula:
    p = _Parser(text, signature)
    f = p.formula()
    if p.peek()[0] != "eof":
        p.error(f"unexpected trailing token {p.peek()[1]!r}")
    return f


def parse_term(text: str, signature=None) -> Term:
    p = _Parser(text, signature)
    t = p.term()
    if p.peek()[0] != "eof":
        p.error(f"unexpected trailing token {p.peek()[1]!r}")
    return t


# ------------------------------------------------------------------ printing

def print_term(t: Term) -> str:
    return _pt(t, 0)


def _pt(t, ctx):
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Param):
        return f"[{t.value}]"
    n = numeral_value(t)
    if n is not None:
        return str(n)
    if t.fn in ("+", "*") and len(t.args) == 2:
        prec = 1 if t.fn == "+" else 2
        s = f"{_pt(t.args[0], prec)} {t.fn} {_pt(t.args[1], prec + 1)}"
        return f"({s})" if prec < ctx else s
    if not t.args:
        return t.fn
    return f"{t.fn}({', '.join(_pt(a, 0) for a in t.args)})"


def print_formula(f: Formula) -> str:
    return _pf(f, 0)


def _pf(f, ctx):
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Eq):
        return f"{print_term(f.left)} = {print_term(f.right)}"
    if isinstance(f, Pred):
        if not f.args:
            return f.name
        return f"{f.name}({', '.join(print_term(a) for a in f.args)})"
    if isinstance(f, (Forall, Exists)):
        kw = "forall" if isinstance(f, Forall) else "exists"
        s = f"{kw} {f.var}. {_pf(f.body, 0)}"
        prec = 0
    elif isinstance(f, Implies):
        s = f"{_pf(f.left, 2)} -> {_pf(f.right, 1)}"
        prec = 1
    elif isinstance(f, Or):
        s = f"{_pf(f.left, 2)} \\/ {_pf(f.right, 3)}"
        prec = 2
    elif isinstance(f, And):
        s = f"{_pf(f.left, 3)} /\\ {_pf(f.right, 4)}"
        prec = 3
    elif isinstance(f, Not):
        if isinstance(f.body, Eq):
            s = f"~({_pf(f.body, 0)})"
        else:
            s = "~" + _pf(f.body, 4)
        prec = 4
    else:
        raise TypeError(f"not a formula: {f!r}")
    return f"({s})" if prec < ctx else s

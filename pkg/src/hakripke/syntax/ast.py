"""Abstract syntax of first-order terms and formulas.

All nodes are immutable and hashable; the hash is computed once and cached
on the instance, so formulas can be used freely as memo keys.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from functools import cached_property
from typing import Iterable, Mapping


def _node(cls):
    cls = dataclass(frozen=True)(cls)
    names = tuple(f.name for f in fields(cls))
    tag = cls.__name__
    generated_eq = cls.__eq__

    def __eq__(self, other):
        if self is other:
            return True
        return generated_eq(self, other)

    def __hash__(self):
        d = self.__dict__
        h = d.get("_hash")
        if h is None:
            h = hash((tag,) + tuple(getattr(self, n) for n in names))
            d["_hash"] = h
        return h

    cls.__eq__ = __eq__
    cls.__hash__ = __hash__
    return cls


# --------------------------------------------------------------------- terms

class Term:
    @cached_property
    def free_vars(self) -> frozenset:
        return frozenset(self._vars())

    def __str__(self):
        from .parser import print_term
        return print_term(self)


@_node
class Var(Term):
    name: str

    def _vars(self):
        yield self.name


@_node
class App(Term):
    fn: str
    args: tuple = ()

    def _vars(self):
        for a in self.args:
            yield from a.free_vars


@_node
class Param(Term):
    """A constant naming a fixed element of some structure (an element of ℕ
    for the standard model, an element id for Kripke structures)."""

    value: object

    def _vars(self):
        return iter(())


ZERO = App("0")


def succ(t: Term) -> Term:
    return App("S", (t,))


def numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals denote natural numbers")
    t = ZERO
    for _ in range(n):
        t = App("S", (t,))
    return t


def numeral_value(t: Term):
    """Return n if t is the numeral S^n(0), else None."""
    n = 0
    while isinstance(t, App) and t.fn == "S" and len(t.args) == 1:
        t = t.args[0]
        n += 1
    if t == ZERO:
        return n
    return None


# ------------------------------------------------------------------ formulas

class Formula:
    @cached_property
    def free_vars(self) -> frozenset:
        return frozenset(self._vars())

    @cached_property
    def depth(self) -> int:
        """Connective depth: nesting of connectives and quantifiers."""
        return self._depth()

    def __str__(self):
        from .parser import print_formula
        return print_formula(self)

    def _depth(self):
        return 0


@_node
class Top(Formula):
    def _vars(self):
        return iter(())


@_node
class Bot(Formula):
    def _vars(self):
        return iter(())


TOP = Top()
BOT = Bot()


@_node
class Eq(Formula):
    left: Term
    right: Term

    def _vars(self):
        return iter(self.left.free_vars | self.right.free_vars)


@_node
class Pred(Formula):
    name: str
    args: tuple = ()

    def _vars(self):
        for a in self.args:
            yield from a.free_vars


class _Binary(Formula):
    def _vars(self):
        return iter(self.left.free_vars | self.right.free_vars)

    def _depth(self):
        return 1 + max(self.left.depth, self.right.depth)


@_node
class And(_Binary):
    left: Formula
    right: Formula


@_node
class Or(_Binary):
    left: Formula
    right: Formula


@_node
class Implies(_Binary):
    left: Formula
    right: Formula


@_node
class Not(Formula):
    body: Formula

    def _vars(self):
        return iter(self.body.free_vars)

    def _depth(self):
        return 1 + self.body.depth


class _Quant(Formula):
    def _vars(self):
        return iter(self.body.free_vars - {self.var})

    def _depth(self):
        return 1 + self.body.depth


@_node
class Forall(_Quant):
    var: str
    body: Formula


@_node
class Exists(_Quant):
    var: str
    body: Formula


ATOMIC = (Top, Bot, Eq, Pred)
BINARY = (And, Or, Implies)
QUANTIFIERS = (Forall, Exists)


def is_atomic(f: Formula) -> bool:
    return isinstance(f, ATOMIC)


def conj(*parts: Formula) -> Formula:
    if not parts:
        return TOP
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def forall_all(variables: Iterable[str], body: Formula) -> Formula:
    for v in reversed(list(variables)):
        body = Forall(v, body)
    return body


def exists_all(variables: Iterable[str], body: Formula) -> Formula:
    for v in reversed(list(variables)):
        body = Exists(v, body)
    return body


def closure(f: Formula, exclude: Iterable[str] = ()) -> Formula:
    """Universal closure over the free variables, in sorted order."""
    skip = set(exclude)
    return forall_all(sorted(v for v in f.free_vars if v not in skip), f)


# -------------------------------------------------------------- variables

def all_vars(f) -> set:
    """Every variable name occurring in f, free or bound."""
    out = set()
    stack = [f]
    while stack:
        x = stack.pop()
        if isinstance(x, Var):
            out.add(x.name)
        elif isinstance(x, (App, Pred)):
            stack.extend(x.args)
        elif isinstance(x, Eq):
            stack.extend((x.left, x.right))
        elif isinstance(x, BINARY):
            stack.extend((x.left, x.right))
        elif isinstance(x, Not):
            stack.append(x.body)
        elif isinstance(x, QUANTIFIERS):
            out.add(x.var)
            stack.append(x.body)
    return out


def bound_vars(f: Formula) -> set:
    out = set()
    stack = [f]
    while stack:
        x = stack.pop()
        if isinstance(x, BINARY):
            stack.extend((x.left, x.right))
        elif isinstance(x, Not):
            stack.append(x.body)
        elif isinstance(x, QUANTIFIERS):
            out.add(x.var)
            stack.append(x.body)
    return out


def fresh(base: str, avoid) -> str:
    name = base
    while name in avoid:
        name += "'"
    return name


def fresh_indexed(base: str, avoid) -> str:
    """base, base1, base2, ... : the first name not in avoid."""
    if base not in avoid:
        return base
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


# ------------------------------------------------------------ substitution

def subst_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, App):
        if not t.args or not (t.free_vars & mapping.keys()):
            return t
        return App(t.fn, tuple(subst_term(a, mapping) for a in t.args))
    return t


def subst_formula(f: Formula, mapping: Mapping[str, Term]) -> Formula:
    """Simultaneous capture-avoiding substitution."""
    live = {v: t for v, t in mapping.items() if v in f.free_vars}
    if not live:
        return f
    if isinstance(f, Eq):
        return Eq(subst_term(f.left, live), subst_term(f.right, live))
    if isinstance(f, Pred):
        return Pred(f.name, tuple(subst_term(a, live) for a in f.args))
    if isinstance(f, BINARY):
        return type(f)(subst_formula(f.left, live), subst_formula(f.right, live))
    if isinstance(f, Not):
        return Not(subst_formula(f.body, live))
    if isinstance(f, QUANTIFIERS):
        incoming = set()
        for t in live.values():
            incoming |= t.free_vars
        var = f.var
        if var in incoming:
            new = fresh(var, incoming | all_vars(f.body) | set(live))
            live = dict(live)
            live[var] = Var(new)
            var = new
        return type(f)(var, subst_formula(f.body, live))
    return f


def substitute(f: Formula, v: str, t: Term) -> Formula:
    return subst_formula(f, {v: t})


# --------------------------------------------------------- alpha-equivalence

def alpha_equivalent(a: Formula, b: Formula) -> bool:
    return _alpha(a, b, {}, {})


def _alpha_term(s, t, ma, mb):
    if isinstance(s, Var) and isinstance(t, Var):
        da, db = ma.get(s.name), mb.get(t.name)
        if da is None and db is None:
            return s.name == t.name
        return da == db
    if isinstance(s, App) and isinstance(t, App):
        return (s.fn == t.fn and len(s.args) == len(t.args)
                and all(_alpha_term(x, y, ma, mb) for x, y in zip(s.args, t.args)))
    if isinstance(s, Param) and isinstance(t, Param):
        return s.value == t.value
    return False


def _alpha(a, b, ma, mb):
    if type(a) is not type(b):
        return False
    if isinstance(a, (Top, Bot)):
        return True
    if isinstance(a, Eq):
        return _alpha_term(a.left, b.left, ma, mb) and _alpha_term(a.right, b.right, ma, mb)
    if isinstance(a, Pred):
        return (a.name == b.name and len(a.args) == len(b.args)
                and all(_alpha_term(x, y, ma, mb) for x, y in zip(a.args, b.args)))
    if isinstance(a, BINARY):
        return _alpha(a.left, b.left, ma, mb) and _alpha(a.right, b.right, ma, mb)
    if isinstance(a, Not):
        return _alpha(a.body, b.body, ma, mb)
    depth = len(ma)
    ma2 = dict(ma)
    mb2 = dict(mb)
    ma2[a.var] = depth
    mb2[b.var] = depth
    return _alpha(a.body, b.body, ma2, mb2)


# ---------------------------------------------------------------- matching

def match_instance(pattern: Formula, target: Formula, var: str):
    """Find t with pattern[var := t] equal to target up to renaming of
    bound variables, by structural matching.

    Returns (True, t) on success, t being None when var does not occur free
    in pattern. Returns (False, None) on failure.
    """
    found = {}

    def mt(p, t, env):
        if isinstance(p, Var):
            if p.name in env:
                return isinstance(t, Var) and t.name == env[p.name]
            if p.name == var:
                if t.free_vars & set(env.values()):
                    return False
                if "t" in found:
                    return found["t"] == t
                found["t"] = t
                return True
            return t == p and p.name not in env.values()
        if isinstance(p, App):
            return (isinstance(t, App) and t.fn == p.fn and len(t.args) == len(p.args)
                    and all(mt(x, y, env) for x, y in zip(p.args, t.args)))
        return p == t

    def mf(p, t, env):
        if type(p) is not type(t):
            return False
        if isinstance(p, (Top, Bot)):
            return True
        if isinstance(p, Eq):
            return mt(p.left, t.left, env) and mt(p.right, t.right, env)
        if isinstance(p, Pred):
            return (p.name == t.name and len(p.args) == len(t.args)
                    and all(mt(x, y, env) for x, y in zip(p.args, t.args)))
        if isinstance(p, BINARY):
            return mf(p.left, t.left, env) and mf(p.right, t.right, env)
        if isinstance(p, Not):
            return mf(p.body, t.body, env)
        inner = {k: (None if v == t.var else v) for k, v in env.items()}
        inner[p.var] = t.var
        return mf(p.body, t.body, inner)

    if mf(pattern, target, {}):
        return True, found.get("t")
    return False, None


def term_size(t: Term) -> int:
    if isinstance(t, App):
        return 1 + sum(term_size(a) for a in t.args)
    return 1


def subformulas(f: Formula):
    yield f
    if isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (Not, Forall, Exists)):
        yield from subformulas(f.body)

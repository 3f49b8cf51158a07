"""Finite classical structures and finite (or eventually constant) Kripke
models over them.

Elements carry global ids, so a structure below another is a substructure
by plain inclusion of domains and tables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from ..syntax.ast import (
    And, App, Bot, Eq, Exists, Forall, Formula, Implies, Not, Or, Param, Pred,
    Term, Top, Var, substitute,
)


class ModelError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Structure:
    """domain: element ids; functions: name -> {args tuple: value} (constants
    use the empty tuple); predicates: name -> set of argument tuples."""
    domain: tuple
    functions: Mapping = field(default_factory=dict)
    predicates: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "functions",
                           {k: dict(v) for k, v in dict(self.functions).items()})
        object.__setattr__(self, "predicates",
                           {k: frozenset(tuple(t) for t in v) for k, v in dict(self.predicates).items()})

    @cached_property
    def elements(self) -> frozenset:
        return frozenset(self.domain)

    def arity(self, name: str):
        table = self.functions.get(name)
        if table is not None:
            return len(next(iter(table))) if table else 0
        rel = self.predicates.get(name)
        if rel is not None and rel:
            return len(next(iter(rel)))
        return None

    def __eq__(self, other):
        return (isinstance(other, Structure) and self.elements == other.elements
                and self.functions == other.functions and self.predicates == other.predicates)

    def __hash__(self):
        return hash((self.elements, frozenset(self.predicates.items())))

    # evaluation
    def term(self, t: Term, env: Mapping = ()):
        if isinstance(t, Var):
            try:
                return env[t.name]
            except (KeyError, TypeError):
                raise ModelError(f"unassigned variable {t.name!r}") from None
        if isinstance(t, Param):
            if t.value not in self.elements:
                raise ModelError(f"parameter {t.value!r} is not in the domain")
            return t.value
        table = self.functions.get(t.fn)
        if table is None:
            raise ModelError(f"unknown function symbol {t.fn!r}")
        args = tuple(self.term(a, env) for a in t.args)
        try:
            return table[args]
        except KeyError:
            raise ModelError(f"{t.fn} is undefined on {args!r}") from None

    def atom(self, f: Formula, env: Mapping = ()) -> bool:
        if isinstance(f, Top):
            return True
        if isinstance(f, Bot):
            return False
        if isinstance(f, Eq):
            return self.term(f.left, env) == self.term(f.right, env)
        if isinstance(f, Pred):
            rel = self.predicates.get(f.name)
            if rel is None:
                raise ModelError(f"unknown predicate symbol {f.name!r}")
            return tuple(self.term(a, env) for a in f.args) in rel
        raise TypeError(f"not an atomic formula: {f!r}")


def classical_sat(s: Structure, f: Formula, env: Mapping | None = None) -> bool:
    """Tarskian satisfaction by exhaustive quantification over the domain."""
    env = dict(env or {})
    return _sat(s, f, env)


def _sat(s, f, env):
    if isinstance(f, (Top, Bot, Eq, Pred)):
        return s.atom(f, env)
    if isinstance(f, And):
        return _sat(s, f.left, env) and _sat(s, f.right, env)
    if isinstance(f, Or):
        return _sat(s, f.left, env) or _sat(s, f.right, env)
    if isinstance(f, Implies):
        return not _sat(s, f.left, env) or _sat(s, f.right, env)
    if isinstance(f, Not):
        return not _sat(s, f.body, env)
    if isinstance(f, (Forall, Exists)):
        old = env.get(f.var, _MISSING)
        try:
            test = all if isinstance(f, Forall) else any
            result = test(_sat(s, f.body, {**env, f.var: c}) for c in s.domain)
        finally:
            if old is not _MISSING:
                env[f.var] = old
        return result
    raise TypeError(f"not a formula: {f!r}")


_MISSING = object()


# ------------------------------------------------------------------ models

@dataclass(frozen=True)
class Violation:
    kind: str
    nodes: tuple
    detail: str

    def __str__(self):
        return f"{self.kind} at {' <= '.join(map(str, self.nodes))}: {self.detail}"


def transitive_closure(nodes, pairs) -> frozenset:
    succ = {k: {k} for k in nodes}
    for a, b in pairs:
        succ.setdefault(a, {a}).add(b)
        succ.setdefault(b, {b})
    changed = True
    while changed:
        changed = False
        for a in succ:
            extra = set()
            for b in succ[a]:
                extra |= succ[b]
            if not extra <= succ[a]:
                succ[a] |= extra
                changed = True
    return frozenset((a, b) for a, bs in succ.items() for b in bs)


@dataclass(frozen=True, eq=False)
class KripkeModel:
    """nodes: names; order: any generating set of pairs (closed reflexively
    and transitively on construction); structures: node -> Structure.

    With ``frontier_depth`` set, the model is eventually constant: each
    maximal node stands for an infinite chain of copies of itself, named
    ``"<node>+1"``, ``"<node>+2"``, ..."""
    nodes: tuple
    order: frozenset
    structures: Mapping
    frontier_depth: int | None = None
    predicate_arities: Mapping | None = None

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "order", transitive_closure(self.nodes, self.order))
        object.__setattr__(self, "structures", dict(self.structures))

    @cached_property
    def index(self) -> dict:
        return {k: i for i, k in enumerate(self.nodes)}

    @cached_property
    def up(self) -> dict:
        out = {k: [] for k in self.nodes}
        for a, b in sorted(self.order, key=lambda p: (self.index.get(p[0], -1), self.index.get(p[1], -1))):
            if a in out:
                out[a].append(b)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def covers(self) -> dict:
        """Immediate successors."""
        out = {}
        for k in self.nodes:
            strict = [b for b in self.up[k] if b != k]
            out[k] = tuple(b for b in strict
                           if not any(c != b and (c, b) in self.order for c in strict))
        return out

    @cached_property
    def maximal(self) -> tuple:
        return tuple(k for k in self.nodes if self.up[k] == (k,))

    @cached_property
    def minimal(self) -> tuple:
        return tuple(k for k in self.nodes
                     if not any(a != k and b == k for a, b in self.order))

    @property
    def eventually_constant(self) -> bool:
        return self.frontier_depth is not None

    @property
    def root(self):
        mins = self.minimal
        if len(mins) != 1:
            raise ModelError(f"model is not rooted (minimal nodes: {list(mins)})")
        return mins[0]

    def leq(self, a, b) -> bool:
        ra, rb = self.resolve(a), self.resolve(b)
        ia, ib = (_copy_index(a) if a != ra else 0), (_copy_index(b) if b != rb else 0)
        if ia:
            return ra == rb and ia <= ib
        return (ra, rb) in self.order

    def resolve(self, node):
        """Map a frontier copy name to the node it copies."""
        if node in self.index:
            return node
        if self.eventually_constant and isinstance(node, str) and "+" in node:
            base, _, i = node.rpartition("+")
            if base in self.index and i.isdigit() and int(i) >= 1 and base in self.maximal:
                return base
        raise ModelError(f"unknown node {node!r}")

    def structure(self, node) -> Structure:
        return self.structures[self.resolve(node)]

    def height(self) -> int:
        memo = {}

        def h(k):
            if k not in memo:
                memo[k] = max((1 + h(b) for b in self.covers[k]), default=0)
            return memo[k]
        return max((h(k) for k in self.nodes), default=0)

    def signature(self) -> tuple:
        funs, preds = {}, {}
        for s in self.structures.values():
            for name, table in s.functions.items():
                if table:
                    funs[name] = len(next(iter(table)))
                else:
                    funs.setdefault(name, 0)
            for name, rel in s.predicates.items():
                if rel:
                    preds[name] = len(next(iter(rel)))
                else:
                    preds.setdefault(name, None)
        return funs, preds


def _copy_index(node) -> int:
    if isinstance(node, str) and "+" in node:
        i = node.rpartition("+")[2]
        if i.isdigit():
            return int(i)
    return 0


def validate_model(m: KripkeModel, arities: Mapping | None = None) -> list:
    """All violations of the Kripke model conditions; empty iff valid.

    ``arities`` optionally fixes predicate arities (name -> n) so empty
    relations can be checked; function tables always carry their arity.
    """
    out = []
    arities = arities if arities is not None else m.predicate_arities
    nodes = set(m.nodes)
    if not m.nodes:
        out.append(Violation("empty-frame", (), "the node set is empty"))
        return out
    if len(nodes) != len(m.nodes):
        out.append(Violation("duplicate-node", (), "node names repeat"))
    for a, b in m.order:
        if a not in nodes or b not in nodes:
            out.append(Violation("unknown-node", (a, b), "order mentions an undeclared node"))
    for a, b in m.order:
        if a != b and (b, a) in m.order and a in nodes and b in nodes and m.index[a] < m.index[b]:
            out.append(Violation("antisymmetry", (a, b), "distinct nodes are below each other"))
    for k in m.nodes:
        if k not in m.structures:
            out.append(Violation("missing-structure", (k,), "no structure attached"))
    if out:
        return out
    for k in m.nodes:
        out.extend(_check_structure(k, m.structures[k], arities))
    for a, b in sorted(m.order, key=lambda p: (m.index[p[0]], m.index[p[1]])):
        if a == b:
            continue
        sa, sb = m.structures[a], m.structures[b]
        missing = sa.elements - sb.elements
        if missing:
            out.append(Violation("domain-inclusion", (a, b),
                                 f"elements {sorted(map(str, missing))} of {a} are absent at {b}"))
        for name, table in sa.functions.items():
            tb = sb.functions.get(name)
            if tb is None:
                out.append(Violation("signature", (a, b), f"function {name} is not interpreted at {b}"))
                continue
            for args, v in table.items():
                if tb.get(args, v) != v:
                    atom = f"{name}({', '.join(map(str, args))}) = {v}"
                    out.append(Violation("positive-diagram", (a, b), f"{atom} holds at {a} but not at {b}"))
        for name, rel in sa.predicates.items():
            rb = sb.predicates.get(name)
            if rb is None:
                out.append(Violation("signature", (a, b), f"predicate {name} is not interpreted at {b}"))
                continue
            for t in sorted(rel - rb, key=repr):
                atom = f"{name}({', '.join(map(str, t))})"
                out.append(Violation("positive-diagram", (a, b), f"{atom} holds at {a} but not at {b}"))
    if m.frontier_depth is not None:
        depth = _depths(m)
        for k in m.maximal:
            if depth[k] > m.frontier_depth:
                out.append(Violation("frontier", (k,),
                                     f"maximal node at depth {depth[k]} lies beyond the frontier {m.frontier_depth}"))
    return out


def _depths(m: KripkeModel) -> dict:
    memo = {}

    def d(k):
        if k not in memo:
            below = [a for a in m.nodes if k in m.covers[a]]
            memo[k] = max((1 + d(a) for a in below), default=0)
        return memo[k]
    return {k: d(k) for k in m.nodes}


def _check_structure(k, s: Structure, arities) -> list:
    out = []
    if not s.domain:
        out.append(Violation("empty-domain", (k,), "domain is empty"))
        return out
    if len(s.elements) != len(s.domain):
        out.append(Violation("duplicate-element", (k,), "domain lists an element twice"))
    for name, table in s.functions.items():
        arity = len(next(iter(table))) if table else 0
        for args, v in table.items():
            if len(args) != arity:
                out.append(Violation("arity", (k,), f"function {name} used with mixed arities"))
                break
            if v not in s.elements:
                out.append(Violation("totality", (k,), f"{name}{args!r} = {v!r} leaves the domain"))
        for args in itertools.product(s.domain, repeat=arity):
            if args not in table:
                out.append(Violation("totality", (k,), f"{name} is undefined on {args!r}"))
                break
    for name, rel in s.predicates.items():
        want = (arities or {}).get(name)
        for t in rel:
            if want is not None and len(t) != want:
                out.append(Violation("arity", (k,), f"predicate {name} tuple {t!r} has the wrong length"))
            if any(c not in s.elements for c in t):
                out.append(Violation("totality", (k,), f"{name}{t!r} mentions elements outside the domain"))
    return out


# ----------------------------------------------------------------- forcing

class Forcing:
    """Memoizing evaluator of k ⊩ φ for sentences with parameters."""

    def __init__(self, m: KripkeModel):
        self.m = m
        self.memo = {}

    def forces(self, k, f: Formula) -> bool:
        k = self.m.resolve(k)
        if f.free_vars:
            raise ModelError(f"free variables {sorted(f.free_vars)} in a forcing query")
        self._check_params(k, f)
        return self._f(k, f)

    def _check_params(self, k, f):
        dom = self.m.structures[k].elements
        for p in _params(f):
            if p not in dom:
                raise ModelError(f"parameter {p!r} is not in the domain of node {k!r}")

    def _f(self, k, f):
        key = (k, f)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        m = self.m
        if isinstance(f, (Top, Bot, Eq, Pred)):
            r = m.structures[k].atom(f)
        elif isinstance(f, And):
            r = self._f(k, f.left) and self._f(k, f.right)
        elif isinstance(f, Or):
            r = self._f(k, f.left) or self._f(k, f.right)
        elif isinstance(f, Implies):
            r = all(not self._f(j, f.left) or self._f(j, f.right) for j in m.up[k])
        elif isinstance(f, Not):
            r = not any(self._f(j, f.body) for j in m.up[k])
        elif isinstance(f, Forall):
            r = all(self._f(j, substitute(f.body, f.var, Param(c)))
                    for j in m.up[k] for c in m.structures[j].domain)
        elif isinstance(f, Exists):
            r = any(self._f(k, substitute(f.body, f.var, Param(c))) for c in m.structures[k].domain)
        else:
            raise TypeError(f"not a formula: {f!r}")
        self.memo[key] = r
        return r


def _params(x):
    if isinstance(x, Param):
        yield x.value
    elif isinstance(x, (App, Pred)):
        for a in x.args:
            yield from _params(a)
    elif isinstance(x, Eq):
        yield from _params(x.left)
        yield from _params(x.right)
    elif isinstance(x, (And, Or, Implies)):
        yield from _params(x.left)
        yield from _params(x.right)
    elif isinstance(x, (Not, Forall, Exists)):
        yield from _params(x.body)


def forces(m: KripkeModel, k, f: Formula) -> bool:
    """k ⊩ f. At frontier nodes of an eventually constant model (and their
    copies) the answer is classical satisfaction in the node's structure."""
    base = m.resolve(k)
    if m.eventually_constant and base in m.maximal:
        Forcing(m)._check_params(base, f)
        return classical_sat(m.structures[base], f)
    return Forcing(m).forces(base, f)


def check_monotonicity(m: KripkeModel, sentences, evaluator=None) -> bool:
    """True iff no listed sentence is forced at k but not at some k' ≥ k.

    ``evaluator(m, k, phi)`` defaults to :func:`forces`; sentences may use
    parameters, and a pair is skipped when the parameters are not yet
    present at k."""
    ev = evaluator or forces
    for f in sentences:
        params = set(_params(f))
        for a, b in m.order:
            if a == b or not params <= m.structures[a].elements:
                continue
            if ev(m, a, f) and not ev(m, b, f):
                return False
    return True


# ---------------------------------------------------------------- diagrams

@dataclass(frozen=True)
class Diagram:
    positive: frozenset
    full: frozenset


def basic_atoms(s: Structure, predicate_arities: Mapping | None = None):
    """Atoms P(ā), f(ā) = b and a = b with parameters from the domain."""
    ps = [Param(c) for c in s.domain]
    arities = dict(predicate_arities or {})
    for name, rel in s.predicates.items():
        if name not in arities:
            if not rel:
                continue
            arities[name] = len(next(iter(rel)))
    for name in sorted(arities):
        for args in itertools.product(ps, repeat=arities[name]):
            yield Pred(name, args)
    for name in sorted(s.functions):
        table = s.functions[name]
        arity = len(next(iter(table))) if table else 0
        for args in itertools.product(ps, repeat=arity):
            for b in ps:
                yield Eq(App(name, args), b)
    for a in ps:
        for b in ps:
            yield Eq(a, b)


def diagram(s: Structure, predicate_arities: Mapping | None = None) -> Diagram:
    pos, full = set(), set()
    for atom in basic_atoms(s, predicate_arities):
        if s.atom(atom):
            pos.add(atom)
            full.add(atom)
        else:
            full.add(Not(atom))
    return Diagram(frozenset(pos), frozenset(full))

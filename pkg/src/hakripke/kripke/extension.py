"""Set-at-a-time evaluation of formulas on finite frames, and exhaustive
enumeration of all formulas up to a connective depth.

The extension of a formula with free variables x1..xn is the set of pairs
(node, assignment) at which it is forced (or, for the classical engine,
satisfied), stored as a bitmask over a fixed slot numbering. Since every
connective acts on extensions, enumerating the distinct extensions level
by level covers every formula of the given depth while keeping only one
representative per extension.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..syntax.ast import And, App, BOT, Eq, Exists, Forall, Formula, Implies, Not, Or, Pred, TOP, Var
from .model import KripkeModel

VARS = ("x", "y", "z", "w", "v")


@dataclass(frozen=True)
class Frame:
    """A finite preorder of points, each with a structure. ``up[i]`` lists
    the points above i (including i). Preorders are allowed so that finite
    quotients of infinite trees can be evaluated directly."""
    structures: tuple
    up: tuple

    @classmethod
    def from_model(cls, m: KripkeModel, nodes=None):
        nodes = tuple(nodes or m.nodes)
        idx = {k: i for i, k in enumerate(nodes)}
        return cls(tuple(m.structures[k] for k in nodes),
                   tuple(tuple(idx[j] for j in m.up[k]) for k in nodes))

    @property
    def size(self):
        return len(self.structures)


class Engine:
    """Extension algebra over one frame. ``classical=True`` evaluates each
    point as an isolated classical structure."""

    def __init__(self, frame: Frame, max_vars: int, classical: bool = False):
        self.frame = frame
        self.classical = classical
        up = [(i,) for i in range(frame.size)] if classical else frame.up
        self.slots = []
        self.index = []
        for n in range(max_vars + 1):
            slots = [(k, a) for k, s in enumerate(frame.structures)
                     for a in itertools.product(s.domain, repeat=n)]
            self.slots.append(slots)
            self.index.append({sl: i for i, sl in enumerate(slots)})
        self.valid = [(1 << len(s)) - 1 for s in self.slots]
        self.up_masks = []
        self.all_masks = []
        self.ex_masks = []
        for n in range(max_vars + 1):
            ix = self.index[n]
            ups, alls, exs = [], [], []
            for k, a in self.slots[n]:
                ups.append(sum(1 << ix[(j, a)] for j in up[k]))
                if n < max_vars:
                    nx = self.index[n + 1]
                    alls.append(sum(1 << nx[(j, a + (c,))] for j in up[k]
                                    for c in frame.structures[j].domain))
                    exs.append(sum(1 << nx[(k, a + (c,))] for c in frame.structures[k].domain))
            self.up_masks.append(ups)
            self.all_masks.append(alls)
            self.ex_masks.append(exs)

    def atom(self, n: int, f: Formula) -> int:
        names = VARS[:n]
        out = 0
        for i, (k, a) in enumerate(self.slots[n]):
            if self.frame.structures[k].atom(f, dict(zip(names, a))):
                out |= 1 << i
        return out

    def _box(self, n, m):
        out = 0
        for i, um in enumerate(self.up_masks[n]):
            if m & um == um:
                out |= 1 << i
        return out

    def neg(self, n, a):
        return self._box(n, ~a & self.valid[n])

    def conj(self, n, a, b):
        return a & b

    def disj(self, n, a, b):
        return a | b

    def imp(self, n, a, b):
        return self._box(n, (~a | b) & self.valid[n])

    def forall(self, n, m):
        """From n+1 variables down to n: quantify the last one."""
        out = 0
        for i, am in enumerate(self.all_masks[n]):
            if m & am == am:
                out |= 1 << i
        return out

    def exists(self, n, m):
        out = 0
        for i, em in enumerate(self.ex_masks[n]):
            if m & em:
                out |= 1 << i
        return out

    def monotone(self, n, m) -> bool:
        return self._box(n, m) == m

    def holds(self, n, m, k, assignment=()) -> bool:
        return bool(m >> self.index[n][(k, tuple(assignment))] & 1)


class Joint:
    """Several engines driven in lockstep; values are tuples."""

    def __init__(self, engines):
        self.engines = tuple(engines)

    def atom(self, n, f):
        return tuple(e.atom(n, f) for e in self.engines)

    def neg(self, n, a):
        return tuple(e.neg(n, x) for e, x in zip(self.engines, a))

    def conj(self, n, a, b):
        return tuple(x & y for x, y in zip(a, b))

    def disj(self, n, a, b):
        return tuple(x | y for x, y in zip(a, b))

    def imp(self, n, a, b):
        return tuple(e.imp(n, x, y) for e, x, y in zip(self.engines, a, b))

    def forall(self, n, m):
        return tuple(e.forall(n, x) for e, x in zip(self.engines, m))

    def exists(self, n, m):
        return tuple(e.exists(n, x) for e, x in zip(self.engines, m))


def atoms_over(n: int, constants=(), predicates=()) -> list:
    """Atomic formulas whose terms are the first n variables or constants."""
    terms = [Var(v) for v in VARS[:n]] + [App(c) for c in constants]
    out = [TOP, BOT]
    for i, s in enumerate(terms):
        for t in terms[i + 1:]:
            out.append(Eq(s, t))
    for name, arity in predicates:
        for args in itertools.product(terms, repeat=arity):
            out.append(Pred(name, tuple(args)))
    return out


def enumerate_levels(alg, depth: int, constants=(), predicates=(), max_vars=None):
    """levels[n] maps each distinct extension of a formula of depth ≤ depth - n
    with free variables among the first n names to one representative
    (levels[0] therefore covers all sentences of depth ≤ depth).

    A depth-d formula needs at most d nested binders, so level n only has to
    be built to depth d - n. Quantifiers always bind the next unused name;
    every formula is equivalent to one in that naming discipline."""
    top = depth if max_vars is None else min(depth, max_vars)
    cur = {}
    for n in range(top + 1):
        seen = {}
        for f in atoms_over(n, constants, predicates):
            seen.setdefault(alg.atom(n, f), f)
        cur[n] = seen
    final = dict(cur)
    for d in range(1, depth + 1):
        nxt = {}
        for n in range(min(top, depth - d) + 1):
            base = cur[n]
            seen = dict(base)
            items = list(base.items())
            for v, f in items:
                seen.setdefault(alg.neg(n, v), Not(f))
            for (v, f), (w, g) in itertools.product(items, repeat=2):
                seen.setdefault(alg.conj(n, v, w), And(f, g))
                seen.setdefault(alg.disj(n, v, w), Or(f, g))
                seen.setdefault(alg.imp(n, v, w), Implies(f, g))
            if n + 1 in cur:
                var = VARS[n]
                for v, f in cur[n + 1].items():
                    seen.setdefault(alg.forall(n, v), Forall(var, f))
                    seen.setdefault(alg.exists(n, v), Exists(var, f))
            nxt[n] = seen
        cur = nxt
        final.update(cur)
    return final


def sentences(alg, depth: int, constants=(), predicates=()) -> dict:
    """Distinct extensions of all sentences of connective depth ≤ depth."""
    return enumerate_levels(alg, depth, constants, predicates)[0]


def signature_of(structures) -> tuple:
    consts, preds = set(), {}
    for s in structures:
        for name, table in s.functions.items():
            if not table or set(table) == {()}:
                consts.add(name)
        for name, rel in s.predicates.items():
            if rel:
                preds[name] = len(next(iter(rel)))
            else:
                preds.setdefault(name, 1)
    return tuple(sorted(consts)), tuple(sorted(preds.items()))

"""Single-line mutations of proofs, for exercising the checker."""
from __future__ import annotations

from dataclasses import dataclass

from ..coding import CodeError, unpack
from ..syntax.ast import (
    App, Bot, Eq, Exists, Forall, Formula, Not, Pred, Term, Top, succ,
)
from .axioms import Q, q_index
from .proof import ARITY, RULES, ProofLine, ProofObject, Sequent


@dataclass(frozen=True)
class Mutation:
    line: int
    kind: str
    detail: str
    proof: ProofObject


def _terms(f: Formula):
    """Term occurrences of f in prefix order, as (path, term)."""
    out = []

    def walk_t(t, path):
        out.append((path, t))
        if isinstance(t, App):
            for i, a in enumerate(t.args):
                walk_t(a, path + (i,))

    def walk(g, path):
        if isinstance(g, Eq):
            walk_t(g.left, path + ("l",))
            walk_t(g.right, path + ("r",))
        elif isinstance(g, Pred):
            for i, a in enumerate(g.args):
                walk_t(a, path + (i,))
        elif isinstance(g, Not):
            walk(g.body, path + ("b",))
        elif isinstance(g, (Forall, Exists)):
            walk(g.body, path + ("b",))
        elif not isinstance(g, (Top, Bot)):
            walk(g.left, path + ("l",))
            walk(g.right, path + ("r",))

    walk(f, ())
    return out


def _replace_term(t: Term, path, new):
    if not path:
        return new
    i = path[0]
    args = list(t.args)
    args[i] = _replace_term(args[i], path[1:], new)
    return App(t.fn, tuple(args))


def _replace(f: Formula, path, new):
    step, rest = path[0], path[1:]
    if isinstance(f, Eq):
        if step == "l":
            return Eq(_replace_term(f.left, rest, new), f.right)
        return Eq(f.left, _replace_term(f.right, rest, new))
    if isinstance(f, Pred):
        args = list(f.args)
        args[step] = _replace_term(args[step], rest, new)
        return Pred(f.name, tuple(args))
    if isinstance(f, Not):
        return Not(_replace(f.body, rest, new))
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.var, _replace(f.body, rest, new))
    if step == "l":
        return type(f)(_replace(f.left, rest, new), f.right)
    return type(f)(f.left, _replace(f.right, rest, new))


def perturb_formula(f: Formula, seed: int = 0) -> Formula:
    """A different formula: one term occurrence t becomes S(t), or, when f
    has no terms, f becomes ¬f."""
    occ = _terms(f)
    if not occ:
        return Not(f)
    path, t = occ[seed % len(occ)]
    return _replace(f, path, succ(t))


def _with(p: ProofObject, i: int, ln: ProofLine) -> ProofObject:
    lines = list(p.lines)
    lines[i] = ln
    return ProofObject(tuple(lines))


def _other_axiom(w: int, phi) -> int:
    try:
        toks = unpack(w - 1)
    except CodeError:
        toks = []
    if toks[:1] == [Q] and len(toks) == 2:
        return q_index(toks[1] % 7 + 1) + 1
    return q_index(1) + 1


def mutations(p: ProofObject):
    """Every line gets a formula mutation; rule lines also get a rule-tag
    and (if they cite any) a premise-index mutation; axiom lines get an
    axiom-index mutation."""
    for i, ln in enumerate(p.lines):
        n = i + 1
        phi = perturb_formula(ln.conclusion, i)
        yield Mutation(n, "formula", f"{ln.conclusion} -> {phi}",
                       _with(p, i, ProofLine(ln.w, Sequent(ln.sequent.hypotheses, phi), ln.rule, ln.premises)))
        if ln.w > 0:
            w = _other_axiom(ln.w, ln.conclusion)
            yield Mutation(n, "axiom", "axiom index changed", _with(p, i, ProofLine(w, ln.sequent)))
            continue
        same = [r for r in RULES if ARITY[r] == ARITY[ln.rule] and r != ln.rule]
        rule = same[i % len(same)] if same else "botE"
        yield Mutation(n, "rule", f"{ln.rule} -> {rule}", _with(p, i, ProofLine(0, ln.sequent, rule, ln.premises)))
        if ln.premises:
            k = i % len(ln.premises)
            old = ln.premises[k]
            new = old - 1 if old > 1 else old + 1
            if new == n:
                new = n + 1
            prem = ln.premises[:k] + (new,) + ln.premises[k + 1:]
            yield Mutation(n, "premise", f"premise {old} -> {new}",
                           _with(p, i, ProofLine(0, ln.sequent, ln.rule, prem)))

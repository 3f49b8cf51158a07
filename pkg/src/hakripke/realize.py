"""Kleene realizability: the translation x r φ and a bounded checker over ℕ.

¬ψ is realized as ψ → ⊥. The realizer position is an arbitrary term, so the
clauses that substitute j1(x), j2(x) or U(u) for the realizer recurse on
terms directly rather than on a variable followed by substitution.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .machine import ProgramError, execute
from .syntax.ast import (
    And, App, BOT, Eq, Exists, Forall, Formula, Implies, Not, Or, Param, Pred,
    Term, Var, ZERO, all_vars, fresh_indexed, is_atomic, substitute,
)
from .syntax.evaluate import EvaluationError, Evaluator
from .syntax.schemata import T, U


class RealizeError(ValueError):
    pass


def j1(t: Term) -> Term:
    return App("j1", (t,))


def j2(t: Term) -> Term:
    return App("j2", (t,))


def r_translate(x: str, phi: Formula) -> Formula:
    """The formula ``x r phi``."""
    if x in phi.free_vars:
        raise RealizeError(f"realizer variable {x!r} occurs free in the formula")
    return realizes(Var(x), phi)


def realizes(t: Term, phi: Formula) -> Formula:
    """``t r phi`` for a term t whose variables are not bound inside phi's
    translation (fresh names avoid every variable of t and phi)."""
    return _r(t, phi, set(all_vars(phi)) | set(t.free_vars))


def _fresh(base, used: set) -> str:
    name = fresh_indexed(base, used)
    used.add(name)
    return name


def _r(t: Term, f: Formula, used: set) -> Formula:
    if is_atomic(f):
        return f
    if isinstance(f, And):
        return And(_r(j1(t), f.left, used), _r(j2(t), f.right, used))
    if isinstance(f, Or):
        left_tag = Eq(j1(t), ZERO)
        return Or(And(left_tag, _r(j2(t), f.left, used)),
                  And(Not(left_tag), _r(j2(t), f.right, used)))
    if isinstance(f, (Implies, Not)):
        ante, cons = (f.left, f.right) if isinstance(f, Implies) else (f.body, BOT)
        y = _fresh("y", used)
        u = _fresh("u", used)
        return Forall(y, Implies(_r(Var(y), ante, used),
                                 Exists(u, And(T(t, Var(y), Var(u)), _r(U(Var(u)), cons, used)))))
    if isinstance(f, Exists):
        return _r(j2(t), substitute(f.body, f.var, j1(t)), used)
    if isinstance(f, Forall):
        y = f.var
        if y in t.free_vars:
            y = _fresh("y", used)
        used.add(y)
        body = substitute(f.body, f.var, Var(y)) if y != f.var else f.body
        u = _fresh("u", used)
        return Forall(y, Exists(u, And(T(t, Var(y), Var(u)), _r(U(Var(u)), body, used))))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------- verdicts

@dataclass(frozen=True)
class VerifiedBounded:
    quant_bound: int
    fuel: int
    max_steps: int = 0

    name = "verifiedBounded"


@dataclass(frozen=True)
class Refuted:
    """``counterexample`` lists the values of the universally quantified
    variables on the failing branch; ``instance`` is the closed subformula
    that is definitely false there. It may itself contain bounded
    quantifiers, so the fuel and bound used are kept for rechecking."""
    counterexample: tuple
    instance: Formula
    reason: str = ""
    fuel: int = 0
    quant_bound: int = 0

    name = "refuted"


@dataclass(frozen=True)
class Unknown:
    reason: str

    name = "unknown"


# Internal three-valued results: TRUE and FALSE are definite, BTRUE holds
# for all values tried, UNKNOWN means a run ran out of fuel or a bounded
# search was inconclusive.
TRUE, BTRUE, FALSE, UNKNOWN = "true", "bounded", "false", "unknown"


@dataclass
class _Res:
    status: str
    path: tuple = ()
    instance: Formula = None
    reason: str = ""


@dataclass
class _Ctx:
    fuel: int
    bound: int
    ev: Evaluator
    max_steps: int = 0
    runs: dict = field(default_factory=dict)


def _run_pattern(f: Exists):
    """Match ∃u(T(a, b, u) ∧ χ) where u occurs in χ only as U(u)."""
    body = f.body
    if not isinstance(body, And) or not isinstance(body.left, Pred):
        return None
    tp = body.left
    if tp.name != "T" or len(tp.args) != 3 or tp.args[2] != Var(f.var):
        return None
    a, b = tp.args[0], tp.args[1]
    if f.var in a.free_vars or f.var in b.free_vars:
        return None
    marker = Var(f.var + "\x00")
    chi = _replace_u(body.right, f.var, marker)
    if f.var in chi.free_vars:
        return None
    return a, b, chi, marker.name


def _replace_u(f, u, marker):
    """Replace U(u) by a marker variable throughout a formula."""
    target = App("U", (Var(u),))

    def rt(t):
        if t == target:
            return marker
        if isinstance(t, App) and t.args:
            return App(t.fn, tuple(rt(a) for a in t.args))
        return t

    def rf(g):
        if isinstance(g, Eq):
            return Eq(rt(g.left), rt(g.right))
        if isinstance(g, Pred):
            return Pred(g.name, tuple(rt(a) for a in g.args))
        if isinstance(g, (And, Or, Implies)):
            return type(g)(rf(g.left), rf(g.right))
        if isinstance(g, Not):
            return Not(rf(g.body))
        if isinstance(g, (Forall, Exists)):
            if g.var == u:
                return g
            return type(g)(g.var, rf(g.body))
        return g

    return rf(f)


def _eval(f: Formula, ctx: _Ctx) -> _Res:
    if is_atomic(f):
        try:
            ok = ctx.ev.qf(f, {})
        except EvaluationError as exc:
            return _Res(UNKNOWN, reason=str(exc))
        return _Res(TRUE) if ok else _Res(FALSE, instance=f)
    if isinstance(f, Not):
        r = _eval(f.body, ctx)
        if r.status == FALSE:
            return _Res(TRUE)
        if r.status == TRUE:
            return _Res(FALSE, instance=f)
        return _Res(UNKNOWN, reason=r.reason or "negation of a bounded verdict")
    if isinstance(f, And):
        a = _eval(f.left, ctx)
        if a.status == FALSE:
            return a
        b = _eval(f.right, ctx)
        if b.status == FALSE:
            return b
        return _combine_and(a, b)
    if isinstance(f, Or):
        a = _eval(f.left, ctx)
        if a.status == TRUE:
            return a
        b = _eval(f.right, ctx)
        if b.status == TRUE:
            return b
        if a.status == FALSE and b.status == FALSE:
            return _Res(FALSE, instance=f)
        if BTRUE in (a.status, b.status):
            return _Res(BTRUE)
        return _Res(UNKNOWN, reason=a.reason or b.reason)
    if isinstance(f, Implies):
        a = _eval(f.left, ctx)
        if a.status == FALSE:
            return _Res(TRUE)
        b = _eval(f.right, ctx)
        if b.status == TRUE:
            return _Res(TRUE)
        if a.status == TRUE and b.status == FALSE:
            return b
        if a.status == TRUE:
            return b
        # antecedent only boundedly true or unknown
        if b.status == BTRUE:
            return _Res(BTRUE)
        return _Res(UNKNOWN, reason=a.reason or b.reason or "antecedent not decided")
    if isinstance(f, Forall):
        return _eval_forall(f, ctx)
    if isinstance(f, Exists):
        pat = _run_pattern(f)
        if pat is not None:
            return _eval_run(f, pat, ctx)
        return _eval_exists(f, ctx)
    raise TypeError(f"not a formula: {f!r}")


def _combine_and(a, b):
    if a.status == TRUE and b.status == TRUE:
        return _Res(TRUE)
    if UNKNOWN in (a.status, b.status):
        return _Res(UNKNOWN, reason=a.reason or b.reason)
    return _Res(BTRUE)


def _eval_forall(f: Forall, ctx: _Ctx) -> _Res:
    if f.var not in f.body.free_vars:
        return _eval(f.body, ctx)
    unknown = None
    for n in range(ctx.bound):
        r = _eval(substitute(f.body, f.var, Param(n)), ctx)
        if r.status == FALSE:
            return _Res(FALSE, path=((f.var, n),) + r.path, instance=r.instance, reason=r.reason)
        if r.status == UNKNOWN and unknown is None:
            unknown = r
    if unknown is not None:
        return _Res(UNKNOWN, reason=unknown.reason)
    return _Res(BTRUE)


def _eval_exists(f: Exists, ctx: _Ctx) -> _Res:
    if f.var not in f.body.free_vars:
        return _eval(f.body, ctx)
    seen_unknown = False
    for n in range(ctx.bound):
        r = _eval(substitute(f.body, f.var, Param(n)), ctx)
        if r.status in (TRUE, BTRUE):
            return r
        if r.status == UNKNOWN:
            seen_unknown = True
    return _Res(UNKNOWN, reason=f"no witness for {f.var} below {ctx.bound}"
                + (" (some candidates undecided)" if seen_unknown else ""))


def _eval_run(f: Exists, pat, ctx: _Ctx) -> _Res:
    a, b, chi, marker = pat
    try:
        e = ctx.ev.term(a, {})
        x = ctx.ev.term(b, {})
    except EvaluationError as exc:
        return _Res(UNKNOWN, reason=str(exc))
    if marker not in chi.free_vars:
        # χ does not mention the output; a false χ refutes regardless of u
        r = _eval(chi, ctx)
        if r.status == FALSE:
            return r
    key = (e, x)
    out = ctx.runs.get(key)
    if out is None:
        try:
            out = execute(e, x, ctx.fuel)
        except ProgramError:
            out = "invalid"
        ctx.runs[key] = out
    if out == "invalid":
        return _Res(FALSE, instance=f, reason=f"{e} is not a program code, so T({e}, {x}, u) never holds")
    ctx.max_steps = max(ctx.max_steps, out.steps)
    if not out.halted:
        return _Res(UNKNOWN, reason=f"program {e} on input {x} did not halt within fuel {ctx.fuel}")
    # T is deterministic, so the halting trace is the only candidate for u.
    return _eval(substitute(chi, marker, Param(out.output)), ctx)


def bounded_check_realizes(n: int, phi: Formula, fuel: int, quant_bound: int,
                           evaluator: Evaluator | None = None):
    """Three-valued surrogate for ``n r phi`` over ℕ."""
    if phi.free_vars:
        raise RealizeError(f"formula has free variables {sorted(phi.free_vars)}")
    ctx = _Ctx(fuel=fuel, bound=quant_bound, ev=evaluator or Evaluator())
    r = _eval(realizes(Param(n), phi), ctx)
    if r.status in (TRUE, BTRUE):
        return VerifiedBounded(quant_bound, fuel, ctx.max_steps)
    if r.status == FALSE:
        return Refuted(tuple(v for _, v in r.path), r.instance, r.reason, fuel, quant_bound)
    return Unknown(r.reason or "undecided")


def recheck(verdict: Refuted, evaluator: Evaluator | None = None) -> bool:
    """True when the recorded failing instance, evaluated afresh with the
    verdict's fuel and bound, is definitely false."""
    ctx = _Ctx(fuel=verdict.fuel, bound=verdict.quant_bound, ev=evaluator or Evaluator())
    return _eval(verdict.instance, ctx).status == FALSE

"""Instantiators for induction, ECT0, Markov's principle and θ."""
from __future__ import annotations

from .ast import (
    And, App, Eq, Exists, Forall, Formula, Implies, Not, Or, Pred, TOP, Var,
    ZERO, all_vars, closure, fresh, substitute, succ,
)
from .classify import is_almost_negative


class SchemaError(ValueError):
    pass


def T(e, x, u) -> Formula:
    return Pred("T", (e, x, u))


def U(t):
    return App("U", (t,))


def instantiate_induction(phi: Formula, var: str) -> Formula:
    """∀ȳ (φ(0) ∧ ∀x(φ(x) → φ(Sx)) → ∀x φ(x))."""
    base = substitute(phi, var, ZERO)
    step = Forall(var, Implies(phi, substitute(phi, var, succ(Var(var)))))
    body = Implies(And(base, step), Forall(var, phi))
    return closure(body)


def instantiate_ect0(phi: Formula, psi: Formula, x: str, y: str) -> Formula:
    """∀v̄(∀x(φ → ∃y ψ) → ∃z ∀x(φ → ∃u(T(z,x,u) ∧ ψ[y := U(u)])))."""
    if not is_almost_negative(phi):
        raise SchemaError(f"ECT0 hypothesis must be almost negative: {phi}")
    used = all_vars(phi) | all_vars(psi) | {x, y}
    z = fresh("z", used)
    u = fresh("u", used | {z})
    hyp = Forall(x, Implies(phi, Exists(y, psi)))
    witness = substitute(psi, y, U(Var(u)))
    concl = Exists(z, Forall(x, Implies(phi, Exists(u, And(T(Var(z), Var(x), Var(u)), witness)))))
    return closure(Implies(hyp, concl))


def instantiate_mp(phi: Formula, x: str) -> Formula:
    """∀ȳ(∀x(φ ∨ ¬φ) ∧ ¬¬∃xφ → ∃xφ)."""
    ex = Exists(x, phi)
    body = Implies(And(Forall(x, Or(phi, Not(phi))), Not(Not(ex))), ex)
    return closure(body)


def halting(x: str = "x", u: str = "u") -> Formula:
    """H(x) = ∃u T(x, x, u): program x halts on input x."""
    return Exists(u, T(Var(x), Var(x), Var(u)))


def theta_psi() -> Formula:
    h = halting()
    y0 = Eq(Var("y"), ZERO)
    return Or(And(y0, h), And(Not(y0), Not(h)))


def theta_instance() -> Formula:
    return instantiate_ect0(TOP, theta_psi(), "x", "y")

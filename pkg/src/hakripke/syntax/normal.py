"""Characteristic terms for quantifier-free formulas and quantifier-block
contraction through sequence decoding."""
from __future__ import annotations

from .ast import (
    And, App, Bot, Eq, Exists, Forall, Formula, Implies, Not, Or, Pred, Term,
    Top, Var, ZERO, all_vars, fresh_indexed, numeral, subst_formula,
)
from .signature import CHARACTERISTIC


class NormalFormError(ValueError):
    pass


ONE = numeral(1)


def _f(name, *args) -> Term:
    return App(name, args)


def characteristic_term(f: Formula) -> Term:
    """χ with χ = 0 exactly when f is true."""
    if isinstance(f, Top):
        return ZERO
    if isinstance(f, Bot):
        return ONE
    if isinstance(f, Eq):
        t, s = f.left, f.right
        return _f("sg", _f("+", _f("monus", t, s), _f("monus", s, t)))
    if isinstance(f, Pred):
        chi = CHARACTERISTIC.get(f.name)
        if chi is None:
            raise NormalFormError(f"no characteristic function for predicate {f.name!r}")
        return App(chi, f.args)
    if isinstance(f, And):
        return _f("max", characteristic_term(f.left), characteristic_term(f.right))
    if isinstance(f, Or):
        return _f("*", characteristic_term(f.left), characteristic_term(f.right))
    if isinstance(f, Implies):
        a, b = characteristic_term(f.left), characteristic_term(f.right)
        return _f("*", b, _f("sg", _f("monus", ONE, a)))
    if isinstance(f, Not):
        return _f("monus", ONE, characteristic_term(f.body))
    raise NormalFormError("quantified formula has no characteristic term")


def qf_to_atomic(f: Formula):
    """(χ, χ = 0) for a quantifier-free f."""
    chi = characteristic_term(f)
    return chi, Eq(chi, ZERO)


def decode_term(z: str, i: int) -> Term:
    return App("dec", (Var(z), numeral(i)))


def contract_quantifiers(f: Formula) -> Formula:
    """Replace each maximal block Qx1..Qxn (n > 1) of the prefix by a single
    Qz, with (z)_i substituted for x_i. Blocks are handled outermost first;
    single-quantifier blocks are kept as they are."""
    if not isinstance(f, (Forall, Exists)):
        raise NormalFormError("formula does not begin with a quantifier block")
    return _contract(f, set(all_vars(f)))


def _contract(f: Formula, used: set) -> Formula:
    if not isinstance(f, (Forall, Exists)):
        return f
    kind = type(f)
    block = []
    body = f
    while isinstance(body, kind):
        block.append(body.var)
        body = body.body
    if len(block) == 1:
        return kind(block[0], _contract(body, used))
    z = fresh_indexed("z", used)
    used.add(z)
    # The innermost binder of a repeated name is the one that counts.
    mapping = {v: decode_term(z, i) for i, v in enumerate(block)}
    body = subst_formula(body, mapping)
    return kind(z, _contract(body, used))

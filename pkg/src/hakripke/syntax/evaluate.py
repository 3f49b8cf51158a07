"""Evaluation of terms and quantifier-free formulas in the standard model ℕ."""
from __future__ import annotations

from typing import Callable, Mapping

from .ast import (
    And, Bot, Eq, Exists, Forall, Formula, Implies, Not, Or, Param, Pred,
    Term, Top, Var,
)
from .signature import Comp, Named, Proj, Rec, Succ, Zero, standard_definitions


class EvaluationError(ValueError):
    pass


def _natives() -> dict:
    from .. import coding, machine
    return {
        "0": lambda: 0,
        "S": lambda x: x + 1,
        "+": lambda x, y: x + y,
        "*": lambda x, y: x * y,
        "pred": lambda x: x - 1 if x else 0,
        "monus_r": lambda y, x: max(x - y, 0),
        "monus": lambda x, y: max(x - y, 0),
        "sg": lambda x: 1 if x else 0,
        "max": max,
        "j": coding.pair,
        "j1": coding.j1,
        "j2": coding.j2,
        "U": machine.u_extract,
        "dec": coding.decode_at,
        "tchar": machine.tchar,
    }


_NATIVE_CACHE: dict = {}
_STANDARD = {d.name: d for d in standard_definitions()}


def natives() -> dict:
    if not _NATIVE_CACHE:
        _NATIVE_CACHE.update(_natives())
    return _NATIVE_CACHE


def _native_predicates() -> dict:
    from ..machine import t_predicate
    return {"T": t_predicate}


class Evaluator:
    """Standard-model evaluator.

    Builtin arithmetic symbols are computed natively. ``definitions`` maps
    names to PR definitions that are unfolded schema by schema; with
    ``unfold=True`` the standard helpers (+, *, pred, ...) are unfolded as
    well instead of using their native implementations.
    """

    def __init__(self, definitions: Mapping = (), functions: Mapping[str, Callable] = (),
                 predicates: Mapping[str, Callable] = (), unfold: bool = False):
        self.funs = dict(natives())
        self.funs.update(dict(functions))
        self.defs = dict(_STANDARD) if unfold else {}
        for name, d in dict(definitions).items():
            # Natively implemented symbols win unless unfolding is requested.
            if unfold or name not in self.funs:
                self.defs[name] = d
        self.preds = _native_predicates()
        self.preds.update(dict(predicates))

    # PR schemata
    def _apply_body(self, body, args):
        if isinstance(body, Zero):
            return 0
        if isinstance(body, Succ):
            return args[0] + 1
        if isinstance(body, Proj):
            return args[body.index]
        if isinstance(body, Named):
            return self.call(body.name, args)
        if isinstance(body, Comp):
            inner = tuple(self._apply_body(g, args) for g in body.inners)
            return self._apply_body(body.outer, inner)
        if isinstance(body, Rec):
            n, rest = args[0], tuple(args[1:])
            acc = self._apply_body(body.base, rest)
            for i in range(n):
                acc = self._apply_body(body.step, (i, acc) + rest)
            return acc
        raise EvaluationError(f"not a PR body: {body!r}")

    def call(self, name: str, args: tuple) -> int:
        d = self.defs.get(name)
        if d is not None:
            if len(args) != d.arity:
                raise EvaluationError(f"{name!r} expects {d.arity} arguments, got {len(args)}")
            return self._apply_body(d.body, args)
        f = self.funs.get(name)
        if f is None:
            raise EvaluationError(f"unknown function symbol {name!r}")
        try:
            return f(*args)
        except TypeError:
            raise EvaluationError(f"wrong number of arguments for {name!r}") from None

    def term(self, t: Term, env: Mapping[str, int] = ()) -> int:
        if isinstance(t, Var):
            try:
                return env[t.name]
            except (KeyError, TypeError):
                raise EvaluationError(f"unassigned variable {t.name!r}") from None
        if isinstance(t, Param):
            v = t.value
            if not isinstance(v, int) or v < 0:
                raise EvaluationError(f"parameter {v!r} is not a natural number")
            return v
        return self.call(t.fn, tuple(self.term(a, env) for a in t.args))

    def qf(self, f: Formula, env: Mapping[str, int] = ()) -> bool:
        if isinstance(f, Top):
            return True
        if isinstance(f, Bot):
            return False
        if isinstance(f, Eq):
            return self.term(f.left, env) == self.term(f.right, env)
        if isinstance(f, Pred):
            p = self.preds.get(f.name)
            if p is None:
                raise EvaluationError(f"unknown predicate symbol {f.name!r}")
            return bool(p(*(self.term(a, env) for a in f.args)))
        if isinstance(f, And):
            return self.qf(f.left, env) and self.qf(f.right, env)
        if isinstance(f, Or):
            return self.qf(f.left, env) or self.qf(f.right, env)
        if isinstance(f, Implies):
            return not self.qf(f.left, env) or self.qf(f.right, env)
        if isinstance(f, Not):
            return not self.qf(f.body, env)
        if isinstance(f, (Forall, Exists)):
            raise EvaluationError("quantified formula given to the quantifier-free evaluator")
        raise EvaluationError(f"not a formula: {f!r}")


def eval_term(t: Term, env: Mapping[str, int] = (), signature=None, unfold: bool = False) -> int:
    defs = signature.definitions if signature is not None else {}
    return Evaluator(defs, unfold=unfold).term(t, env or {})


def eval_classical_qf(f: Formula, env: Mapping[str, int] = (), signature=None,
                      unfold: bool = False) -> bool:
    defs = signature.definitions if signature is not None else {}
    return Evaluator(defs, unfold=unfold).qf(f, env or {})

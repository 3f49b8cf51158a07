"""Syntactic formula classes."""
from __future__ import annotations

from dataclasses import dataclass

from .ast import ATOMIC, BINARY, Exists, Forall, Formula, Not, Or, is_atomic


@dataclass(frozen=True)
class FormulaClass:
    is_atomic: bool
    is_quantifier_free: bool
    is_almost_negative: bool
    is_sigma1: bool
    is_pi1: bool
    is_pi2: bool

    def names(self) -> list:
        return [k for k, v in self.__dict__.items() if v]


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, ATOMIC):
        return True
    if isinstance(f, BINARY):
        return is_quantifier_free(f.left) and is_quantifier_free(f.right)
    if isinstance(f, Not):
        return is_quantifier_free(f.body)
    return False


def is_almost_negative(f: Formula) -> bool:
    """No disjunction, and every ∃ sits directly on an atomic formula."""
    if isinstance(f, ATOMIC):
        return True
    if isinstance(f, Or):
        return False
    if isinstance(f, BINARY):
        return is_almost_negative(f.left) and is_almost_negative(f.right)
    if isinstance(f, Not):
        return is_almost_negative(f.body)
    if isinstance(f, Exists):
        return is_atomic(f.body)
    return is_almost_negative(f.body)


def _strip(f: Formula, kind) -> Formula:
    while isinstance(f, kind):
        f = f.body
    return f


def is_sigma1(f: Formula) -> bool:
    return is_quantifier_free(_strip(f, Exists))


def is_pi1(f: Formula) -> bool:
    return is_quantifier_free(_strip(f, Forall))


def is_pi2(f: Formula) -> bool:
    return is_sigma1(_strip(f, Forall))


def classify(f: Formula) -> FormulaClass:
    """Prefix classes are read literally: Σ1 is ∃...∃ over a quantifier-free
    matrix, Π1 is ∀...∀ over one, Π2 is ∀...∀∃...∃ over one."""
    return FormulaClass(
        is_atomic=is_atomic(f),
        is_quantifier_free=is_quantifier_free(f),
        is_almost_negative=is_almost_negative(f),
        is_sigma1=is_sigma1(f),
        is_pi1=is_pi1(f),
        is_pi2=is_pi2(f),
    )

"""Provability, consistency and existence-property sentences of a theory.

The proof predicate is the binary symbol ``Proof`` evaluated by
``check_proof_code``. Codes are large, so a coded formula appears in a
sentence as a parameter (a closed constant denoting that number) rather
than as a numeral ``S(S(...0))``.
"""
from __future__ import annotations

from ..coding import CodeError, decode_formula, godel_number
from ..syntax.ast import (
    And, App, BOT, Exists, Forall, Formula, Implies, Not, Param, Pred, Var, numeral,
    substitute,
)
from ..syntax.evaluate import Evaluator
from ..syntax.signature import arithmetic_signature
from .axioms import AxiomRecognizer
from .codes import check_proof_code

PROOF = "Proof"
EX_SENTENCE = "ExSent"
INSTANCE = "inst"


def _existential_sentence(x: int):
    try:
        f = decode_formula(x)
    except (CodeError, ValueError, TypeError):
        return None
    return f if isinstance(f, Exists) and not f.free_vars else None


def is_existential_sentence_code(x: int) -> bool:
    """x codes a closed formula of the form ∃v φ(v)."""
    return _existential_sentence(x) is not None


def instance_code(x: int, y: int) -> int:
    """⌜φ(ẏ)⌝ when x = ⌜∃v φ(v)⌝ is a sentence, and 0 otherwise."""
    f = _existential_sentence(x)
    if f is None:
        return 0
    return godel_number(substitute(f.body, f.var, numeral(y)))


def provability_signature():
    return arithmetic_signature(functions=((INSTANCE, 2),),
                                predicates=((PROOF, 2), (EX_SENTENCE, 1)))


def provability_evaluator(rec: AxiomRecognizer) -> Evaluator:
    """Standard-model evaluator with Proof wired to the theory's checker."""
    return Evaluator(
        functions={INSTANCE: instance_code},
        predicates={PROOF: lambda x, y: check_proof_code(x, y, rec),
                    EX_SENTENCE: is_existential_sentence_code},
    )


def proof_atom(x, y) -> Formula:
    return Pred(PROOF, (x, y))


def pr_formula(rec: AxiomRecognizer, formula_code: int) -> Formula:
    """∃x Proof(x, ⌜φ⌝)."""
    return Exists("x", proof_atom(Var("x"), Param(formula_code)))


def con_formula(rec: AxiomRecognizer) -> Formula:
    """¬∃x Proof(x, ⌜⊥⌝)."""
    return Not(pr_formula(rec, godel_number(BOT)))


def ep_formula(rec: AxiomRecognizer) -> Formula:
    """The existence property as a Π2 sentence in prenex form:

        ∀x ∀w ∃y ∃p (ExSent(x) ∧ Proof(w, x) → Proof(p, inst(x, y)))

    i.e. whenever x codes a provable sentence ∃v φ(v), some instance φ(ẏ)
    is provable. The ∃w in the antecedent becomes ∀w; the consequent's
    existentials move out past a decidable antecedent."""
    x, w, y, p = (Var(n) for n in "xwyp")
    body = Implies(And(Pred(EX_SENTENCE, (x,)), proof_atom(w, x)),
                   proof_atom(p, App(INSTANCE, (x, y))))
    return Forall("x", Forall("w", Exists("y", Exists("p", body))))

"""A corpus of small hand-built HA proofs.

Every proof ends in a sentence, uses each of its lines, and repeats no
sequent, so any single changed field of a line has an observable effect.
"""
from __future__ import annotations

from ..syntax.ast import (
    And, BOT, Exists, Forall, Implies, Not, Or, Var, ZERO, numeral,
)
from ..syntax.parser import parse_formula, parse_term
from .axioms import AxiomRecognizer, definition_index, induction_index, q_index, theory
from .builder import ProofBuilder, compose_mp
from .proof import ProofObject

A = parse_formula("x = 0")
B = parse_formula("y = 0")
C = parse_formula("z = 0")


def _close(b: ProofBuilder, n: int) -> int:
    f = b.formula(n)
    for v in sorted(f.free_vars, reverse=True):
        f = Forall(v, f)
        n = b.rule("allI", (n,), f)
    return n


def _imp_intro(b, n, assumption):
    f = b.formula(n)
    hyps = tuple(h for h in b.hyps(n) if h != assumption)
    return b.rule("impI", (n,), Implies(assumption, f), hyps)


def identity(b):
    return _close(b, _imp_intro(b, b.hyp(A), A))


def and_comm(b):
    ab = And(A, B)
    h = b.hyp(ab)
    n = b.rule("andI", (b.rule("andE2", (h,), B), b.rule("andE1", (h,), A)), And(B, A))
    return _close(b, _imp_intro(b, n, ab))


def or_comm(b):
    ab, ba = Or(A, B), Or(B, A)
    h = b.hyp(ab)
    left = b.rule("orI2", (b.hyp(A),), ba)
    right = b.rule("orI1", (b.hyp(B),), ba)
    n = b.rule("orE", (h, left, right), ba, (ab,))
    return _close(b, _imp_intro(b, n, ab))


def curry(b):
    abc, ab = Implies(And(A, B), C), And(A, B)
    conj = b.rule("andI", (b.hyp(A), b.hyp(B)), ab)
    n = b.mp(b.hyp(abc), conj)
    n = _imp_intro(b, n, B)
    n = _imp_intro(b, n, A)
    return _close(b, _imp_intro(b, n, abc))


def contraposition(b):
    ab, nb = Implies(A, B), Not(B)
    bot = b.rule("notE", (b.hyp(nb), b.mp(b.hyp(ab), b.hyp(A))), BOT)
    n = b.rule("notI", (bot,), Not(A), (ab, nb))
    n = _imp_intro(b, n, nb)
    return _close(b, _imp_intro(b, n, ab))


def double_negation_intro(b):
    na = Not(A)
    bot = b.rule("notE", (b.hyp(na), b.hyp(A)), BOT)
    n = b.rule("notI", (bot,), Not(na), (A,))
    return _close(b, _imp_intro(b, n, A))


def ex_falso(b):
    n = b.rule("botE", (b.hyp(BOT),), parse_formula("0 = S(0)"))
    return _imp_intro(b, n, BOT)


def exists_reflexive(b):
    return b.rule("exI", (b.refl(ZERO),), parse_formula("exists y. y = y"))


def exists_weaken(b):
    ex = Exists("x", A)
    goal = Exists("x", Or(A, B))
    wit = b.rule("exI", (b.rule("orI1", (b.hyp(A),), Or(A, B)),), goal)
    n = b.rule("exE", (b.hyp(ex), wit), goal, (ex,))
    return _close(b, _imp_intro(b, n, ex))


def forall_project(b):
    allab = Forall("x", And(A, B))
    h = b.hyp(allab)
    n = b.rule("andE1", (b.rule("allE", (h,), And(A, B)),), A)
    n = b.rule("allI", (n,), Forall("x", A))
    return _close(b, _imp_intro(b, n, allab))


def successor_nonzero(b):
    return b.inst(b.axiom(q_index(1)), numeral(1))


def successor_injective_instance(b):
    return b.inst(b.axiom(q_index(2)), numeral(1), ZERO)


def one_is_successor(b):
    q7 = b.inst(b.axiom(q_index(7)), numeral(1))
    return b.mp(q7, b.inst(b.axiom(q_index(1)), ZERO))


def equality_symmetric(b):
    xy = parse_formula("x = y")
    n = b.sym(b.hyp(xy))
    return _close(b, _imp_intro(b, n, xy))


def equality_transitive(b):
    xy, yz = parse_formula("x = y"), parse_formula("y = z")
    n = b.trans(b.hyp(xy), b.hyp(yz))
    n = _imp_intro(b, n, yz)
    return _close(b, _imp_intro(b, n, xy))


def zero_left_identity(b):
    """∀x (0 + x = x) by induction on x."""
    phi = parse_formula("0 + x = x")
    ind = b.axiom(induction_index(phi, "x"))
    base = b.inst(b.axiom(definition_index("+", 0)), ZERO)
    hx = b.hyp(phi)
    q4 = b.inst(b.axiom(q_index(4)), ZERO, Var("x"))
    step = b.trans(q4, b.cong("S", (parse_term("0 + x"),), 0, hx))
    step = _imp_intro(b, step, phi)
    step = b.rule("allI", (step,), Forall("x", b.formula(step)))
    both = b.rule("andI", (base, step), And(b.formula(base), b.formula(step)))
    return b.mp(ind, both)


def one_plus_one(b):
    return b.prove_equation(parse_term("S(0) + S(0)"), parse_term("S(S(0))"))


def two_times_three(b):
    return b.prove_equation(parse_term("2 * 3"), numeral(6))


def max_of_one_and_two(b):
    return b.prove_equation(parse_term("max(1, 2)"), numeral(2))


def _dni_imp(rec, phi):
    """A proof of φ → ¬¬φ."""
    b = ProofBuilder(rec)
    na = Not(phi)
    bot = b.rule("notE", (b.hyp(na), b.hyp(phi)), BOT)
    n = b.rule("notI", (bot,), Not(na), (phi,))
    return b.finish(_imp_intro(b, n, phi))


def composed_chain(rec) -> ProofObject:
    """0 = 0, then three compositions with φ → ¬¬φ."""
    b = ProofBuilder(rec)
    p = b.finish(b.refl(ZERO))
    for _ in range(3):
        p = compose_mp(p, _dni_imp(rec, p.conclusion))
    return p


BUILDERS = {
    "identity": identity,
    "and_comm": and_comm,
    "or_comm": or_comm,
    "curry": curry,
    "contraposition": contraposition,
    "double_negation_intro": double_negation_intro,
    "ex_falso": ex_falso,
    "exists_reflexive": exists_reflexive,
    "exists_weaken": exists_weaken,
    "forall_project": forall_project,
    "successor_nonzero": successor_nonzero,
    "successor_injective_instance": successor_injective_instance,
    "one_is_successor": one_is_successor,
    "equality_symmetric": equality_symmetric,
    "equality_transitive": equality_transitive,
    "zero_left_identity": zero_left_identity,
    "one_plus_one": one_plus_one,
    "two_times_three": two_times_three,
    "max_of_one_and_two": max_of_one_and_two,
}


def corpus(rec: AxiomRecognizer | None = None) -> dict:
    """name -> ProofObject, twenty proofs checked against HA."""
    rec = rec or theory("HA")
    out = {}
    for name, build in BUILDERS.items():
        b = ProofBuilder(rec)
        out[name] = b.finish(build(b))
    out["composed_chain"] = composed_chain(rec)
    return out

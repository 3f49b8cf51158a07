import itertools
import random

import pytest
from hypothesis import given, strategies as st

from hakripke.coding import encode_seq
from hakripke.syntax import (
    And, App, BOT, Eq, Exists, Forall, FormulaSyntaxError, Implies, Not, Or, Pred, TOP, Var,
    ZERO, arithmetic_signature, classify, closure, contract_quantifiers, eval_classical_qf,
    eval_term, instantiate_ect0, instantiate_induction, instantiate_mp, numeral, parse_formula,
    parse_term, print_formula, qf_to_atomic, substitute, theta_instance,
)
from hakripke.syntax.ast import all_vars, alpha_equivalent, match_instance, subst_formula
from hakripke.syntax.normal import NormalFormError, characteristic_term
from hakripke.syntax.schemata import SchemaError, T, halting
from strategies import formulas, qf_formulas, random_qf, terms


def S(t):
    return App("S", (t,))


# ------------------------------------------------------------------ parser

def test_parse_atom():
    assert parse_formula("0 = 0") == Eq(ZERO, ZERO)


def test_parse_quantifiers():
    f = parse_formula("forall x. exists y. y = S(x)")
    assert f == Forall("x", Exists("y", Eq(Var("y"), S(Var("x")))))


def test_parse_precedence():
    p, q, r = (Pred(n, ()) for n in "pqr")
    assert parse_formula("~(p \\/ q) -> r") == Implies(Not(Or(p, q)), r)


def test_implication_is_right_associative():
    p, q, r = (Pred(n, ()) for n in "pqr")
    assert parse_formula("p -> q -> r") == Implies(p, Implies(q, r))


def test_conjunction_binds_tighter_than_disjunction():
    p, q, r = (Pred(n, ()) for n in "pqr")
    assert parse_formula("p \\/ q /\\ r") == Or(p, And(q, r))


def test_numerals_and_arithmetic():
    assert parse_term("2") == numeral(2)
    assert parse_term("x + y * z") == App("+", (Var("x"), App("*", (Var("y"), Var("z")))))


@pytest.mark.parametrize("text", ["", "forall . x = x", "x = ", "(x = 0", "x = 0 y"])
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse_formula(text)


def test_signature_checks_arity():
    sig = arithmetic_signature()
    with pytest.raises(FormulaSyntaxError):
        parse_formula("S(0, 0) = 0", sig)
    with pytest.raises(FormulaSyntaxError):
        parse_formula("Q(0)", sig)


@given(formulas())
def test_print_parse_round_trip(f):
    assert parse_formula(print_formula(f)) == f


# ---------------------------------------------------------------- classify

def test_atoms_are_in_every_class():
    c = classify(Eq(ZERO, ZERO))
    assert all([c.is_atomic, c.is_quantifier_free, c.is_almost_negative,
                c.is_sigma1, c.is_pi1, c.is_pi2])


def test_pi2_shape():
    c = classify(parse_formula("forall x. exists y. y = S(x)"))
    assert c.is_pi2 and not c.is_pi1 and not c.is_sigma1


def test_existential_atom_is_almost_negative():
    assert classify(parse_formula("exists y. y = 0")).is_almost_negative


def test_disjunction_is_not_almost_negative():
    assert not classify(parse_formula("x = 0 \\/ x = 1")).is_almost_negative
    assert not classify(parse_formula("exists y. ~(y = 0)")).is_almost_negative


@given(formulas(), st.sampled_from(["x", "y", "z"]))
def test_pi1_stable_under_generalization(f, v):
    if classify(f).is_pi1:
        assert classify(Forall(v, f)).is_pi1
    if classify(f).is_pi2:
        assert classify(Forall(v, f)).is_pi2


# ------------------------------------------------------------ substitution

def test_substitute_under_unrelated_binder():
    f = parse_formula("exists y. y = x")
    assert substitute(f, "x", ZERO) == parse_formula("exists y. y = 0")


def test_substitute_renames_to_avoid_capture():
    f = parse_formula("exists y. y = x")
    assert substitute(f, "x", Var("y")) == Exists("y'", Eq(Var("y'"), Var("y")))


def test_substitute_all_occurrences():
    assert substitute(parse_formula("x = x"), "x", S(ZERO)) == Eq(S(ZERO), S(ZERO))


@given(formulas(), terms(max_leaves=3))
def test_substitution_does_not_capture(f, t):
    g = substitute(f, "x", t)
    expected = (f.free_vars - {"x"}) | (t.free_vars if "x" in f.free_vars else frozenset())
    assert g.free_vars == expected


@given(formulas(), terms(max_leaves=3))
def test_match_instance_finds_substituted_term(f, t):
    g = substitute(f, "x", t)
    if "x" in f.free_vars and g == subst_formula(f, {"x": t}):
        ok, found = match_instance(f, g, "x")
        assert ok and found == t


@given(formulas())
def test_alpha_equivalence_of_renamed_binders(f):
    if isinstance(f, (Forall, Exists)):
        fresh = "w"
        renamed = type(f)(fresh, substitute(f.body, f.var, Var(fresh)))
        if fresh not in all_vars(f):
            assert alpha_equivalent(f, renamed)


# ---------------------------------------------------------------- schemata

def test_induction_template():
    got = instantiate_induction(parse_formula("x = x"), "x")
    want = parse_formula("0 = 0 /\\ (forall x. x = x -> S(x) = S(x)) -> forall x. x = x")
    assert got == want


def test_induction_template_with_sum():
    got = instantiate_induction(parse_formula("x + 0 = x"), "x")
    want = parse_formula("0 + 0 = 0 /\\ (forall x. x + 0 = x -> S(x) + 0 = S(x)) -> forall x. x + 0 = x")
    assert got == want


def test_induction_closes_over_parameters():
    got = instantiate_induction(parse_formula("x + y = x"), "x")
    assert isinstance(got, Forall) and got.var == "y" and not got.free_vars


def test_ect0_template():
    got = instantiate_ect0(parse_formula("x = x"), parse_formula("y = S(x)"), "x", "y")
    want = parse_formula("(forall x. x = x -> exists y. y = S(x)) -> "
                         "exists z. forall x. x = x -> exists u. T(z, x, u) /\\ U(u) = S(x)")
    assert got == want


def test_ect0_rejects_disjunctive_hypothesis():
    with pytest.raises(SchemaError):
        instantiate_ect0(parse_formula("p \\/ q"), parse_formula("y = 0"), "x", "y")


def test_theta_is_the_halting_case_split():
    h = halting()
    psi = Or(And(Eq(Var("y"), ZERO), h), And(Not(Eq(Var("y"), ZERO)), Not(h)))
    theta = theta_instance()
    assert theta == instantiate_ect0(TOP, psi, "x", "y")
    assert not theta.free_vars
    assert classify(h).is_sigma1
    assert not classify(theta).is_almost_negative


@given(qf_formulas(("x", "y", "v")), st.sampled_from([Eq(Var("y"), Var("v")), parse_formula("y = S(x)")]))
def test_ect0_instances_are_sentences(phi, psi):
    if classify(phi).is_almost_negative:
        assert not instantiate_ect0(phi, psi, "x", "y").free_vars


def test_mp_template():
    got = instantiate_mp(parse_formula("x = 0"), "x")
    want = parse_formula("(forall x. x = 0 \\/ ~(x = 0)) /\\ ~~(exists x. x = 0) -> exists x. x = 0")
    assert got == want


def test_mp_closes_over_parameters():
    got = instantiate_mp(parse_formula("x = y"), "x")
    assert got.var == "y" and not got.free_vars


def test_mp_degenerate():
    got = instantiate_mp(BOT, "x")
    want = And(Forall("x", Or(BOT, Not(BOT))), Not(Not(Exists("x", BOT))))
    assert got == Implies(want, Exists("x", BOT))


# -------------------------------------------------------------- evaluation

def test_eval_numeral():
    assert eval_term(S(S(ZERO))) == 2


def test_eval_sum_by_unfolding_definitions():
    assert eval_term(parse_term("2 + 3"), unfold=True) == 5
    assert eval_term(parse_term("2 * 3"), unfold=True) == 6
    assert eval_term(parse_term("max(2, 5)"), unfold=True) == 5


def test_eval_false_equation():
    assert eval_classical_qf(parse_formula("S(0) = 0")) is False


@given(terms(), st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_unfolded_and_native_evaluation_agree(t, a, b, c):
    env = {"x": a, "y": b, "z": c}
    if eval_term(t, env) < 200:
        assert eval_term(t, env, unfold=True) == eval_term(t, env)


# ------------------------------------------------------ characteristic terms

def test_true_atom_has_zero_characteristic():
    chi, atomic = qf_to_atomic(parse_formula("0 = 0"))
    assert eval_term(chi) == 0
    assert atomic == Eq(chi, ZERO)


def test_false_formula_has_characteristic_one():
    chi, atomic = qf_to_atomic(parse_formula("~(0 = 0)"))
    assert eval_term(chi) == 1
    assert eval_classical_qf(atomic) is False


def test_characteristic_of_t_predicate():
    chi = characteristic_term(T(Var("e"), Var("x"), Var("u")))
    assert chi == App("tchar", (Var("e"), Var("x"), Var("u")))


def test_characteristic_rejects_quantifiers():
    with pytest.raises(NormalFormError):
        qf_to_atomic(parse_formula("exists x. x = 0"))


@given(qf_formulas(), st.integers(0, 19), st.integers(0, 19), st.integers(0, 19))
def test_characteristic_term_decides_formula(f, a, b, c):
    env = {"x": a, "y": b, "z": c}
    chi, atomic = qf_to_atomic(f)
    assert eval_classical_qf(f, env) == (eval_term(chi, env) == 0)
    assert eval_classical_qf(atomic, env) == eval_classical_qf(f, env)


def test_characteristic_terms_on_seeded_corpus():
    rng = random.Random(7)
    for _ in range(60):
        f = random_qf(rng, ("x", "y"))
        chi, _ = qf_to_atomic(f)
        for a, b in itertools.product(range(6), repeat=2):
            env = {"x": a, "y": b}
            assert eval_classical_qf(f, env) == (eval_term(chi, env) == 0)


# ----------------------------------------------------- quantifier contraction

def test_contraction_of_commutativity():
    got = contract_quantifiers(parse_formula("forall x. forall y. x + y = y + x"))
    d0, d1 = (App("dec", (Var("z"), numeral(i))) for i in (0, 1))
    assert got == Forall("z", Eq(App("+", (d0, d1)), App("+", (d1, d0))))


def test_single_quantifier_blocks_unchanged():
    f = parse_formula("exists x. x = 0")
    assert contract_quantifiers(f) == f


def test_three_variable_block():
    got = contract_quantifiers(parse_formula("forall x. forall y. forall z. x + y = z"))
    assert isinstance(got, Forall) and not isinstance(got.body, Forall)
    for i in range(3):
        assert f"dec({got.var}, {i})" in print_formula(got)


def _matrix_holds(f, env):
    return eval_classical_qf(f, env)


@given(qf_formulas(("x", "y")))
def test_contracted_block_agrees_on_coded_tuples(matrix):
    f = Forall("x", Forall("y", matrix))
    g = contract_quantifiers(f)
    for a, b in itertools.product(range(4), repeat=2):
        z = encode_seq([a, b])
        assert _matrix_holds(g.body, {g.var: z}) == _matrix_holds(matrix, {"x": a, "y": b})


def test_closure_sorts_variables():
    f = closure(parse_formula("y = x"))
    assert f == Forall("x", Forall("y", parse_formula("y = x")))

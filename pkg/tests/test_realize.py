import random

import pytest
from hypothesis import given

from hakripke.coding import pair
from hakripke.machine import Halt, Inc, assemble, execute, parse_program, program
from hakripke.realize import (
    Refuted, RealizeError, Unknown, VerifiedBounded, bounded_check_realizes, r_translate,
    realizes, recheck,
)
from hakripke.syntax import (
    And, App, Eq, Exists, Forall, Implies, Not, Or, Pred, Var, ZERO, classify,
    numeral, parse_formula, substitute,
)
from hakripke.syntax.ast import alpha_equivalent
from hakripke.syntax.schemata import T, U
from strategies import formulas

from pathlib import Path

DATA = Path(__file__).parent / "data"
SUCC = parse_formula("forall y. exists z. z = S(y)")


def successor_realizer():
    return assemble(parse_program((DATA / "successor_realizer.rm").read_text()))


def j1(t):
    return App("j1", (t,))


def j2(t):
    return App("j2", (t,))


# ------------------------------------------------------------ translation

def test_atoms_realize_themselves():
    assert r_translate("x", parse_formula("0 = 0")) == parse_formula("0 = 0")


def test_existential_clause():
    assert r_translate("x", parse_formula("exists y. y = 0")) == Eq(j1(Var("x")), ZERO)


def test_conjunction_clause():
    got = r_translate("x", parse_formula("0 = 0 /\\ exists y. y = 0"))
    assert got == And(parse_formula("0 = 0"), Eq(j1(j2(Var("x"))), ZERO))


def test_disjunction_clause():
    p, q = Pred("p", ()), Pred("q", ())
    tag = Eq(j1(Var("x")), ZERO)
    assert r_translate("x", Or(p, q)) == Or(And(tag, p), And(Not(tag), q))


def test_implication_clause():
    got = r_translate("x", parse_formula("0 = 0 -> S(0) = 0"))
    want = Forall("y", Implies(parse_formula("0 = 0"),
                               Exists("u", And(T(Var("x"), Var("y"), Var("u")), parse_formula("S(0) = 0")))))
    assert got == want


def test_negation_is_implication_of_falsity():
    got = r_translate("x", parse_formula("~(0 = 0)"))
    assert got == r_translate("x", parse_formula("0 = 0 -> false"))


def test_universal_clause():
    got = r_translate("x", SUCC)
    want = Forall("y", Exists("u", And(T(Var("x"), Var("y"), Var("u")),
                                       Eq(j1(U(Var("u"))), App("S", (Var("y"),))))))
    assert got == want


def test_realizer_variable_must_not_be_free():
    with pytest.raises(RealizeError):
        r_translate("x", parse_formula("x = 0"))


def test_fresh_names_avoid_realizer_term():
    got = realizes(Var("y"), parse_formula("forall y. y = 0"))
    assert got.var != "y" and "y" in got.free_vars


@given(formulas(("y", "z", "w")))
def test_translation_hygiene(f):
    a = r_translate("a", f)
    b = r_translate("b", f)
    assert alpha_equivalent(substitute(a, "a", Var("b")), b)
    assert a.free_vars <= f.free_vars | {"a"}


def _has_or(f):
    if isinstance(f, Or):
        return True
    for attr in ("left", "right", "body"):
        if hasattr(f, attr) and _has_or(getattr(f, attr)):
            return True
    return False


def _exists_shapes_ok(f):
    """Every ∃ is a T-witness ∃u(T(..,u) ∧ ..)."""
    if isinstance(f, Exists):
        body = f.body
        if not (isinstance(body, And) and isinstance(body.left, Pred) and body.left.name == "T"):
            return False
        return _exists_shapes_ok(body.right)
    return all(_exists_shapes_ok(getattr(f, a)) for a in ("left", "right", "body") if hasattr(f, a))


@given(formulas(("y", "z")))
def test_almost_negative_translations_have_no_disjunction(f):
    if classify(f).is_almost_negative and not _has_or(f):
        g = r_translate("x", f)
        assert not _has_or(g)


@given(formulas(("y", "z")))
def test_translation_of_existential_free_formulas_uses_only_witness_quantifiers(f):
    if not _has_or(f) and "Exists" not in repr(f):
        assert _exists_shapes_ok(r_translate("x", f))


# ---------------------------------------------------------- bounded check

def test_atomic_truth_verified_for_any_realizer():
    for n in (0, 7, 12345):
        assert isinstance(bounded_check_realizes(n, parse_formula("0 = 0"), 10, 5), VerifiedBounded)


def test_successor_realizer_verifies_at_small_bound():
    v = bounded_check_realizes(successor_realizer(), SUCC, 10**6, 12)
    assert isinstance(v, VerifiedBounded)
    assert v.quant_bound == 12 and v.max_steps == 53202


def test_successor_realizer_outputs_pairs():
    e = successor_realizer()
    for y in range(12):
        assert execute(e, y, 10**6).output == pair(y + 1, 0)


def test_successor_realizer_out_of_fuel_is_unknown():
    v = bounded_check_realizes(successor_realizer(), SUCC, 10**4, 20)
    assert isinstance(v, Unknown)
    assert "fuel" in v.reason


def test_identity_program_does_not_realize_successor():
    v = bounded_check_realizes(assemble(program(Halt())), SUCC, 100, 5)
    assert isinstance(v, Refuted)
    assert recheck(v)


def test_universal_falsity_refuted_at_one():
    e = assemble(program(Halt()))
    v = bounded_check_realizes(e, parse_formula("forall y. y = 0"), 100, 5)
    assert isinstance(v, Refuted) and v.counterexample == (1,)
    assert recheck(v)


def test_raw_realizers_for_existentials():
    phi = parse_formula("exists y. y = S(S(0))")
    assert isinstance(bounded_check_realizes(pair(2, 0), phi, 10, 5), VerifiedBounded)
    assert isinstance(bounded_check_realizes(pair(1, 0), phi, 10, 5), Refuted)


def test_free_variables_rejected():
    with pytest.raises(RealizeError):
        bounded_check_realizes(0, parse_formula("x = 0"), 10, 5)


def test_negation_of_false_atom_realized_by_anything_halting():
    phi = parse_formula("~(S(0) = 0)")
    assert isinstance(bounded_check_realizes(assemble(program(Halt())), phi, 10, 5), VerifiedBounded)


# ------------------------------------------- refutations and monotonicity

def _closed_atom(rng):
    return Eq(numeral(rng.randint(0, 2)), numeral(rng.randint(0, 2)))


def _sentence(rng, depth=3, bound_vars=()):
    if depth == 0 or rng.random() < 0.25:
        if bound_vars and rng.random() < 0.6:
            return Eq(Var(rng.choice(bound_vars)), numeral(rng.randint(0, 2)))
        return _closed_atom(rng)
    k = rng.randrange(6)
    sub = lambda: _sentence(rng, depth - 1, bound_vars)
    if k == 0:
        return And(sub(), sub())
    if k == 1:
        return Or(sub(), sub())
    if k == 2:
        return Implies(sub(), sub())
    if k == 3:
        return Not(sub())
    v = "v%d" % depth
    inner = _sentence(rng, depth - 1, bound_vars + (v,))
    return (Forall if k == 4 else Exists)(v, inner)


def _realizers(rng):
    progs = [program(Halt()), program(Inc(0), Halt()), program(Inc(1), Halt())]
    return [assemble(p) for p in progs] + [rng.randint(0, 64) for _ in range(3)]


def _regression_corpus(size=120, seed=9):
    rng = random.Random(seed)
    return [(n, _sentence(rng)) for _ in range(size) for n in _realizers(rng)]


def test_refutations_carry_recheckable_witnesses():
    refuted = 0
    for n, phi in _regression_corpus():
        v = bounded_check_realizes(n, phi, 200, 4)
        if isinstance(v, Refuted):
            refuted += 1
            assert recheck(v)
    assert refuted > 50


def test_verdicts_stable_as_fuel_grows():
    for n, phi in _regression_corpus(60, seed=10):
        small = bounded_check_realizes(n, phi, 2, 4)
        large = bounded_check_realizes(n, phi, 500, 4)
        if isinstance(small, VerifiedBounded):
            assert isinstance(large, VerifiedBounded)
        if isinstance(small, Refuted):
            assert isinstance(large, Refuted)


def test_larger_bound_refutes_only_beyond_smaller_bound():
    # A bounded verdict is not a truth claim: a larger search may find a
    # counterexample, but only one that the smaller search never tried.
    for n, phi in _regression_corpus(60, seed=10):
        small = bounded_check_realizes(n, phi, 500, 2)
        large = bounded_check_realizes(n, phi, 500, 6)
        if isinstance(small, VerifiedBounded) and isinstance(large, Refuted):
            assert max(large.counterexample, default=0) >= 2 or not recheck(
                Refuted(large.counterexample, large.instance, "", 500, 2))


def test_bounded_universal_falsity_beyond_bound():
    phi = parse_formula("forall y. ~(y = 5)")
    e = assemble(program(Halt()))
    assert isinstance(bounded_check_realizes(e, phi, 100, 3), VerifiedBounded)
    v = bounded_check_realizes(e, phi, 100, 6)
    assert isinstance(v, Refuted) and v.counterexample[0] == 5

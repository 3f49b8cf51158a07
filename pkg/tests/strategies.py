"""Hypothesis strategies and seeded generators for formulas and terms."""
import random

from hypothesis import strategies as st

from hakripke.syntax.ast import (
    And, App, BOT, Eq, Exists, Forall, Implies, Not, Or, Pred, TOP, Var, numeral,
)

VARS = ("x", "y", "z")


def terms(variables=VARS, max_leaves=6):
    leaves = st.one_of(st.sampled_from([Var(v) for v in variables]),
                       st.integers(0, 3).map(numeral))
    return st.recursive(leaves, lambda sub: st.one_of(
        sub.map(lambda t: App("S", (t,))),
        st.tuples(sub, sub).map(lambda p: App("+", p)),
        st.tuples(sub, sub).map(lambda p: App("*", p)),
    ), max_leaves=max_leaves)


def atoms(variables=VARS, predicates=True):
    out = [st.just(TOP), st.just(BOT), st.tuples(terms(variables, 3), terms(variables, 3)).map(lambda p: Eq(*p))]
    if predicates:
        out.append(terms(variables, 3).map(lambda t: Pred("P", (t,))))
        out.append(st.just(Pred("q", ())))
    return st.one_of(*out)


def qf_formulas(variables=VARS, predicates=False, max_leaves=8):
    return st.recursive(atoms(variables, predicates), lambda sub: st.one_of(
        sub.map(Not),
        st.tuples(sub, sub).map(lambda p: And(*p)),
        st.tuples(sub, sub).map(lambda p: Or(*p)),
        st.tuples(sub, sub).map(lambda p: Implies(*p)),
    ), max_leaves=max_leaves)


def formulas(variables=VARS, max_leaves=10):
    return st.recursive(atoms(variables), lambda sub: st.one_of(
        sub.map(Not),
        st.tuples(sub, sub).map(lambda p: And(*p)),
        st.tuples(sub, sub).map(lambda p: Or(*p)),
        st.tuples(sub, sub).map(lambda p: Implies(*p)),
        st.tuples(st.sampled_from(variables), sub).map(lambda p: Forall(*p)),
        st.tuples(st.sampled_from(variables), sub).map(lambda p: Exists(*p)),
    ), max_leaves=max_leaves)


# Seeded generators, used where a fixed corpus size is wanted.

def random_term(rng: random.Random, variables=VARS, depth=3):
    if depth == 0 or rng.random() < 0.3:
        if variables and rng.random() < 0.6:
            return Var(rng.choice(variables))
        return numeral(rng.randint(0, 3))
    kind = rng.choice(["S", "+", "*"])
    if kind == "S":
        return App("S", (random_term(rng, variables, depth - 1),))
    return App(kind, (random_term(rng, variables, depth - 1), random_term(rng, variables, depth - 1)))


def random_qf(rng: random.Random, variables=VARS, depth=3):
    if depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.1:
            return TOP
        if r < 0.2:
            return BOT
        return Eq(random_term(rng, variables, 2), random_term(rng, variables, 2))
    kind = rng.choice(["not", "and", "or", "implies"])
    if kind == "not":
        return Not(random_qf(rng, variables, depth - 1))
    cls = {"and": And, "or": Or, "implies": Implies}[kind]
    return cls(random_qf(rng, variables, depth - 1), random_qf(rng, variables, depth - 1))


def random_formula(rng: random.Random, variables=VARS, depth=4):
    if depth == 0 or rng.random() < 0.2:
        return random_qf(rng, variables, 0)
    kind = rng.choice(["not", "and", "or", "implies", "forall", "exists"])
    if kind == "not":
        return Not(random_formula(rng, variables, depth - 1))
    if kind in ("forall", "exists"):
        cls = Forall if kind == "forall" else Exists
        return cls(rng.choice(variables), random_formula(rng, variables, depth - 1))
    cls = {"and": And, "or": Or, "implies": Implies}[kind]
    return cls(random_formula(rng, variables, depth - 1), random_formula(rng, variables, depth - 1))



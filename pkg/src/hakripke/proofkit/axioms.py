"""Axiom recognizers with self-describing indices.

An axiom index is ``pack([schema, data...])``; recognizing an axiom means
decoding the index, regenerating the instance it describes and comparing
it with the candidate formula. Schemas:

    1  Robinson axiom            [k]              k = 1..7
    2  defining axiom            [name, which]    which = 0 (explicit / base), 1 (step)
    3  induction instance        [⌜φ⌝, var]
    4  reflexivity of =          []
    5  substitutivity of =       [⌜φ⌝, u, v]      ∀(u = v → (φ → φ[u:=v]))
    6  ECT0 instance             [⌜φ⌝, ⌜ψ⌝, x, y]
    7  theory-specific axiom     [i]
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..coding import CodeError, decode_formula, godel_number, name_code, name_decode, pack, unpack
from ..syntax.ast import (
    App, Eq, Formula, Implies, Pred, Var, ZERO, closure,
    forall_all, substitute, succ,
)
from ..syntax.parser import parse_formula
from ..syntax.schemata import SchemaError, instantiate_ect0, instantiate_induction
from ..syntax.signature import Comp, Named, Proj, Rec, Succ, Zero, arithmetic_signature

Q, PRDEF, INDUCTION, REFL, LEIBNIZ, ECT0, CUSTOM = 1, 2, 3, 4, 5, 6, 7
SCHEMA_NAMES = {Q: "Q", PRDEF: "definition", INDUCTION: "induction", REFL: "reflexivity",
                LEIBNIZ: "substitutivity", ECT0: "ECT0", CUSTOM: "custom"}

Q_AXIOMS = tuple(parse_formula(t) for t in (
    "forall x. ~(S(x) = 0)",
    "forall x. forall y. S(x) = S(y) -> x = y",
    "forall x. x + 0 = x",
    "forall x. forall y. x + S(y) = S(x + y)",
    "forall x. x * 0 = 0",
    "forall x. forall y. x * S(y) = x * y + x",
    "forall x. ~(x = 0) -> exists y. x = S(y)",
))

REFLEXIVITY = parse_formula("forall x. x = x")


class AxiomError(ValueError):
    pass


# ------------------------------------------------------- defining axioms

def _term(body, args):
    if isinstance(body, Zero):
        return ZERO
    if isinstance(body, Succ):
        return succ(args[0])
    if isinstance(body, Proj):
        return args[body.index]
    if isinstance(body, Named):
        return App(body.name, tuple(args))
    if isinstance(body, Comp):
        return _term(body.outer, [_term(g, args) for g in body.inners])
    raise AxiomError("primitive recursion nested inside a definition has no term form")


def defining_axioms(d) -> tuple:
    """The universally closed defining equations of a PR definition."""
    ys = [Var(f"y{i}") for i in range(d.arity)]
    if isinstance(d.body, Rec):
        n, rest = Var("n"), ys[1:]
        base = Eq(App(d.name, (ZERO, *rest)), _term(d.body.base, rest))
        acc = App(d.name, (n, *rest))
        step = Eq(App(d.name, (succ(n), *rest)), _term(d.body.step, [n, acc, *rest]))
        return (forall_all([v.name for v in rest], base),
                forall_all(["n"] + [v.name for v in rest], step))
    return (forall_all([v.name for v in ys], Eq(App(d.name, tuple(ys)), _term(d.body, ys))),)


def leibniz(phi: Formula, u: str, v: str) -> Formula:
    if u == v:
        raise AxiomError("substitutivity needs two distinct variables")
    return closure(Implies(Eq(Var(u), Var(v)), Implies(phi, substitute(phi, u, Var(v)))))


# ------------------------------------------------------------ recognizers

@dataclass(frozen=True, eq=False)
class AxiomRecognizer:
    """A decidable axiom set: which schemas are admitted, the signature whose
    definitions supply defining axioms, and any extra axioms."""
    name: str
    schemas: frozenset
    signature: object = field(default_factory=arithmetic_signature)
    custom: tuple = ()
    atomic_induction_only: bool = False

    def axiom(self, index: int):
        """The formula an index denotes in this theory, or None."""
        try:
            toks = unpack(index)
        except CodeError:
            return None
        if not toks or toks[0] not in self.schemas:
            return None
        try:
            return self._regenerate(toks[0], toks[1:])
        except (CodeError, AxiomError, SchemaError, ValueError, IndexError, KeyError):
            return None

    def _regenerate(self, tag, data):
        if tag == Q:
            (k,) = data
            return Q_AXIOMS[k - 1] if 1 <= k <= len(Q_AXIOMS) else None
        if tag == PRDEF:
            name, which = name_decode(data[0]), data[1]
            if len(data) != 2:
                return None
            d = self.signature.definitions[name]
            axs = defining_axioms(d)
            return axs[which] if which < len(axs) else None
        if tag == INDUCTION:
            code, var = data
            phi = decode_formula(code)
            if self.atomic_induction_only and not isinstance(phi, (Eq, Pred)):
                return None
            return instantiate_induction(phi, name_decode(var))
        if tag == REFL:
            return REFLEXIVITY if not data else None
        if tag == LEIBNIZ:
            code, u, v = data
            return leibniz(decode_formula(code), name_decode(u), name_decode(v))
        if tag == ECT0:
            pc, sc, x, y = data
            return instantiate_ect0(decode_formula(pc), decode_formula(sc), name_decode(x), name_decode(y))
        if tag == CUSTOM:
            (i,) = data
            return self.custom[i] if i < len(self.custom) else None
        return None

    def describe(self, index: int) -> str:
        try:
            toks = unpack(index)
        except CodeError as exc:
            return f"not an axiom index: {exc}"
        return SCHEMA_NAMES.get(toks[0], f"unknown schema {toks[0]}") if toks else "empty index"


def axiom_check(rec: AxiomRecognizer, index: int, phi: Formula) -> bool:
    got = rec.axiom(index)
    return got is not None and got == phi


def theory(name: str, signature=None, custom=()) -> AxiomRecognizer:
    """Q, iPRA, HA, HA+ECT0, or a custom list of axioms (with equality)."""
    sig = signature or arithmetic_signature()
    base = {Q, REFL, LEIBNIZ}
    table = {
        "Q": (base, False),
        "iPRA": (base | {PRDEF, INDUCTION}, True),
        "HA": (base | {PRDEF, INDUCTION}, False),
        "HA+ECT0": (base | {PRDEF, INDUCTION, ECT0}, False),
        "custom": (base | {CUSTOM}, False),
    }
    if name not in table:
        raise AxiomError(f"unknown theory {name!r}; expected one of {sorted(table)}")
    schemas, atomic = table[name]
    return AxiomRecognizer(name, frozenset(schemas), sig, tuple(custom), atomic)


# ---------------------------------------------------------- index builders

def q_index(k: int) -> int:
    return pack([Q, k])


def definition_index(name: str, which: int = 0) -> int:
    return pack([PRDEF, name_code(name), which])


def induction_index(phi: Formula, var: str) -> int:
    return pack([INDUCTION, godel_number(phi), name_code(var)])


def refl_index() -> int:
    return pack([REFL])


def leibniz_index(phi: Formula, u: str, v: str) -> int:
    return pack([LEIBNIZ, godel_number(phi), name_code(u), name_code(v)])


def ect0_index(phi: Formula, psi: Formula, x: str, y: str) -> int:
    return pack([ECT0, godel_number(phi), godel_number(psi), name_code(x), name_code(y)])


def custom_index(i: int) -> int:
    return pack([CUSTOM, i])

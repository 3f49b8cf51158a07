"""Natural-deduction proofs as numbered lines of sequents.

Each line is either an axiom (``w > 0``, axiom index ``w - 1``, no
hypotheses) or a rule application citing earlier lines. A rule line may
carry more hypotheses than the rule needs (implicit weakening); hypotheses
are compared as sets of syntactically identical formulas.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..syntax.ast import (
    And, BOT, Bot, Exists, Forall, Formula, Implies, Not, Or, Var, match_instance,
)
from .axioms import AxiomRecognizer

RULES = ("hyp", "andI", "andE1", "andE2", "orI1", "orI2", "orE", "impI", "impE",
         "notI", "notE", "botE", "allI", "allE", "exI", "exE")
RULE_TAGS = {name: i + 1 for i, name in enumerate(RULES)}
RULE_NAMES = {v: k for k, v in RULE_TAGS.items()}
ARITY = {"hyp": 0, "andI": 2, "andE1": 1, "andE2": 1, "orI1": 1, "orI2": 1, "orE": 3,
         "impI": 1, "impE": 2, "notI": 1, "notE": 2, "botE": 1, "allI": 1, "allE": 1,
         "exI": 1, "exE": 2}


class ProofError(ValueError):
    pass


@dataclass(frozen=True)
class Sequent:
    hypotheses: tuple
    conclusion: Formula

    def __post_init__(self):
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))

    @property
    def hyps(self) -> frozenset:
        return frozenset(self.hypotheses)

    def __str__(self):
        from ..syntax.parser import print_formula
        left = ", ".join(print_formula(h) for h in self.hypotheses)
        return f"{left} |- {print_formula(self.conclusion)}".lstrip()


@dataclass(frozen=True)
class ProofLine:
    """``w > 0``: axiom with index ``w - 1``. ``w == 0``: ``rule`` applied to
    the 1-based line numbers in ``premises``."""
    w: int
    sequent: Sequent
    rule: str | None = None
    premises: tuple = ()

    @property
    def conclusion(self) -> Formula:
        return self.sequent.conclusion

    @property
    def axiom_index(self):
        return self.w - 1 if self.w > 0 else None


def axiom_line(index: int, phi: Formula) -> ProofLine:
    return ProofLine(index + 1, Sequent((), phi))


def rule_line(rule: str, premises, hyps, phi: Formula) -> ProofLine:
    return ProofLine(0, Sequent(tuple(hyps), phi), rule, tuple(premises))


@dataclass(frozen=True)
class ProofObject:
    lines: tuple

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].conclusion


@dataclass(frozen=True)
class ProofCheck:
    ok: bool
    line: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


# ------------------------------------------------------------------ rules

def _free(f: Formula) -> frozenset:
    return f.free_vars


def _free_in(var: str, formulas) -> bool:
    return any(var in _free(f) for f in formulas)


def _eigen_term(pattern: Formula, target: Formula, var: str):
    """The variable y with pattern[var := y] == target, or None if none.
    When var does not occur in pattern, var itself is returned."""
    ok, t = match_instance(pattern, target, var)
    if not ok:
        return None
    if t is None:
        return Var(var)
    return t if isinstance(t, Var) else None


def _apply(rule: str, prem: tuple, seq: Sequent) -> str | None:
    """None if the rule application is correct, else the reason it is not."""
    phi, gamma = seq.conclusion, seq.hyps

    def covered(*sets):
        extra = frozenset().union(*sets) - gamma
        return None if not extra else "hypotheses not carried into the conclusion"

    if rule == "hyp":
        return None if phi in gamma else "conclusion is not among the hypotheses"
    if rule == "andI":
        a, b = prem
        if not (isinstance(phi, And) and a.conclusion == phi.left and b.conclusion == phi.right):
            return "conclusion is not the conjunction of the premises"
        return covered(a.hyps, b.hyps)
    if rule in ("andE1", "andE2"):
        (a,) = prem
        c = a.conclusion
        if not isinstance(c, And) or (c.left if rule == "andE1" else c.right) != phi:
            return "premise is not a conjunction with this conjunct"
        return covered(a.hyps)
    if rule in ("orI1", "orI2"):
        (a,) = prem
        if not isinstance(phi, Or) or (phi.left if rule == "orI1" else phi.right) != a.conclusion:
            return "conclusion is not a disjunction with the premise as disjunct"
        return covered(a.hyps)
    if rule == "orE":
        d, l, r = prem
        c = d.conclusion
        if not isinstance(c, Or) or l.conclusion != phi or r.conclusion != phi:
            return "premises do not fit disjunction elimination"
        return covered(d.hyps, l.hyps - {c.left}, r.hyps - {c.right})
    if rule == "impI":
        (a,) = prem
        if not isinstance(phi, Implies) or a.conclusion != phi.right:
            return "premise is not the consequent of the conclusion"
        return covered(a.hyps - {phi.left})
    if rule == "impE":
        f, a = prem
        c = f.conclusion
        if not (isinstance(c, Implies) and c.left == a.conclusion and c.right == phi):
            return "premises do not fit modus ponens"
        return covered(f.hyps, a.hyps)
    if rule == "notI":
        (a,) = prem
        if not isinstance(phi, Not) or not isinstance(a.conclusion, Bot):
            return "negation introduction needs a premise concluding falsum"
        return covered(a.hyps - {phi.body})
    if rule == "notE":
        n, a = prem
        if not (phi == BOT and isinstance(n.conclusion, Not) and n.conclusion.body == a.conclusion):
            return "premises are not a formula and its negation"
        return covered(n.hyps, a.hyps)
    if rule == "botE":
        (a,) = prem
        if not isinstance(a.conclusion, Bot):
            return "premise does not conclude falsum"
        return covered(a.hyps)
    if rule == "allI":
        (a,) = prem
        if not isinstance(phi, Forall):
            return "conclusion is not universal"
        y = _eigen_term(phi.body, a.conclusion, phi.var)
        if y is None:
            return "premise is not an instance at a variable"
        if _free_in(y.name, a.hyps):
            return f"eigenvariable {y.name} occurs free in an open hypothesis"
        if y.name != phi.var and y.name in _free(phi):
            return f"eigenvariable {y.name} occurs free in the conclusion"
        return covered(a.hyps)
    if rule == "allE":
        (a,) = prem
        c = a.conclusion
        if not isinstance(c, Forall) or not match_instance(c.body, phi, c.var)[0]:
            return "conclusion is not an instance of the universal premise"
        return covered(a.hyps)
    if rule == "exI":
        (a,) = prem
        if not isinstance(phi, Exists) or not match_instance(phi.body, a.conclusion, phi.var)[0]:
            return "premise is not an instance of the existential conclusion"
        return covered(a.hyps)
    if rule == "exE":
        e, b = prem
        c = e.conclusion
        if not isinstance(c, Exists) or b.conclusion != phi:
            return "premises do not fit existential elimination"
        for h in b.hypotheses:
            y = _eigen_term(c.body, h, c.var)
            if y is None:
                continue
            rest = b.hyps - {h}
            if _free_in(y.name, rest | {phi}) or (y.name != c.var and y.name in _free(c)):
                continue
            if covered(e.hyps, rest) is None:
                return None
        return "no hypothesis serves as the witness instance under the eigenvariable conditions"
    return f"unknown rule {rule!r}"


def check_line(lines, i: int, rec: AxiomRecognizer) -> str | None:
    """Check line i (0-based) against the earlier lines."""
    ln = lines[i]
    if ln.w < 0:
        return "negative axiom marker"
    if ln.w > 0:
        if ln.sequent.hypotheses:
            return "axiom lines take no hypotheses"
        got = rec.axiom(ln.w - 1)
        if got is None:
            return f"index does not denote an axiom of {rec.name}"
        if got != ln.conclusion:
            return f"index denotes a different {rec.describe(ln.w - 1)} axiom"
        return None
    if ln.rule not in ARITY:
        return f"unknown rule {ln.rule!r}"
    if len(ln.premises) != ARITY[ln.rule]:
        return f"{ln.rule} takes {ARITY[ln.rule]} premises"
    for p in ln.premises:
        if not (isinstance(p, int) and 1 <= p <= i):
            return f"premise {p} is not an earlier line"
    prem = [lines[p - 1].sequent for p in ln.premises]
    first = None
    for order in itertools.permutations(prem):
        why = _apply(ln.rule, tuple(order), ln.sequent)
        if why is None:
            return None
        first = first or why
    return first


def check_proof_verbose(p: ProofObject, rec: AxiomRecognizer) -> ProofCheck:
    """Check every line; report the first failure (1-based line number)."""
    if not p.lines:
        return ProofCheck(False, None, "empty proof")
    for i in range(len(p.lines)):
        why = check_line(p.lines, i, rec)
        if why is not None:
            return ProofCheck(False, i + 1, why)
    if p.lines[-1].sequent.hypotheses:
        return ProofCheck(False, len(p.lines), "last line still has open hypotheses")
    return ProofCheck(True)


def check_proof(p: ProofObject, rec: AxiomRecognizer) -> bool:
    return check_proof_verbose(p, rec).ok

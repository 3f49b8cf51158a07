"""Building checked proofs line by line, with derived equality steps, an
equation prover that replays a computation through the defining axioms,
and composition by modus ponens."""
from __future__ import annotations

from ..syntax.ast import (
    App, Eq, Forall, Formula, Implies, Term, Var, numeral, numeral_value,
    substitute,
)
from ..syntax.signature import Rec
from .axioms import (
    AxiomRecognizer, definition_index, leibniz_index, refl_index,
)
from .proof import ProofError, ProofLine, ProofObject, Sequent, check_line, rule_line


def _term_vars(t) -> set:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        return set().union(*(_term_vars(a) for a in t.args)) if t.args else set()
    return set()


def _late_names(terms, k=3):
    """k variable names that sort after every variable of the terms, so a
    universal closure puts them innermost and instantiating them cannot be
    captured by the other quantifiers."""
    names = set().union(*(_term_vars(t) for t in terms)) if terms else set()
    stem = "z" * (max((len(n) for n in names), default=0) + 1)
    return [stem + c for c in "abc"[:k]]


class ProofBuilder:
    """Appends lines, checking each one as it is added. A line whose sequent
    already occurs is not repeated; the earlier line number is returned."""

    def __init__(self, rec: AxiomRecognizer):
        self.rec = rec
        self.lines: list = []
        self._by_sequent: dict = {}

    def _push(self, ln: ProofLine) -> int:
        hit = self._by_sequent.get(ln.sequent)
        if hit is not None:
            return hit
        self.lines.append(ln)
        why = check_line(self.lines, len(self.lines) - 1, self.rec)
        if why is not None:
            self.lines.pop()
            raise ProofError(f"cannot add {ln.rule or 'axiom'} line {ln.sequent}: {why}")
        n = len(self.lines)
        self._by_sequent[ln.sequent] = n
        return n

    def formula(self, n: int) -> Formula:
        return self.lines[n - 1].conclusion

    def hyps(self, *ns) -> tuple:
        out = []
        for n in ns:
            for h in self.lines[n - 1].sequent.hypotheses:
                if h not in out:
                    out.append(h)
        return tuple(out)

    # primitive steps
    def axiom(self, index: int) -> int:
        phi = self.rec.axiom(index)
        if phi is None:
            raise ProofError(f"{index} is not an axiom index of {self.rec.name}")
        return self._push(ProofLine(index + 1, Sequent((), phi)))

    def rule(self, rule: str, premises, phi: Formula, hyps=None) -> int:
        hyps = self.hyps(*premises) if hyps is None else tuple(hyps)
        return self._push(rule_line(rule, premises, hyps, phi))

    def hyp(self, phi: Formula, others=()) -> int:
        return self.rule("hyp", (), phi, (phi, *others))

    def mp(self, imp: int, a: int) -> int:
        f = self.formula(imp)
        if not isinstance(f, Implies):
            raise ProofError(f"line {imp} is not an implication")
        return self.rule("impE", (imp, a), f.right)

    def inst(self, n: int, *terms) -> int:
        for t in terms:
            f = self.formula(n)
            if not isinstance(f, Forall):
                raise ProofError(f"line {n} is not universal")
            n = self.rule("allE", (n,), substitute(f.body, f.var, t))
        return n

    def inst_map(self, n: int, mapping) -> int:
        """Instantiate every leading ∀ by mapping[var] (default: itself)."""
        while isinstance(self.formula(n), Forall):
            v = self.formula(n).var
            n = self.inst(n, mapping.get(v, Var(v)))
        return n

    # equality
    def refl(self, t: Term) -> int:
        return self.inst(self.axiom(refl_index()), t)

    def _leib(self, phi, u, v, mapping) -> int:
        return self.inst_map(self.axiom(leibniz_index(phi, u, v)), mapping)

    def sym(self, n: int) -> int:
        eq = self.formula(n)
        s, t = eq.left, eq.right
        a, b, c = _late_names([s, t])
        ax = self._leib(Eq(Var(a), Var(c)), a, b, {a: s, b: t, c: s})
        return self.mp(self.mp(ax, n), self.refl(s))

    def trans(self, n1: int, n2: int) -> int:
        e1, e2 = self.formula(n1), self.formula(n2)
        if e1.right != e2.left:
            raise ProofError("equations do not chain")
        a, b, c = _late_names([e1.left, e1.right, e2.right])
        ax = self._leib(Eq(Var(a), Var(c)), a, b, {a: e1.right, b: e1.left, c: e2.right})
        return self.mp(self.mp(ax, self.sym(n1)), n2)

    def cong(self, fn: str, args, i: int, n: int) -> int:
        """From s = t (line n, s = args[i]) derive f(args) = f(args[i := t])."""
        eq = self.formula(n)
        args = tuple(args)
        if args[i] != eq.left:
            raise ProofError("argument does not match the equation")
        a, b = _late_names([*args, eq.right], 2)
        lhs = App(fn, args)
        phi = Eq(lhs, App(fn, args[:i] + (Var(a),) + args[i + 1:]))
        ax = self._leib(phi, a, b, {a: eq.left, b: eq.right})
        return self.mp(self.mp(ax, n), self.refl(lhs))

    # computation replay
    def evaluate(self, t: Term):
        """(line, value) with the line proving t = numeral(value); t must be
        closed and built from 0, S and symbols with defining axioms."""
        v = numeral_value(t)
        if v is not None:
            return self.refl(t), v
        if not isinstance(t, App):
            raise ProofError(f"cannot evaluate open term {t}")
        if t.fn == "S":
            inner, v = self.evaluate(t.args[0])
            return self.cong("S", t.args, 0, inner), v + 1
        cur, args = None, list(t.args)
        for i, a in enumerate(t.args):
            if numeral_value(a) is not None:
                continue
            line, va = self.evaluate(a)
            step = self.cong(t.fn, args, i, line)
            cur = step if cur is None else self.trans(cur, step)
            args[i] = numeral(va)
        line, v = self._unfold(t.fn, [numeral_value(a) for a in args])
        return (line if cur is None else self.trans(cur, line)), v

    def _unfold(self, fn, values):
        d = self.rec.signature.definitions.get(fn)
        if d is None:
            raise ProofError(f"{fn!r} has no defining axioms")
        nums = [numeral(x) for x in values]
        if isinstance(d.body, Rec):
            if values[0] == 0:
                ax = self.inst(self.axiom(definition_index(fn, 0)), *nums[1:])
            else:
                ax = self.inst(self.axiom(definition_index(fn, 1)), numeral(values[0] - 1), *nums[1:])
        else:
            ax = self.inst(self.axiom(definition_index(fn, 0)), *nums)
        body_line, v = self.evaluate(self.formula(ax).right)
        return self.trans(ax, body_line), v

    def prove_equation(self, s: Term, t: Term) -> int:
        """A line proving s = t for closed terms of equal value."""
        ls, vs = self.evaluate(s)
        lt, vt = self.evaluate(t)
        if vs != vt:
            raise ProofError(f"{s} and {t} have different values {vs} and {vt}")
        if numeral_value(t) == vt:
            return ls
        return self.trans(ls, self.sym(lt))

    def finish(self, n: int | None = None) -> ProofObject:
        """The proof ending at line n, keeping only the lines it depends on."""
        n = n or len(self.lines)
        return prune(self.lines, n)


def prune(lines, n: int) -> ProofObject:
    need, stack = set(), [n]
    while stack:
        k = stack.pop()
        if k in need:
            continue
        need.add(k)
        stack.extend(lines[k - 1].premises)
    keep = sorted(need)
    ren = {old: i + 1 for i, old in enumerate(keep)}
    out = []
    for old in keep:
        ln = lines[old - 1]
        out.append(ProofLine(ln.w, ln.sequent, ln.rule, tuple(ren[p] for p in ln.premises)))
    return ProofObject(tuple(out))


def prove_closed_equation(rec: AxiomRecognizer, s: Term, t: Term) -> ProofObject:
    b = ProofBuilder(rec)
    return b.finish(b.prove_equation(s, t))


def _merge(lines, other, offset_map):
    """Append other's lines to lines, reusing lines with the same sequent."""
    seen = {ln.sequent: i + 1 for i, ln in enumerate(lines)}
    ren = {}
    for i, ln in enumerate(other):
        hit = seen.get(ln.sequent)
        if hit is not None:
            ren[i + 1] = hit
            continue
        lines.append(ProofLine(ln.w, ln.sequent, ln.rule, tuple(ren[p] for p in ln.premises)))
        ren[i + 1] = seen[ln.sequent] = len(lines)
    offset_map.update(ren)
    return ren


def compose_mp(p: ProofObject, q: ProofObject) -> ProofObject:
    """From a proof of φ and a proof of φ → ψ, a proof of ψ: the lines of
    both (premises renumbered, repeated sequents shared) and one →E line."""
    phi, imp = p.conclusion, q.conclusion
    if not isinstance(imp, Implies) or imp.left != phi:
        raise ProofError(f"cannot compose: {imp} is not an implication from {phi}")
    lines = list(p.lines)
    ren = {}
    _merge(lines, q.lines, ren)
    lines.append(rule_line("impE", (ren[len(q.lines)], len(p.lines)), (), imp.right))
    return prune(lines, len(lines))

"""Proof codes and the Proof(x, y) checker.

A proof is coded as the packed sequence of its line codes. A line code is
``pack([w, ⌜φ⌝])`` for an axiom line and, for a rule line,
``pack([0, ⌜φ⌝, rule, n, p_1 .. p_n, m, ⌜h_1⌝ .. ⌜h_m⌝])`` with the rule
tag from ``RULE_TAGS``, 1-based premise line numbers and the hypotheses in
their listed order.
"""
from __future__ import annotations

from ..coding import CodeError, decode_formula, godel_number, pack, unpack
from .axioms import AxiomRecognizer
from .proof import RULE_NAMES, RULE_TAGS, ProofLine, ProofObject, Sequent, check_proof


def line_code(ln: ProofLine) -> int:
    head = [ln.w, godel_number(ln.conclusion)]
    if ln.w > 0:
        return pack(head)
    hyps = [godel_number(h) for h in ln.sequent.hypotheses]
    return pack(head + [RULE_TAGS[ln.rule], len(ln.premises), *ln.premises, len(hyps), *hyps])


def proof_code(p: ProofObject) -> int:
    return pack([line_code(ln) for ln in p.lines])


def decode_line(c: int) -> ProofLine:
    toks = unpack(c)
    if len(toks) < 2:
        raise CodeError("a line code needs a marker and a formula")
    w, phi = toks[0], decode_formula(toks[1])
    if w > 0:
        if len(toks) != 2:
            raise CodeError("axiom line codes carry no rule data")
        return ProofLine(w, Sequent((), phi))
    rest = toks[2:]
    if len(rest) < 2:
        raise CodeError("rule line code is truncated")
    tag, n = rest[0], rest[1]
    if tag not in RULE_NAMES:
        raise CodeError(f"unknown rule tag {tag}")
    prem = rest[2:2 + n]
    if len(prem) != n or len(rest) < 3 + n:
        raise CodeError("rule line code is truncated")
    m = rest[2 + n]
    hyps = rest[3 + n:]
    if len(hyps) != m:
        raise CodeError("hypothesis count does not match")
    return ProofLine(0, Sequent(tuple(decode_formula(h) for h in hyps), phi),
                     RULE_NAMES[tag], tuple(prem))


def decode_proof(x: int) -> ProofObject:
    entries = unpack(x)
    if not entries:
        raise CodeError("empty proof code")
    return ProofObject(tuple(decode_line(c) for c in entries))


def check_proof_code(x: int, y: int, rec: AxiomRecognizer) -> bool:
    """Proof(x, y): x codes a correct proof whose last formula has code y."""
    try:
        p = decode_proof(x)
    except (CodeError, ValueError, TypeError):
        return False
    return godel_number(p.conclusion) == y and check_proof(p, rec)


def rule_tag_table() -> str:
    lines = ["tag  rule   premises"]
    from .proof import ARITY
    for name, tag in RULE_TAGS.items():
        lines.append(f"{tag:>3}  {name:<6} {ARITY[name]}")
    return "\n".join(lines)

"""Text format for proofs.

One line per proof line, numbered from 1::

    1. [axiom 260] forall x. x = x
    2. [allE 1] |- 0 = 0
    3. [hyp] p = 0 |- p = 0
    4. [impI 3] |- p = 0 -> p = 0

The axiom index is a decimal number (``Q1`` .. ``Q7`` and ``refl`` are
accepted as shorthands). Hypotheses are a comma-separated list before
``|-`` (or ``⊢``). Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

import re

from ..syntax.parser import FormulaSyntaxError, parse_formula, print_formula
from .axioms import q_index, refl_index
from .proof import ARITY, ProofLine, ProofObject, axiom_line, rule_line


class ProofFormatError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_LINE = re.compile(r"^\s*(\d+)\s*\.\s*\[([^\]]*)\]\s*(.*)$")
_ALIASES = {**{f"Q{k}": q_index(k) for k in range(1, 8)}, "refl": refl_index()}


def _split_top(text: str):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _formula(text, lineno, signature):
    try:
        return parse_formula(text, signature)
    except FormulaSyntaxError as exc:
        raise ProofFormatError(f"bad formula {text!r}: {exc}", lineno) from None


def _axiom_index(tok, lineno):
    if tok in _ALIASES:
        return _ALIASES[tok]
    if tok.isdigit():
        return int(tok)
    raise ProofFormatError(f"bad axiom index {tok!r}", lineno)


def parse_proof(text: str, signature=None) -> ProofObject:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        m = _LINE.match(body)
        if not m:
            raise ProofFormatError("expected 'i. [justification] sequent'", lineno)
        num, just, rest = int(m.group(1)), m.group(2).split(), m.group(3)
        if num != len(lines) + 1:
            raise ProofFormatError(f"expected line number {len(lines) + 1}, got {num}", lineno)
        if not just:
            raise ProofFormatError("empty justification", lineno)
        rest = rest.replace("⊢", "|-")
        if just[0] == "axiom":
            if len(just) != 2:
                raise ProofFormatError("axiom lines need exactly one index", lineno)
            index = _axiom_index(just[1], lineno)
            if "|-" in rest:
                left, _, rest = rest.partition("|-")
                if left.strip():
                    raise ProofFormatError("axiom lines take no hypotheses", lineno)
            lines.append(axiom_line(index, _formula(rest, lineno, signature)))
            continue
        rule = just[0]
        if rule not in ARITY:
            raise ProofFormatError(f"unknown rule {rule!r}", lineno)
        try:
            prem = tuple(int(p) for p in "".join(just[1:]).split(",") if p)
        except ValueError:
            raise ProofFormatError("premises must be line numbers", lineno) from None
        if "|-" not in rest:
            raise ProofFormatError("rule lines need a sequent 'Γ |- φ'", lineno)
        left, _, right = rest.partition("|-")
        hyps = tuple(_formula(h, lineno, signature) for h in _split_top(left))
        lines.append(rule_line(rule, prem, hyps, _formula(right, lineno, signature)))
    if not lines:
        raise ProofFormatError("no proof lines")
    return ProofObject(tuple(lines))


def load_proof(path, signature=None) -> ProofObject:
    with open(path, encoding="utf-8") as fh:
        return parse_proof(fh.read(), signature)


def format_line(i: int, ln: ProofLine) -> str:
    phi = print_formula(ln.conclusion)
    if ln.w > 0:
        return f"{i}. [axiom {ln.w - 1}] {phi}"
    prem = ",".join(map(str, ln.premises))
    just = f"{ln.rule} {prem}" if prem else ln.rule
    hyps = ", ".join(print_formula(h) for h in ln.sequent.hypotheses)
    return f"{i}. [{just}] {hyps + ' ' if hyps else ''}|- {phi}"


def format_proof(p: ProofObject) -> str:
    return "\n".join(format_line(i, ln) for i, ln in enumerate(p.lines, 1)) + "\n"

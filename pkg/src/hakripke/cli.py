"""Command-line entry point: ``hakripke <command> ...``.

Exit status: 0 for success or a true verdict, 1 for a false verdict,
refutation or undecided check, 2 for usage and input errors. With
``--json`` the report is a run manifest: the subcommand, SHA-256 digests
of the input files, the parameters, the outcome and the text report.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from .coding import CodeError, godel_decode, godel_number
from .kripke.io import ModelFormatError, dumps_model, load_model, loads_structure
from .kripke.model import ModelError, forces, validate_model
from .machine import ProgramError, assemble, disassemble, parse_program, run
from .proofkit import (
    AxiomError, ProofError, ProofFormatError, check_proof_verbose, compose_mp,
    format_proof, load_proof, proof_code, theory,
)
from .proofkit.codes import check_proof_code
from .realize import Refuted, RealizeError, VerifiedBounded, bounded_check_realizes, r_translate
from .syntax.ast import App, Formula, subst_formula
from .syntax.classify import classify
from .syntax.parser import FormulaSyntaxError, parse_formula, parse_term, print_formula, print_term
from .transform import (
    TransformError, binary_unravel, cone_check, cone_witness_depth, f_eval, forces_binary,
    forces_binary_direct, glue_root, pad_leaves, unravel_to_tree,
)

INPUT_ERRORS = (
    CodeError, FormulaSyntaxError, ModelFormatError, ModelError, ProgramError, ProofFormatError,
    TransformError, RealizeError, AxiomError, ProofError, OSError, ValueError,
)


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    subcommand: str
    inputs: dict = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)
    outcome: dict = field(default_factory=dict)
    report: str = ""

    def to_json(self) -> str:
        return json.dumps({"subcommand": self.subcommand, "inputs": self.inputs,
                           "parameters": self.parameters, "outcome": self.outcome,
                           "report": self.report}, indent=2, sort_keys=True)


class _Run:
    """Collects the report, inputs and outcome of one invocation."""

    def __init__(self, name, args):
        params = {k: v for k, v in sorted(vars(args).items())
                  if k not in ("func", "json", "command", "sub") and v is not None}
        self.manifest = RunManifest(name, parameters=params)
        self.lines = []

    def read(self, path) -> str:
        with open(path, "rb") as fh:
            data = fh.read()
        self.manifest.inputs[path] = hashlib.sha256(data).hexdigest()
        return data.decode("utf-8")

    def model(self, path):
        self.read(path)
        return load_model(path)

    def say(self, text=""):
        self.lines.append(str(text))

    def done(self, status: int, **outcome) -> int:
        self.manifest.outcome = {"status": status, **outcome}
        self.manifest.report = "\n".join(self.lines)
        return status


def _model_formula(m, text: str) -> Formula:
    """Parse a formula, reading free names of the model's constants as constants."""
    f = parse_formula(text)
    funs, _ = m.signature()
    consts = {v: App(v) for v in f.free_vars if funs.get(v) == 0}
    return subst_formula(f, consts) if consts else f


# ------------------------------------------------------------- commands

def cmd_parse(r, a):
    if a.term:
        t = parse_term(a.text)
        r.say(print_term(t))
        return r.done(0, printed=print_term(t))
    f = parse_formula(a.text)
    r.say(print_formula(f))
    r.say(f"depth: {f.depth}")
    r.say(f"free variables: {', '.join(sorted(f.free_vars)) or '-'}")
    return r.done(0, printed=print_formula(f), depth=f.depth)


def cmd_classify(r, a):
    c = classify(parse_formula(a.formula))
    flags = {k: getattr(c, k) for k in ("is_atomic", "is_quantifier_free", "is_almost_negative",
                                        "is_sigma1", "is_pi1", "is_pi2")}
    for k, v in flags.items():
        r.say(f"{k}: {'yes' if v else 'no'}")
    return r.done(0, **flags)


def cmd_encode(r, a):
    if a.dump_tags:
        from .coding import dump_tags
        from .proofkit import rule_tag_table
        r.say(dump_tags())
        r.say()
        r.say(rule_tag_table())
        return r.done(0)
    if a.decode is not None:
        obj = godel_decode(int(a.decode))
        text = print_formula(obj) if isinstance(obj, Formula) else print_term(obj)
        r.say(text)
        return r.done(0, decoded=text)
    if a.formula is not None:
        code = godel_number(parse_formula(a.formula))
    elif a.term is not None:
        code = godel_number(parse_term(a.term))
    elif a.program is not None:
        code = assemble(parse_program(r.read(a.program)))
    else:
        raise UsageError("encode needs one of --formula, --term, --program, --decode, --dump-tags")
    r.say(code)
    return r.done(0, code=str(code))


def _program(r, a):
    if a.index is not None:
        return disassemble(int(a.index))
    if a.file is None:
        raise UsageError("give a program file or --index")
    return parse_program(r.read(a.file))


def cmd_machine_run(r, a):
    if a.program_file is not None:
        if a.file is not None:
            raise UsageError("give the program file once")
        a.file = a.program_file
    p = _program(r, a)
    res = run(p, a.input, a.fuel)
    if hasattr(res, "trace"):
        tr = res.trace
        if a.trace:
            for i, c in enumerate(tr.configs):
                r.say(f"{i}: pc={c.pc} registers={list(c.registers)}")
        r.say(f"halted after {tr.steps} steps with output {tr.output}")
        return r.done(0, halted=True, steps=tr.steps, output=tr.output)
    r.say(f"out of fuel after {a.fuel} steps")
    return r.done(1, halted=False, steps=a.fuel)


def _formula_arg(a, positional=("formula",)):
    """Accept the formula positionally or as --formula; with --formula the
    positional slots shift left by one."""
    if a.formula_opt is None:
        if a.formula is None:
            raise UsageError("give a formula")
        return a.formula
    if len(positional) > 1 and a.formula is not None:
        if getattr(a, positional[1]) is not None:
            raise UsageError("give the formula once")
        setattr(a, positional[1], a.formula)
    elif a.formula is not None:
        raise UsageError("give the formula once")
    return a.formula_opt


def cmd_realize_translate(r, a):
    f = r_translate(a.var, parse_formula(_formula_arg(a)))
    r.say(print_formula(f))
    return r.done(0, translation=print_formula(f))


def cmd_realize_check(r, a):
    text = _formula_arg(a, ("formula", "file"))
    if a.program_file is not None:
        if a.file is not None:
            raise UsageError("give the program file once")
        a.file = a.program_file
    n = assemble(_program(r, a)) if (a.file or a.index is not None) else None
    if a.realizer is not None:
        n = int(a.realizer)
    if n is None:
        raise UsageError("give a realizer program file, --index or --realizer")
    v = bounded_check_realizes(n, parse_formula(text), a.fuel, a.bound)
    if isinstance(v, VerifiedBounded):
        r.say(f"verifiedBounded (quantifier bound {v.quant_bound}, fuel {v.fuel}, longest run {v.max_steps} steps)")
        return r.done(0, verdict=v.name, max_steps=v.max_steps)
    if isinstance(v, Refuted):
        r.say(f"refuted at {list(v.counterexample)}: {print_formula(v.instance)} is false")
        if v.reason:
            r.say(v.reason)
        return r.done(1, verdict=v.name, counterexample=list(v.counterexample),
                      instance=print_formula(v.instance))
    r.say(f"unknown: {v.reason}")
    return r.done(1, verdict=v.name, reason=v.reason)


def cmd_kripke_validate(r, a):
    m = r.model(a.model)
    bad = validate_model(m)
    for v in bad:
        r.say(str(v))
    if not bad:
        r.say(f"valid model with {len(m.nodes)} nodes")
    return r.done(1 if bad else 0, valid=not bad, violations=[str(v) for v in bad])


def cmd_kripke_force(r, a):
    m = r.model(a.model)
    bad = validate_model(m)
    if bad:
        raise ModelError(f"invalid model: {bad[0]}")
    f = _model_formula(m, a.formula)
    nodes = [a.node] if a.node else list(m.nodes)
    verdicts = {}
    for k in nodes:
        if m.resolve(k) not in m.structures:
            raise ModelError(f"unknown node {k!r}")
        verdicts[k] = forces(m, k, f)
        r.say(f"{k}: {'forced' if verdicts[k] else 'not forced'}")
    ok = all(verdicts.values())
    return r.done(0 if ok else 1, forced=verdicts)


def _emit_model(r, m, out):
    text = dumps_model(m)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        r.say(f"wrote {out}")
    else:
        r.say(text)


def cmd_transform_unravel(r, a):
    m = unravel_to_tree(r.model(a.model))
    _emit_model(r, m, a.out)
    return r.done(0, nodes=len(m.nodes))


def cmd_transform_pad(r, a):
    m = pad_leaves(r.model(a.model))
    _emit_model(r, m, a.out)
    return r.done(0, eventually_constant_at=m.frontier_depth)


def _binary(r, a):
    m = r.model(a.model)
    return m, binary_unravel(m)


def cmd_transform_binary(r, a):
    m, u = _binary(r, a)
    node = f_eval(u, a.eval)
    r.say(f"f({a.eval or 'λ'}) = {node}")
    out = {"node": node}
    status = 0
    if a.formula:
        f = _model_formula(m, a.formula)
        pulled = forces_binary(u, a.eval, f)
        direct = forces_binary_direct(u, a.eval, f)
        r.say(f"pull-back: {'forced' if pulled else 'not forced'}; direct: {'forced' if direct else 'not forced'}")
        out.update(forced=pulled, direct=direct)
        status = 0 if pulled and direct else 1
    return r.done(status, **out)


def cmd_transform_cone(r, a):
    _, u = _binary(r, a)
    rep = cone_check(u, a.node, a.depth)
    r.say(f"cone inclusion: {'holds' if rep.cone_subset else 'fails'}")
    r.say(f"cone equality at depth {a.depth}: {'yes' if rep.cone_equal_at_depth else 'no'}")
    if rep.missing:
        r.say(f"missing: {', '.join(sorted(map(str, rep.missing)))}")
    witness = cone_witness_depth(u, a.node, a.limit)
    r.say(f"least depth reaching the whole cone: {witness if witness is not None else 'none within limit'}")
    ok = rep.cone_subset and rep.cone_equal_at_depth
    return r.done(0 if ok else 1, cone_subset=rep.cone_subset,
                  cone_equal=rep.cone_equal_at_depth, witness_depth=witness)


def cmd_transform_glue(r, a):
    comps = [r.model(p) for p in a.roots]
    root = loads_structure(r.read(a.structure))
    m = glue_root(comps, root, a.root)
    _emit_model(r, m, a.out)
    return r.done(0, nodes=len(m.nodes))


def _theory(a):
    return theory(a.theory)


def cmd_proof_check(r, a):
    r.read(a.file)
    p = load_proof(a.file)
    rec = _theory(a)
    res = check_proof_verbose(p, rec)
    if res.ok and a.formula_code is not None and godel_number(p.conclusion) != int(a.formula_code):
        r.say("proof is correct but proves a different formula than the one coded")
        return r.done(1, valid=False, line=len(p.lines), reason="conclusion code mismatch")
    if res.ok:
        r.say(f"valid {rec.name} proof of {print_formula(p.conclusion)} ({len(p.lines)} lines)")
        return r.done(0, valid=True, lines=len(p.lines))
    r.say(f"line {res.line}: {res.reason}")
    return r.done(1, valid=False, line=res.line, reason=res.reason)


def cmd_proof_encode(r, a):
    r.read(a.file)
    p = load_proof(a.file)
    x = proof_code(p)
    y = godel_number(p.conclusion)
    r.say(f"proof code: {x}")
    r.say(f"conclusion code: {y}")
    if a.theory:
        ok = check_proof_code(x, y, _theory(a))
        r.say(f"Proof(x, y) in {a.theory}: {ok}")
        return r.done(0 if ok else 1, proof_code=str(x), conclusion_code=str(y), valid=ok)
    return r.done(0, proof_code=str(x), conclusion_code=str(y))


def cmd_proof_compose(r, a):
    r.read(a.premise)
    r.read(a.implication)
    p = compose_mp(load_proof(a.premise), load_proof(a.implication))
    text = format_proof(p)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        r.say(f"wrote {a.out}")
    else:
        r.say(text.rstrip("\n"))
    ok = check_proof_verbose(p, _theory(a)).ok
    return r.done(0 if ok else 1, valid=ok, lines=len(p.lines))


# --------------------------------------------------------------- parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="hakripke", description=__doc__.splitlines()[0])
    top.add_argument("--version", action="version", version=f"hakripke {__version__}")
    top.add_argument("--json", action="store_true", help="print a JSON run manifest instead of text")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)

    def add(parent, name, func, help_):
        p = parent.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.set_defaults(func=func)
        return p

    p = add(sub, "parse", cmd_parse, "parse and pretty-print a formula or term")
    p.add_argument("text")
    p.add_argument("--term", action="store_true")

    p = add(sub, "classify", cmd_classify, "syntactic classes of a formula")
    p.add_argument("formula")

    p = add(sub, "encode", cmd_encode, "Gödel numbers of formulas, terms and programs")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--formula")
    g.add_argument("--term")
    g.add_argument("--program", help="program file")
    g.add_argument("--decode", help="decode a formula or term code")
    g.add_argument("--dump-tags", action="store_true")

    machine = sub.add_parser("machine", help="register machine").add_subparsers(dest="sub", parser_class=_Parser)
    p = add(machine, "run", cmd_machine_run, "run a program")
    p.add_argument("file", nargs="?")
    p.add_argument("--program", dest="program_file", help="program file (same as the positional argument)")
    p.add_argument("--index", help="program code instead of a file")
    p.add_argument("--input", type=int, default=0)
    p.add_argument("--fuel", type=int, default=10**6)
    p.add_argument("--trace", action="store_true")

    realize = sub.add_parser("realize", help="realizability").add_subparsers(dest="sub", parser_class=_Parser)
    p = add(realize, "translate", cmd_realize_translate, "the formula 'x realizes φ'")
    p.add_argument("formula", nargs="?")
    p.add_argument("--formula", dest="formula_opt", help="same as the positional formula")
    p.add_argument("--var", default="x")
    p = add(realize, "check", cmd_realize_check, "bounded check that a program realizes a sentence")
    p.add_argument("formula", nargs="?")
    p.add_argument("file", nargs="?")
    p.add_argument("--formula", dest="formula_opt", help="same as the positional formula")
    p.add_argument("--program", dest="program_file", help="realizer program file")
    p.add_argument("--index", help="program code instead of a file")
    p.add_argument("--realizer", help="raw realizer number (for formulas without implications)")
    p.add_argument("--fuel", type=int, default=10**6)
    p.add_argument("--bound", type=int, default=10)

    kripke = sub.add_parser("kripke", help="Kripke models").add_subparsers(dest="sub", parser_class=_Parser)
    p = add(kripke, "validate", cmd_kripke_validate, "check the model conditions")
    p.add_argument("--model", required=True)
    p = add(kripke, "force", cmd_kripke_force, "evaluate forcing of a sentence")
    p.add_argument("--model", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--node", help="node to evaluate at (default: every node)")

    tr = sub.add_parser("transform", help="model transformations").add_subparsers(dest="sub", parser_class=_Parser)
    p = add(tr, "unravel", cmd_transform_unravel, "unravel a rooted model into a tree")
    p.add_argument("--model", required=True)
    p.add_argument("--out")
    p = add(tr, "pad", cmd_transform_pad, "attach copy chains above the leaves of a tree")
    p.add_argument("--model", required=True)
    p.add_argument("--out")
    p = add(tr, "binary", cmd_transform_binary, "re-index a tree model by binary strings")
    p.add_argument("--model", required=True)
    p.add_argument("--eval", default="", help="binary string (empty for the root)")
    p.add_argument("--formula")
    p = add(tr, "cone", cmd_transform_cone, "compare cones in the binary re-indexing")
    p.add_argument("--model", required=True)
    p.add_argument("--node", default="", help="binary string whose cone is examined")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--limit", type=int, default=16)
    p = add(tr, "glue", cmd_transform_glue, "put a new root below rooted models")
    p.add_argument("--roots", nargs="+", required=True, help="component model files")
    p.add_argument("--structure", required=True, help="root structure file")
    p.add_argument("--root", default="r")
    p.add_argument("--out")

    proof = sub.add_parser("proof", help="natural-deduction proofs").add_subparsers(dest="sub", parser_class=_Parser)
    p = add(proof, "check", cmd_proof_check, "check a proof file")
    p.add_argument("--file", required=True)
    p.add_argument("--theory", default="HA")
    p.add_argument("--formula-code", help="also require the conclusion to have this code")
    p = add(proof, "encode", cmd_proof_encode, "proof code and conclusion code")
    p.add_argument("--file", required=True)
    p.add_argument("--theory")
    p = add(proof, "compose", cmd_proof_compose, "modus ponens on two proof files")
    p.add_argument("--premise", required=True, help="proof of φ")
    p.add_argument("--implication", required=True, help="proof of φ -> ψ")
    p.add_argument("--theory", default="HA")
    p.add_argument("--out")
    return top


def dispatch(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "func"):
            raise UsageError("missing command; see --help")
        name = " ".join(x for x in (args.command, getattr(args, "sub", None)) if x)
        run_ = _Run(name, args)
        status = args.func(run_, args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=err)
        return 2
    if args.json:
        print(run_.manifest.to_json(), file=out)
    else:
        print(run_.manifest.report, file=out)
    return status


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

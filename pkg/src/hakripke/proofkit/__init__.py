"""Natural-deduction proofs, axiom recognizers, proof codes and
provability sentences."""
from .axioms import (
    AxiomError, AxiomRecognizer, Q_AXIOMS, axiom_check, custom_index, defining_axioms,
    definition_index, ect0_index, induction_index, leibniz, leibniz_index, q_index,
    refl_index, theory,
)
from .builder import ProofBuilder, compose_mp, prove_closed_equation
from .codes import check_proof_code, decode_proof, proof_code, rule_tag_table
from .fileformat import ProofFormatError, format_proof, load_proof, parse_proof
from .proof import (
    RULES, ProofCheck, ProofError, ProofLine, ProofObject, Sequent, axiom_line,
    check_proof, check_proof_verbose, rule_line,
)
from .provability import (
    con_formula, ep_formula, instance_code, is_existential_sentence_code, pr_formula,
    provability_evaluator, provability_signature,
)

__all__ = [
    "AxiomError", "AxiomRecognizer", "Q_AXIOMS", "axiom_check", "custom_index",
    "defining_axioms", "definition_index", "ect0_index", "induction_index", "leibniz",
    "leibniz_index", "q_index", "refl_index", "theory",
    "ProofBuilder", "compose_mp", "prove_closed_equation",
    "check_proof_code", "decode_proof", "proof_code", "rule_tag_table",
    "ProofFormatError", "format_proof", "load_proof", "parse_proof",
    "RULES", "ProofCheck", "ProofError", "ProofLine", "ProofObject", "Sequent",
    "axiom_line", "check_proof", "check_proof_verbose", "rule_line",
    "con_formula", "ep_formula", "instance_code", "is_existential_sentence_code",
    "pr_formula", "provability_evaluator", "provability_signature",
]

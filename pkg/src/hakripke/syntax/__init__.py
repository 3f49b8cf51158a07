from .ast import (
    And, App, BOT, Bot, Eq, Exists, Forall, Formula, Implies, Not, Or, Param,
    Pred, TOP, Term, Top, Var, ZERO, alpha_equivalent, closure, numeral,
    numeral_value, subst_formula, substitute, succ,
)
from .classify import FormulaClass, classify
from .evaluate import EvaluationError, Evaluator, eval_classical_qf, eval_term
from .normal import NormalFormError, contract_quantifiers, qf_to_atomic
from .parser import FormulaSyntaxError, parse_formula, parse_term, print_formula, print_term
from .schemata import (
    SchemaError, instantiate_ect0, instantiate_induction, instantiate_mp, theta_instance,
)
from .signature import PRDefinition, Signature, SignatureError, arithmetic_signature

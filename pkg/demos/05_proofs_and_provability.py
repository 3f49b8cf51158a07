"""Natural-deduction proofs, their codes, and the provability predicate."""
# %%
from pathlib import Path

from hakripke.coding import godel_number
from hakripke.proofkit import (
    check_proof_code, check_proof_verbose, con_formula, format_proof, load_proof,
    proof_code, prove_closed_equation, theory,
)
from hakripke.proofkit.library import corpus
from hakripke.proofkit.mutate import mutations
from hakripke.syntax import classify, numeral, parse_term, print_formula

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
HA = theory("HA")

# %% A short proof from the successor axiom and reflexivity
p = load_proof(DATA / "mp.proof")
print(format_proof(p))
print(check_proof_verbose(p, HA))

# %% A one-line change is caught at the first bad line
print(check_proof_verbose(load_proof(DATA / "mp_mutated.proof"), HA))

# %% Closed equations are provable from the defining axioms
eq = prove_closed_equation(HA, parse_term("S(0) + S(0)"), numeral(2))
print(len(eq.lines), "lines:", print_formula(eq.conclusion))

# %% Proof codes and the arithmetized proof relation
x, y = proof_code(eq), godel_number(eq.conclusion)
print("Proof(x, y):", check_proof_code(x, y, HA), " wrong y:", check_proof_code(x, y + 1, HA))

# %% Every single-line mutation of the corpus is rejected
proofs = corpus(HA)
muts = [(m, godel_number(q.conclusion)) for q in proofs.values() for m in mutations(q)]
print(len(muts), "mutations, accepted:",
      sum(check_proof_code(proof_code(m.proof), c, HA) for m, c in muts))

# %% Consistency is the negation of a Sigma1 sentence
con = con_formula(HA)
print(print_formula(con)[:60], "...")
print("body is Sigma1:", classify(con.body).is_sigma1)

"""Forcing in finite and eventually-constant Kripke models."""
# %%
import random
from pathlib import Path

from hakripke.kripke import check_monotonicity, forces, load_model, validate_model
from hakripke.kripke.generate import random_model
from hakripke.syntax import parse_formula

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

# %% The two-node chain r <= a with p true only at a
m = load_model(DATA / "two_chain.json")
print("violations:", validate_model(m))
for text in ["p", "~p", "~~p", "p \\/ ~p"]:
    print(f"  r forces {text}: {forces(m, 'r', parse_formula(text))}")

# %% Above the frontier every node is a copy of its leaf
print("a+3 forces p:", forces(m, "a+3", parse_formula("p")))

# %% Forcing is monotone along the order
rng = random.Random(0)
model = random_model(rng, max_nodes=5)
sentences = [parse_formula(t) for t in
             ["exists x. P(x)", "forall x. P(x) \\/ ~P(x)", "exists x. ~~P(x)", "forall x. ~~P(x) -> P(x)"]]
print("monotone:", check_monotonicity(model, sentences))

"""Unraveling, padding, re-indexing by binary strings, and gluing roots."""
# %%
import json
from pathlib import Path

from hakripke.kripke import Structure, forces, load_model
from hakripke.transform import (
    binary_unravel, cone_check, cone_witness_depth, f_eval, forces_binary,
    forces_binary_direct, glue_root, pad_leaves, strings, unravel_to_tree,
)
from hakripke.syntax import parse_formula

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
m = load_model(DATA / "two_chain.json")

# %% Pad the leaves with copy chains, then index nodes by binary strings
u = binary_unravel(pad_leaves(unravel_to_tree(m)))
for x in ["", "0", "1", "001", "0011"]:
    print(f"  f({x or 'empty'}) = {f_eval(u, x)}")

# %% Both ways of evaluating forcing at a string agree
nnp = parse_formula("~~p")
print(all(forces_binary(u, x, nnp) == forces_binary_direct(u, x, nnp) for x in strings(4)))

# %% The image of a string's cone covers the cone of its image
print(cone_check(u, "", 0))
print("least depth reaching the whole cone:", cone_witness_depth(u, "", 10))

# %% Gluing two copies under a root where p is false
g = glue_root([m, m], Structure((0,), {}, {"p": set()}))
print(g.nodes)
print("root forces ~~p:", forces(g, "r", nnp), " root forces p:", forces(g, "r", parse_formula("p")))
print(json.dumps(sorted(g.order))[:80], "...")

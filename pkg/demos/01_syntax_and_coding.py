"""Formulas, their syntactic classes, normal forms and Gödel numbers."""
# %%
from hakripke.coding import godel_decode, godel_number, pair, unpair
from hakripke.syntax import (
    classify, contract_quantifiers, eval_term, instantiate_induction, parse_formula,
    print_formula, qf_to_atomic,
)

# %% Parsing and classification
phi = parse_formula("forall x. exists y. y = S(x)")
print(print_formula(phi))
c = classify(phi)
print("Pi2:", c.is_pi2, " Sigma1:", c.is_sigma1, " almost negative:", c.is_almost_negative)

# %% A quantifier-free formula has a characteristic term: it holds iff the term is 0
chi, atomic = qf_to_atomic(parse_formula("x = 0 \\/ ~(x = y)"))
print("characteristic term:", chi)
for x, y in [(0, 5), (3, 3), (3, 4)]:
    print(f"  x={x}, y={y}: chi = {eval_term(chi, {'x': x, 'y': y})}")

# %% Adjacent quantifiers of one kind contract into one over coded tuples
print(print_formula(contract_quantifiers(parse_formula("forall x. forall y. x + y = y + x"))))

# %% An induction instance
print(print_formula(instantiate_induction(parse_formula("0 + x = x"), "x")))

# %% Pairing and Gödel numbers round-trip
print("pair(3, 4) =", pair(3, 4), "unpair ->", unpair(pair(3, 4)))
n = godel_number(phi)
print("code of phi:", n)
assert godel_decode(n) == phi

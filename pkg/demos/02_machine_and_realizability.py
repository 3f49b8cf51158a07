"""Register machines, the T predicate and bounded realizability checks."""
# %%
from pathlib import Path

from hakripke.machine import assemble, execute, parse_program, run, t_predicate, trace_code, u_extract
from hakripke.realize import bounded_check_realizes, r_translate, recheck
from hakripke.syntax import parse_formula, print_formula

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

# %% A program, its code, and a traced run
add_two = parse_program("INC 0\nINC 0\nHALT\n")
e = assemble(add_two)
tr = run(add_two, 5, 100).trace
print("code:", e, " output:", tr.output, " steps:", tr.steps)

# %% Kleene's T checks a trace code; U reads the output off it
u = trace_code(tr)
print("T(e, 5, u):", t_predicate(e, 5, u), " U(u):", u_extract(u))
print("T(e, 4, u):", t_predicate(e, 4, u))

# %% The realizability translation
succ = parse_formula("forall y. exists z. z = S(y)")
print(print_formula(r_translate("x", succ)))

# %% A hand-written realizer outputs pair(y + 1, 0) = 2^(y+1) - 1
realizer = assemble(parse_program((DATA / "successor_realizer.rm").read_text()))
for y in range(4):
    print(f"  y={y}: output {execute(realizer, y, 10**6).output}")
print(bounded_check_realizes(realizer, succ, 10**6, 12))

# %% The output grows like 2^y and every INC adds one, so the fuel caps the bound
print(bounded_check_realizes(realizer, succ, 10**6, 20))

# %% A wrong realizer is refuted with a witness that can be rechecked
wrong = bounded_check_realizes(assemble(parse_program("HALT")), succ, 100, 5)
print(wrong.counterexample, print_formula(wrong.instance), recheck(wrong))

import random

import pytest
from hypothesis import given, strategies as st

from hakripke.coding import pack
from hakripke.machine import (
    DecJz, Halt, Inc, OutOfFuel, Program, ProgramError, assemble, disassemble, execute,
    parse_program, program, run, t_predicate, tchar, trace_code, u_extract,
)
from corpora import halting_runs, random_program, trace_mutations


IDENTITY = program(Halt())
INC_HALT = program(Inc(0), Halt())
LOOP = program(Inc(1), DecJz(2, 0), Halt())


def test_assemble_halt_is_fixed():
    # marker byte 0x01, then the HALT tag 22 = 0x16
    assert assemble(IDENTITY) == 0x0116


def test_identity_program():
    res = run(assemble(IDENTITY), 5, 10)
    assert res.trace.output == 5
    assert res.trace.steps == 0


def test_inc_then_halt():
    res = run(assemble(INC_HALT), 4, 10)
    assert [c.registers for c in res.trace.configs] == [(4,), (5,)]
    assert res.trace.output == 5
    assert u_extract(trace_code(res.trace)) == 5


def test_infinite_loop_runs_out_of_fuel():
    assert isinstance(run(LOOP, 0, 100), OutOfFuel)
    assert not execute(LOOP, 0, 100).halted


def test_fuel_is_a_step_budget():
    p = program(Inc(0), Inc(0), Halt())
    assert isinstance(run(p, 0, 1), OutOfFuel)
    assert run(p, 0, 2).trace.steps == 2


@given(st.integers(0, 2**32), st.integers(0, 9))
def test_disassemble_inverts_assemble(seed, _):
    p = random_program(random.Random(seed))
    assert disassemble(assemble(p)) == p


def test_program_codes_distinct():
    rng = random.Random(5)
    progs = set()
    while len(progs) < 200:
        progs.add(random_program(rng))
    assert len({assemble(p) for p in progs}) == 200


def test_program_validation():
    with pytest.raises(ProgramError):
        Program(())
    with pytest.raises(ProgramError):
        program(DecJz(0, 5), Halt())
    with pytest.raises(ProgramError):
        program(Inc(0))
    with pytest.raises(ProgramError):
        disassemble(pack([99]))


def test_parse_program_text():
    p = parse_program("INC 0  # bump\n\nDECJZ 1 2\nhalt\n")
    assert p == program(Inc(0), DecJz(1, 2), Halt())
    with pytest.raises(ProgramError):
        parse_program("JMP 3\nHALT")


def test_t_predicate_accepts_the_trace():
    tr = run(INC_HALT, 4, 10).trace
    e = assemble(INC_HALT)
    assert t_predicate(e, 4, trace_code(tr))
    assert tchar(e, 4, trace_code(tr)) == 0
    assert not t_predicate(e, 3, trace_code(tr))


def test_t_predicate_on_junk():
    e = assemble(INC_HALT)
    assert not t_predicate(e, 4, 0)
    assert not t_predicate(0, 4, 0)
    assert u_extract(0) == 0
    assert tchar(e, 4, 0) == 1


def test_run_and_t_coherence_on_corpus():
    for p, x, tr in halting_runs(100, seed=1):
        e = assemble(p)
        u = trace_code(tr)
        assert t_predicate(e, x, u)
        assert u_extract(u) == tr.output == execute(e, x, 2000).output


def test_mutated_traces_rejected():
    rng = random.Random(3)
    for p, x, tr in halting_runs(40, seed=2):
        e = assemble(p)
        for m in trace_mutations(tr, rng):
            assert not t_predicate(e, x, trace_code(m))


def test_fuel_monotonicity():
    for p, x, tr in halting_runs(50, seed=4):
        for extra in (0, 1, 17, 1000):
            assert run(p, x, tr.steps + extra).trace == tr
        assert isinstance(run(p, x, tr.steps - 1), OutOfFuel)


@given(st.integers(0, 2**32), st.integers(0, 5), st.integers(0, 60))
def test_execute_agrees_with_run(seed, x, fuel):
    p = random_program(random.Random(seed))
    res, ex = run(p, x, fuel), execute(p, x, fuel)
    assert ex.halted == (not isinstance(res, OutOfFuel))
    if ex.halted:
        assert ex.final == res.trace.final and ex.steps == res.trace.steps

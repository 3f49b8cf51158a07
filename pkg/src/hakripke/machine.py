"""A three-instruction register machine and its T-predicate.

``INC r`` adds one to register r. ``DECJZ r l`` jumps to l when register r
is zero and otherwise decrements it and falls through. ``HALT`` stops.
A run on input x starts at pc 0 with x in register 0 and zeros elsewhere;
the output is register 0 at the halting configuration.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .coding import TAGS, CodeError, pack, unpack


class ProgramError(ValueError):
    pass


@dataclass(frozen=True)
class Inc:
    reg: int

    def godel_tokens(self):
        return [TAGS["INC"], self.reg]

    def __str__(self):
        return f"INC {self.reg}"


@dataclass(frozen=True)
class DecJz:
    reg: int
    target: int

    def godel_tokens(self):
        return [TAGS["DECJZ"], self.reg, self.target]

    def __str__(self):
        return f"DECJZ {self.reg} {self.target}"


@dataclass(frozen=True)
class Halt:
    def godel_tokens(self):
        return [TAGS["HALT"]]

    def __str__(self):
        return "HALT"


Instruction = Union[Inc, DecJz, Halt]


@dataclass(frozen=True)
class Program:
    instructions: tuple

    def __post_init__(self):
        ins = self.instructions
        if not ins:
            raise ProgramError("empty program")
        for i, op in enumerate(ins):
            if not isinstance(op, (Inc, DecJz, Halt)):
                raise ProgramError(f"line {i}: not an instruction: {op!r}")
            if not isinstance(op, Halt) and op.reg < 0:
                raise ProgramError(f"line {i}: negative register")
            if isinstance(op, DecJz) and not 0 <= op.target < len(ins):
                raise ProgramError(f"line {i}: jump target {op.target} out of range")
        # A final HALT means control can never run off the end.
        if not isinstance(ins[-1], Halt):
            raise ProgramError("the last instruction must be HALT")

    @property
    def registers(self) -> int:
        regs = [op.reg for op in self.instructions if not isinstance(op, Halt)]
        return max(regs, default=0) + 1

    def __len__(self):
        return len(self.instructions)

    def __str__(self):
        return "\n".join(str(op) for op in self.instructions)


def program(*ops) -> Program:
    return Program(tuple(ops))


def parse_program(text: str) -> Program:
    ops = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        word = parts[0].upper()
        try:
            args = [int(p) for p in parts[1:]]
        except ValueError:
            raise ProgramError(f"line {lineno}: operands must be integers") from None
        if word == "INC" and len(args) == 1:
            ops.append(Inc(args[0]))
        elif word == "DECJZ" and len(args) == 2:
            ops.append(DecJz(*args))
        elif word == "HALT" and not args:
            ops.append(Halt())
        else:
            raise ProgramError(f"line {lineno}: cannot read {line!r}")
    return Program(tuple(ops))


# ------------------------------------------------------------------- coding

def assemble(p: Program) -> int:
    toks = []
    for op in p.instructions:
        toks += op.godel_tokens()
    return pack(toks)


def disassemble(e: int) -> Program:
    try:
        toks = unpack(e)
    except CodeError as exc:
        raise ProgramError(f"invalid program code: {exc}") from None
    ops = []
    i = 0
    while i < len(toks):
        tag = toks[i]
        if tag == TAGS["INC"] and i + 1 < len(toks):
            ops.append(Inc(toks[i + 1]))
            i += 2
        elif tag == TAGS["DECJZ"] and i + 2 < len(toks):
            ops.append(DecJz(toks[i + 1], toks[i + 2]))
            i += 3
        elif tag == TAGS["HALT"]:
            ops.append(Halt())
            i += 1
        else:
            raise ProgramError(f"invalid program code: bad instruction at token {i}")
    return Program(tuple(ops))


def _as_program(e) -> Program:
    return e if isinstance(e, Program) else disassemble(e)


# ---------------------------------------------------------------- execution

@dataclass(frozen=True)
class Configuration:
    pc: int
    registers: tuple


@dataclass(frozen=True)
class Trace:
    configs: tuple

    @property
    def final(self) -> Configuration:
        return self.configs[-1]

    @property
    def output(self) -> int:
        return self.final.registers[0]

    @property
    def steps(self) -> int:
        return len(self.configs) - 1

    def code(self) -> int:
        return trace_code(self)


@dataclass(frozen=True)
class Halted:
    trace: Trace


@dataclass(frozen=True)
class OutOfFuel:
    steps: int


@dataclass(frozen=True)
class Execution:
    """Result of a run without trace recording."""
    halted: bool
    steps: int
    final: Configuration

    @property
    def output(self) -> int:
        return self.final.registers[0]


def initial(p: Program, x: int) -> Configuration:
    regs = [0] * p.registers
    regs[0] = x
    return Configuration(0, tuple(regs))


def step(p: Program, c: Configuration):
    """One transition, or None when c is halted."""
    op = p.instructions[c.pc]
    if isinstance(op, Halt):
        return None
    regs = list(c.registers)
    if isinstance(op, Inc):
        regs[op.reg] += 1
        return Configuration(c.pc + 1, tuple(regs))
    if regs[op.reg] == 0:
        return Configuration(op.target, c.registers)
    regs[op.reg] -= 1
    return Configuration(c.pc + 1, tuple(regs))


def execute(e, x: int, fuel: int) -> Execution:
    """Simulate at most ``fuel`` steps without keeping the trace."""
    p = _as_program(e)
    ins = [(0, op.reg, 0) if isinstance(op, Inc) else
           (1, op.reg, op.target) if isinstance(op, DecJz) else (2, 0, 0)
           for op in p.instructions]
    regs = [0] * p.registers
    regs[0] = x
    pc = 0
    n = 0
    while True:
        kind, r, target = ins[pc]
        if kind == 2:
            return Execution(True, n, Configuration(pc, tuple(regs)))
        if n >= fuel:
            return Execution(False, n, Configuration(pc, tuple(regs)))
        n += 1
        if kind == 0:
            regs[r] += 1
            pc += 1
        elif regs[r]:
            regs[r] -= 1
            pc += 1
        else:
            pc = target


def run(e, x: int, fuel: int):
    """Halted(trace) when the program halts within fuel steps, else OutOfFuel."""
    p = _as_program(e)
    c = initial(p, x)
    configs = [c]
    for _ in range(fuel + 1):
        nxt = step(p, c)
        if nxt is None:
            return Halted(Trace(tuple(configs)))
        if len(configs) > fuel:
            break
        configs.append(nxt)
        c = nxt
    return OutOfFuel(fuel)


# ------------------------------------------------------------ trace codes

def trace_code(tr: Trace) -> int:
    width = len(tr.configs[0].registers)
    toks = [width]
    for c in tr.configs:
        toks.append(c.pc)
        toks.extend(c.registers)
    return pack(toks)


def decode_trace(u: int) -> Trace:
    toks = unpack(u)
    if not toks or toks[0] < 1:
        raise CodeError("trace code lacks a register width")
    width = toks[0]
    body = toks[1:]
    if not body or len(body) % (width + 1):
        raise CodeError("trace code does not split into configurations")
    configs = tuple(
        Configuration(body[i], tuple(body[i + 1:i + 1 + width]))
        for i in range(0, len(body), width + 1))
    return Trace(configs)


def t_predicate(e: int, x: int, u: int) -> bool:
    """True iff u codes the halting run of program e on input x."""
    try:
        p = disassemble(e)
        tr = decode_trace(u)
    except (CodeError, ProgramError):
        return False
    configs = tr.configs
    if configs[0] != initial(p, x):
        return False
    n = len(p)
    for a, b in zip(configs, configs[1:]):
        if not 0 <= a.pc < n or step(p, a) != b:
            return False
    last = configs[-1]
    return 0 <= last.pc < n and isinstance(p.instructions[last.pc], Halt)


def u_extract(u: int) -> int:
    """Register 0 of the last configuration; 0 on undecodable input."""
    try:
        return decode_trace(u).output
    except (CodeError, ValueError):
        return 0


def tchar(e: int, x: int, u: int) -> int:
    """Characteristic function of T with 0 meaning true."""
    return 0 if t_predicate(e, x, u) else 1

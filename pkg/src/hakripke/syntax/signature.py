"""Signatures and primitive recursive function definitions."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property


# ------------------------------------------------------- PR body schemata

@dataclass(frozen=True)
class Zero:
    """The constant zero function of the given arity."""
    arity: int = 0


@dataclass(frozen=True)
class Succ:
    arity: int = field(default=1, init=False)


@dataclass(frozen=True)
class Proj:
    arity: int
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.arity:
            raise ValueError(f"projection index {self.index} out of range for arity {self.arity}")


@dataclass(frozen=True)
class Named:
    """Reference to an earlier definition (or a builtin) by name."""
    name: str
    arity: int


@dataclass(frozen=True)
class Comp:
    outer: object
    inners: tuple

    def __post_init__(self):
        if len(self.inners) != self.outer.arity:
            raise ValueError("composition: outer arity does not match number of inner functions")
        if len({g.arity for g in self.inners}) > 1:
            raise ValueError("composition: inner functions disagree on arity")

    @property
    def arity(self):
        return self.inners[0].arity if self.inners else 0


@dataclass(frozen=True)
class Rec:
    """h(0, ys) = base(ys);  h(n+1, ys) = step(n, h(n, ys), ys)."""
    base: object
    step: object

    def __post_init__(self):
        if self.step.arity != self.base.arity + 2:
            raise ValueError("recursion: step arity must be base arity + 2")

    @property
    def arity(self):
        return self.base.arity + 1


def body_refs(body) -> set:
    if isinstance(body, Named):
        return {body.name}
    if isinstance(body, Comp):
        out = body_refs(body.outer)
        for g in body.inners:
            out |= body_refs(g)
        return out
    if isinstance(body, Rec):
        return body_refs(body.base) | body_refs(body.step)
    return set()


@dataclass(frozen=True)
class PRDefinition:
    name: str
    arity: int
    body: object

    def __post_init__(self):
        if self.body.arity != self.arity:
            raise ValueError(f"definition {self.name!r}: body arity {self.body.arity} != {self.arity}")


class SignatureError(ValueError):
    pass


# Symbols whose semantics over ℕ is supplied by the coding and machine modules.
# sg, monus and max are used by the characteristic-term construction; j, j1,
# j2 pairing; U result extraction; dec sequence decoding; tchar is the
# characteristic function of T (0 when T holds).
ARITH_FUNCTIONS = (
    ("0", 0), ("S", 1), ("+", 2), ("*", 2),
    ("pred", 1), ("monus_r", 2), ("monus", 2), ("sg", 1), ("max", 2),
    ("j", 2), ("j1", 1), ("j2", 1), ("U", 1), ("dec", 2), ("tchar", 3),
)
ARITH_PREDICATES = (("T", 3),)
CHARACTERISTIC = {"T": "tchar"}


def standard_definitions() -> tuple:
    """PR definitions for the arithmetic helpers, in dependency order."""
    return (
        PRDefinition("+", 2, Rec(Proj(1, 0), Comp(Succ(), (Proj(3, 1),)))),
        PRDefinition("*", 2, Rec(Zero(1), Comp(Named("+", 2), (Proj(3, 1), Proj(3, 2))))),
        PRDefinition("pred", 1, Rec(Zero(0), Proj(2, 0))),
        PRDefinition("monus_r", 2, Rec(Proj(1, 0), Comp(Named("pred", 1), (Proj(3, 1),)))),
        PRDefinition("monus", 2, Comp(Named("monus_r", 2), (Proj(2, 1), Proj(2, 0)))),
        PRDefinition("sg", 1, Rec(Zero(0), Comp(Succ(), (Zero(2),)))),
        PRDefinition("max", 2, Comp(Named("+", 2), (
            Proj(2, 0), Comp(Named("monus", 2), (Proj(2, 1), Proj(2, 0)))))),
    )


@dataclass(frozen=True)
class Signature:
    functions: tuple = ()
    predicates: tuple = ()
    prs: tuple = ()
    arithmetic: bool = False

    def __post_init__(self):
        names = [n for n, _ in self.functions] + [n for n, _ in self.predicates]
        dupes = {n for n in names if names.count(n) > 1}
        if dupes:
            raise SignatureError(f"duplicate symbol names: {sorted(dupes)}")
        for n, a in self.functions + self.predicates:
            if a < 0:
                raise SignatureError(f"negative arity for {n!r}")
        if self.arithmetic:
            for n, a in (("0", 0), ("S", 1), ("+", 2), ("*", 2)):
                if self.function_arities.get(n) != a:
                    raise SignatureError(f"arithmetic signature lacks {n}/{a}")
        seen = set()
        funs = self.function_arities
        for d in self.prs:
            if funs.get(d.name) != d.arity:
                raise SignatureError(f"definition {d.name!r} is not a declared function of arity {d.arity}")
            for ref in body_refs(d.body):
                if ref not in seen:
                    raise SignatureError(f"definition {d.name!r} refers to {ref!r} before it is defined")
            seen.add(d.name)

    @cached_property
    def function_arities(self) -> dict:
        return dict(self.functions)

    @cached_property
    def predicate_arities(self) -> dict:
        return dict(self.predicates)

    @cached_property
    def definitions(self) -> dict:
        return {d.name: d for d in self.prs}

    def extend(self, functions=(), predicates=(), prs=()) -> "Signature":
        return Signature(self.functions + tuple(functions), self.predicates + tuple(predicates),
                         self.prs + tuple(prs), self.arithmetic)


def arithmetic_signature(functions=(), predicates=(), prs=()) -> Signature:
    """The arithmetic language with the standard helper definitions plus any
    user additions (user definitions may refer to the standard ones)."""
    return Signature(ARITH_FUNCTIONS + tuple(functions), ARITH_PREDICATES + tuple(predicates),
                     standard_definitions() + tuple(prs), arithmetic=True)

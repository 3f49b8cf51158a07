"""Random and exhaustive generators of small valid Kripke models."""
from __future__ import annotations

import itertools
import random

from .model import KripkeModel, Structure, transitive_closure


def random_poset(rng: random.Random, n: int, p: float = 0.4, rooted: bool = False, tree: bool = False):
    """Order pairs on nodes 0..n-1 consistent with their numbering."""
    pairs = set()
    for j in range(1, n):
        if tree or rooted:
            parent = rng.randrange(j)
            pairs.add((parent, j))
        if not tree:
            for i in range(j):
                if rng.random() < p:
                    pairs.add((i, j))
    return pairs


def random_model(rng: random.Random, max_nodes: int = 6, max_domain: int = 4,
                 predicate: str = "P", constant: str | None = "c",
                 rooted: bool = False, tree: bool = False, p: float = 0.4,
                 prefix: str = "k", min_nodes: int = 1) -> KripkeModel:
    """A valid model with one unary predicate and optionally one constant.

    Nodes are visited in an order compatible with ≤, so each node inherits
    the domain and the predicate extension of everything below it."""
    n = rng.randint(min_nodes, max_nodes)
    pairs = random_poset(rng, n, p, rooted, tree)
    closure = transitive_closure(range(n), pairs)
    names = [f"{prefix}{i}" for i in range(n)]
    structures = {}
    doms, ext = {}, {}
    for j in range(n):
        below = [i for i in range(j) if (i, j) in closure]
        dom = set().union(*(doms[i] for i in below)) if below else set()
        if constant is not None:
            dom.add(0)
        extra = rng.randint(0 if dom else 1, max_domain - len(dom)) if len(dom) < max_domain else 0
        pool = [c for c in range(max_domain) if c not in dom]
        dom |= set(rng.sample(pool, min(extra, len(pool))))
        pe = set().union(*(ext[i] for i in below)) if below else set()
        pe |= {c for c in dom if rng.random() < 0.35}
        doms[j], ext[j] = dom, pe
        funs = {constant: {(): 0}} if constant is not None else {}
        structures[names[j]] = Structure(tuple(sorted(dom)), funs, {predicate: {(c,) for c in pe}})
    order = frozenset((names[a], names[b]) for a, b in closure)
    return KripkeModel(tuple(names), order, structures, None, {predicate: 1})


def posets(n: int):
    """All partial orders on n points up to isomorphism, as sets of strict
    pairs over 0..n-1 (every poset has a numbering compatible with it)."""
    cand = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    out = []
    for bits in range(1 << len(cand)):
        rel = {cand[b] for b in range(len(cand)) if bits >> b & 1}
        if any((a, c) not in rel for a, b in rel for b2, c in rel if b == b2):
            continue
        canon = min(tuple(sorted((perm[a], perm[b]) for a, b in rel))
                    for perm in itertools.permutations(range(n)))
        if canon in seen:
            continue
        seen.add(canon)
        out.append(rel)
    return out


def constant_model(structure: Structure, n: int, rel, prefix="k") -> KripkeModel:
    names = [f"{prefix}{i}" for i in range(n)]
    order = frozenset((names[a], names[b]) for a, b in rel)
    return KripkeModel(tuple(names), order, {k: structure for k in names})

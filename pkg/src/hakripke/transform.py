"""Frame transformations: tree unraveling, leaf padding, root gluing and the
re-indexing of a rooted tree model by the full binary tree.

Binary strings are Python strings over "0" and "1"; "" is the empty string.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .kripke.model import (
    Forcing, KripkeModel, ModelError, Structure, forces, validate_model,
)
from .syntax.ast import Formula


class TransformError(ValueError):
    pass


class GluingError(TransformError):
    def __init__(self, message, atom=None, component=None):
        self.atom = atom
        self.component = component
        super().__init__(message)


def _require_valid(m: KripkeModel):
    bad = validate_model(m)
    if bad:
        raise TransformError(f"input model is not valid: {bad[0]}")


def _root(m: KripkeModel):
    try:
        return m.root
    except ModelError as exc:
        raise TransformError(str(exc)) from None


# ----------------------------------------------------------------- trees

def unravel_with_map(m: KripkeModel, sep: str = "/"):
    """Tree of covering paths from the root, and the map path -> endpoint."""
    _require_valid(m)
    r = _root(m)
    names, parent, endpoint = [], {}, {}
    stack = [(r, r)]
    while stack:
        name, k = stack.pop()
        names.append(name)
        endpoint[name] = k
        for c in reversed(m.covers[k]):
            child = f"{name}{sep}{c}"
            parent[child] = name
            stack.append((child, c))
    order = frozenset((p, c) for c, p in parent.items())
    structures = {p: m.structures[endpoint[p]] for p in names}
    tree = KripkeModel(tuple(names), order, structures, m.frontier_depth, m.predicate_arities)
    return tree, endpoint


def unravel_to_tree(m: KripkeModel) -> KripkeModel:
    return unravel_with_map(m)[0]


def is_tree(m: KripkeModel) -> bool:
    if len(m.minimal) != 1:
        return False
    preds = {k: 0 for k in m.nodes}
    for k in m.nodes:
        for c in m.covers[k]:
            preds[c] += 1
    return all(v <= 1 for v in preds.values())


def pad_leaves(m: KripkeModel) -> KripkeModel:
    """Attach an implicit infinite chain of copies above every maximal node."""
    if not is_tree(m):
        raise TransformError("padding expects a rooted tree")
    _require_valid(m)
    return KripkeModel(m.nodes, m.order, m.structures, m.height(), m.predicate_arities)


def _copy_parts(node):
    if isinstance(node, str) and "+" in node:
        base, _, i = node.rpartition("+")
        if i.isdigit():
            return base, int(i)
    return node, 0


def neighbor_set(m: KripkeModel, k) -> tuple:
    """Immediate successors of k, sorted by name. In an eventually constant
    model the successor of a maximal node (or of a copy) is the next copy."""
    base = m.resolve(k)
    if m.eventually_constant and base in m.maximal:
        i = _copy_parts(k)[1] if k != base else 0
        return (f"{base}+{i + 1}",)
    return tuple(sorted(m.covers[base], key=str))


# ----------------------------------------------------- binary unraveling

@dataclass(frozen=True, eq=False)
class BinaryUnraveling:
    """f maps x = y 0^m 1 (y the anchor: empty or ending in 1) to the m-th
    entry of the round-robin enumeration of f(y)'s neighbors, and y 0^m to
    f(y)."""
    source: KripkeModel
    memo: dict = field(default_factory=dict, repr=False)

    @cached_property
    def root(self):
        return self.source.root

    def g(self, k, m: int):
        ns = neighbor_set(self.source, k)
        return ns[m % len(ns)]

    def f(self, x: str):
        return f_eval(self, x)


def binary_unravel(m: KripkeModel) -> BinaryUnraveling:
    if not is_tree(m):
        raise TransformError("binary unraveling expects a rooted tree")
    _require_valid(m)
    for k in m.nodes:
        if not neighbor_set(m, k):
            raise TransformError(f"node {k!r} has no neighbors; pad the leaves first")
    return BinaryUnraveling(m)


def _check_bits(x: str):
    if any(ch not in "01" for ch in x):
        raise TransformError(f"not a binary string: {x!r}")


def f_eval(u: BinaryUnraveling, x: str):
    _check_bits(x)
    hit = u.memo.get(x)
    if hit is not None:
        return hit
    node = u.root
    zeros = 0
    for ch in x:
        if ch == "0":
            zeros += 1
        else:
            node = u.g(node, zeros)
            zeros = 0
    u.memo[x] = node
    return node


def strings(max_len: int, prefix: str = ""):
    yield prefix
    frontier = [prefix]
    for _ in range(max_len):
        frontier = [s + b for s in frontier for b in "01"]
        yield from frontier


@dataclass(frozen=True)
class ConeReport:
    cone_subset: bool
    cone_equal_at_depth: bool
    missing: frozenset


def cone_check(u: BinaryUnraveling, x: str, depth: int) -> ConeReport:
    """Compare {f(y) : x ⪯ y, |y| ≤ |x| + depth} with the cone above f(x).

    Copies attached by padding are identified with the node they copy, so
    the cone is measured in original nodes."""
    _check_bits(x)
    m = u.source
    fx = f_eval(u, x)
    subset = True
    image = set()
    for y in strings(depth, x):
        fy = f_eval(u, y)
        if not m.leq(fx, fy):
            subset = False
        image.add(m.resolve(fy))
    base = m.resolve(fx)
    cone = {k for k in m.up[base]}
    missing = frozenset(cone - image)
    return ConeReport(subset, not missing, missing)


def cone_witness_depth(u: BinaryUnraveling, x: str, limit: int):
    """Least depth at which the image above x covers the cone, or None."""
    for d in range(limit + 1):
        if cone_check(u, x, d).cone_equal_at_depth:
            return d
    return None


def forces_binary(u: BinaryUnraveling, x: str, phi: Formula) -> bool:
    """x ⊩ φ in the binary model, computed by pulling back along f."""
    return forces(u.source, f_eval(u, x), phi)


# The direct route: every string's cone is determined by its anchor node
# and the number of trailing zeros modulo the neighbor count, and all copies
# of a padded leaf have the same cone. Quotienting by that state gives a
# finite preorder of which the binary tree is the unraveling.

def state_of(u: BinaryUnraveling, x: str) -> str:
    _check_bits(x)
    node = u.root
    zeros = 0
    for ch in x:
        if ch == "0":
            zeros += 1
        else:
            node = u.g(node, zeros)
            zeros = 0
    return _state_name(u, node, zeros)


def _state_name(u, node, zeros):
    base, i = _copy_parts(node)
    if i and u.source.eventually_constant and base in u.source.maximal:
        return f"{base}*"
    n = len(neighbor_set(u.source, node))
    return f"{node}@{zeros % n}"


def binary_quotient(u: BinaryUnraveling) -> KripkeModel:
    """The finite preorder of string states, as a model (not antisymmetric)."""
    m = u.source
    names, edges, structures = [], set(), {}
    start = _state_name(u, u.root, 0)
    todo = [(u.root, 0, start)]
    seen = {start}
    while todo:
        node, phase, name = todo.pop()
        names.append(name)
        structures[name] = m.structure(node)
        n = len(neighbor_set(m, node))
        if name.endswith("*"):
            succ = [(node, 0, name)]
        else:
            nxt = u.g(node, phase)
            succ = [(node, (phase + 1) % n, _state_name(u, node, phase + 1)),
                    (nxt, 0, _state_name(u, nxt, 0))]
        for sn, sp, sname in succ:
            edges.add((name, sname))
            if sname not in seen:
                seen.add(sname)
                todo.append((sn, sp, sname))
    names.sort()
    return KripkeModel(tuple(names), frozenset(edges), structures, None, m.predicate_arities)


def forces_binary_direct(u: BinaryUnraveling, x: str, phi: Formula, quotient=None) -> bool:
    """x ⊩ φ evaluated by the forcing clauses on the quotient of the binary
    model itself, without going through f's target model."""
    q = quotient or binary_quotient(u)
    return Forcing(q).forces(state_of(u, x), phi)


# ------------------------------------------------------------------ gluing

def glue_root(components, root_structure: Structure, root: str = "r") -> KripkeModel:
    """Put a new root carrying ``root_structure`` below the disjoint union of
    the rooted components (renamed ``c<i>:<node>``)."""
    if not components:
        raise GluingError("nothing to glue")
    nodes, order, structures = [root], set(), {root: root_structure}
    arities = {}
    for i, c in enumerate(components):
        croot = _root(c)
        cs = c.structures[croot]
        _check_embedding(root_structure, cs, i)
        arities.update(c.predicate_arities or {})
        ren = {k: f"c{i}:{k}" for k in c.nodes}
        nodes += [ren[k] for k in c.nodes]
        order |= {(ren[a], ren[b]) for a, b in c.order}
        order.add((root, ren[croot]))
        structures.update({ren[k]: c.structures[k] for k in c.nodes})
    depths = [c.frontier_depth for c in components]
    frontier = None if any(d is None for d in depths) else max(depths) + 1
    out = KripkeModel(tuple(nodes), frozenset(order), structures, frontier, arities or None)
    bad = validate_model(out)
    if bad:
        raise GluingError(f"glued model is not valid: {bad[0]}")
    return out


def _check_embedding(rs: Structure, cs: Structure, i: int):
    missing = rs.elements - cs.elements
    if missing:
        raise GluingError(f"component {i}: root elements {sorted(map(str, missing))} are missing",
                          component=i)
    for name, rel in rs.predicates.items():
        other = cs.predicates.get(name, frozenset())
        for t in sorted(rel - other, key=repr):
            atom = f"{name}({', '.join(map(str, t))})"
            raise GluingError(f"component {i}: {atom} holds at the root but not in the component",
                              atom=atom, component=i)
    for name, table in rs.functions.items():
        other = cs.functions.get(name, {})
        for args, v in table.items():
            if other.get(args) != v:
                atom = f"{name}({', '.join(map(str, args))}) = {v}"
                raise GluingError(f"component {i}: {atom} holds at the root but not in the component",
                                  atom=atom, component=i)

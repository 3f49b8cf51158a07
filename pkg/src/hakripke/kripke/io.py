"""JSON model files.

A document looks like::

    {
      "signature": {"functions": {"c": 0}, "predicates": {"P": 1}},
      "nodes": ["r", "a"],
      "order": [["r", "a"]],
      "structures": {
        "r": {"domain": [0], "functions": {"c": 0}, "predicates": {"P": []}},
        "a": {"domain": [0, 1], "functions": {"c": 0}, "predicates": {"P": [[1]]}}
      },
      "eventually_constant_at": 1
    }

Function tables are lists of ``[args, value]`` pairs; a constant may be
given by its value alone. ``order`` may be any generating set of pairs.
"""
from __future__ import annotations

import json

from .model import KripkeModel, Structure


class ModelFormatError(ValueError):
    pass


def _hashable(x, path):
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return x
    raise ModelFormatError(f"{path}: element ids must be integers or strings, got {x!r}")


def _obj(x, path, kind=dict):
    if not isinstance(x, kind):
        raise ModelFormatError(f"{path}: expected a {'mapping' if kind is dict else 'list'}")
    return x


def structure_from_data(d, path="structure", signature=None) -> Structure:
    _obj(d, path)
    unknown = set(d) - {"domain", "functions", "predicates"}
    if unknown:
        raise ModelFormatError(f"{path}: unknown keys {sorted(unknown)}")
    domain = [_hashable(c, f"{path}.domain[{i}]") for i, c in enumerate(_obj(d.get("domain"), f"{path}.domain", list))]
    funs = {}
    for name, table in _obj(d.get("functions", {}), f"{path}.functions").items():
        fpath = f"{path}.functions.{name}"
        if not isinstance(table, list):
            funs[name] = {(): _hashable(table, fpath)}
            continue
        entries = {}
        for i, entry in enumerate(table):
            if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], list)):
                raise ModelFormatError(f"{fpath}[{i}]: expected [args, value]")
            args = tuple(_hashable(a, f"{fpath}[{i}]") for a in entry[0])
            entries[args] = _hashable(entry[1], f"{fpath}[{i}]")
        funs[name] = entries
    preds = {}
    for name, rel in _obj(d.get("predicates", {}), f"{path}.predicates").items():
        ppath = f"{path}.predicates.{name}"
        tuples = set()
        for i, t in enumerate(_obj(rel, ppath, list)):
            t = t if isinstance(t, list) else [t]
            tuples.add(tuple(_hashable(a, f"{ppath}[{i}]") for a in t))
        preds[name] = tuples
    if signature is not None:
        sfun, spred = signature
        for name, table in funs.items():
            if name not in sfun:
                raise ModelFormatError(f"{path}: function {name!r} is not declared in the signature")
            for args in table:
                if len(args) != sfun[name]:
                    raise ModelFormatError(f"{path}: arity mismatch for {name!r}: expected {sfun[name]}")
        for name, rel in preds.items():
            if name not in spred:
                raise ModelFormatError(f"{path}: predicate {name!r} is not declared in the signature")
            for t in rel:
                if len(t) != spred[name]:
                    raise ModelFormatError(f"{path}: arity mismatch for {name!r}: expected {spred[name]}")
    return Structure(tuple(domain), funs, preds)


def model_from_data(d) -> KripkeModel:
    _obj(d, "model")
    unknown = set(d) - {"signature", "nodes", "order", "structures", "eventually_constant_at"}
    if unknown:
        raise ModelFormatError(f"model: unknown keys {sorted(unknown)}")
    sig = None
    arities = None
    if "signature" in d:
        s = _obj(d["signature"], "signature")
        sfun = {k: int(v) for k, v in _obj(s.get("functions", {}), "signature.functions").items()}
        spred = {k: int(v) for k, v in _obj(s.get("predicates", {}), "signature.predicates").items()}
        sig = (sfun, spred)
        arities = spred
    nodes = [str(_hashable(k, f"nodes[{i}]")) for i, k in enumerate(_obj(d.get("nodes"), "nodes", list))]
    order = []
    for i, pair in enumerate(_obj(d.get("order", []), "order", list)):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ModelFormatError(f"order[{i}]: expected a pair [lower, upper]")
        a, b = (str(_hashable(x, f"order[{i}]")) for x in pair)
        for x in (a, b):
            if x not in nodes:
                raise ModelFormatError(f"order[{i}]: unknown node {x!r}")
        order.append((a, b))
    sd = _obj(d.get("structures"), "structures")
    structures = {}
    for k in nodes:
        if k not in sd:
            raise ModelFormatError(f"structures: node {k!r} has no structure")
        structures[k] = structure_from_data(sd[k], f"structures.{k}", sig)
    extra = set(sd) - set(nodes)
    if extra:
        raise ModelFormatError(f"structures: undeclared nodes {sorted(extra)}")
    depth = d.get("eventually_constant_at")
    if depth is not None and (not isinstance(depth, int) or depth < 0):
        raise ModelFormatError("eventually_constant_at: expected a natural number")
    return KripkeModel(tuple(nodes), frozenset(order), structures, depth, arities)


def loads_model(text: str) -> KripkeModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return model_from_data(data)


def load_model(path) -> KripkeModel:
    with open(path, encoding="utf-8") as fh:
        return loads_model(fh.read())


def loads_structure(text: str) -> Structure:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return structure_from_data(data)


def structure_to_data(s: Structure) -> dict:
    funs = {}
    for name, table in sorted(s.functions.items()):
        if set(table) == {()}:
            funs[name] = table[()]
        else:
            funs[name] = [[list(a), v] for a, v in sorted(table.items(), key=repr)]
    preds = {name: [list(t) for t in sorted(rel, key=repr)] for name, rel in sorted(s.predicates.items())}
    return {"domain": list(s.domain), "functions": funs, "predicates": preds}


def model_to_data(m: KripkeModel) -> dict:
    funs, preds = m.signature()
    if m.predicate_arities:
        preds.update(m.predicate_arities)
    preds = {k: v for k, v in preds.items() if v is not None}
    covers = [[a, b] for a in m.nodes for b in m.covers[a]]
    out = {
        "signature": {"functions": dict(sorted(funs.items())), "predicates": dict(sorted(preds.items()))},
        "nodes": list(m.nodes),
        "order": covers,
        "structures": {k: structure_to_data(m.structures[k]) for k in m.nodes},
    }
    if m.frontier_depth is not None:
        out["eventually_constant_at"] = m.frontier_depth
    return out


def dumps_model(m: KripkeModel) -> str:
    return json.dumps(model_to_data(m), indent=2)

import random
from pathlib import Path

import pytest

from hakripke.kripke import KripkeModel, Structure, classical_sat, forces, load_model, validate_model
from hakripke.kripke.extension import Engine, Frame, Joint, sentences, signature_of
from hakripke.kripke.generate import random_model
from hakripke.syntax import App, BOT, Not, Or, Pred, TOP, parse_formula
from hakripke.transform import (
    GluingError, TransformError, binary_quotient, binary_unravel, cone_check, cone_witness_depth,
    f_eval, forces_binary, forces_binary_direct, glue_root, is_tree, neighbor_set, pad_leaves,
    state_of, strings, unravel_to_tree, unravel_with_map,
)
from test_kripke import random_sentence

DATA = Path(__file__).parent / "data"
P = Pred("p", ())
Q = Pred("q", ())


def model(order, nodes, pred_true=()):
    structures = {k: Structure((0,), {}, {"p": {()} if k in pred_true else set()}) for k in nodes}
    return KripkeModel(tuple(nodes), frozenset(order), structures, None, {"p": 0})


def chain(*names):
    return model(set(zip(names, names[1:])), names)


def diamond():
    return model({("r", "a"), ("r", "b"), ("a", "t"), ("b", "t")}, ("r", "a", "b", "t"), {"t"})


def two_chain():
    return model({("r", "a")}, ("r", "a"), {"a"})


# --------------------------------------------------------------- unraveling

def test_chain_unravels_to_chain():
    t, ends = unravel_with_map(chain("r", "a", "b"))
    assert len(t.nodes) == 3 and is_tree(t)
    assert sorted(ends.values()) == ["a", "b", "r"]


def test_diamond_unravels_with_two_copies_of_top():
    t, ends = unravel_with_map(diamond())
    assert sorted(t.nodes) == ["r", "r/a", "r/a/t", "r/b", "r/b/t"]
    assert [ends[p] for p in sorted(t.nodes)].count("t") == 2
    assert is_tree(t) and validate_model(t) == []


def test_unraveling_needs_a_root():
    m = model(set(), ("a", "b"))
    with pytest.raises(TransformError):
        unravel_to_tree(m)


def test_unraveling_preserves_forcing():
    rng = random.Random(0)
    for _ in range(30):
        m = random_model(rng, max_nodes=5, max_domain=3, rooted=True)
        t, ends = unravel_with_map(m)
        sents = [random_sentence(rng) for _ in range(30)]
        for path, k in ends.items():
            for f in sents:
                assert forces(t, path, f) == forces(m, k, f)


def test_unraveling_preserves_forcing_exhaustively():
    rng = random.Random(1)
    for _ in range(6):
        m = random_model(rng, max_nodes=4, max_domain=2, rooted=True)
        t, ends = unravel_with_map(m)
        es, et = Engine(Frame.from_model(m), 3), Engine(Frame.from_model(t), 3)
        consts, preds = signature_of(m.structures.values())
        for ext, f in sentences(Joint([es, et]), 3, consts, preds).items():
            for i, path in enumerate(t.nodes):
                j = m.nodes.index(ends[path])
                assert et.holds(0, ext[1], i) == es.holds(0, ext[0], j)


# ------------------------------------------------------------------ padding

def test_padding_single_node_collapses_to_classical_theory():
    m = pad_leaves(model(set(), ("r",), {"r"}))
    s = m.structures["r"]
    for f in [P, Not(P), Or(P, Not(P)), parse_formula("forall x. x = x")]:
        assert forces(m, "r", f) == classical_sat(s, f)


def test_padding_two_chain_keeps_double_negation():
    m = two_chain()
    padded = pad_leaves(m)
    f = Not(Not(P))
    assert forces(m, "r", f) and forces(padded, "r", f)


def test_padding_preserves_forcing_on_corpus():
    rng = random.Random(2)
    for _ in range(50):
        m = random_model(rng, max_nodes=5, tree=True)
        padded = pad_leaves(m)
        assert padded.eventually_constant and validate_model(padded) == []
        for f in [random_sentence(rng) for _ in range(20)]:
            for k in m.nodes:
                assert forces(padded, k, f) == forces(m, k, f)


def test_padding_rejects_non_trees():
    with pytest.raises(TransformError):
        pad_leaves(diamond())


# ---------------------------------------------------------------- neighbors

def test_neighbor_sets():
    assert neighbor_set(chain("r", "a", "b"), "r") == ("a",)
    assert neighbor_set(diamond(), "r") == ("a", "b")
    assert neighbor_set(chain("r", "a"), "a") == ()
    padded = pad_leaves(chain("r", "a"))
    assert neighbor_set(padded, "a") == ("a+1",)
    assert neighbor_set(padded, "a+1") == ("a+2",)


# ------------------------------------------------------- binary unraveling

def test_binary_unravel_needs_padding():
    with pytest.raises(TransformError):
        binary_unravel(chain("r", "a"))


def test_chain_binary_map():
    u = binary_unravel(pad_leaves(two_chain()))
    assert f_eval(u, "") == "r"
    for m in range(9):
        assert f_eval(u, "0" * m) == "r"
        assert f_eval(u, "0" * m + "1") == "a"


def test_round_robin_neighbors():
    u = binary_unravel(pad_leaves(unravel_to_tree(diamond())))
    assert [f_eval(u, "0" * m + "1") for m in range(4)] == ["r/a", "r/b", "r/a", "r/b"]


def test_zero_extensions_keep_the_value():
    rng = random.Random(3)
    u = binary_unravel(pad_leaves(random_model(rng, max_nodes=5, tree=True)))
    for x in strings(5):
        for m in range(1, 4):
            assert f_eval(u, x + "0" * m) == f_eval(u, x)


def test_binary_map_is_onto_for_diamond():
    u = binary_unravel(pad_leaves(unravel_to_tree(diamond())))
    image = {u.source.resolve(f_eval(u, x)) for x in strings(6)}
    assert image == set(u.source.nodes)


def _eager_f(u, depth):
    """Stage-by-stage construction: f(x0) = f(x), f(x1) = g_{f(y)}(m) where
    x = y 0^m and y is empty or ends in 1."""
    f = {"": u.root}
    level = [""]
    for _ in range(depth):
        nxt = []
        for x in level:
            f[x + "0"] = f[x]
            y = x.rstrip("0")
            f[x + "1"] = u.g(f[y], len(x) - len(y))
            nxt += [x + "0", x + "1"]
        level = nxt
    return f


def test_lazy_map_agrees_with_eager_stages():
    rng = random.Random(4)
    for _ in range(10):
        u = binary_unravel(pad_leaves(random_model(rng, max_nodes=5, tree=True)))
        for x, k in _eager_f(u, 10).items():
            assert f_eval(u, x) == k


def test_bad_binary_string():
    u = binary_unravel(pad_leaves(two_chain()))
    with pytest.raises(TransformError):
        f_eval(u, "012")


# --------------------------------------------------------------------- cones

def test_chain_cone_equal_at_depth_two():
    u = binary_unravel(pad_leaves(two_chain()))
    assert cone_check(u, "", 2).cone_equal_at_depth
    assert cone_witness_depth(u, "", 5) == 1


def test_depth_zero_misses_proper_successors():
    u = binary_unravel(pad_leaves(unravel_to_tree(diamond())))
    rep = cone_check(u, "", 0)
    assert rep.cone_subset and not rep.cone_equal_at_depth
    assert rep.missing == {"r/a", "r/b", "r/a/t", "r/b/t"}


def test_cone_inclusion_always_holds():
    rng = random.Random(5)
    for _ in range(20):
        u = binary_unravel(pad_leaves(random_model(rng, max_nodes=5, tree=True)))
        for x in strings(3):
            for d in range(4):
                assert cone_check(u, x, d).cone_subset


def test_cone_equality_reached():
    rng = random.Random(6)
    for _ in range(20):
        m = pad_leaves(random_model(rng, max_nodes=6, tree=True))
        u = binary_unravel(m)
        branching = max(len(m.covers[k]) for k in m.nodes)
        for x in strings(3):
            d = cone_witness_depth(u, x, 24)
            assert d is not None and d <= 2 * (m.height() + branching)


# ------------------------------------------------------- binary forcing

def test_binary_forcing_two_chain():
    u = binary_unravel(pad_leaves(two_chain()))
    f = Not(Not(P))
    assert forces_binary(u, "", f) and forces_binary_direct(u, "", f)
    assert not forces_binary(u, "", P) and not forces_binary_direct(u, "", P)


def test_binary_atoms_are_local():
    rng = random.Random(7)
    u = binary_unravel(pad_leaves(random_model(rng, max_nodes=5, tree=True)))
    for x in strings(4):
        s = u.source.structure(f_eval(u, x))
        for f in (TOP, BOT, Pred("P", (App("c", ()),))):
            assert forces_binary(u, x, f) == classical_sat(s, f)


def test_quotient_states_cover_strings():
    u = binary_unravel(pad_leaves(unravel_to_tree(diamond())))
    q = binary_quotient(u)
    assert {state_of(u, x) for x in strings(6)} <= set(q.nodes)


def test_pull_back_equals_direct_route():
    rng = random.Random(8)
    for _ in range(15):
        u = binary_unravel(pad_leaves(random_model(rng, max_nodes=5, tree=True)))
        q = binary_quotient(u)
        for f in [random_sentence(rng) for _ in range(20)]:
            for x in strings(3):
                assert forces_binary(u, x, f) == forces_binary_direct(u, x, f, q)


# ------------------------------------------------------------------ gluing

def _single(p, q=False):
    preds = {"p": {()} if p else set(), "q": {()} if q else set()}
    return KripkeModel(("n",), frozenset(), {"n": Structure((0,), {}, preds)}, None, {"p": 0, "q": 0})


def test_glue_forcing_atom_everywhere():
    root = Structure((0,), {}, {"p": {()}, "q": set()})
    g = glue_root([_single(True), _single(True)], root)
    assert validate_model(g) == [] and forces(g, "r", P)


def test_glue_disagreeing_components():
    root = Structure((0,), {}, {"p": set(), "q": set()})
    g = glue_root([_single(False, True), _single(False, False)], root)
    assert not forces(g, "r", Q) and not forces(g, "r", Not(Q))
    assert not forces(g, "r", Or(Q, Not(Q)))


def test_glue_rejects_root_atom_false_above():
    root = Structure((0,), {}, {"p": {()}, "q": set()})
    with pytest.raises(GluingError) as exc:
        glue_root([_single(True), _single(False)], root)
    assert exc.value.component == 1 and exc.value.atom == "p()"


def test_glue_files():
    g = glue_root([load_model(DATA / "two_chain.json")] * 2,
                  Structure((0,), {}, {"p": set()}))
    assert g.root == "r" and len(g.nodes) == 5
    assert forces(g, "r", Not(Not(P)))

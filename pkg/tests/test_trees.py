import random

import networkx as nx
import pytest

from oracles import all_consistent, nx_tree
from treesets import (
    MinorModel,
    Tree,
    build_system,
    edge_tree_set,
    flip_path,
    minor_subset,
    orientation_of,
    roundtrip_tau,
    roundtrip_tree,
    subset_minor,
    tree_of,
)
from treesets.errors import InvalidModel, InvalidTree, NotASubset, NotATreeSet, NotRegular, NotSplitting
from treesets.generators import random_tree


@pytest.mark.parametrize(
    "vertices,edges",
    [([], []), (["a", "a"], []), (["a", "b"], []), (["a", "b", "c"], [("a", "b"), ("b", "a"), ("a", "c")]),
     (["a"], [("a", "a")]), (["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "a")]), (["a"], [("a", "z")])],
)
def test_invalid_trees(vertices, edges):
    with pytest.raises(InvalidTree):
        Tree(vertices, edges)


def test_single_vertex_tree_gives_empty_system():
    assert len(edge_tree_set(Tree(["x"], []))) == 0


def test_p3_edge_tree_set(tau_p3):
    assert tau_p3.strict_relations() == {("(a,b)", "(b,c)"), ("(c,b)", "(b,a)")}


def test_k13_edge_tree_set(k13):
    tau = edge_tree_set(k13)
    assert len(tau) == 6
    for i in "123":
        for j in "123":
            if i != j:
                assert tau.lt(f"(l{i},c)", f"(c,l{j})")
                assert tau.leq(f"(l{i},c)", tau.inverse(f"(l{j},c)"))


def _nx_iso(T1, T2):
    return nx.is_isomorphic(nx_tree(T1), nx_tree(T2))


@pytest.mark.parametrize("name", ["p3", "k13", "p4"])
def test_tree_of_examples(name, request):
    T = request.getfixturevalue(name)
    t = tree_of(edge_tree_set(T))
    assert _nx_iso(T, t.tree)
    assert len(t.tree.vertices) == len(all_consistent(edge_tree_set(T)))


def test_tree_of_empty():
    t = tree_of(build_system([]))
    assert len(t.tree.vertices) == 1 and not t.tree.edges


def test_tree_of_rejects():
    with pytest.raises(NotATreeSet):
        tree_of(build_system([("s", "s*"), ("r", "r*")]))
    with pytest.raises(NotRegular):
        tree_of(build_system([("s", "s*")], [("s", "s*")]))


def test_flip_path_examples(tau_p3, k13):
    at_a = orientation_of(tau_p3, "(b,a)")
    at_c = orientation_of(tau_p3, "(b,c)")
    path = flip_path(tau_p3, at_a, at_c)
    assert len(path) == 3 and path[1].chosen == {"(a,b)", "(c,b)"}
    assert len(flip_path(tau_p3, at_a, at_a)) == 1
    tau = edge_tree_set(k13)
    path = flip_path(tau, orientation_of(tau, "(c,l1)"), orientation_of(tau, "(c,l2)"))
    assert len(path) == 3 and path[1].chosen == {"(l1,c)", "(l2,c)", "(l3,c)"}


def test_flip_path_rejects_non_splitting():
    sys = edge_tree_set(Tree(["a", "b", "c"], [("a", "b"), ("b", "c")]))
    with pytest.raises(NotSplitting):
        flip_path(sys, {"(b,a)", "(b,c)"}, {"(a,b)", "(b,c)"})


def test_roundtrips_examples(p3, k13):
    for T in (p3, k13, Tree(["x"], [])):
        assert roundtrip_tree(T).certified
        assert roundtrip_tau(edge_tree_set(T)).certified
    assert roundtrip_tau(build_system([])).forward == {}


def test_roundtrip_random_trees():
    rng = random.Random(4)
    for _ in range(30):
        T = random_tree(rng, 8, 8)
        assert roundtrip_tree(T).certified
        iso = roundtrip_tau(edge_tree_set(T))
        assert iso.certified and iso.verdict.accepted


def test_p3_minor_of_p4(p3, p4):
    model, t1, t2 = subset_minor(edge_tree_set(p3), edge_tree_set(p4))
    sizes = sorted(len(bs) for bs in model.branch_sets.values())
    assert sizes == [1, 1, 2]
    iso = minor_subset(model, t1.tree, t2.tree)
    assert iso.certified and len(iso.image) == 4 and len(edge_tree_set(p4)) == 6


def test_identity_minor(p3):
    tau = edge_tree_set(p3)
    model, t1, t2 = subset_minor(tau, tau)
    assert all(len(bs) == 1 for bs in model.branch_sets.values())
    iso = minor_subset(model, t1.tree, t2.tree)
    assert iso.certified


def test_empty_minor(p4):
    model, t1, t2 = subset_minor(build_system([]), edge_tree_set(p4))
    assert list(map(len, model.branch_sets.values())) == [4]


def test_subset_minor_rejects_bad_inclusion(p3, p4):
    with pytest.raises(NotASubset):
        subset_minor(edge_tree_set(p3), edge_tree_set(p4), {"(a,b)": "(a,b)", "(b,a)": "(b,a)", "(b,c)": "(d,c)", "(c,b)": "(c,d)"})
    # reversing a separation breaks the involution
    bad = {"(a,b)": "(b,a)", "(b,a)": "(a,b)", "(b,c)": "(b,c)", "(c,b)": "(c,b)"}
    with pytest.raises(NotASubset):
        subset_minor(edge_tree_set(p3), edge_tree_set(p3), bad)


def test_minor_subset_rejects_disconnected_branch_set(p3, p4):
    model = MinorModel(
        {"a": {"a", "c"}, "b": {"b"}, "c": {"d"}},
        {frozenset(("a", "b")): frozenset(("a", "b")), frozenset(("b", "c")): frozenset(("c", "d"))},
    )
    with pytest.raises(InvalidModel):
        minor_subset(model, p3, p4)


def test_minor_subset_rejects_deletions(p3, p4):
    model = MinorModel(
        {"a": {"a"}, "b": {"b"}, "c": {"c"}},
        {frozenset(("a", "b")): frozenset(("a", "b")), frozenset(("b", "c")): frozenset(("b", "c"))},
    )
    with pytest.raises(InvalidModel):
        minor_subset(model, p3, p4)

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_consistent
from treesets import (
    edge_tree_set,
    enumerate_orientations,
    extend,
    flip_path,
    orientation_of,
    roundtrip_tau,
    roundtrip_tree,
    tree_of,
    validate_tree_set,
)
from treesets.generators import bipartition_system, prufer_tree
from treesets.presented import FINITE, OMEGA, OMEGA_PLUS_ONE, OrderTypeLabel, presentation, truncate


@st.composite
def trees(draw, max_vertices=9):
    n = draw(st.integers(1, max_vertices))
    seq = draw(st.lists(st.integers(0, n - 1), min_size=max(n - 2, 0), max_size=max(n - 2, 0)))
    return prufer_tree(seq, n)


@st.composite
def systems(draw):
    n = draw(st.integers(3, 5))
    ground = list(range(n))
    family = draw(st.lists(st.frozensets(st.sampled_from(ground)), min_size=1, max_size=5))
    return bipartition_system(family, ground)


@st.composite
def presentations(draw):
    T = draw(trees(max_vertices=5).filter(lambda t: len(t.vertices) > 1))
    edges, labels = [], {}
    for j, (u, v) in enumerate(T.edges):
        if draw(st.booleans()):
            u, v = v, u
        kind = draw(st.sampled_from([FINITE, OMEGA, OMEGA_PLUS_ONE]))
        k = draw(st.integers(1, 3)) if kind == FINITE else None
        edges.append((u, v, f"e{j}"))
        labels[f"e{j}"] = OrderTypeLabel(kind, k, u)
    return presentation(T.vertices, edges, labels)


@settings(max_examples=60, deadline=None)
@given(trees())
def test_roundtrips_certify(T):
    assert roundtrip_tree(T).certified
    assert roundtrip_tau(edge_tree_set(T)).certified


@settings(max_examples=60, deadline=None)
@given(trees(max_vertices=8))
def test_vertices_are_orientations(T):
    tau = edge_tree_set(T)
    t = tree_of(tau)
    orients = enumerate_orientations(tau)
    assert len(t.tree.vertices) == len(orients) == sum(O.splitting for O in orients)
    assert len(t.tree.edges) == len(tau.pairs)
    for a in t.orientations.values():
        for b in t.orientations.values():
            assert len(flip_path(tau, a, b)) - 1 == t.tree.distance(a.label, b.label)


@settings(max_examples=80, deadline=None)
@given(systems())
def test_extend_lands_in_enumeration(sys):
    consistent = set(all_consistent(sys))
    O = extend(sys)
    assert O.chosen in consistent
    nested = validate_tree_set(sys).is_nested
    for x in sys:
        try:
            O = extend(sys, (), pin=x)
        except Exception as exc:
            assert type(exc).__name__ in ("PinTrivial", "CoTrivialElement")
            continue
        assert O.chosen in consistent
        if nested:
            hits = [
                C for C in consistent if x in C and not any(sys.lt(x, y) for y in C)
            ]
            assert hits == [O.chosen]


@settings(max_examples=40, deadline=None)
@given(presentations(), st.integers(1, 6))
def test_presented_order_matches_truncation(pres, depth):
    tau = truncate(pres, depth)
    els = pres.elements(depth)
    for x in els:
        for y in els:
            assert pres.leq(x, y) == tau.leq(x.name, y.name)


@settings(max_examples=40, deadline=None)
@given(trees(max_vertices=7))
def test_orientation_of_inverses(T):
    tau = edge_tree_set(T)
    for x in tau:
        assert orientation_of(tau, x).chosen ^ orientation_of(tau, tau.inverse(x)).chosen == {x, tau.inverse(x)}

import random

import pytest

from oracles import all_consistent, maximal, splitting
from treesets import (
    build_system,
    edge_tree_set,
    enumerate_orientations,
    extend,
    is_consistent,
    is_splitting,
    is_star,
    lies_in_splitting_star,
    orientation_of,
    star_of,
    validate_tree_set,
)
from treesets.errors import (
    CoTrivialElement,
    DoubleOriented,
    InconsistentInput,
    InconsistentOrientation,
    PinNotMaximalInP,
    PinTrivial,
    TooLarge,
    UnknownElement,
)
from treesets.generators import random_tree, system_corpus


def test_is_consistent_examples(tau_p3):
    assert not is_consistent(tau_p3, ["(b,a)", "(b,c)"])
    assert is_consistent(tau_p3, ["(a,b)", "(b,c)"])
    assert is_consistent(tau_p3, [])


def test_is_consistent_errors(tau_p3):
    with pytest.raises(DoubleOriented):
        is_consistent(tau_p3, ["(a,b)", "(b,a)"])
    with pytest.raises(UnknownElement):
        is_consistent(tau_p3, ["x"])


def test_extend_with_pin(tau_p3):
    O = extend(tau_p3, [], pin="(a,b)")
    assert O.chosen == {"(a,b)", "(c,b)"} and O.unique and O.consistent


def test_extend_total_input(tau_p3):
    assert extend(tau_p3, ["(a,b)", "(b,c)"]).chosen == {"(a,b)", "(b,c)"}


def test_extend_rejects_co_trivial():
    sys = build_system([("x", "x*"), ("r", "r*")], [("x", "r"), ("x", "r*")])
    with pytest.raises(CoTrivialElement) as exc:
        extend(sys, ["x*"])
    assert exc.value.witness == "r"


def test_extend_precondition_errors(tau_p3):
    with pytest.raises(InconsistentInput):
        extend(tau_p3, ["(b,a)", "(b,c)"])
    with pytest.raises(PinNotMaximalInP):
        extend(tau_p3, ["(b,c)"], pin="(a,b)")
    sys = build_system([("x", "x*"), ("r", "r*")], [("x", "r"), ("x", "r*")])
    with pytest.raises(PinTrivial):
        extend(sys, [], pin="x")


def test_orientation_of_examples(tau_p3, k13):
    assert orientation_of(tau_p3, "(a,b)").chosen == {"(a,b)", "(c,b)"}
    assert orientation_of(tau_p3, "(b,c)").chosen == {"(a,b)", "(b,c)"}
    tau = edge_tree_set(k13)
    assert orientation_of(tau, "(l1,c)").chosen == {"(l1,c)", "(l2,c)", "(l3,c)"}
    # brute force: the only consistent orientation with (l1,c) maximal
    hits = [
        O for O in all_consistent(tau) if "(l1,c)" in O and "(l1,c)" in maximal(tau, O)
    ]
    assert hits == [orientation_of(tau, "(l1,c)").chosen]


def test_stars(tau_p3):
    assert star_of(tau_p3, {"(a,b)", "(c,b)"}) == {"(a,b)", "(c,b)"}
    assert is_splitting(tau_p3, {"(a,b)", "(c,b)"})
    assert star_of(tau_p3, {"(b,a)", "(c,b)"}) == {"(b,a)"}
    assert is_splitting(tau_p3, {"(b,a)", "(c,b)"})
    with pytest.raises(InconsistentOrientation):
        star_of(tau_p3, {"(b,a)", "(b,c)"})


def test_enumerate_counts(tau_p3, k13):
    assert len(enumerate_orientations(tau_p3)) == 3
    orients = enumerate_orientations(edge_tree_set(k13))
    assert len(orients) == 4 and all(O.splitting for O in orients)
    assert [O.chosen for O in enumerate_orientations(build_system([]))] == [frozenset()]


def test_enumerate_guard():
    sys = edge_tree_set(random_tree(random.Random(0), 21, min_edges=21))
    with pytest.raises(TooLarge):
        enumerate_orientations(sys)
    with pytest.raises(TooLarge):
        enumerate_orientations(edge_tree_set(random_tree(random.Random(0), 4, 4)), max_separations=3)


def test_enumerate_matches_brute_force():
    for sys in system_corpus(random.Random(5), count=50, max_separations=7):
        got = enumerate_orientations(sys)
        assert {O.chosen for O in got} == set(all_consistent(sys))
        assert len(got) == len({O.chosen for O in got})
        for O in got:
            assert O.splitting == splitting(sys, O.chosen)


def test_lies_in_splitting_star_finite(tau_p3):
    for sys in [tau_p3] + [edge_tree_set(random_tree(random.Random(i), 7)) for i in range(10)]:
        assert all(lies_in_splitting_star(sys, x) for x in sys)


def test_orientations_of_inverses_differ_in_one_separation():
    tau = edge_tree_set(random_tree(random.Random(2), 9, 9))
    for x in tau:
        a, b = orientation_of(tau, x).chosen, orientation_of(tau, tau.inverse(x)).chosen
        assert a ^ b == {x, tau.inverse(x)}


def test_star_invariant_on_nested_systems():
    for sys in system_corpus(random.Random(8), count=40, max_separations=7):
        if not validate_tree_set(sys).is_nested:
            continue
        for O in enumerate_orientations(sys):
            assert is_star(sys, star_of(sys, O))

import pytest

from treesets import Tree, edge_tree_set
from treesets.presented import OMEGA_PLUS_ONE, OrderTypeLabel, presentation


@pytest.fixture
def p3():
    return Tree(["a", "b", "c"], [("a", "b"), ("b", "c")])


@pytest.fixture
def p4():
    return Tree(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")])


@pytest.fixture
def k13():
    return Tree(["c", "l1", "l2", "l3"], [("l1", "c"), ("l2", "c"), ("l3", "c")])


@pytest.fixture
def tau_p3(p3):
    return edge_tree_set(p3)


@pytest.fixture
def omega_plus_one():
    return presentation(["u", "v"], [("u", "v", "e")], {"e": OrderTypeLabel(OMEGA_PLUS_ONE, None, "u")})

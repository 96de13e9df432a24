"""Corpora of trees, separation systems and presentations for testing.

All random generators take an explicit ``random.Random`` so runs are
reproducible from a seed.
"""

from __future__ import annotations

import itertools
import random

from .presented import FINITE, OMEGA, OMEGA_PLUS_ONE, OrderTypeLabel, presentation
from .separations import build_system
from .trees import Tree, edge_tree_set


def prufer_tree(seq, n) -> Tree:
    """Labelled tree on vertices ``v0..v{n-1}`` from a Pruefer sequence."""
    names = [f"v{i}" for i in range(n)]
    if n == 1:
        return Tree(names, [])
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((names[leaf], names[x]))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [i for i in range(n) if degree[i] == 1]
    edges.append((names[u], names[w]))
    return Tree(names, edges)


def all_labelled_trees(max_edges):
    """Every labelled tree with at most ``max_edges`` edges."""
    for n in range(1, max_edges + 2):
        if n <= 2:
            yield prufer_tree((), n)
            continue
        for seq in itertools.product(range(n), repeat=n - 2):
            yield prufer_tree(seq, n)


def random_tree(rng: random.Random, max_edges, min_edges=0) -> Tree:
    n = rng.randint(min_edges, max_edges) + 1
    seq = [rng.randrange(n) for _ in range(max(n - 2, 0))]
    return prufer_tree(seq, n)


def relabel_tree(T: Tree, rng: random.Random) -> Tree:
    names = [f"x{i}" for i in range(len(T.vertices))]
    rng.shuffle(names)
    m = dict(zip(T.vertices, names))
    return Tree([m[v] for v in T.vertices], [(m[u], m[v]) for u, v in T.edges])


def relabel_system(tau, rng: random.Random):
    """Copy of ``tau`` with shuffled opaque ids, plus the renaming used."""
    ids = [f"s{i}" for i in range(len(tau))]
    rng.shuffle(ids)
    m = dict(zip(tau.elements, ids))
    return tau.rename(m), m


def bipartition_system(family, ground):
    """Separation system of bipartitions ``(A, ground - A)`` for ``A`` in ``family``.

    ``(A, B) <= (C, D)`` iff ``A`` is a subset of ``C``.  Laminar families
    give tree sets; including the empty set gives a trivial element.
    """
    ground = frozenset(ground)
    seps = []
    seen = set()
    for A in family:
        A = frozenset(A)
        key = frozenset((A, ground - A))
        if key in seen:
            continue
        seen.add(key)
        seps.append((A, ground - A))

    def name(A):
        return "".join(sorted(map(str, A))) + "|" + "".join(sorted(map(str, ground - A)))

    sides = {}
    pairs = []
    for A, B in seps:
        pairs.append((name(A), name(B)))
        sides[name(A)] = A
        sides[name(B)] = B
    relations = [(x, y) for x in sides for y in sides if x != y and sides[x] <= sides[y]]
    return build_system(pairs, relations)


def random_bipartition_system(rng: random.Random, ground_size=5, count=4, laminar=False, with_empty=False):
    ground = list(range(ground_size))
    family = []
    if with_empty:
        family.append(frozenset())
    tries = 0
    while len(family) < count + with_empty and tries < 200:
        tries += 1
        A = frozenset(x for x in ground if rng.random() < 0.5)
        if not A or len(A) == ground_size:
            continue
        B = frozenset(ground) - A
        if laminar and not all(_nested_sets(A, C, ground_size) for C in family):
            continue
        if A in family or B in family:
            continue
        family.append(A)
    return bipartition_system(family, ground)


def _nested_sets(A, C, n):
    full = frozenset(range(n))
    D = full - C
    return A <= C or C <= A or A <= D or D <= A


def system_corpus(rng: random.Random, count=40, max_separations=10):
    """Mixed separation systems: edge tree sets, laminar, crossing, trivial."""
    out = [build_system([])]
    for T in all_labelled_trees(3):
        out.append(edge_tree_set(T))
    while len(out) < count:
        kind = rng.randrange(4)
        if kind == 0:
            out.append(edge_tree_set(random_tree(rng, min(max_separations, 8))))
        else:
            n = rng.randint(4, 6)
            out.append(
                random_bipartition_system(
                    rng,
                    n,
                    rng.randint(2, min(max_separations - 1, 6)),
                    laminar=kind == 1,
                    with_empty=kind == 3,
                )
            )
    return [s for s in out if len(s.pairs) <= max_separations]


_LABEL_KINDS = (FINITE, OMEGA, OMEGA_PLUS_ONE)


def random_presentation(rng: random.Random, max_edges=5, kinds=_LABEL_KINDS):
    T = random_tree(rng, max_edges, min_edges=1)
    edges = []
    labels = {}
    for j, (u, v) in enumerate(T.edges):
        eid = f"e{j}"
        if rng.random() < 0.5:
            u, v = v, u
        edges.append((u, v, eid))
        kind = rng.choice(kinds)
        labels[eid] = OrderTypeLabel(kind, rng.randint(1, 3) if kind == FINITE else None, u)
    return presentation(T.vertices, edges, labels)


def presentation_suite(rng: random.Random, count=24):
    """Fixed shapes covering every label kind, topped up with random ones."""
    plus = OrderTypeLabel(OMEGA_PLUS_ONE, None, "u")
    suite = [
        presentation(["u", "v"], [("u", "v", "e")], {"e": plus}),
        presentation(["u", "v"], [("u", "v", "e")], {"e": OrderTypeLabel(OMEGA, None, "u")}),
        presentation(["u", "v"], [("u", "v", "e")], {"e": 3}),
        presentation(
            ["a", "b", "c"],
            [("a", "b", "f"), ("b", "c", "g")],
            {"f": OrderTypeLabel(OMEGA, None, "a"), "g": 2},
        ),
        presentation(
            ["a", "b", "c"],
            [("a", "b", "f"), ("b", "c", "g")],
            {"f": OrderTypeLabel(OMEGA, None, "b"), "g": OrderTypeLabel(OMEGA_PLUS_ONE, None, "c")},
        ),
        presentation(
            ["c", "x", "y", "z"],
            [("c", "x", "p"), ("c", "y", "q"), ("c", "z", "r")],
            {"p": OrderTypeLabel(OMEGA, None, "c"), "q": 1, "r": OrderTypeLabel(OMEGA_PLUS_ONE, None, "z")},
        ),
    ]
    while len(suite) < count:
        suite.append(random_presentation(rng))
    return suite

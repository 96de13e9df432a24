"""Finite trees and their edge tree sets, in both directions.

``edge_tree_set`` turns a tree into the tree set of its oriented edges;
``tree_of`` turns a finite regular tree set back into a tree whose
vertices are the splitting orientations.  The round-trip functions build
the two canonical isomorphisms and re-verify them with the generic
checkers instead of trusting the construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import (
    InconsistentInput,
    ConstructionFailure,
    InvalidModel,
    InvalidTree,
    NotASubset,
    NotATreeSet,
    NotRegular,
    NotSplitting,
    TreeSetError,
)
from .orientations import Orientation, is_splitting, make_orientation, orientation_of
from .separations import (
    IsomorphismVerdict,
    SeparationSystem,
    build_system,
    check_isomorphism,
    validate_tree_set,
)


class Tree:
    """A finite tree; construction checks it is connected and acyclic."""

    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        if not self.vertices:
            raise InvalidTree("a tree needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidTree("duplicate vertex ids")
        self.adj = {v: [] for v in self.vertices}
        norm = []
        seen = set()
        for e in edges:
            u, v = e
            if u not in self.adj or v not in self.adj:
                raise InvalidTree(f"edge {e!r} has an unknown end-vertex")
            if u == v:
                raise InvalidTree(f"loop at {u!r}")
            key = frozenset((u, v))
            if key in seen:
                raise InvalidTree(f"parallel edge {e!r}")
            seen.add(key)
            norm.append((u, v))
            self.adj[u].append(v)
            self.adj[v].append(u)
        self.edges = tuple(norm)
        if len(self.edges) != len(self.vertices) - 1:
            raise InvalidTree(
                f"{len(self.vertices)} vertices and {len(self.edges)} edges cannot form a tree"
            )
        if len(self._bfs(self.vertices[0])) != len(self.vertices):
            raise InvalidTree("graph is not connected")
        self._dist = None

    def __repr__(self):
        return f"Tree({len(self.vertices)} vertices)"

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.edge_set() == other.edge_set()

    def __hash__(self):
        return hash((frozenset(self.vertices), self.edge_set()))

    def edge_set(self):
        return frozenset(frozenset(e) for e in self.edges)

    def _bfs(self, root):
        dist = {root: 0}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in self.adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def distance(self, u, v) -> int:
        if self._dist is None:
            self._dist = {v: self._bfs(v) for v in self.vertices}
        return self._dist[u][v]

    def path(self, u, v):
        """Vertex sequence of the unique ``u``--``v`` path."""
        out = [u]
        while out[-1] != v:
            cur = out[-1]
            out.append(min(self.adj[cur], key=lambda w: self.distance(w, v)))
        return out

    def degree(self, v) -> int:
        return len(self.adj[v])


def edge_id(x, y) -> str:
    return f"({x},{y})"


def edge_tree_set(T: Tree) -> SeparationSystem:
    """The oriented edges of ``T`` with the path-induced order.

    ``(x,y) < (v,w)`` for distinct edges iff the path connecting the two
    edges runs from ``y`` to ``v``.
    """
    pairs = []
    ids = set()
    for x, y in T.edges:
        a, b = edge_id(x, y), edge_id(y, x)
        if a in ids or b in ids:
            raise TreeSetError(f"oriented edge ids collide at {a!r}; rename vertices")
        ids.update((a, b))
        pairs.append((a, b))
    oriented = [(x, y) for x, y in T.edges] + [(y, x) for x, y in T.edges]
    relations = []
    for x, y in oriented:
        for v, w in oriented:
            if {x, y} == {v, w}:
                continue
            d = T.distance(y, v)
            if T.distance(x, v) == d + 1 and T.distance(y, w) == d + 1:
                relations.append((edge_id(x, y), edge_id(v, w)))
    return build_system(pairs, relations)


@dataclass
class TreeOfTau:
    """Result of :func:`tree_of`.

    ``orientations`` maps vertex labels to their orientations and
    ``vertex_of`` maps an oriented element ``s`` to the label of the unique
    orientation in which ``s`` is maximal.
    """

    tree: Tree
    orientations: dict
    vertex_of: dict

    def edge_of(self, s, tau: SeparationSystem):
        return (self.vertex_of[tau.inverse(s)], self.vertex_of[s])


def tree_of(tau: SeparationSystem) -> TreeOfTau:
    report = validate_tree_set(tau)
    if not report.is_tree_set:
        raise NotATreeSet(
            f"not a tree set: crossing {report.crossing_pairs[:3]}, trivial {report.trivial_elements[:3]}"
        )
    if not report.is_regular:
        raise NotRegular(f"small elements: {report.small_elements[:5]}")
    if not len(tau):
        empty = make_orientation(tau, ())
        return TreeOfTau(Tree([empty.label], []), {empty.label: empty}, {})

    vertex_of = {}
    orientations = {}
    for s in tau:
        O = orientation_of(tau, s)
        if not O.splitting:
            raise ConstructionFailure(f"O({s!r}) is not splitting", certificate=O.sorted())
        vertex_of[s] = O.label
        orientations[O.label] = O
    edges = []
    for a, b in tau.pairs:
        if vertex_of[a] == vertex_of[b]:
            raise ConstructionFailure(f"loop at separation {(a, b)!r}", certificate=vertex_of[a])
        edges.append((vertex_of[b], vertex_of[a]))
    try:
        tree = Tree(sorted(orientations), edges)
    except InvalidTree as exc:
        raise ConstructionFailure(
            f"tree of tree set is not a tree: {exc}", certificate={"vertices": sorted(orientations), "edges": edges}
        ) from exc
    return TreeOfTau(tree, orientations, vertex_of)


def _orientation_set(O):
    return O.chosen if isinstance(O, Orientation) else frozenset(O)


def flip_path(tau: SeparationSystem, O, O2):
    """Walk from splitting orientation ``O`` to ``O2`` by single flips.

    Each step inverts the unique maximal element of the current
    orientation whose inverse lies in ``O2``.  Returns the list of
    orientations visited, both ends included.
    """
    start, goal = _orientation_set(O), _orientation_set(O2)
    for label, chosen in (("source", start), ("target", goal)):
        try:
            ok = is_splitting(tau, chosen)
        except InconsistentInput:
            ok = False
        if not ok:
            raise NotSplitting(f"{label} orientation is not splitting")
    path = [make_orientation(tau, start)]
    cur = start
    for _ in range(len(tau.pairs) + 1):
        if cur == goal:
            return path
        star = path[-1]
        maximal = [s for s in cur if not any(tau.lt(s, t) for t in cur)]
        flips = [s for s in maximal if tau.inverse(s) in goal]
        if len(flips) != 1:
            raise ConstructionFailure(
                f"expected exactly one flippable maximal element, found {len(flips)}",
                certificate={"orientation": star.sorted(), "flips": sorted(flips)},
            )
        s = flips[0]
        cur = (cur - {s}) | {tau.inverse(s)}
        path.append(make_orientation(tau, cur))
    raise ConstructionFailure("flipping did not terminate", certificate=[p.sorted() for p in path])


# -- isomorphisms ------------------------------------------------------------


@dataclass
class TreeIso:
    forward: dict
    certified: bool


@dataclass
class TreeSetIso:
    forward: dict
    certified: bool
    verdict: IsomorphismVerdict | None = None
    image: SeparationSystem | None = None


def check_tree_isomorphism(phi, T1: Tree, T2: Tree) -> bool:
    """Vertex bijection mapping the edge set of ``T1`` exactly onto that of ``T2``."""
    if set(phi) != set(T1.vertices):
        return False
    if set(phi.values()) != set(T2.vertices) or len(T1.vertices) != len(T2.vertices):
        return False
    mapped = {frozenset((phi[u], phi[v])) for u, v in T1.edges}
    return mapped == T2.edge_set()


def roundtrip_tau(tau: SeparationSystem) -> TreeSetIso:
    """Certified isomorphism ``tau -> edge_tree_set(tree_of(tau))``."""
    t = tree_of(tau)
    target = edge_tree_set(t.tree)
    phi = {s: edge_id(t.vertex_of[tau.inverse(s)], t.vertex_of[s]) for s in tau}
    verdict = check_isomorphism(phi, tau, target)
    return TreeSetIso(phi, verdict.accepted and verdict.inverse_order_preserving, verdict, target)


def roundtrip_tree(T: Tree) -> TreeIso:
    """Certified isomorphism ``T -> tree_of(edge_tree_set(T))``."""
    tau = edge_tree_set(T)
    t = tree_of(tau)
    if len(T.vertices) == 1:
        phi = {T.vertices[0]: t.tree.vertices[0]}
    else:
        phi = {v: t.vertex_of[edge_id(T.adj[v][0], v)] for v in T.vertices}
    return TreeIso(phi, check_tree_isomorphism(phi, T, t.tree))


# -- minors ------------------------------------------------------------------


@dataclass
class MinorModel:
    """Branch sets and edge map witnessing a minor of a tree.

    ``branch_sets`` maps each minor vertex to a set of host vertices;
    ``edge_map`` maps each minor edge (a frozenset of two minor vertices)
    to a host edge (a frozenset of two host vertices).
    """

    branch_sets: dict
    edge_map: dict = field(default_factory=dict)


def minor_model_problems(model: MinorModel, minor: Tree, host: Tree, contraction_only=False):
    """List every violated model invariant; empty means valid."""
    problems = []
    if set(model.branch_sets) != set(minor.vertices):
        problems.append("branch sets are not indexed by the minor's vertices")
        return problems
    owner = {}
    for v, bs in model.branch_sets.items():
        if not bs:
            problems.append(f"branch set of {v!r} is empty")
            continue
        for x in bs:
            if x not in host.adj:
                problems.append(f"branch set of {v!r} has unknown host vertex {x!r}")
            elif x in owner:
                problems.append(f"host vertex {x!r} in branch sets of {owner[x]!r} and {v!r}")
            else:
                owner[x] = v
        inside = set(bs) & set(host.adj)
        if inside:
            root = next(iter(inside))
            seen = {root}
            stack = [root]
            while stack:
                x = stack.pop()
                for y in host.adj[x]:
                    if y in inside and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if seen != inside:
                problems.append(f"branch set of {v!r} is not connected")
    if contraction_only and len(owner) != len(host.vertices):
        problems.append("some host vertices lie in no branch set (deletions are not supported)")
    minor_edges = minor.edge_set()
    if set(model.edge_map) != set(minor_edges):
        problems.append("edge map is not defined exactly on the minor's edges")
    host_edges = host.edge_set()
    images = list(model.edge_map.values())
    if len(set(images)) != len(images):
        problems.append("edge map is not injective")
    for me, he in model.edge_map.items():
        if he not in host_edges:
            problems.append(f"{sorted(he)!r} is not a host edge")
            continue
        a, b = tuple(me)
        x, y = tuple(he)
        ends = {owner.get(x), owner.get(y)}
        if ends != {a, b}:
            problems.append(f"host edge {sorted(he)!r} does not join the branch sets of {a!r} and {b!r}")
    return problems


def verify_minor_model(model: MinorModel, minor: Tree, host: Tree, contraction_only=False):
    problems = minor_model_problems(model, minor, host, contraction_only)
    if problems:
        raise InvalidModel("; ".join(problems))
    return model


def _check_inclusion(f, tau1: SeparationSystem, tau2: SeparationSystem):
    for x in tau1:
        if f.get(x) not in tau2:
            raise NotASubset(f"{x!r} has no image in the larger tree set")
    if len(set(f[x] for x in tau1)) != len(tau1):
        raise NotASubset("inclusion is not injective")
    for x in tau1:
        if tau2.inverse(f[x]) != f[tau1.inverse(x)]:
            raise NotASubset(f"inclusion does not commute with the involution at {x!r}")
        for y in tau1:
            if tau1.leq(x, y) != tau2.leq(f[x], f[y]):
                raise NotASubset(f"order differs on {x!r}, {y!r}")


def subset_minor(tau1: SeparationSystem, tau2: SeparationSystem, inclusion=None):
    """Minor model of ``tree_of(tau1)`` in ``tree_of(tau2)`` for ``tau1`` inside ``tau2``.

    Every edge of ``tree_of(tau2)`` whose separation is not in the image of
    ``tau1`` gets contracted; the resulting components are the branch sets.
    Returns ``(model, tree_of(tau1), tree_of(tau2))``.
    """
    f = dict(inclusion) if inclusion is not None else {x: x for x in tau1}
    _check_inclusion(f, tau1, tau2)
    t1, t2 = tree_of(tau1), tree_of(tau2)
    image = {f[x] for x in tau1}

    parent = {v: v for v in t2.tree.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in tau2.pairs:
        if a not in image:
            ra, rb = find(t2.vertex_of[a]), find(t2.vertex_of[b])
            parent[ra] = rb
    classes = {}
    for v in t2.tree.vertices:
        classes.setdefault(find(v), set()).add(v)

    back = {f[x]: x for x in tau1}
    branch_sets = {}
    for members in classes.values():
        labels = set()
        for v in members:
            restricted = [back[y] for y in t2.orientations[v].chosen if y in back]
            labels.add(make_orientation(tau1, restricted).label)
        if len(labels) != 1 or next(iter(labels)) not in t1.orientations:
            raise ConstructionFailure(
                "branch set does not restrict to a single vertex of the smaller tree",
                certificate=sorted(labels),
            )
        label = labels.pop()
        if label in branch_sets:
            raise ConstructionFailure(f"two branch sets restrict to {label!r}")
        branch_sets[label] = frozenset(members)
    edge_map = {}
    for a, b in tau1.pairs:
        edge_map[frozenset((t1.vertex_of[a], t1.vertex_of[b]))] = frozenset(
            (t2.vertex_of[f[a]], t2.vertex_of[f[b]])
        )
    model = MinorModel(branch_sets, edge_map)
    verify_minor_model(model, t1.tree, t2.tree, contraction_only=True)
    return model, t1, t2


def minor_subset(model: MinorModel, T1: Tree, T2: Tree) -> TreeSetIso:
    """Embed ``edge_tree_set(T1)`` into ``edge_tree_set(T2)`` along a contraction model.

    The returned iso maps onto the induced subsystem on its image and is
    certified by :func:`check_isomorphism`.
    """
    verify_minor_model(model, T1, T2, contraction_only=True)
    owner = {x: v for v, bs in model.branch_sets.items() for x in bs}
    psi = {}
    for me, he in model.edge_map.items():
        a, b = tuple(me)
        x, y = tuple(he)
        if owner[x] != a:
            x, y = y, x
        psi[edge_id(a, b)] = edge_id(x, y)
        psi[edge_id(b, a)] = edge_id(y, x)
    ets1, ets2 = edge_tree_set(T1), edge_tree_set(T2)
    image = ets2.restrict(psi.values())
    verdict = check_isomorphism(psi, ets1, image)
    return TreeSetIso(psi, verdict.accepted and verdict.inverse_order_preserving, verdict, image)

"""Finitely presented infinite tree sets.

A :class:`ChainTreePresentation` is a finite skeleton tree whose edges are
labelled with an order type -- finite ``k``, ``omega`` or ``omega+1`` --
read from a chosen start vertex.  Each skeleton edge stands for a chain of
separations of that order type; the element ``edge[n]+`` points away from
the start vertex, ``edge[n]-`` is its inverse and ``edge[top]`` is the
last element of an ``omega+1`` chain.

Order between elements on different skeleton edges follows the rule for
edge tree sets of trees: ``x < y`` iff the skeleton path between the two
edges leaves ``x`` at its head and enters ``y`` at its tail.

Consistent orientations are described by :class:`Vertex` descriptors:
either a skeleton vertex (every chain points towards it) or an interior
cut position on one edge.  Cut positions on an edge of length ``L`` run
over ``0 .. L``; position ``p`` orients indices ``< p`` forward and the
rest backward.  Positions ``0`` and ``L`` are the edge's end-vertices and
are always reported as skeleton vertices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import (
    InvalidCoordinate,
    InvalidIndex,
    InvalidIntervalSet,
    InvalidTree,
    NotTame,
    TreeSetError,
    UnknownDescriptor,
)
from .separations import SeparationSystem
from .trees import Tree, edge_id, edge_tree_set

FINITE = "finite"
OMEGA = "omega"
OMEGA_PLUS_ONE = "omega_plus_one"
KINDS = (FINITE, OMEGA, OMEGA_PLUS_ONE)

TOP = "top"
# limit cut positions; plain ints are the finite positions
OMEGA_POS = "omega"
TOP_POS = "omega+1"


def _idx_rank(i):
    return (1, 0) if i == TOP else (0, i)


def _pos_rank(p):
    if p == OMEGA_POS:
        return (1, 0)
    if p == TOP_POS:
        return (1, 1)
    return (0, p)


def _after(i):
    return TOP_POS if i == TOP else i + 1


def _before(i):
    return OMEGA_POS if i == TOP else i


@dataclass(frozen=True)
class OrderTypeLabel:
    kind: str
    k: int | None = None
    start: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise TreeSetError(f"unknown order type {self.kind!r}")
        if self.kind == FINITE:
            if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 1:
                raise TreeSetError(f"finite label needs an integer k >= 1, got {self.k!r}")
        elif self.k is not None:
            raise TreeSetError(f"{self.kind} label takes no k")

    @property
    def length(self):
        """The end cut position, as an ordinal."""
        if self.kind == FINITE:
            return self.k
        return OMEGA_POS if self.kind == OMEGA else TOP_POS

    def has_index(self, i) -> bool:
        if i == TOP:
            return self.kind == OMEGA_PLUS_ONE
        if not isinstance(i, int) or isinstance(i, bool) or i < 0:
            return False
        return self.kind != FINITE or i < self.k

    def has_position(self, p) -> bool:
        if p in (OMEGA_POS, TOP_POS):
            return _pos_rank(p) <= _pos_rank(self.length)
        if not isinstance(p, int) or isinstance(p, bool) or p < 0:
            return False
        return self.kind != FINITE or p <= self.k

    def indices(self, limit):
        """Indices in chain order: ints below ``limit`` (and ``top``)."""
        n = limit if self.kind != FINITE else min(limit, self.k)
        out = list(range(n))
        if self.kind == OMEGA_PLUS_ONE:
            out.append(TOP)
        return out

    def describe(self):
        return {FINITE: str(self.k), OMEGA: "ω", OMEGA_PLUS_ONE: "ω+1"}[self.kind]


_ELEMENT_RE = re.compile(r"^(?P<edge>.+)\[(?P<idx>\d+|top)\](?P<dir>[+-])$")


@dataclass(frozen=True)
class PresentedElement:
    edge: str
    index: object
    forward: bool = True

    @property
    def inverse(self):
        return PresentedElement(self.edge, self.index, not self.forward)

    @property
    def separation(self):
        return (self.edge, self.index)

    @property
    def name(self):
        return f"{self.edge}[{self.index}]{'+' if self.forward else '-'}"

    def __str__(self):
        return self.name

    @classmethod
    def parse(cls, text):
        m = _ELEMENT_RE.match(text.strip())
        if not m:
            raise InvalidIndex(f"cannot parse element {text!r}; expected edge[n]+ or edge[top]-")
        idx = m.group("idx")
        return cls(m.group("edge"), TOP if idx == "top" else int(idx), m.group("dir") == "+")


@dataclass(frozen=True)
class Vertex:
    """A vertex descriptor: a skeleton vertex or an interior cut of one edge."""

    vertex: str | None = None
    edge: str | None = None
    position: object = None

    @property
    def name(self):
        if self.vertex is not None:
            return str(self.vertex)
        pos = "omega" if self.position == OMEGA_POS else self.position
        return f"{self.edge}@{pos}"

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class InnerPoint:
    """The point at ``coordinate`` in (0,1) on the edge of ``element``'s separation."""

    element: PresentedElement
    coordinate: Fraction

    @property
    def name(self):
        return f"{self.element.edge}[{self.element.index}]:{self.coordinate}"


class ChainTreePresentation:
    """Skeleton tree plus an order-type label per skeleton edge.

    ``edges`` maps edge ids to their two end-vertices; ``labels`` maps edge
    ids to :class:`OrderTypeLabel`.  A label's ``start`` defaults to the
    first listed end-vertex.
    """

    def __init__(self, vertices, edges, labels):
        edges = dict(edges)
        self.skeleton = Tree(vertices, list(edges.values()))
        if set(labels) != set(edges):
            missing = set(edges) ^ set(labels)
            raise InvalidTree(f"labels and skeleton edges differ on {sorted(missing)!r}")
        self.edge_ids = tuple(edges)
        self.labels = {}
        self.ends = {}
        for e, (u, v) in edges.items():
            lab = labels[e]
            start = lab.start if lab.start is not None else u
            if start not in (u, v):
                raise InvalidTree(f"label of {e!r} starts at {start!r}, not an end-vertex")
            lab = OrderTypeLabel(lab.kind, lab.k, start)
            self.labels[e] = lab
            self.ends[e] = (start, v if start == u else u)
        self._near = {}
        for e in self.edge_ids:
            for f in self.edge_ids:
                if e != f:
                    self._near[e, f] = self._near_end(e, f)

    def __repr__(self):
        parts = ", ".join(f"{e}:{self.labels[e].describe()}" for e in self.edge_ids)
        return f"ChainTreePresentation({parts})"

    def __eq__(self, other):
        if not isinstance(other, ChainTreePresentation):
            return NotImplemented
        return (
            set(self.skeleton.vertices) == set(other.skeleton.vertices)
            and self.ends == other.ends
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((frozenset(self.skeleton.vertices), frozenset(self.ends.items())))

    @property
    def vertices(self):
        return self.skeleton.vertices

    def _near_end(self, e, f):
        a, b = self.ends[e]
        c, d = self.ends[f]
        da = min(self.skeleton.distance(a, c), self.skeleton.distance(a, d))
        db = min(self.skeleton.distance(b, c), self.skeleton.distance(b, d))
        return a if da < db else b

    def side_towards_vertex(self, e, w):
        a, b = self.ends[e]
        return a if self.skeleton.distance(a, w) < self.skeleton.distance(b, w) else b

    # -- elements ----------------------------------------------------------

    def check(self, x: PresentedElement):
        if x.edge not in self.labels:
            raise InvalidIndex(f"unknown skeleton edge {x.edge!r}")
        if not self.labels[x.edge].has_index(x.index):
            raise InvalidIndex(
                f"index {x.index!r} invalid for {x.edge!r} labelled {self.labels[x.edge].describe()}"
            )
        return x

    def element(self, text) -> PresentedElement:
        x = text if isinstance(text, PresentedElement) else PresentedElement.parse(text)
        return self.check(x)

    def head(self, x):
        start, end = self.ends[x.edge]
        return end if x.forward else start

    def tail(self, x):
        start, end = self.ends[x.edge]
        return start if x.forward else end

    def leq(self, x, y) -> bool:
        if x == y:
            return True
        if x.edge == y.edge:
            if x.forward != y.forward:
                return False
            if x.forward:
                return _idx_rank(x.index) < _idx_rank(y.index)
            return _idx_rank(x.index) > _idx_rank(y.index)
        return self._near[x.edge, y.edge] == self.head(x) and self._near[y.edge, x.edge] == self.tail(y)

    def elements(self, limit):
        """Both orientations of every separation with int index below ``limit``."""
        out = []
        for e in self.edge_ids:
            for i in self.labels[e].indices(limit):
                out.append(PresentedElement(e, i, True))
                out.append(PresentedElement(e, i, False))
        return out

    # -- vertices ----------------------------------------------------------

    def cut(self, e, position) -> Vertex:
        lab = self.labels[e]
        if not lab.has_position(position):
            raise UnknownDescriptor(f"position {position!r} invalid on {e!r}")
        if position == 0:
            return Vertex(vertex=self.ends[e][0])
        if position == lab.length:
            return Vertex(vertex=self.ends[e][1])
        return Vertex(edge=e, position=position)

    def check_vertex(self, d: Vertex) -> Vertex:
        if d.vertex is not None:
            if d.vertex not in self.skeleton.adj or d.edge is not None:
                raise UnknownDescriptor(f"unknown vertex descriptor {d!r}")
            return d
        if d.edge not in self.labels:
            raise UnknownDescriptor(f"unknown edge in descriptor {d!r}")
        if self.cut(d.edge, d.position) != d:
            raise UnknownDescriptor(f"{d!r} is not in canonical form")
        return d

    def parse_vertex(self, text) -> Vertex:
        if isinstance(text, Vertex):
            return self.check_vertex(text)
        if text in self.skeleton.adj:
            return Vertex(vertex=text)
        edge, sep, pos = text.rpartition("@")
        if not sep:
            raise UnknownDescriptor(f"unknown vertex {text!r}")
        if pos in ("omega", "ω"):
            position = OMEGA_POS
        elif pos.isdigit():
            position = int(pos)
        else:
            raise UnknownDescriptor(f"cannot parse cut position {pos!r}")
        if edge not in self.labels:
            raise UnknownDescriptor(f"unknown edge {edge!r}")
        return self.cut(edge, position)

    def position_on(self, d: Vertex, e):
        """Cut position that descriptor ``d`` induces on edge ``e``."""
        if d.edge == e:
            return d.position
        if d.vertex is not None:
            side = self.side_towards_vertex(e, d.vertex)
        else:
            side = self._near[e, d.edge]
        return 0 if side == self.ends[e][0] else self.labels[e].length

    def orients(self, d: Vertex, x: PresentedElement) -> bool:
        """Whether ``x`` belongs to the consistent orientation described by ``d``."""
        p = self.position_on(d, x.edge)
        forward_chosen = _idx_rank(x.index) < _pos_rank(p)
        return forward_chosen == x.forward

    def endpoint(self, x: PresentedElement) -> Vertex:
        """Descriptor of the unique consistent orientation with ``x`` maximal."""
        self.check(x)
        return self.cut(x.edge, _after(x.index) if x.forward else _before(x.index))

    def is_splitting(self, d: Vertex) -> bool:
        if d.vertex is None:
            return d.position != OMEGA_POS
        return not any(
            self.labels[e].kind == OMEGA and self.ends[e][1] == d.vertex for e in self.edge_ids
        )

    def star(self, d: Vertex):
        """Maximal elements of the orientation described by ``d``."""
        self.check_vertex(d)
        out = []
        if d.vertex is None:
            e, c = d.edge, d.position
            if c != OMEGA_POS:
                out.append(PresentedElement(e, c - 1, True))
            out.append(PresentedElement(e, TOP if c == OMEGA_POS else c, False))
            return out
        for e in self.edge_ids:
            start, end = self.ends[e]
            lab = self.labels[e]
            if start == d.vertex:
                out.append(PresentedElement(e, 0, False))
            elif end == d.vertex:
                if lab.kind == FINITE:
                    out.append(PresentedElement(e, lab.k - 1, True))
                elif lab.kind == OMEGA_PLUS_ONE:
                    out.append(PresentedElement(e, TOP, True))
        return out

    def interior_positions(self, e, limit):
        lab = self.labels[e]
        top = lab.k if lab.kind == FINITE else limit + 1
        out = list(range(1, top))
        if lab.kind == OMEGA_PLUS_ONE:
            out.append(OMEGA_POS)
        return out

    def vertex_sample(self, limit):
        """Skeleton vertices plus interior cuts with finite position ``<= limit``."""
        out = [Vertex(vertex=v) for v in self.skeleton.vertices]
        for e in self.edge_ids:
            out.extend(Vertex(edge=e, position=p) for p in self.interior_positions(e, limit))
        return out


def presentation(vertices, edges, labels) -> ChainTreePresentation:
    """Convenience constructor.

    ``edges`` is a list of ``(u, v)`` or ``(u, v, id)``; missing ids default
    to ``"u-v"``.  ``labels`` maps edge ids to an :class:`OrderTypeLabel`,
    a kind string, or an int (finite length).
    """
    emap = {}
    for e in edges:
        if len(e) == 3:
            u, v, eid = e
        else:
            u, v = e
            eid = f"{u}-{v}"
        if eid in emap:
            raise InvalidTree(f"duplicate edge id {eid!r}")
        emap[eid] = (u, v)
    labs = {}
    for eid, lab in labels.items():
        if isinstance(lab, OrderTypeLabel):
            labs[eid] = lab
        elif isinstance(lab, int):
            labs[eid] = OrderTypeLabel(FINITE, lab)
        else:
            labs[eid] = OrderTypeLabel(lab)
    return ChainTreePresentation(vertices, emap, labs)


# -- order and tameness --------------------------------------------------------


def compare(pres: ChainTreePresentation, x, y) -> str:
    """One of ``"lt"``, ``"gt"``, ``"eq"``, ``"incomparable"``."""
    x, y = pres.element(x), pres.element(y)
    if x == y:
        return "eq"
    if pres.leq(x, y):
        return "lt"
    if pres.leq(y, x):
        return "gt"
    return "incomparable"


@dataclass(frozen=True)
class TameWitness:
    """An omega+1 chain: the ``edge[n]+`` for all ``n`` below ``upper_bound``."""

    edge: str
    upper_bound: PresentedElement
    edges: tuple

    def chain_prefix(self, n):
        return [PresentedElement(self.edge, i, True) for i in range(n)] + [self.upper_bound]

    def describe(self):
        return f"{self.edge}[0]+ < {self.edge}[1]+ < ... < {self.upper_bound.name}"


@dataclass(frozen=True)
class TameResult:
    tame: bool
    witness: TameWitness | None = None


def tame_check(pres: ChainTreePresentation) -> TameResult:
    """Decide whether the presented tree set has a chain of type omega+1.

    Such a chain exists iff some edge is labelled omega+1, or some omega
    edge ends in a skeleton vertex that has a further edge: any element on
    that edge pointing away from the vertex bounds the omega chain.
    """
    for e in pres.edge_ids:
        if pres.labels[e].kind == OMEGA_PLUS_ONE:
            return TameResult(False, TameWitness(e, PresentedElement(e, TOP, True), (e,)))
    for e in pres.edge_ids:
        if pres.labels[e].kind != OMEGA:
            continue
        v = pres.ends[e][1]
        for f in pres.edge_ids:
            if f != e and v in pres.ends[f]:
                bound = PresentedElement(f, 0, pres.ends[f][0] == v)
                return TameResult(False, TameWitness(e, bound, (e, f)))
    return TameResult(True)


def splitting_status(pres: ChainTreePresentation, x) -> bool:
    """Whether ``x`` lies in a splitting star.

    It fails exactly when the vertex just beyond ``x`` is approached by an
    omega chain without a last element.
    """
    x = pres.element(x)
    return pres.is_splitting(pres.endpoint(x))


# -- finite oracle bridge --------------------------------------------------------


def _subdivided(pres, depth):
    vertices = list(pres.skeleton.vertices)
    edges = []
    pieces = {}
    for e in pres.edge_ids:
        start, end = pres.ends[e]
        idx = pres.labels[e].indices(depth)
        chain = [start] + [("#", e, j) for j in range(1, len(idx))] + [end]
        vertices.extend(chain[1:-1])
        for j, i in enumerate(idx):
            edges.append((chain[j], chain[j + 1]))
            pieces[chain[j], chain[j + 1]] = PresentedElement(e, i, True)
            pieces[chain[j + 1], chain[j]] = PresentedElement(e, i, False)
    return Tree(vertices, edges), pieces


def truncate(pres: ChainTreePresentation, depth: int) -> SeparationSystem:
    """Finite tree set on the first ``depth`` elements of every chain.

    Finite labels keep ``min(depth, k)`` elements, omega labels the first
    ``depth``, omega+1 labels the first ``depth`` plus ``top``.  The result
    is built as the edge tree set of the correspondingly subdivided
    skeleton, renamed to ``edge[n]+`` / ``edge[n]-`` ids; it does not go
    through :func:`compare`.
    """
    if depth < 1:
        raise TreeSetError("truncation depth must be at least 1")
    tree, pieces = _subdivided(pres, depth)
    tau = edge_tree_set(tree)
    rename = {edge_id(a, b): x.name for (a, b), x in pieces.items()}
    return tau.rename(rename)


# -- realisation of tame presentations ---------------------------------------------


def realize_tame_tree(pres: ChainTreePresentation) -> ChainTreePresentation:
    """The presented tree of a tame presentation.

    Every finite edge of length ``k`` becomes a path of ``k`` single edges
    ``e.0 .. e.(k-1)`` (just ``e`` when ``k == 1``); omega edges stay rays.
    """
    result = tame_check(pres)
    if not result.tame:
        raise NotTame(f"presentation is not tame: {result.witness.describe()}", result.witness)
    vertices = list(pres.skeleton.vertices)
    edges = []
    labels = {}
    taken = set(vertices)
    for e in pres.edge_ids:
        start, end = pres.ends[e]
        lab = pres.labels[e]
        if lab.kind == OMEGA or lab.k == 1:
            edges.append((start, end, e))
            labels[e] = lab
            continue
        inner = [f"{e}.{j}" for j in range(1, lab.k)]
        for name in inner:
            if name in taken:
                raise TreeSetError(f"subdivision vertex {name!r} collides with an existing vertex")
            taken.add(name)
        vertices.extend(inner)
        chain = [start] + inner + [end]
        for j in range(lab.k):
            eid = f"{e}.{j}"
            edges.append((chain[j], chain[j + 1], eid))
            labels[eid] = OrderTypeLabel(FINITE, 1, chain[j])
    return presentation(vertices, edges, labels)


def realized_element(pres: ChainTreePresentation, x) -> PresentedElement:
    """Image of ``x`` in :func:`realize_tame_tree` of ``pres``."""
    x = pres.element(x)
    lab = pres.labels[x.edge]
    if lab.kind == OMEGA or lab.k == 1:
        return x
    return PresentedElement(f"{x.edge}.{x.index}", 0, x.forward)


# -- tree-like space skeleton --------------------------------------------------------


@dataclass
class PresentedTLS:
    """Combinatorial skeleton of the tree-like space of a presentation.

    Vertices are the consistent orientations (as :class:`Vertex`
    descriptors); edges are the separations, each oriented by its forward
    element, running from ``O(x-)`` at coordinate 0 to ``O(x+)`` at 1.
    """

    presentation: ChainTreePresentation
    skeleton_vertices: list
    interior: dict
    limit_edges: list = field(default_factory=list)

    def vertices(self, limit=6):
        return self.presentation.vertex_sample(limit)

    def is_limit_edge(self, x) -> bool:
        return x.index == TOP

    def endpoints(self, x):
        """``(iota(0), iota(1))`` for the separation of ``x``."""
        x = self.presentation.element(x)
        f = PresentedElement(x.edge, x.index, True)
        return self.presentation.endpoint(f.inverse), self.presentation.endpoint(f)

    def is_splitting(self, d) -> bool:
        return self.presentation.is_splitting(self.presentation.check_vertex(d))

    def summary(self, limit=3):
        pres = self.presentation
        return {
            "skeleton_vertices": [v.name for v in self.skeleton_vertices],
            "interior": self.interior,
            "limit_edges": [
                {
                    "edge": x.name[:-1],
                    "endpoints": [d.name for d in self.endpoints(x)],
                }
                for x in self.limit_edges
            ],
            "non_splitting": [d.name for d in pres.vertex_sample(limit) if not pres.is_splitting(d)],
        }


def build_tls(pres: ChainTreePresentation) -> PresentedTLS:
    interior = {}
    limits = []
    for e in pres.edge_ids:
        lab = pres.labels[e]
        if lab.kind == FINITE:
            interior[e] = [f"{e}@{p}" for p in range(1, lab.k)]
        elif lab.kind == OMEGA:
            interior[e] = [f"{e}@n for n >= 1"]
        else:
            interior[e] = [f"{e}@n for n >= 1", f"{e}@omega"]
            limits.append(PresentedElement(e, TOP, True))
    return PresentedTLS(pres, [Vertex(vertex=v) for v in pres.skeleton.vertices], interior, limits)


def _fraction(r, what):
    try:
        r = Fraction(r)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InvalidCoordinate(f"{what} {r!r} is not a rational number") from None
    if not 0 < r < 1:
        raise InvalidCoordinate(f"{what} {r} is not in (0,1)")
    return r


def subbase_member(tls: PresentedTLS, point, e, r) -> bool:
    """Membership of ``point`` in the sub-basic open set ``S(e, r)``.

    For ``e`` forward the set holds the vertices whose orientation contains
    ``e``, all inner points of separations lying beyond ``e``, and the
    points of ``e`` itself with coordinate above ``r``.  For ``e`` backward
    the mirrored set: orientations containing ``e``, inner points of
    separations behind ``e`` and points of ``e`` below ``r``.
    """
    pres = tls.presentation
    e = pres.element(e)
    r = _fraction(r, "radius")
    if isinstance(point, Vertex):
        return pres.orients(pres.check_vertex(point), e)
    if not isinstance(point, InnerPoint):
        raise InvalidCoordinate(f"unsupported point {point!r}")
    x = _fraction(point.coordinate, "coordinate")
    s = pres.check(PresentedElement(point.element.edge, point.element.index, True))
    f = PresentedElement(e.edge, e.index, True)
    if s == f:
        return x > r if e.forward else x < r
    if e.forward:
        return pres.leq(f, s) or pres.leq(f, s.inverse)
    return pres.leq(s, f) or pres.leq(s.inverse, f)


@dataclass(frozen=True)
class ArcSegment:
    """Indices in ``[lo, hi)`` of one edge, oriented as in ``v - u``."""

    edge: str
    lo: object
    hi: object
    forward: bool

    def contains(self, x: PresentedElement) -> bool:
        return (
            x.edge == self.edge
            and x.forward == self.forward
            and _pos_rank(self.lo) <= _idx_rank(x.index) < _pos_rank(self.hi)
        )

    def describe(self):
        lo = "omega" if self.lo == OMEGA_POS else self.lo
        hi = {OMEGA_POS: "omega", TOP_POS: "omega+1"}.get(self.hi, self.hi)
        return f"{self.edge}[{lo}..{hi}){'+' if self.forward else '-'}"


@dataclass(frozen=True)
class Arc:
    u: Vertex
    v: Vertex
    segments: tuple

    def contains(self, x: PresentedElement) -> bool:
        return any(seg.contains(x) for seg in self.segments)

    def point_set(self):
        """Orientation-free key: equal for ``P(u,v)`` and ``P(v,u)``."""
        return frozenset((s.edge, _pos_rank(s.lo), _pos_rank(s.hi)) for s in self.segments)

    def closure_vertices(self, pres: ChainTreePresentation, limit=6):
        """Vertex descriptors in the closure, with interior cuts up to ``limit``."""
        out = []
        for seg in self.segments:
            lab = pres.labels[seg.edge]
            cand = [0] + pres.interior_positions(seg.edge, limit) + [lab.length]
            for p in cand:
                if _pos_rank(seg.lo) <= _pos_rank(p) <= _pos_rank(seg.hi):
                    d = pres.cut(seg.edge, p)
                    if d not in out:
                        out.append(d)
        return out


def pseudo_arc(tls: PresentedTLS, u, v) -> Arc:
    """The chain ``v - u`` as per-edge index intervals."""
    pres = tls.presentation
    try:
        u = pres.parse_vertex(u) if isinstance(u, str) else pres.check_vertex(u)
        v = pres.parse_vertex(v) if isinstance(v, str) else pres.check_vertex(v)
    except (UnknownDescriptor, KeyError) as exc:
        raise UnknownDescriptor(str(exc)) from None
    segments = []
    for e in pres.edge_ids:
        pu, pv = pres.position_on(u, e), pres.position_on(v, e)
        if pu == pv:
            continue
        if _pos_rank(pu) < _pos_rank(pv):
            segments.append(ArcSegment(e, pu, pv, True))
        else:
            segments.append(ArcSegment(e, pv, pu, False))
    return Arc(u, v, tuple(segments))


# -- contraction --------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """Separations of ``edge`` with index in ``[lo, hi)`` (cut positions)."""

    edge: str
    lo: object
    hi: object

    @classmethod
    def parse(cls, text):
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidIntervalSet(f"interval {text!r} must look like edge:lo:hi")

        def pos(p):
            p = p.strip()
            if p in ("omega", "ω"):
                return OMEGA_POS
            if p in ("omega+1", "ω+1", "end"):
                return TOP_POS
            if p.isdigit():
                return int(p)
            raise InvalidIntervalSet(f"bad position {p!r}")

        return cls(parts[0], pos(parts[1]), pos(parts[2]))

    @classmethod
    def whole(cls, pres, e):
        return cls(e, 0, pres.labels[e].length)


class _EdgeRemap:
    """Re-indexing of one edge after removing some index intervals."""

    def __init__(self, lab: OrderTypeLabel, intervals):
        self.lab = lab
        self.intervals = [(_pos_rank(a), _pos_rank(b)) for a, b in intervals]
        self.top_kept = lab.kind == OMEGA_PLUS_ONE and not self.removed(TOP)
        # ``bound``: every int index >= bound is gone (None if infinitely many stay)
        if lab.kind == FINITE:
            self.bound = lab.k
        else:
            tails = [a for a, b in intervals if isinstance(a, int) and _pos_rank(b) >= (1, 0)]
            self.bound = min(tails) if tails else None
        self.infinite = self.bound is None
        self.finite_count = None if self.infinite else self.kept_below(self.bound)

    def removed(self, i) -> bool:
        r = _idx_rank(i)
        return any(a <= r < b for a, b in self.intervals)

    def kept_below(self, i) -> int:
        return sum(1 for j in range(i) if not self.removed(j))

    def new_label(self, start):
        if self.infinite:
            return OrderTypeLabel(OMEGA_PLUS_ONE if self.top_kept else OMEGA, None, start)
        n = self.finite_count + (1 if self.top_kept else 0)
        return OrderTypeLabel(FINITE, n, start) if n else None

    def new_index(self, i):
        if self.removed(i):
            return None
        if i == TOP:
            return TOP if self.infinite else self.finite_count
        return self.kept_below(i)

    def old_index(self, j):
        if j == TOP or (not self.infinite and j == self.finite_count):
            return TOP
        i = kept = 0
        while True:
            if not self.removed(i):
                if kept == j:
                    return i
                kept += 1
            i += 1

    def new_position(self, p):
        """Cut position after removal; positions inside a removed tail collapse."""
        if isinstance(p, int):
            if self.bound is not None and p > self.bound:
                return self.finite_count
            return self.kept_below(p)
        if self.infinite:
            return TOP_POS if p == TOP_POS and self.top_kept else OMEGA_POS
        if p == OMEGA_POS:
            return self.finite_count
        return self.finite_count + (1 if self.top_kept else 0)


def _intervals_by_edge(pres, F):
    by_edge = {}
    for iv in F:
        if isinstance(iv, str):
            iv = Interval.parse(iv)
        if iv.edge not in pres.labels:
            raise InvalidIntervalSet(f"unknown edge {iv.edge!r}")
        lab = pres.labels[iv.edge]
        if not (lab.has_position(iv.lo) and lab.has_position(iv.hi)):
            raise InvalidIntervalSet(f"interval {iv!r} leaves the chain of {iv.edge!r}")
        if not _pos_rank(iv.lo) < _pos_rank(iv.hi):
            raise InvalidIntervalSet(f"interval {iv!r} is empty or reversed")
        if iv.lo == OMEGA_POS and iv.hi == TOP_POS and lab.kind != OMEGA_PLUS_ONE:
            raise InvalidIntervalSet(f"{iv.edge!r} has no top element")
        by_edge.setdefault(iv.edge, []).append((iv.lo, iv.hi))
    return by_edge


@dataclass
class Contraction:
    """Result of contracting index intervals of a presentation."""

    source: ChainTreePresentation
    presentation: ChainTreePresentation
    remaps: dict
    vertex_rep: dict

    def element(self, x) -> PresentedElement | None:
        x = self.source.element(x)
        remap = self.remaps.get(x.edge)
        if remap is None:
            return x
        if x.edge not in self.presentation.labels:
            return None
        i = remap.new_index(x.index)
        return None if i is None else PresentedElement(x.edge, i, x.forward)

    def preimage(self, y) -> PresentedElement:
        y = self.presentation.element(y)
        remap = self.remaps.get(y.edge)
        if remap is None:
            return y
        return PresentedElement(y.edge, remap.old_index(y.index), y.forward)

    def vertex(self, d) -> Vertex:
        d = self.source.check_vertex(d)
        if d.vertex is not None:
            return Vertex(vertex=self.vertex_rep[d.vertex])
        remap = self.remaps.get(d.edge)
        if remap is None:
            return self.presentation.cut(d.edge, d.position)
        p = remap.new_position(d.position)
        if d.edge not in self.presentation.labels:
            return Vertex(vertex=self.vertex_rep[self.source.ends[d.edge][0]])
        return self.presentation.cut(d.edge, p)


def contraction(pres: ChainTreePresentation, F: Iterable) -> Contraction:
    by_edge = _intervals_by_edge(pres, F)
    remaps = {e: _EdgeRemap(pres.labels[e], ivs) for e, ivs in by_edge.items()}

    parent = {v: v for v in pres.skeleton.vertices}
    order = {v: i for i, v in enumerate(pres.skeleton.vertices)}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    gone = set()
    for e, remap in remaps.items():
        if remap.new_label(None) is None:
            gone.add(e)
            a, b = (find(v) for v in pres.ends[e])
            if a != b:
                keep, drop = (a, b) if order[a] < order[b] else (b, a)
                parent[drop] = keep
    rep = {v: find(v) for v in pres.skeleton.vertices}
    vertices = [v for v in pres.skeleton.vertices if rep[v] == v]
    edges = []
    labels = {}
    for e in pres.edge_ids:
        if e in gone:
            continue
        start, end = pres.ends[e]
        edges.append((rep[start], rep[end], e))
        if e in remaps:
            labels[e] = remaps[e].new_label(rep[start])
        else:
            lab = pres.labels[e]
            labels[e] = OrderTypeLabel(lab.kind, lab.k, rep[start])
    return Contraction(pres, presentation(vertices, edges, labels), remaps, rep)


def contract(pres: ChainTreePresentation, F: Iterable) -> ChainTreePresentation:
    """Presentation of the space with the separations in ``F`` contracted.

    ``F`` is a collection of :class:`Interval` (or ``"edge:lo:hi"``
    strings).  Contracting separations deletes them from the tree set;
    the chain left on each edge is re-indexed and its order type
    recomputed, and edges left empty merge their end-vertices.
    """
    return contraction(pres, F).presentation

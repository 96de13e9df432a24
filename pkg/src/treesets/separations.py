"""Abstract separation systems: posets with an order-reversing involution.

Elements are opaque string ids.  A system is built from a list of inverse
pairs and a list of generating relations; the stored order is the
reflexive-transitive closure of those relations together with their
mirror images ``y* <= x*``.  Unoriented separations are never stored as
objects of their own -- they are the inverse pairs.

The order is kept as one integer bitmask per element (bit ``j`` of
``up[i]`` is set iff ``element i <= element j``), so every comparison is
O(1) and every scan over an up- or down-set is a bit loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    InvolutionClash,
    InvolutionNotPreserved,
    NotAPartialOrder,
    NotBijective,
    OrderNotPreserved,
    UnknownElement,
)


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class SeparationSystem:
    """A finite separation system with its order stored as a closure.

    Build instances with :func:`build_system`; the constructor trusts its
    arguments.
    """

    __slots__ = ("elements", "_index", "_inv", "_up", "_down", "_cache")

    def __init__(self, elements, inv, up):
        self.elements = tuple(elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        self._inv = tuple(inv)
        self._up = tuple(up)
        down = [0] * len(self.elements)
        for i, mask in enumerate(self._up):
            for j in _bits(mask):
                down[j] |= 1 << i
        self._down = tuple(down)
        self._cache = {}

    # -- basic access -----------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __repr__(self):
        return f"SeparationSystem({len(self.pairs)} separations)"

    def __eq__(self, other):
        if not isinstance(other, SeparationSystem):
            return NotImplemented
        return (
            set(self.pairs_as_sets()) == set(other.pairs_as_sets())
            and self.strict_relations() == other.strict_relations()
        )

    def __hash__(self):
        return hash((frozenset(self.pairs_as_sets()), self.strict_relations()))

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElement(f"unknown element {x!r}") from None

    def inverse(self, x):
        return self.elements[self._inv[self.index(x)]]

    def leq(self, x, y) -> bool:
        return bool(self._up[self.index(x)] >> self.index(y) & 1)

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x, y) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def up_set(self, x):
        return [self.elements[j] for j in _bits(self._up[self.index(x)])]

    def down_set(self, x):
        return [self.elements[j] for j in _bits(self._down[self.index(x)])]

    def separation(self, x):
        """Canonical (first-declared orientation first) pair for ``x``."""
        i = self.index(x)
        j = self._inv[i]
        return (self.elements[min(i, j)], self.elements[max(i, j)])

    def same_separation(self, x, y) -> bool:
        return x == y or self.inverse(x) == y

    @property
    def pairs(self):
        return tuple(
            (x, self.elements[self._inv[i]])
            for i, x in enumerate(self.elements)
            if i < self._inv[i]
        )

    def pairs_as_sets(self):
        return [frozenset(p) for p in self.pairs]

    def strict_relations(self):
        """All pairs ``(x, y)`` with ``x < y``, as a frozenset."""
        rel = set()
        for i, mask in enumerate(self._up):
            for j in _bits(mask & ~(1 << i)):
                rel.add((self.elements[i], self.elements[j]))
        return frozenset(rel)

    def cover_relations(self):
        """Hasse diagram of the order: ``x < y`` with nothing in between."""
        covers = []
        for i, mask in enumerate(self._up):
            above = mask & ~(1 << i)
            for j in _bits(above):
                between = above & self._down[j] & ~(1 << j)
                if not between:
                    covers.append((self.elements[i], self.elements[j]))
        return covers

    def restrict(self, ids: Iterable) -> "SeparationSystem":
        """Induced subsystem on ``ids``; must be closed under inversion."""
        keep = []
        seen = set()
        for x in ids:
            self.index(x)
            if x not in seen:
                seen.add(x)
                keep.append(x)
        for x in keep:
            if self.inverse(x) not in seen:
                raise InvolutionClash(
                    f"restriction contains {x!r} but not its inverse"
                )
        keep.sort(key=self.index)
        new_index = {x: k for k, x in enumerate(keep)}
        inv = [new_index[self.inverse(x)] for x in keep]
        up = []
        for x in keep:
            mask = 0
            for j in _bits(self._up[self.index(x)]):
                y = self.elements[j]
                if y in new_index:
                    mask |= 1 << new_index[y]
            up.append(mask)
        return SeparationSystem(keep, inv, up)

    def rename(self, mapping: Mapping) -> "SeparationSystem":
        """Copy of the system with every id replaced by ``mapping[id]``."""
        new = [mapping[x] for x in self.elements]
        if len(set(new)) != len(new):
            raise InvolutionClash("renaming is not injective")
        return SeparationSystem(new, self._inv, self._up)


def build_system(elements, relations=()) -> SeparationSystem:
    """Build a separation system from inverse pairs and generating relations.

    ``elements`` is a sequence of ``(x, x_inverse)`` pairs; ``relations`` a
    sequence of ``(x, y)`` meaning ``x <= y``.  Each relation also adds its
    mirror ``y* <= x*``.  Raises :class:`InvolutionClash` for malformed
    pairs and :class:`NotAPartialOrder` if the closure is not antisymmetric.
    """
    ids = []
    inv_of = {}
    for pair in elements:
        if len(pair) != 2:
            raise InvolutionClash(f"expected a pair of ids, got {pair!r}")
        x, y = pair
        if x == y:
            raise InvolutionClash(f"element {x!r} paired with itself")
        for z in (x, y):
            if z in inv_of:
                raise InvolutionClash(f"element {z!r} occurs in two pairs")
        inv_of[x] = y
        inv_of[y] = x
        ids.extend((x, y))
    index = {x: i for i, x in enumerate(ids)}
    inv = [index[inv_of[x]] for x in ids]
    n = len(ids)

    up = [1 << i for i in range(n)]
    for x, y in relations:
        for z in (x, y):
            if z not in index:
                raise UnknownElement(f"relation mentions unknown element {z!r}")
        i, j = index[x], index[y]
        up[i] |= 1 << j
        up[inv[j]] |= 1 << inv[i]

    # Warshall on bit rows
    for k in range(n):
        row_k = up[k]
        bit = 1 << k
        for i in range(n):
            if up[i] & bit:
                up[i] |= row_k

    for i in range(n):
        for j in _bits(up[i] & ~(1 << i)):
            if up[j] >> i & 1:
                raise NotAPartialOrder(
                    f"{ids[i]!r} <= {ids[j]!r} <= {ids[i]!r} with distinct elements",
                    cycle=(ids[i], ids[j]),
                )
    for i in range(n):
        for j in _bits(up[i]):
            if not up[inv[j]] >> inv[i] & 1:  # pragma: no cover - closure guarantees it
                raise NotAPartialOrder(
                    f"order-reversing law fails for {ids[i]!r} <= {ids[j]!r}"
                )
    return SeparationSystem(ids, inv, up)


# -- element predicates ------------------------------------------------------


@dataclass(frozen=True)
class ElementClassification:
    small: bool
    co_small: bool
    trivial: bool
    trivial_witness: object = None
    co_trivial: bool = False
    co_trivial_witness: object = None
    regular: bool = True


def trivial_witness(sys: SeparationSystem, x):
    """Some separation ``r != s`` with ``x <= r`` and ``x <= r*``, or None.

    The witness is returned as its canonical oriented id.
    """
    i = sys.index(x)
    own = (1 << i) | (1 << sys._inv[i])
    for j in _bits(sys._up[i] & ~own):
        if sys._up[i] >> sys._inv[j] & 1:
            return sys.separation(sys.elements[j])[0]
    return None


def classify(sys: SeparationSystem, x) -> ElementClassification:
    xs = sys.inverse(x)
    small = sys.leq(x, xs)
    co_small = sys.leq(xs, x)
    w = trivial_witness(sys, x)
    cw = trivial_witness(sys, xs)
    return ElementClassification(
        small=small,
        co_small=co_small,
        trivial=w is not None,
        trivial_witness=w,
        co_trivial=cw is not None,
        co_trivial_witness=cw,
        regular=not small and not co_small,
    )


def nested(sys: SeparationSystem, s, r) -> bool:
    """True iff the separations of ``s`` and ``r`` have comparable orientations."""
    for a in (s, sys.inverse(s)):
        for b in (r, sys.inverse(r)):
            if sys.comparable(a, b):
                return True
    return False


@dataclass
class TreeSetReport:
    is_nested: bool
    is_tree_set: bool
    is_regular: bool
    crossing_pairs: list = field(default_factory=list)
    trivial_elements: list = field(default_factory=list)
    small_elements: list = field(default_factory=list)


def validate_tree_set(sys: SeparationSystem) -> TreeSetReport:
    if "report" in sys._cache:
        return sys._cache["report"]
    seps = sys.pairs
    crossing = []
    for a in range(len(seps)):
        for b in range(a + 1, len(seps)):
            if not nested(sys, seps[a][0], seps[b][0]):
                crossing.append((seps[a][0], seps[b][0]))
    trivial = []
    small = []
    for x in sys.elements:
        w = trivial_witness(sys, x)
        if w is not None:
            trivial.append((x, w))
        if sys.leq(x, sys.inverse(x)):
            small.append(x)
    is_nested = not crossing
    is_tree_set = is_nested and not trivial
    report = TreeSetReport(
        is_nested=is_nested,
        is_tree_set=is_tree_set,
        is_regular=is_tree_set and not small,
        crossing_pairs=crossing,
        trivial_elements=trivial,
        small_elements=small,
    )
    sys._cache["report"] = report
    return report


# -- homomorphisms -----------------------------------------------------------


@dataclass
class IsomorphismVerdict:
    """Outcome of :func:`check_isomorphism`.

    ``accepted`` is the sufficient criterion (bijective homomorphism from a
    nested system onto a regular one); ``inverse_order_preserving`` is the
    direct check, reported alongside for diagnostics.
    """

    accepted: bool
    source_nested: bool
    target_regular: bool
    inverse_order_preserving: bool
    mapping: dict

    @property
    def is_isomorphism(self):
        return self.inverse_order_preserving


def _mapped(f, x):
    try:
        return f[x]
    except KeyError:
        raise NotBijective(f"map is not defined on {x!r}") from None


def is_homomorphism(f: Mapping, R: SeparationSystem, S: SeparationSystem) -> bool:
    """Commutes with the involution and preserves the order (one direction)."""
    for x in R:
        fx = f.get(x)
        if fx not in S or S.inverse(fx) != f.get(R.inverse(x)):
            return False
    for x in R:
        for y in R.up_set(x):
            if not S.leq(f[x], f[y]):
                return False
    return True


def check_isomorphism(f: Mapping, R: SeparationSystem, S: SeparationSystem) -> IsomorphismVerdict:
    """Check that ``f`` is an isomorphism of tree sets from ``R`` onto ``S``.

    Raises on the structural failures (not a bijection, involution or
    order not preserved).  Otherwise returns a verdict whose ``accepted``
    flag holds when ``R`` is nested and ``S`` regular, the situation in
    which a bijective homomorphism is automatically an isomorphism.
    """
    f = dict(f)
    images = [_mapped(f, x) for x in R]
    for y in images:
        if y not in S:
            raise NotBijective(f"image {y!r} is not an element of the target")
    if len(set(images)) != len(images) or len(images) != len(S):
        raise NotBijective("map is not a bijection onto the target")
    for x in R:
        if S.inverse(f[x]) != f[R.inverse(x)]:
            raise InvolutionNotPreserved(
                f"f({R.inverse(x)!r}) = {f[R.inverse(x)]!r} but f({x!r})* = {S.inverse(f[x])!r}"
            )
    for x in R:
        for y in R.up_set(x):
            if not S.leq(f[x], f[y]):
                raise OrderNotPreserved(
                    f"{x!r} <= {y!r} but not f({x!r}) <= f({y!r})"
                )
    inverse_ok = True
    back = {v: k for k, v in f.items()}
    for a in S:
        for b in S.up_set(a):
            if not R.leq(back[a], back[b]):
                inverse_ok = False
                break
        if not inverse_ok:
            break
    source_nested = validate_tree_set(R).is_nested
    target_regular = all(not S.leq(x, S.inverse(x)) for x in S)
    return IsomorphismVerdict(
        accepted=source_nested and target_regular,
        source_nested=source_nested,
        target_regular=target_regular,
        inverse_order_preserving=inverse_ok,
        mapping=f,
    )

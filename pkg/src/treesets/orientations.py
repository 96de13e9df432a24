"""Consistent orientations, the extension procedure, stars and splitting.

An orientation is a set of oriented ids choosing one element from every
inverse pair.  Internally everything runs on bitmasks over
``SeparationSystem.elements``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import (
    CoTrivialElement,
    ConstructionFailure,
    DoubleOriented,
    InconsistentInput,
    InconsistentOrientation,
    NotATreeSet,
    PinNotMaximalInP,
    PinTrivial,
    TooLarge,
    TreeSetError,
)
from .separations import SeparationSystem, _bits, trivial_witness, validate_tree_set

MAX_ENUMERATION_SEPARATIONS = 20


@dataclass(frozen=True)
class Orientation:
    chosen: frozenset
    consistent: bool
    splitting: bool
    unique: bool = False

    def __contains__(self, x):
        return x in self.chosen

    def __iter__(self):
        return iter(sorted(self.chosen))

    def __len__(self):
        return len(self.chosen)

    def sorted(self):
        return sorted(self.chosen)

    @property
    def label(self):
        return "{" + ",".join(sorted(self.chosen)) + "}"


def _away(sys: SeparationSystem):
    """Per element, the mask of elements it would be inconsistent with."""
    cached = sys._cache.get("away")
    if cached is None:
        cached = []
        for i in range(len(sys.elements)):
            own = (1 << i) | (1 << sys._inv[i])
            cached.append(sys._up[sys._inv[i]] & ~own)
        sys._cache["away"] = cached
    return cached


def _mask(sys: SeparationSystem, ids: Iterable) -> int:
    m = 0
    for x in ids:
        m |= 1 << sys.index(x)
    return m


def _ids(sys: SeparationSystem, mask: int) -> frozenset:
    return frozenset(sys.elements[i] for i in _bits(mask))


def _check_single(sys, mask):
    for i in _bits(mask):
        if mask >> sys._inv[i] & 1:
            raise DoubleOriented(
                f"both {sys.elements[i]!r} and {sys.inverse(sys.elements[i])!r} chosen"
            )


def _first_inconsistency(sys, mask):
    away = _away(sys)
    for i in _bits(mask):
        hit = away[i] & mask
        if hit:
            j = (hit & -hit).bit_length() - 1
            return sys.elements[i], sys.elements[j]
    return None


def is_consistent(sys: SeparationSystem, P) -> bool:
    """No two chosen elements of distinct separations point away from each other."""
    mask = _mask(sys, P)
    _check_single(sys, mask)
    return _first_inconsistency(sys, mask) is None


def _maximal_mask(sys, mask):
    out = 0
    for i in _bits(mask):
        if not (sys._up[i] & ~(1 << i) & mask):
            out |= 1 << i
    return out


def _splitting_mask(sys, mask, maximal):
    for i in _bits(mask):
        if not (sys._up[i] & maximal):
            return False
    return True


def make_orientation(sys: SeparationSystem, chosen, unique=False) -> Orientation:
    """Wrap a total choice of orientations, computing its flags."""
    mask = _mask(sys, chosen)
    _check_single(sys, mask)
    if bin(mask).count("1") != len(sys.pairs):
        raise TreeSetError("orientation does not orient every separation")
    consistent = _first_inconsistency(sys, mask) is None
    splitting = consistent and _splitting_mask(sys, mask, _maximal_mask(sys, mask))
    return Orientation(_ids(sys, mask), consistent, splitting, unique)


def maximal_elements(sys: SeparationSystem, O) -> frozenset:
    return _ids(sys, _maximal_mask(sys, _mask(sys, O)))


def star_of(sys: SeparationSystem, O) -> frozenset:
    """The maximal elements of a consistent orientation."""
    chosen = O.chosen if isinstance(O, Orientation) else O
    mask = _mask(sys, chosen)
    _check_single(sys, mask)
    bad = _first_inconsistency(sys, mask)
    if bad is not None:
        raise InconsistentOrientation(f"{bad[0]!r} and {bad[1]!r} point away from each other", bad)
    return _ids(sys, _maximal_mask(sys, mask))


def is_splitting(sys: SeparationSystem, O) -> bool:
    """Every element of ``O`` lies below one of its maximal elements."""
    chosen = O.chosen if isinstance(O, Orientation) else O
    star = star_of(sys, chosen)
    return _splitting_mask(sys, _mask(sys, chosen), _mask(sys, star))


def is_star(sys: SeparationSystem, members) -> bool:
    members = list(members)
    for a in members:
        for b in members:
            if a != b and not sys.leq(a, sys.inverse(b)):
                return False
    return True


def extend(sys: SeparationSystem, P=(), pin=None) -> Orientation:
    """Extend a consistent partial orientation to a consistent orientation.

    If ``pin`` is given it is added to ``P`` and kept maximal.  Separations
    not oriented by ``P`` are processed in ascending order of their
    smaller id; each receives the orientation that keeps the current set
    consistent, free of co-trivial elements and below-or-incomparable to
    the pin.  When both choices qualify, an orientation below the pin is
    preferred, then the lexicographically smaller id.  If the system is
    nested and a pin is given the result is the only possible one, flagged
    by ``unique=True``.
    """
    mask = _mask(sys, P)
    pin_i = None
    if pin is not None:
        pin_i = sys.index(pin)
        mask |= 1 << pin_i
    _check_single(sys, mask)
    bad = _first_inconsistency(sys, mask)
    if bad is not None:
        raise InconsistentInput(
            f"{bad[0]!r} and {bad[1]!r} point away from each other", bad
        )
    co_trivial = [trivial_witness(sys, sys.elements[sys._inv[i]]) for i in range(len(sys))]
    for i in _bits(mask):
        if co_trivial[i] is not None:
            raise CoTrivialElement(
                f"{sys.elements[i]!r} is co-trivial (witness {co_trivial[i]!r})",
                element=sys.elements[i],
                witness=co_trivial[i],
            )
    above_pin = 0
    below_pin = 0
    if pin_i is not None:
        w = trivial_witness(sys, pin)
        if w is not None:
            raise PinTrivial(f"pin {pin!r} is trivial (witness {w!r})", witness=w)
        above_pin = sys._up[pin_i] & ~(1 << pin_i)
        if above_pin & mask:
            raise PinNotMaximalInP(f"pin {pin!r} is not maximal in the partial orientation")
        below_pin = sys._down[pin_i]

    away = _away(sys)
    todo = sorted(sys.pairs, key=lambda p: min(p))
    for a, b in todo:
        ia, ib = sys.index(a), sys.index(b)
        if (mask >> ia | mask >> ib) & 1:
            continue
        first, second = (ia, ib) if a < b else (ib, ia)
        legal = [
            i
            for i in (first, second)
            if not away[i] & mask and not above_pin >> i & 1 and co_trivial[i] is None
        ]
        if not legal:
            raise ConstructionFailure(
                f"no admissible orientation for separation {(a, b)!r}",
                certificate=sorted(_ids(sys, mask)),
            )
        if len(legal) == 2 and below_pin:
            pinned = [i for i in legal if below_pin >> i & 1]
            if pinned:
                legal = pinned
        mask |= 1 << legal[0]

    unique = pin is not None and validate_tree_set(sys).is_nested
    maximal = _maximal_mask(sys, mask)
    if pin_i is not None and not maximal >> pin_i & 1:
        raise ConstructionFailure(f"pin {pin!r} not maximal in the extension")
    return Orientation(_ids(sys, mask), True, _splitting_mask(sys, mask, maximal), unique)


def orientation_of(sys: SeparationSystem, s) -> Orientation:
    """The unique consistent orientation of a tree set with ``s`` maximal."""
    cache = sys._cache.setdefault("orientation_of", {})
    if s in cache:
        return cache[s]
    if not validate_tree_set(sys).is_tree_set:
        raise NotATreeSet("orientation_of needs a tree set")
    O = extend(sys, (), pin=s)
    cache[s] = O
    return O


def lies_in_splitting_star(sys: SeparationSystem, s) -> bool:
    return orientation_of(sys, s).splitting


def enumerate_orientations(sys: SeparationSystem, max_separations=MAX_ENUMERATION_SEPARATIONS):
    """All consistent orientations, by exhaustive search.

    The search walks the 2^n candidate choices in separation order and
    prunes a branch as soon as its partial choice is inconsistent, which
    yields exactly the consistent candidates.  Results come in
    depth-first order with the first-declared orientation tried first.
    """
    pairs = sys.pairs
    if len(pairs) > max_separations:
        raise TooLarge(
            f"{len(pairs)} separations exceed the enumeration limit of {max_separations}"
        )
    away = _away(sys)
    idx = [(sys.index(a), sys.index(b)) for a, b in pairs]
    out = []

    def rec(k, mask):
        if k == len(idx):
            maximal = _maximal_mask(sys, mask)
            out.append(
                Orientation(_ids(sys, mask), True, _splitting_mask(sys, mask, maximal))
            )
            return
        for i in idx[k]:
            if not away[i] & mask:
                rec(k + 1, mask | 1 << i)

    rec(0, 0)
    return out

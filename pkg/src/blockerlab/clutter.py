"""Clutters (Sperner families) with the set-theoretic blocker, deletion and contraction."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

from blockerlab.errors import BlockerLabError, LimitExceeded
from blockerlab.labels import label_key, normalize, sort_labels
from blockerlab.report import VerificationReport, failed, passed


class Kind(enum.Enum):
    EMPTY = "empty"
    ZEROHAT = "zerohat"
    PROPER = "proper"


@dataclass(frozen=True)
class GroundSet:
    elements: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise BlockerLabError(f"ground set labels are not distinct: {list(self.elements)}")
        if list(self.elements) != sort_labels(self.elements):
            raise BlockerLabError("ground set elements must be in canonical order; use GroundSet.of")

    @classmethod
    def of(cls, labels: Iterable) -> GroundSet:
        labels = [normalize(x) for x in labels]
        if len(set(labels)) != len(labels):
            raise BlockerLabError(f"ground set labels are not distinct: {labels}")
        return cls(tuple(sort_labels(labels)))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, item):
        return item in self.elements

    def minus(self, x_set: Iterable[str]) -> GroundSet:
        drop = set(x_set)
        return GroundSet(tuple(e for e in self.elements if e not in drop))

    def subset(self, labels: Iterable, what: str = "set") -> frozenset[str]:
        out = frozenset(normalize(x) for x in labels)
        outside = out.difference(self.elements)
        if outside:
            raise BlockerLabError(f"{what} has elements outside the ground set: {sort_labels(outside)}")
        return out


def set_key(s: Iterable[str]):
    members = sort_labels(s)
    return (len(members), [label_key(x) for x in members])


@dataclass(frozen=True)
class Clutter:
    """A Sperner family on ``ground``; ``sets`` is empty unless ``kind`` is PROPER."""

    ground: GroundSet
    kind: Kind
    sets: tuple[frozenset[str], ...] = ()

    def __post_init__(self):
        if self.kind is not Kind.PROPER and self.sets:
            raise BlockerLabError(f"a {self.kind.value} clutter carries no sets")
        if self.kind is Kind.PROPER:
            if not self.sets or any(not s for s in self.sets):
                raise BlockerLabError("a proper clutter has at least one set and no empty set")
            if tuple(sorted(self.sets, key=set_key)) != self.sets:
                raise BlockerLabError("sets must be in canonical order; use make_clutter")

    @property
    def is_trivial(self) -> bool:
        return self.kind is not Kind.PROPER

    def members(self) -> list[frozenset[str]]:
        """The sets of the family, with the empty set for ZEROHAT."""
        if self.kind is Kind.ZEROHAT:
            return [frozenset()]
        return list(self.sets)

    def __str__(self):
        if self.kind is Kind.EMPTY:
            return "{}"
        return "{" + ",".join("{" + ",".join(sort_labels(s)) + "}" for s in self.members()) + "}"


def _canonical(ground: GroundSet, family: Iterable[frozenset[str]]) -> Clutter:
    family = sorted(set(family), key=set_key)
    if not family:
        return Clutter(ground, Kind.EMPTY)
    if family == [frozenset()]:
        return Clutter(ground, Kind.ZEROHAT)
    return Clutter(ground, Kind.PROPER, tuple(family))


def make_clutter(ground, sets: Iterable[Iterable] = ()) -> Clutter:
    """Build a canonical clutter, rejecting (never repairing) Sperner violations.

    ``ground`` may be a :class:`GroundSet` or any iterable of labels. Repeated
    sets collapse to one. ``[[]]`` gives the ZEROHAT clutter and ``[]`` the
    EMPTY one.
    """
    if not isinstance(ground, GroundSet):
        ground = GroundSet.of(ground)
    family = sorted({ground.subset(s) for s in sets}, key=set_key)
    for i, small in enumerate(family):
        for big in family[i + 1:]:
            if small < big:
                raise BlockerLabError(
                    "Sperner violation: {%s} is contained in {%s}"
                    % (",".join(sort_labels(small)), ",".join(sort_labels(big)))
                )
    return _canonical(ground, family)


def is_sperner(family: Iterable[frozenset]) -> bool:
    family = list(family)
    return not any(a < b for a in family for b in family)


def minimal_sets(family: Iterable[frozenset]) -> list[frozenset]:
    """Inclusion-minimal members of a family (duplicates removed)."""
    family = sorted(set(family), key=len)
    kept: list[frozenset] = []
    for s in family:
        if not any(k <= s for k in kept):
            kept.append(s)
    return kept


# -- bitmask helpers -------------------------------------------------------


def _to_mask(ground: GroundSet, s: Iterable[str]) -> int:
    index = {e: i for i, e in enumerate(ground.elements)}
    m = 0
    for e in s:
        m |= 1 << index[e]
    return m


def _from_mask(ground: GroundSet, m: int) -> frozenset[str]:
    return frozenset(e for i, e in enumerate(ground.elements) if m >> i & 1)


def _minimize_masks(masks: Iterable[int]) -> list[int]:
    masks = sorted(set(masks), key=int.bit_count)
    kept: list[int] = []
    for m in masks:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def _transversals(members: list[int]) -> list[int]:
    # fold members in one at a time; a partial transversal that already meets
    # the next member survives unchanged, the others branch on its elements
    partial = [0]
    for g in members:
        grown = []
        for t in partial:
            if t & g:
                grown.append(t)
                continue
            rest = g
            while rest:
                low = rest & -rest
                grown.append(t | low)
                rest ^= low
        partial = _minimize_masks(grown)
    return partial


def blocker(c: Clutter) -> Clutter:
    """Family of inclusion-minimal blocking sets; swaps the two trivial clutters."""
    if c.kind is Kind.EMPTY:
        return Clutter(c.ground, Kind.ZEROHAT)
    if c.kind is Kind.ZEROHAT:
        return Clutter(c.ground, Kind.EMPTY)
    masks = sorted((_to_mask(c.ground, s) for s in c.sets), key=int.bit_count)
    family = [_from_mask(c.ground, m) for m in _transversals(masks)]
    assert is_sperner(family), "blocker produced a non-Sperner family"
    return _canonical(c.ground, family)


def _check_x(c: Clutter, x_set) -> frozenset[str]:
    return c.ground.subset(x_set, what="X")


def delete(c: Clutter, x_set: Iterable) -> Clutter:
    """Members disjoint from X, as a clutter on ground - X."""
    x = _check_x(c, x_set)
    ground = c.ground.minus(x)
    if c.is_trivial:
        return Clutter(ground, c.kind)
    return _canonical(ground, [g for g in c.sets if not g & x])


def contract(c: Clutter, x_set: Iterable) -> Clutter:
    """Inclusion-minimal sets among {G - X}, as a clutter on ground - X."""
    x = _check_x(c, x_set)
    ground = c.ground.minus(x)
    if c.is_trivial:
        return Clutter(ground, c.kind)
    return _canonical(ground, minimal_sets(g - x for g in c.sets))


def verify_involution(c: Clutter) -> VerificationReport:
    once = blocker(c)
    twice = blocker(once)
    details = {"clutter": str(c), "blocker": str(once), "blocker_of_blocker": str(twice)}
    if twice == c:
        return passed("involution", **details)
    return failed("involution", {"clutter": str(c), "lhs": str(twice), "rhs": str(c)}, **details)


def verify_seymour(c: Clutter, x_set: Iterable) -> VerificationReport:
    """Check blocker(c) deleted by X equals blocker(c / X), and blocker(c) / X equals blocker(c deleted by X)."""
    x = _check_x(c, x_set)
    b = blocker(c)
    sides = {
        "deletion": (delete(b, x), blocker(contract(c, x))),
        "contraction": (contract(b, x), blocker(delete(c, x))),
    }
    details = {name: [str(lhs), str(rhs)] for name, (lhs, rhs) in sides.items()}
    for name, (lhs, rhs) in sides.items():
        if lhs != rhs:
            witness = {"clutter": str(c), "x": sort_labels(x), "identity": name, "lhs": str(lhs), "rhs": str(rhs)}
            return failed("seymour", witness, **details)
    return passed("seymour", **details)


# -- generators ------------------------------------------------------------

ALL_CLUTTERS_LIMIT = 4


def all_clutters(ground, limit: int = ALL_CLUTTERS_LIMIT) -> Iterator[Clutter]:
    """Every Sperner family on ``ground``, trivial ones included."""
    if not isinstance(ground, GroundSet):
        ground = GroundSet.of(ground)
    n = len(ground)
    if n > limit:
        raise LimitExceeded(f"ground set of size {n} exceeds the all-clutters limit {limit}")
    subsets = sorted(range(1 << n), key=lambda m: (m.bit_count(), m))
    comparable = [[a & b == a or a & b == b for b in subsets] for a in subsets]

    def extend(chosen: list[int], start: int):
        yield chosen
        for j in range(start, len(subsets)):
            if not any(comparable[i][j] for i in chosen):
                yield from extend(chosen + [j], j + 1)

    for chosen in extend([], 0):
        yield _canonical(ground, [_from_mask(ground, subsets[i]) for i in chosen])


def random_clutter(ground, rng, max_sets: int | None = None) -> Clutter:
    """A random nontrivial clutter: random nonempty subsets, reduced to the minimal ones."""
    if not isinstance(ground, GroundSet):
        ground = GroundSet.of(ground)
    n = len(ground)
    if n == 0:
        raise BlockerLabError("cannot draw a nontrivial clutter on an empty ground set")
    max_sets = max_sets or 2 * n
    raw = []
    for _ in range(rng.randint(1, max_sets)):
        size = rng.randint(1, n)
        raw.append(frozenset(rng.sample(ground.elements, size)))
    return _canonical(ground, minimal_sets(raw))

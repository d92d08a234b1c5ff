"""The lattice Ant(P) of antichains, ordered by inclusion of generated filters.

Meets and joins go through the filter lattice: the filters of a finite poset
are closed under intersection and union, and each filter is generated by its
minimal elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable

from blockerlab.errors import BlockerLabError, LimitExceeded
from blockerlab.poset import Poset

DEFAULT_ENUMERATION_LIMIT = 20


@dataclass(frozen=True)
class Antichain:
    poset: Poset
    mask: int

    def __post_init__(self):
        if not self.poset.is_antichain_mask(self.mask):
            raise BlockerLabError(f"not an antichain: {self.poset.labels_of(self.mask)}")

    @property
    def members(self) -> list[str]:
        return self.poset.labels_of(self.mask)

    @property
    def is_bottom(self) -> bool:
        return self.mask == 0

    @property
    def is_top(self) -> bool:
        li = self.poset.least_index
        return li is not None and self.mask == 1 << li

    @property
    def is_trivial(self) -> bool:
        return self.is_bottom or self.is_top

    def __len__(self):
        return self.mask.bit_count()

    def __iter__(self):
        return iter(self.members)

    def __str__(self):
        return "{" + ",".join(self.members) + "}"

    def __repr__(self):
        return f"Antichain({str(self)})"


def make_antichain(p: Poset, labels: Iterable) -> Antichain:
    return Antichain(p, p.mask_of(labels))


def bottom(p: Poset) -> Antichain:
    """The empty antichain, least in Ant(P)."""
    return Antichain(p, 0)


def top(p: Poset) -> Antichain:
    """The antichain holding only the least element of P, greatest in Ant(P)."""
    if p.least_index is None:
        raise BlockerLabError("poset has no least element, so Ant(P) has no top of that form")
    return Antichain(p, 1 << p.least_index)


def _same(p: Poset, *chains: Antichain):
    for a in chains:
        if a.poset is not p and a.poset != p:
            raise BlockerLabError(f"antichain {a} belongs to a different poset")


def filter_mask(a: Antichain) -> int:
    return a.poset.up_mask(a.mask)


def antichain_leq(p: Poset, a1: Antichain, a2: Antichain) -> bool:
    _same(p, a1, a2)
    f1 = p.up_mask(a1.mask)
    return f1 & p.up_mask(a2.mask) == f1


def meet(p: Poset, a1: Antichain, a2: Antichain) -> Antichain:
    _same(p, a1, a2)
    return Antichain(p, p.min_mask(p.up_mask(a1.mask) & p.up_mask(a2.mask)))


def join(p: Poset, a1: Antichain, a2: Antichain) -> Antichain:
    _same(p, a1, a2)
    return Antichain(p, p.min_mask(p.up_mask(a1.mask) | p.up_mask(a2.mask)))


def meet_all(p: Poset, chains: Iterable[Antichain]) -> Antichain:
    chains = list(chains)
    if not chains:
        raise BlockerLabError("meet of an empty family is not used here")
    return reduce(lambda x, y: meet(p, x, y), chains)


def join_all(p: Poset, chains: Iterable[Antichain]) -> Antichain:
    chains = list(chains)
    if not chains:
        raise BlockerLabError("join of an empty family is not used here")
    return reduce(lambda x, y: join(p, x, y), chains)


def enumerate_antichains(p: Poset, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[Antichain]:
    """All antichains of ``p``, ordered by size and then by element position."""
    n = len(p)
    if n > limit:
        raise LimitExceeded(
            f"poset has {n} elements, over the enumeration limit {limit}; "
            "the number of antichains grows too fast for exhaustive work"
        )
    incomparable = [p.full & ~(p.up[i] | p.down[i]) for i in range(n)]
    found: list[int] = []

    def extend(chosen: int, candidates: int):
        found.append(chosen)
        rest = candidates
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            rest ^= low
            # only later candidates, so each antichain is built once
            extend(chosen | low, rest & incomparable[i])

    extend(0, p.full)
    found.sort(key=lambda m: (m.bit_count(), [i for i in range(n) if m >> i & 1]))
    return [Antichain(p, m) for m in found]

"""Finite posets given by cover relations.

The order is kept twice: as a dense boolean matrix ``leq_matrix`` over the
fixed element order, and as Python-int bitsets (``up[i]``/``down[i]`` are the
principal filter/ideal of element ``i``) which the lattice code runs on.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from blockerlab.errors import BlockerLabError
from blockerlab.labels import normalize


def transitive_closure(adjacency: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure by repeated boolean squaring."""
    n = adjacency.shape[0]
    reach = adjacency.astype(bool) | np.eye(n, dtype=bool)
    while True:
        step = (reach.astype(np.int32) @ reach.astype(np.int32)) > 0
        if np.array_equal(step, reach):
            return reach
        reach = step


def _hasse(leq: np.ndarray) -> np.ndarray:
    strict = leq & ~np.eye(leq.shape[0], dtype=bool)
    two_step = (strict.astype(np.int32) @ strict.astype(np.int32)) > 0
    return strict & ~two_step


class Poset:
    """A finite partial order on opaque string labels.

    With ``bounded=True`` (the default) the poset must have more than one
    element and a least element, and ``atoms`` are the elements covering it.
    ``strict_bounded=True`` additionally demands a greatest element.
    ``bounded=False`` accepts any nonempty finite poset; maps on such posets
    are what the generic map checker works with.
    """

    def __init__(self, elements: Sequence[str], leq: np.ndarray, *, bounded: bool = True,
                 strict_bounded: bool = False):
        self.elements: tuple[str, ...] = tuple(elements)
        n = len(self.elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.leq_matrix = np.asarray(leq, dtype=bool)
        self.leq_matrix.setflags(write=False)
        self._validate_order()

        self.up = [sum(1 << j for j in range(n) if self.leq_matrix[i, j]) for i in range(n)]
        self.down = [sum(1 << j for j in range(n) if self.leq_matrix[j, i]) for i in range(n)]
        self.full = (1 << n) - 1
        hasse = _hasse(self.leq_matrix)
        self.covers: tuple[tuple[str, str], ...] = tuple(
            (self.elements[i], self.elements[j]) for i in range(n) for j in range(n) if hasse[i, j]
        )

        least = [i for i in range(n) if self.up[i] == self.full]
        greatest = [i for i in range(n) if self.down[i] == self.full]
        self.least_index: int | None = least[0] if least else None
        self.greatest_index: int | None = greatest[0] if greatest else None
        self.bounded = bounded
        if bounded:
            if n <= 1:
                raise BlockerLabError(f"a bounded poset needs more than one element, got {n}")
            if self.least_index is None:
                raise BlockerLabError("poset has no least element")
            if strict_bounded and self.greatest_index is None:
                raise BlockerLabError("poset has no greatest element (strict bounded mode)")
        elif n == 0:
            raise BlockerLabError("poset has no elements")
        if self.least_index is not None:
            self.atom_mask = self.min_mask(self.full & ~(1 << self.least_index))
        else:
            self.atom_mask = 0
        self._hash = hash((self.elements, self.leq_matrix.tobytes()))

    def _validate_order(self):
        m = self.leq_matrix
        n = len(self.elements)
        if m.shape != (n, n):
            raise BlockerLabError("order matrix has the wrong shape")
        if not m.diagonal().all():
            raise BlockerLabError("order relation is not reflexive")
        both = m & m.T & ~np.eye(n, dtype=bool)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise BlockerLabError(f"cycle detected through {self.elements[i]!r} and {self.elements[j]!r}")
        if not np.array_equal(transitive_closure(m), m):
            raise BlockerLabError("order relation is not transitive")

    # identity -----------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.leq_matrix, other.leq_matrix)

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"Poset({list(self.elements)!r}, covers={list(self.covers)!r})"

    @classmethod
    def from_leq(cls, elements: Sequence[str], leq, **kw) -> Poset:
        return cls(elements, np.asarray(leq, dtype=bool), **kw)

    # element helpers ----------------------------------------------------

    def idx(self, label) -> int:
        try:
            return self.index[normalize(label)]
        except (KeyError, TypeError):
            raise BlockerLabError(f"unknown element {label!r}") from None

    def mask_of(self, labels: Iterable) -> int:
        m = 0
        for x in labels:
            m |= 1 << self.idx(x)
        return m

    def labels_of(self, mask: int) -> list[str]:
        return [e for i, e in enumerate(self.elements) if mask >> i & 1]

    @property
    def least(self) -> str | None:
        return None if self.least_index is None else self.elements[self.least_index]

    @property
    def greatest(self) -> str | None:
        return None if self.greatest_index is None else self.elements[self.greatest_index]

    @property
    def atoms(self) -> list[str]:
        return self.labels_of(self.atom_mask)

    # mask-level order operations ---------------------------------------

    def is_antichain_mask(self, mask: int) -> bool:
        rest = mask
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            if (self.up[i] | self.down[i]) & mask & ~low:
                return False
            rest ^= low
        return True

    def up_mask(self, mask: int) -> int:
        out = 0
        rest = mask
        while rest:
            low = rest & -rest
            out |= self.up[low.bit_length() - 1]
            rest ^= low
        return out

    def down_mask(self, mask: int) -> int:
        out = 0
        rest = mask
        while rest:
            low = rest & -rest
            out |= self.down[low.bit_length() - 1]
            rest ^= low
        return out

    def min_mask(self, mask: int) -> int:
        out = 0
        rest = mask
        while rest:
            low = rest & -rest
            if self.down[low.bit_length() - 1] & mask == low:
                out |= low
            rest ^= low
        return out


def make_poset(elements: Iterable, covers: Iterable[Sequence] = (), *, bounded: bool = True,
               strict_bounded: bool = False) -> Poset:
    """Build a poset from elements and cover pairs ``(x, y)`` meaning ``y`` covers ``x``.

    Redundant pairs (implied by transitivity) are accepted; the stored
    ``covers`` are always the Hasse diagram of the closure.
    """
    labels = [normalize(e) for e in elements]
    if len(set(labels)) != len(labels):
        raise BlockerLabError(f"duplicate element labels: {labels}")
    index = {e: i for i, e in enumerate(labels)}
    adj = np.zeros((len(labels), len(labels)), dtype=bool)
    for pair in covers:
        if len(pair) != 2:
            raise BlockerLabError(f"cover pair must have two entries: {pair!r}")
        x, y = (normalize(v) for v in pair)
        for v in (x, y):
            if v not in index:
                raise BlockerLabError(f"unknown label {v!r} in covers")
        if x == y:
            raise BlockerLabError(f"cover pair ({x!r}, {y!r}) relates an element to itself")
        adj[index[x], index[y]] = True
    return Poset(labels, transitive_closure(adj), bounded=bounded, strict_bounded=strict_bounded)


def leq(p: Poset, x, y) -> bool:
    return bool(p.leq_matrix[p.idx(x), p.idx(y)])


def _antichain_mask(p: Poset, a_set: Iterable) -> int:
    mask = p.mask_of(a_set)
    if not p.is_antichain_mask(mask):
        raise BlockerLabError(f"not an antichain: {p.labels_of(mask)}")
    return mask


def ideal(p: Poset, a_set: Iterable) -> set[str]:
    """Elements below some member of the antichain."""
    return set(p.labels_of(p.down_mask(_antichain_mask(p, a_set))))


def filter(p: Poset, a_set: Iterable) -> set[str]:  # noqa: A001 - mirrors ideal()
    """Elements above some member of the antichain."""
    return set(p.labels_of(p.up_mask(_antichain_mask(p, a_set))))


def min_elements(p: Poset, s: Iterable) -> set[str]:
    return set(p.labels_of(p.min_mask(p.mask_of(s))))

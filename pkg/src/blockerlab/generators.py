"""Seeded generators for posets used by sweeps and the ``gen`` command."""

from __future__ import annotations

import random
from itertools import product

import numpy as np

from blockerlab.errors import LimitExceeded
from blockerlab.poset import Poset, make_poset, transitive_closure

RANDOM_POSET_LIMIT = 20


def random_bounded_poset(size: int, rng: random.Random, limit: int = RANDOM_POSET_LIMIT) -> Poset:
    """A connected poset with least element ``"0"``, grown upward from that root.

    Each new element picks one or more parents among those already placed;
    the result is stored transitively reduced, so ``covers`` is its Hasse diagram.
    """
    if size > limit:
        raise LimitExceeded(f"random poset size {size} exceeds the limit {limit}")
    if size < 2:
        raise LimitExceeded("a bounded poset needs at least two elements")
    covers = []
    for k in range(1, size):
        n_parents = min(k, 1 + int(rng.random() < 0.5) + int(rng.random() < 0.2))
        for parent in rng.sample(range(k), n_parents):
            covers.append((str(parent), str(k)))
    return make_poset([str(i) for i in range(size)], covers)


def random_poset(size: int, rng: random.Random, density: float | None = None) -> Poset:
    """A random (not necessarily bounded) poset on ``"0".."size-1"``."""
    density = rng.random() if density is None else density
    adj = np.zeros((size, size), dtype=bool)
    for i in range(size):
        for j in range(i + 1, size):
            adj[i, j] = rng.random() < density
    return Poset([str(i) for i in range(size)], transitive_closure(adj), bounded=False)


def all_labelled_posets(n: int):
    """Every partial order on ``"0".."n-1"`` (labelled, not up to isomorphism)."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    eye = np.eye(n, dtype=bool)
    for bits in product((False, True), repeat=len(pairs)):
        rel = eye.copy()
        for (i, j), on in zip(pairs, bits):
            rel[i, j] = on
        if (rel & rel.T & ~eye).any():
            continue
        if not np.array_equal(transitive_closure(rel), rel):
            continue
        yield Poset([str(i) for i in range(n)], rel, bounded=False)

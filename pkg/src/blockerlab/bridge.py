"""Clutters on S as antichains of the subset lattice of S.

Sperner families on S are exactly the antichains of the Boolean lattice 2^S,
with the empty clutter at the bottom of Ant(2^S) and the clutter {empty set}
at its top. Under this correspondence the set-theoretic maps of
:mod:`blockerlab.clutter` must agree with the order-theoretic maps of
:mod:`blockerlab.blocker`, which makes each side an oracle for the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from blockerlab import blocker as order
from blockerlab import clutter as sets
from blockerlab.antichains import Antichain
from blockerlab.clutter import Clutter, GroundSet
from blockerlab.errors import BlockerLabError, LimitExceeded
from blockerlab.poset import Poset, make_poset
from blockerlab.report import VerificationReport, failed, passed

BOOLEAN_LIMIT = 5


def subset_label(s: Iterable[str], ground: GroundSet) -> str:
    members = [e for e in ground.elements if e in set(s)]
    return "{" + ",".join(members) + "}"


@dataclass(frozen=True)
class BooleanLattice:
    ground: GroundSet
    poset: Poset
    subset_of: dict[str, frozenset[str]] = field(compare=False)

    def element(self, s: Iterable[str]) -> str:
        return subset_label(s, self.ground)


def boolean_lattice(ground, limit: int = BOOLEAN_LIMIT) -> BooleanLattice:
    """All subsets of ``ground`` ordered by inclusion, listed by size then lexicographically."""
    if not isinstance(ground, GroundSet):
        ground = GroundSet.of(ground)
    n = len(ground)
    if n > limit:
        raise LimitExceeded(f"Boolean lattice on {n} elements exceeds the limit {limit}")
    if n == 0:
        raise BlockerLabError("the Boolean lattice of an empty ground set has a single element")
    subsets = [frozenset(c) for k in range(n + 1) for c in combinations(ground.elements, k)]
    labels = [subset_label(s, ground) for s in subsets]
    covers = [
        (subset_label(s, ground), subset_label(s | {e}, ground))
        for s in subsets for e in ground.elements if e not in s
    ]
    return BooleanLattice(ground, make_poset(labels, covers), dict(zip(labels, subsets)))


def _check_ground(c: Clutter, bl: BooleanLattice):
    if c.ground != bl.ground:
        raise BlockerLabError(f"clutter ground {list(c.ground)} does not match lattice ground {list(bl.ground)}")


def clutter_to_antichain(c: Clutter, bl: BooleanLattice) -> Antichain:
    _check_ground(c, bl)
    return Antichain(bl.poset, bl.poset.mask_of(bl.element(s) for s in c.members()))


def antichain_to_clutter(A: Antichain, bl: BooleanLattice) -> Clutter:
    if A.poset is not bl.poset and A.poset != bl.poset:
        raise BlockerLabError("antichain is not over this Boolean lattice")
    return sets.make_clutter(bl.ground, [bl.subset_of[m] for m in A.members])


def _reembed(c: Clutter, ground: GroundSet) -> Clutter:
    # members of a clutter on S - X contain nothing from X, so they live in S as well
    return sets.make_clutter(ground, c.members())


def atoms_for(x_set: Iterable[str], bl: BooleanLattice) -> order.AtomSubset:
    return order.atom_subset(bl.poset, [bl.element([e]) for e in x_set])


def cross_check(c: Clutter, x_set: Iterable, bl: BooleanLattice | None = None) -> VerificationReport:
    """Compare blocker, deletion and contraction computed on both sides of the correspondence."""
    bl = bl or boolean_lattice(c.ground)
    _check_ground(c, bl)
    x = c.ground.subset(x_set, what="X")
    p = bl.poset
    A = clutter_to_antichain(c, bl)
    X = atoms_for(x, bl)
    pairs = {
        "blocker": (sets.blocker(c), order.bmap(p, A)),
        "delete": (_reembed(sets.delete(c, x), c.ground), order.delete(p, A, X)),
        "contract": (_reembed(sets.contract(c, x), c.ground), order.contract(p, A, X)),
    }
    details = {}
    for name, (set_side, order_side) in pairs.items():
        translated = antichain_to_clutter(order_side, bl)
        details[name] = {"set": str(set_side), "order": str(order_side)}
        if translated != set_side:
            witness = {"clutter": str(c), "x": sorted(x), "map": name, "set": str(set_side),
                       "order": str(order_side)}
            return failed("bridge", witness, **details)
    return passed("bridge", **details)

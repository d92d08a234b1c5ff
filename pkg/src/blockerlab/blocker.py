"""Order-theoretic blocker, deletion and contraction on Ant(P), and their checks.

For a nontrivial element ``a`` the blocker is the set of atoms below ``a``;
for a nontrivial antichain it is the Ant(P)-meet of the element blockers.
Deletion and contraction by a set X of atoms are defined element-wise and
extended to antichains by Ant(P)-joins. The two trivial antichains are
swapped by the blocker and fixed by deletion and contraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from blockerlab.antichains import (
    Antichain,
    antichain_leq,
    bottom,
    enumerate_antichains,
    join_all,
    meet_all,
    top,
    DEFAULT_ENUMERATION_LIMIT,
)
from blockerlab.errors import BlockerLabError
from blockerlab.poset import Poset
from blockerlab.report import VerificationReport, combine, failed, passed


@dataclass(frozen=True)
class AtomSubset:
    poset: Poset
    mask: int

    def __post_init__(self):
        stray = self.mask & ~self.poset.atom_mask
        if stray:
            raise BlockerLabError(f"X must contain atoms only; not atoms: {self.poset.labels_of(stray)}")

    @property
    def members(self) -> list[str]:
        return self.poset.labels_of(self.mask)

    def __str__(self):
        return "{" + ",".join(self.members) + "}"


def atom_subset(p: Poset, labels: Iterable) -> AtomSubset:
    return AtomSubset(p, p.mask_of(labels))


def all_atom_subsets(p: Poset) -> list[AtomSubset]:
    atoms = [1 << p.idx(a) for a in p.atoms]
    out = []
    for k in range(len(atoms) + 1):
        for combo in combinations(atoms, k):
            out.append(AtomSubset(p, sum(combo)))
    return out


def _as_x(p: Poset, x) -> AtomSubset:
    if isinstance(x, AtomSubset):
        if x.poset is not p and x.poset != p:
            raise BlockerLabError("X belongs to a different poset")
        return x
    return atom_subset(p, x)


def _element_index(p: Poset, a) -> int:
    i = p.idx(a)
    if i == p.least_index:
        raise BlockerLabError(f"{p.elements[i]!r} is the least element; its one-element antichain is trivial")
    return i


def _check(p: Poset, a: Antichain):
    if a.poset is not p and a.poset != p:
        raise BlockerLabError(f"antichain {a} belongs to a different poset")


# -- the maps --------------------------------------------------------------


def bmap_element(p: Poset, a) -> Antichain:
    """Atoms below the (non-least) element ``a``."""
    i = _element_index(p, a)
    return Antichain(p, p.down[i] & p.atom_mask)


def bmap(p: Poset, A: Antichain) -> Antichain:
    _check(p, A)
    if A.is_bottom:
        return top(p)
    if A.is_top:
        return bottom(p)
    return meet_all(p, (bmap_element(p, a) for a in A.members))


def delete_element(p: Poset, a, X) -> Antichain:
    x = _as_x(p, X)
    i = _element_index(p, a)
    if p.down[i] & p.atom_mask & x.mask:
        return bottom(p)
    return Antichain(p, 1 << i)


def contract_element(p: Poset, a, X) -> Antichain:
    x = _as_x(p, X)
    i = _element_index(p, a)
    below = p.down[i] & p.atom_mask
    if not below & x.mask:
        return Antichain(p, 1 << i)
    if below & ~x.mask:
        return bmap(p, Antichain(p, below & ~x.mask))
    return top(p)


def delete(p: Poset, A: Antichain, X) -> Antichain:
    _check(p, A)
    x = _as_x(p, X)
    if A.is_trivial:
        return A
    return join_all(p, (delete_element(p, a, x) for a in A.members))


def contract(p: Poset, A: Antichain, X) -> Antichain:
    _check(p, A)
    x = _as_x(p, X)
    if A.is_trivial:
        return A
    return join_all(p, (contract_element(p, a, x) for a in A.members))


# -- verifiers -------------------------------------------------------------


def verify_lemma(p: Poset, A: Antichain, X) -> VerificationReport:
    """Check bmap(bmap(A) deleted by X) >= A/X and bmap(bmap(A)/X) >= A deleted by X."""
    x = _as_x(p, X)
    b = bmap(p, A)
    relations = {
        "delete_bound": (bmap(p, delete(p, b, x)), contract(p, A, x)),
        "contract_bound": (bmap(p, contract(p, b, x)), delete(p, A, x)),
    }
    details = {name: {"greater": str(g), "lesser": str(s)} for name, (g, s) in relations.items()}
    for name, (greater, lesser) in relations.items():
        if not antichain_leq(p, lesser, greater):
            witness = {"A": str(A), "X": str(x), "bound": name, "greater": str(greater), "lesser": str(lesser)}
            return failed("lemma", witness, **details)
    return passed("lemma", **details)


def corollary_chain(p: Poset, A: Antichain, X) -> list[tuple[str, Antichain]]:
    x = _as_x(p, X)
    b = bmap(p, A)
    return [
        ("b(A)\\X", delete(p, b, x)),
        ("b(A/X)", bmap(p, contract(p, A, x))),
        ("b(A)", b),
        ("b(A)/X", contract(p, b, x)),
        ("b(A\\X)", bmap(p, delete(p, A, x))),
    ]


def verify_corollary(p: Poset, A: Antichain, X) -> VerificationReport:
    x = _as_x(p, X)
    chain = corollary_chain(p, A, x)
    details = {"chain": [[name, str(v)] for name, v in chain]}
    for (ln, lv), (rn, rv) in zip(chain, chain[1:]):
        if not antichain_leq(p, lv, rv):
            witness = {"A": str(A), "X": str(x), "step": f"{ln} <= {rn}", "lhs": str(lv), "rhs": str(rv)}
            return failed("corollary", witness, **details)
    return passed("corollary", **details)


def verify_triple_bmap(p: Poset, A: Antichain) -> VerificationReport:
    once = bmap(p, A)
    thrice = bmap(p, bmap(p, once))
    if thrice == once:
        return passed("triple_bmap", b=str(once))
    return failed("triple_bmap", {"A": str(A), "lhs": str(thrice), "rhs": str(once)})


def verify_bmap_properties(p: Poset, carrier: list[Antichain] | None = None,
                           limit: int = DEFAULT_ENUMERATION_LIMIT) -> VerificationReport:
    """Order reversal, bmap(bmap(A)) >= A and the triple identity, over all of Ant(P)."""
    carrier = carrier if carrier is not None else enumerate_antichains(p, limit)
    image = {A: bmap(p, A) for A in carrier}
    for A in carrier:
        if not antichain_leq(p, A, image[image[A]]):
            return failed("bmap_properties", {"property": "b(b(A)) >= A", "A": str(A), "b(b(A))": str(image[image[A]])},
                          instances=len(carrier))
        if image[image[image[A]]] != image[A]:
            return failed("bmap_properties", {"property": "b(b(b(A))) = b(A)", "A": str(A)}, instances=len(carrier))
    for A1 in carrier:
        for A2 in carrier:
            if antichain_leq(p, A1, A2) and not antichain_leq(p, image[A2], image[A1]):
                witness = {"property": "order-reversing", "A1": str(A1), "A2": str(A2),
                           "b(A1)": str(image[A1]), "b(A2)": str(image[A2])}
                return failed("bmap_properties", witness, instances=len(carrier))
    return passed("bmap_properties", instances=len(carrier))


def verify_operator_laws(p: Poset, X, limit: int = DEFAULT_ENUMERATION_LIMIT,
                         carrier: list[Antichain] | None = None) -> VerificationReport:
    """Deletion by X is a coclosure and contraction by X a closure on all of Ant(P)."""
    x = _as_x(p, X)
    carrier = carrier if carrier is not None else enumerate_antichains(p, limit)
    ops = {
        "deletion": ({A: delete(p, A, x) for A in carrier}, "decreasing"),
        "contraction": ({A: contract(p, A, x) for A in carrier}, "increasing"),
    }
    for name, (table, direction) in ops.items():
        for A in carrier:
            img = table[A]
            ok = antichain_leq(p, img, A) if direction == "decreasing" else antichain_leq(p, A, img)
            if not ok:
                return failed("operator_laws", {"operator": name, "law": direction, "X": str(x), "A": str(A),
                                                "image": str(img)}, instances=len(carrier))
            if table[img] != img:
                return failed("operator_laws", {"operator": name, "law": "idempotent", "X": str(x), "A": str(A),
                                                "image": str(img), "image_twice": str(table[img])},
                              instances=len(carrier))
        for A1 in carrier:
            for A2 in carrier:
                if antichain_leq(p, A1, A2) and not antichain_leq(p, table[A1], table[A2]):
                    return failed("operator_laws", {"operator": name, "law": "monotone", "X": str(x),
                                                    "A1": str(A1), "A2": str(A2)}, instances=len(carrier))
    return passed("operator_laws", instances=len(carrier), X=str(x))


def sweep(p: Poset, relation: str, limit: int = DEFAULT_ENUMERATION_LIMIT) -> VerificationReport:
    """Run one verifier over every antichain (and every X where it takes one)."""
    carrier = enumerate_antichains(p, limit)
    xs = all_atom_subsets(p)
    if relation == "lemma":
        reports = (verify_lemma(p, A, x) for A in carrier for x in xs)
    elif relation == "corollary":
        reports = (verify_corollary(p, A, x) for A in carrier for x in xs)
    elif relation == "triple_bmap":
        reports = (verify_triple_bmap(p, A) for A in carrier)
    elif relation == "operator_laws":
        reports = (verify_operator_laws(p, x, carrier=carrier) for x in xs)
    else:
        raise BlockerLabError(f"unknown relation {relation!r}")
    return combine(relation, reports)

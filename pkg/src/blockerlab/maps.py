"""Checks for self-maps of a finite poset given as tables.

The central check, :func:`verify_sandwich_theorem`, takes three maps
``beta`` (order-reversing, ``beta(beta(x)) >= x``), ``delta`` (order-preserving)
and ``gamma`` (order-preserving, ``gamma(x) >= x``). If ``beta.delta.beta >= gamma``
or ``beta.gamma.beta >= delta`` holds pointwise, then for every z

    delta(beta(z)) <= beta(gamma(z)) <= beta(z) <= gamma(beta(z)) <= beta(delta(z)),

and if moreover ``beta`` is an involution and one of the two hypotheses holds
with equality, the outer two inequalities on each side are equalities.

Vectorized enumeration of whole map classes (numpy, ``n**n`` tables) backs the
random and exhaustive sweeps; every sampled instance is then re-checked by the
scalar checkers, so the sampler and the verifier never share code paths.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from blockerlab.antichains import antichain_leq, enumerate_antichains, DEFAULT_ENUMERATION_LIMIT
from blockerlab.blocker import bmap, contract, delete, _as_x
from blockerlab.errors import BlockerLabError, LimitExceeded
from blockerlab.generators import all_labelled_posets, random_poset
from blockerlab.poset import Poset
from blockerlab.report import VerificationReport, failed, passed, INAPPLICABLE

MAP_ENUMERATION_LIMIT = 7


@dataclass(frozen=True)
class MapTable:
    poset: Poset
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.poset)
        if len(self.images) != n or any(not 0 <= v < n for v in self.images):
            raise BlockerLabError("map table must send every element to an element of the same poset")

    def __call__(self, i: int) -> int:
        return self.images[i]

    def label(self, i: int) -> str:
        return self.poset.elements[i]

    def pairs(self) -> list[list[str]]:
        return [[self.label(i), self.label(v)] for i, v in enumerate(self.images)]


def make_map_table(p: Poset, pairs: Iterable[Sequence]) -> MapTable:
    """Build a total map from ``[x, f(x)]`` pairs; each element must appear exactly once."""
    images: dict[int, int] = {}
    for pair in pairs:
        if len(pair) != 2:
            raise BlockerLabError(f"map pair must have two entries: {pair!r}")
        x, fx = p.idx(pair[0]), p.idx(pair[1])
        if x in images:
            raise BlockerLabError(f"element {p.elements[x]!r} is mapped twice")
        images[x] = fx
    missing = [p.elements[i] for i in range(len(p)) if i not in images]
    if missing:
        raise BlockerLabError(f"map table is not total; no image for {missing}")
    return MapTable(p, tuple(images[i] for i in range(len(p))))


def identity_map(p: Poset) -> MapTable:
    return MapTable(p, tuple(range(len(p))))


def constant_map(p: Poset, value) -> MapTable:
    return MapTable(p, (p.idx(value),) * len(p))


def _same(*maps: MapTable) -> Poset:
    p = maps[0].poset
    for m in maps[1:]:
        if m.poset is not p and m.poset != p:
            raise BlockerLabError("map tables are over different posets")
    return p


def _le(p: Poset, i: int, j: int) -> bool:
    return bool(p.leq_matrix[i, j])


def _comparable_pairs(p: Poset):
    n = len(p)
    return [(i, j) for i in range(n) for j in range(n) if i != j and _le(p, i, j)]


# -- scalar checks ---------------------------------------------------------


def check_order_preserving(m: MapTable) -> VerificationReport:
    p = m.poset
    pairs = _comparable_pairs(p)
    for i, j in pairs:
        if not _le(p, m(i), m(j)):
            return failed("order_preserving", {"x": m.label(i), "y": m.label(j), "f(x)": m.label(m(i)),
                                               "f(y)": m.label(m(j))}, instances=len(pairs))
    return passed("order_preserving", instances=len(pairs))


def check_order_reversing(m: MapTable) -> VerificationReport:
    p = m.poset
    pairs = _comparable_pairs(p)
    for i, j in pairs:
        if not _le(p, m(j), m(i)):
            return failed("order_reversing", {"x": m.label(i), "y": m.label(j), "f(x)": m.label(m(i)),
                                              "f(y)": m.label(m(j))}, instances=len(pairs))
    return passed("order_reversing", instances=len(pairs))


def check_gamma_extensive(m: MapTable) -> VerificationReport:
    n = len(m.poset)
    for i in range(n):
        if not _le(m.poset, i, m(i)):
            return failed("gamma_extensive", {"x": m.label(i), "gamma(x)": m.label(m(i))}, instances=n)
    return passed("gamma_extensive", instances=n)


def check_beta_condition(m: MapTable) -> VerificationReport:
    """beta(beta(x)) >= x everywhere."""
    n = len(m.poset)
    for i in range(n):
        if not _le(m.poset, i, m(m(i))):
            return failed("beta_condition", {"x": m.label(i), "beta(beta(x))": m.label(m(m(i)))}, instances=n)
    return passed("beta_condition", instances=n)


def _hypothesis(name, beta, bigger_inner, smaller, label_big, label_small) -> tuple[VerificationReport, bool]:
    p = _same(beta, bigger_inner, smaller)
    n = len(p)
    equal = True
    for i in range(n):
        big = beta(bigger_inner(beta(i)))
        small = smaller(i)
        if not _le(p, small, big):
            return failed(name, {"x": p.elements[i], label_big: p.elements[big], label_small: p.elements[small]},
                          instances=n), False
        equal &= big == small
    return passed(name, instances=n, equality=equal), equal


def check_hypothesis_bdb(beta: MapTable, delta: MapTable, gamma: MapTable) -> VerificationReport:
    """beta(delta(beta(x))) >= gamma(x) everywhere; ``details['equality']`` flags pointwise equality."""
    return _hypothesis("bdb_dominates_gamma", beta, delta, gamma, "beta(delta(beta(x)))", "gamma(x)")[0]


def check_hypothesis_bgb(beta: MapTable, delta: MapTable, gamma: MapTable) -> VerificationReport:
    """beta(gamma(beta(x))) >= delta(x) everywhere; ``details['equality']`` flags pointwise equality."""
    return _hypothesis("bgb_dominates_delta", beta, gamma, delta, "beta(gamma(beta(x)))", "delta(x)")[0]


def check_triple_beta(beta: MapTable) -> VerificationReport:
    n = len(beta.poset)
    for i in range(n):
        if beta(beta(beta(i))) != beta(i):
            return failed("triple_beta", {"x": beta.label(i), "beta^3(x)": beta.label(beta(beta(beta(i)))),
                                          "beta(x)": beta.label(beta(i))}, instances=n)
    return passed("triple_beta", instances=n)


def verify_sandwich_theorem(beta: MapTable, delta: MapTable, gamma: MapTable) -> VerificationReport:
    """Check side conditions, decide which hypotheses hold, then assert what they imply.

    Status is ``"inapplicable"`` when a side condition fails or neither
    hypothesis holds; conclusions are only asserted otherwise.
    """
    p = _same(beta, delta, gamma)
    n = len(p)
    side = {
        "delta_order_preserving": check_order_preserving(delta).passed,
        "gamma_order_preserving": check_order_preserving(gamma).passed,
        "gamma_extensive": check_gamma_extensive(gamma).passed,
        "beta_order_reversing": check_order_reversing(beta).passed,
        "beta_condition": check_beta_condition(beta).passed,
    }
    hyp = {}
    for key, rep in (("bdb_dominates_gamma", check_hypothesis_bdb(beta, delta, gamma)),
                     ("bgb_dominates_delta", check_hypothesis_bgb(beta, delta, gamma))):
        hyp[key] = "fails" if rep.failed else ("equality" if rep.details["equality"] else "holds")
    involutive = all(beta(beta(i)) == i for i in range(n))
    details = {"side_conditions": side, "hypotheses": hyp, "beta_involutive": involutive, "asserted": []}

    if not all(side.values()) or all(v == "fails" for v in hyp.values()):
        return VerificationReport("sandwich_theorem", INAPPLICABLE, n, None, details)

    assert_equalities = involutive and "equality" in hyp.values()
    details["asserted"] = ["chain"] + (["equalities"] if assert_equalities else [])
    for z in range(n):
        terms = [
            ("delta(beta(z))", delta(beta(z))),
            ("beta(gamma(z))", beta(gamma(z))),
            ("beta(z)", beta(z)),
            ("gamma(beta(z))", gamma(beta(z))),
            ("beta(delta(z))", beta(delta(z))),
        ]
        for (ln, lv), (rn, rv) in zip(terms, terms[1:]):
            if not _le(p, lv, rv):
                return failed("sandwich_theorem", {"z": p.elements[z], "step": f"{ln} <= {rn}",
                                                   "lhs": p.elements[lv], "rhs": p.elements[rv]}, instances=n,
                              **details)
        if assert_equalities:
            for (ln, lv), (rn, rv) in ((terms[0], terms[1]), (terms[3], terms[4])):
                if lv != rv:
                    return failed("sandwich_theorem", {"z": p.elements[z], "step": f"{ln} = {rn}",
                                                       "lhs": p.elements[lv], "rhs": p.elements[rv]},
                                  instances=n, **details)
    return passed("sandwich_theorem", instances=n, **details)


# -- whole map classes (vectorized) ----------------------------------------


@dataclass(frozen=True)
class MapClasses:
    """All order-preserving, order-preserving extensive, and admissible order-reversing tables."""

    preserving: np.ndarray
    closure_like: np.ndarray
    reversing: np.ndarray
    involutive_reversing: np.ndarray


def all_tables(n: int) -> np.ndarray:
    if n > MAP_ENUMERATION_LIMIT:
        raise LimitExceeded(f"{n}**{n} map tables is too many to enumerate (limit n={MAP_ENUMERATION_LIMIT})")
    return np.array(list(product(range(n), repeat=n)), dtype=np.int64).reshape(-1, n)


def _compose(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Row-wise f o g for stacks of tables."""
    return np.take_along_axis(f, g, axis=1)


def _classes_for(leq: np.ndarray) -> MapClasses:
    n = leq.shape[0]
    tables = all_tables(n)
    preserving = np.ones(len(tables), dtype=bool)
    reversing = np.ones(len(tables), dtype=bool)
    for i, j in zip(*np.nonzero(leq & ~np.eye(n, dtype=bool))):
        preserving &= leq[tables[:, i], tables[:, j]]
        reversing &= leq[tables[:, j], tables[:, i]]
    extensive = leq[np.arange(n), tables].all(axis=1)
    twice = _compose(tables, tables)
    above_id = leq[np.arange(n), twice].all(axis=1)
    involutive = (twice == np.arange(n)).all(axis=1)
    admissible = reversing & above_id
    return MapClasses(
        preserving=tables[preserving],
        closure_like=tables[preserving & extensive],
        reversing=tables[admissible],
        involutive_reversing=tables[admissible & involutive],
    )


@lru_cache(maxsize=512)
def _cached_classes(n: int, leq_bytes: bytes) -> MapClasses:
    return _classes_for(np.frombuffer(leq_bytes, dtype=bool).reshape(n, n))


def map_classes(p: Poset) -> MapClasses:
    return _cached_classes(len(p), np.ascontiguousarray(p.leq_matrix).tobytes())


def _feasible_deltas(leq: np.ndarray, deltas: np.ndarray, beta: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    n = leq.shape[0]
    idx = np.arange(n)
    bdb = beta[deltas[:, beta]]
    h9 = leq[gamma[idx], bdb].all(axis=1)
    bgb = beta[gamma[beta]]
    h11 = leq[deltas, bgb[idx]].all(axis=1)
    return h9 | h11


def random_instance(p: Poset, rng: random.Random, equality: bool = False, tries: int = 50):
    """Draw (beta, delta, gamma) meeting the side conditions and at least one hypothesis.

    beta and gamma are uniform over their classes; delta is uniform over the
    tables that, together with that beta and gamma, satisfy a hypothesis. With
    ``equality=True`` beta is drawn among involutions and gamma is set to
    beta.delta.beta, which lands in the equality case. Returns ``None`` if no
    instance was found in ``tries`` draws.
    """
    cls = map_classes(p)
    leq = p.leq_matrix
    n = len(p)
    if not len(cls.reversing):
        return None
    for _ in range(tries):
        if equality:
            if not len(cls.involutive_reversing):
                return None
            beta = cls.involutive_reversing[rng.randrange(len(cls.involutive_reversing))]
            conj = beta[cls.preserving[:, beta]]
            ok = leq[np.arange(n), conj].all(axis=1)
            choices = np.nonzero(ok)[0]
            if not len(choices):
                continue
            k = int(choices[rng.randrange(len(choices))])
            delta, gamma = cls.preserving[k], conj[k]
        else:
            beta = cls.reversing[rng.randrange(len(cls.reversing))]
            gamma = cls.closure_like[rng.randrange(len(cls.closure_like))]
            choices = np.nonzero(_feasible_deltas(leq, cls.preserving, beta, gamma))[0]
            if not len(choices):
                continue
            delta = cls.preserving[int(choices[rng.randrange(len(choices))])]
        return tuple(MapTable(p, tuple(int(v) for v in t)) for t in (beta, delta, gamma))
    return None


def sweep_sandwich_theorem(size: int = 6, count: int = 1000, seed: int = 0,
                           equality_every: int = 4) -> tuple[VerificationReport, dict]:
    """Check the theorem on ``count`` random applicable instances with |L| <= ``size``."""
    if size > MAP_ENUMERATION_LIMIT:
        raise LimitExceeded(f"sweep size {size} exceeds the map enumeration limit {MAP_ENUMERATION_LIMIT}")
    rng = random.Random(seed)
    stats = {"generated": 0, "applicable": 0, "asserted_chain": 0, "asserted_equalities": 0, "failed": 0,
             "sampler_mismatch": 0}
    first_failure = None
    while stats["applicable"] < count:
        n = rng.randint(1, size)
        L = random_poset(n, rng)
        equality = equality_every > 0 and stats["generated"] % equality_every == 0
        stats["generated"] += 1
        inst = random_instance(L, rng, equality=equality)
        if inst is None:
            continue
        rep = verify_sandwich_theorem(*inst)
        if rep.status == INAPPLICABLE:
            stats["sampler_mismatch"] += 1
            continue
        stats["applicable"] += 1
        stats["asserted_chain"] += 1
        if "equalities" in rep.details["asserted"]:
            stats["asserted_equalities"] += 1
        if rep.failed:
            stats["failed"] += 1
            if first_failure is None:
                first_failure = dict(rep.witness, beta=inst[0].pairs(), delta=inst[1].pairs(),
                                     gamma=inst[2].pairs())
    if first_failure is None and stats["sampler_mismatch"]:
        first_failure = {"reason": "sampler produced instances the checker deems inapplicable"}
    if first_failure is not None:
        return failed("sandwich_sweep", first_failure, instances=stats["applicable"], **stats), stats
    return passed("sandwich_sweep", instances=stats["applicable"], **stats), stats


def exhaustive_triple_beta(max_n: int = 4) -> tuple[VerificationReport, dict]:
    """beta^3 = beta for every admissible order-reversing beta on every labelled poset of size <= max_n."""
    stats = {"posets": 0, "maps": 0, "admissible": 0}
    for n in range(1, max_n + 1):
        for L in all_labelled_posets(n):
            stats["posets"] += 1
            stats["maps"] += n ** n
            for row in map_classes(L).reversing:
                beta = MapTable(L, tuple(int(v) for v in row))
                stats["admissible"] += 1
                rep = check_triple_beta(beta)
                if rep.failed:
                    return failed("triple_beta_exhaustive", dict(rep.witness, beta=beta.pairs()),
                                  instances=stats["admissible"], **stats), stats
    return passed("triple_beta_exhaustive", instances=stats["admissible"], **stats), stats


# -- the blocker instance --------------------------------------------------


def antichain_lattice_poset(p: Poset, limit: int = DEFAULT_ENUMERATION_LIMIT):
    """Ant(P) materialized as a Poset on antichain labels, plus the carrier list."""
    carrier = enumerate_antichains(p, limit)
    m = len(carrier)
    order = np.zeros((m, m), dtype=bool)
    for i, a in enumerate(carrier):
        for j, b in enumerate(carrier):
            order[i, j] = antichain_leq(p, a, b)
    labels = [str(a) for a in carrier]
    return Poset.from_leq(labels, order, bounded=False), carrier


def blocker_instance(p: Poset, X, limit: int = DEFAULT_ENUMERATION_LIMIT):
    """Tabulate (bmap, deletion by X, contraction by X) over Ant(P)."""
    x = _as_x(p, X)
    L, carrier = antichain_lattice_poset(p, limit)
    pos = {a: i for i, a in enumerate(carrier)}
    beta = MapTable(L, tuple(pos[bmap(p, a)] for a in carrier))
    delta = MapTable(L, tuple(pos[delete(p, a, x)] for a in carrier))
    gamma = MapTable(L, tuple(pos[contract(p, a, x)] for a in carrier))
    return L, beta, delta, gamma


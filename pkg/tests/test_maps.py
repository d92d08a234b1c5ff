import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockerlab.errors import BlockerLabError
from blockerlab.generators import all_labelled_posets, random_poset
from blockerlab.maps import (
    MapTable,
    blocker_instance,
    check_beta_condition,
    check_gamma_extensive,
    check_hypothesis_bdb,
    check_hypothesis_bgb,
    check_order_preserving,
    check_order_reversing,
    check_triple_beta,
    constant_map,
    exhaustive_triple_beta,
    identity_map,
    make_map_table,
    map_classes,
    random_instance,
    sweep_sandwich_theorem,
    verify_sandwich_theorem,
)
from blockerlab.poset import make_poset
from conftest import nonmonotone_poset, poset_suite


@pytest.fixture
def chain2():
    return make_poset(["0", "1"], [("0", "1")], bounded=False)


@pytest.fixture
def swap(chain2):
    return make_map_table(chain2, [["0", "1"], ["1", "0"]])


def test_make_map_table_errors(chain2):
    with pytest.raises(BlockerLabError, match="not total"):
        make_map_table(chain2, [["0", "1"]])
    with pytest.raises(BlockerLabError, match="mapped twice"):
        make_map_table(chain2, [["0", "1"], ["0", "0"], ["1", "1"]])
    with pytest.raises(BlockerLabError, match="unknown"):
        make_map_table(chain2, [["0", "2"], ["1", "1"]])


def test_order_checks(chain2, swap):
    assert check_order_reversing(swap).passed
    rep = check_order_preserving(swap)
    assert rep.failed and (rep.witness["x"], rep.witness["y"]) == ("0", "1")
    assert check_order_preserving(identity_map(chain2)).passed
    pq = make_poset(["p", "q"], [], bounded=False)
    for images in product(range(2), repeat=2):
        m = MapTable(pq, images)
        assert check_order_preserving(m).passed and check_order_reversing(m).passed


def test_gamma_extensive(chain2, diamond):
    assert check_gamma_extensive(identity_map(chain2)).passed
    assert check_gamma_extensive(constant_map(diamond, "t")).passed
    rep = check_gamma_extensive(constant_map(chain2, "0"))
    assert rep.failed and rep.witness["x"] == "1"


def test_beta_condition(chain2, swap):
    assert check_beta_condition(swap).passed
    assert check_beta_condition(constant_map(chain2, "1")).passed
    rep = check_beta_condition(constant_map(chain2, "0"))
    assert rep.failed and rep.witness["x"] == "1"


def test_hypotheses_on_chain(chain2, swap):
    ident = identity_map(chain2)
    rep = check_hypothesis_bdb(swap, ident, ident)
    assert rep.passed and rep.details["equality"]
    top = constant_map(chain2, "1")
    assert check_hypothesis_bdb(top, ident, ident).passed
    assert not check_hypothesis_bdb(top, ident, ident).details["equality"]


def test_hypotheses_mismatched_posets(chain2, swap, diamond):
    with pytest.raises(BlockerLabError, match="different posets"):
        check_hypothesis_bdb(swap, identity_map(diamond), identity_map(chain2))


def test_theorem_involutive_equality_case(chain2, swap):
    ident = identity_map(chain2)
    rep = verify_sandwich_theorem(swap, ident, ident)
    assert rep.passed
    assert rep.details["asserted"] == ["chain", "equalities"]
    assert rep.details["beta_involutive"]


def test_theorem_constant_top_beta(chain2):
    ident = identity_map(chain2)
    top = constant_map(chain2, "1")
    rep = verify_sandwich_theorem(top, ident, ident)
    assert rep.passed and rep.details["asserted"] == ["chain"]
    for z in range(2):
        assert {ident(top(z)), top(ident(z)), top(z)} == {1}


def test_theorem_inapplicable_when_side_condition_fails(chain2, swap):
    ident = identity_map(chain2)
    rep = verify_sandwich_theorem(swap, ident, constant_map(chain2, "0"))
    assert rep.status == "inapplicable" and rep.witness is None
    assert not rep.details["side_conditions"]["gamma_extensive"]


def test_theorem_inapplicable_when_neither_hypothesis_holds():
    # on a 3-chain, beta reversal with a delta that sends everything to the top
    p = make_poset(["0", "1", "2"], [("0", "1"), ("1", "2")], bounded=False)
    beta = make_map_table(p, [["0", "2"], ["1", "1"], ["2", "0"]])
    delta = constant_map(p, "2")
    gamma = identity_map(p)
    assert check_hypothesis_bgb(beta, delta, gamma).failed
    assert check_hypothesis_bdb(beta, delta, gamma).failed
    rep = verify_sandwich_theorem(beta, delta, gamma)
    assert rep.status == "inapplicable"


def test_triple_beta_examples(chain2, swap, diamond):
    assert check_triple_beta(swap).passed
    assert check_triple_beta(constant_map(diamond, "t")).passed
    rep, stats = exhaustive_triple_beta(4)
    assert rep.passed
    assert stats["posets"] == 1 + 3 + 19 + 219


def test_labelled_poset_counts():
    assert [sum(1 for _ in all_labelled_posets(n)) for n in range(1, 5)] == [1, 3, 19, 219]


def test_blocker_instance_on_diamond(diamond):
    L, beta, delta, gamma = blocker_instance(diamond, ["a"])
    assert len(L) == 6
    assert check_hypothesis_bdb(beta, delta, gamma).passed
    assert check_hypothesis_bgb(beta, delta, gamma).passed
    rep = verify_sandwich_theorem(beta, delta, gamma)
    assert rep.passed


@pytest.mark.parametrize("name,p", poset_suite(n_random=15, seed=4))
def test_blocker_instance_on_suite(name, p):
    from blockerlab.blocker import all_atom_subsets

    for x in all_atom_subsets(p):
        L, beta, delta, gamma = blocker_instance(p, x)
        assert check_hypothesis_bdb(beta, delta, gamma).passed
        assert check_hypothesis_bgb(beta, delta, gamma).passed
        rep = verify_sandwich_theorem(beta, delta, gamma)
        assert not rep.failed
        if rep.status == "inapplicable":
            failing = [k for k, ok in rep.details["side_conditions"].items() if not ok]
            assert failing == ["gamma_order_preserving"]


def test_blocker_instance_inapplicable_when_contraction_not_monotone():
    L, beta, delta, gamma = blocker_instance(nonmonotone_poset(), ["1"])
    rep = verify_sandwich_theorem(beta, delta, gamma)
    assert rep.status == "inapplicable"
    assert not rep.details["side_conditions"]["gamma_order_preserving"]


# vectorized classes agree with the scalar checkers ------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_map_classes_match_scalar_checks(n):
    for L in all_labelled_posets(n):
        cls = map_classes(L)
        as_set = lambda arr: {tuple(int(v) for v in row) for row in arr}
        pres, clos, rev = as_set(cls.preserving), as_set(cls.closure_like), as_set(cls.reversing)
        for images in product(range(n), repeat=n):
            m = MapTable(L, images)
            op = check_order_preserving(m).passed
            assert (images in pres) == op
            assert (images in clos) == (op and check_gamma_extensive(m).passed)
            assert (images in rev) == (check_order_reversing(m).passed and check_beta_condition(m).passed)


# hypothesis checkers are exact --------------------------------------------


def _mutate_to_break(p, m: MapTable, at: int, ok):
    """Return m changed at one point so that ``ok`` fails, or None if impossible."""
    for v in range(len(p)):
        images = list(m.images)
        images[at] = v
        cand = MapTable(p, tuple(images))
        if not ok(cand):
            return cand
    return None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_single_point_mutation_is_flagged(seed):
    rng = random.Random(seed)
    L = random_poset(rng.randint(2, 5), rng)
    inst = random_instance(L, rng)
    if inst is None:
        return
    beta, delta, gamma = inst
    at = rng.randrange(len(L))
    if check_hypothesis_bdb(beta, delta, gamma).passed:
        bad = _mutate_to_break(L, gamma, at, lambda g: check_hypothesis_bdb(beta, delta, g).passed)
        if bad is not None:
            rep = check_hypothesis_bdb(beta, delta, bad)
            x = L.idx(rep.witness["x"])
            assert not L.leq_matrix[bad(x), beta(delta(beta(x)))]
            assert x == at
    bad = _mutate_to_break(L, delta, at, lambda d: check_order_preserving(d).passed)
    if bad is not None:
        rep = check_order_preserving(bad)
        x, y = L.idx(rep.witness["x"]), L.idx(rep.witness["y"])
        assert L.leq_matrix[x, y] and not L.leq_matrix[bad(x), bad(y)]
        assert at in (x, y)


def test_random_instance_satisfies_side_conditions():
    rng = random.Random(1)
    drawn = 0
    for _ in range(80):
        L = random_poset(rng.randint(1, 5), rng)
        for equality in (False, True):
            inst = random_instance(L, rng, equality=equality)
            if inst is None:
                continue
            drawn += 1
            rep = verify_sandwich_theorem(*inst)
            assert rep.passed
            if equality:
                assert "equalities" in rep.details["asserted"]
    assert drawn > 50


def test_sweep_small_and_deterministic():
    rep1, s1 = sweep_sandwich_theorem(size=5, count=150, seed=7)
    rep2, s2 = sweep_sandwich_theorem(size=5, count=150, seed=7)
    assert rep1.passed and s1 == s2
    assert s1["applicable"] == 150 and s1["failed"] == 0


def test_sweep_flags_a_broken_checker(monkeypatch):
    import blockerlab.maps as mod

    real = mod.verify_sandwich_theorem

    def broken(beta, delta, gamma):
        rep = real(beta, delta, gamma)
        if rep.passed and len(beta.poset) > 2:
            return mod.failed("sandwich_theorem", {"z": "0"}, **rep.details)
        return rep

    monkeypatch.setattr(mod, "verify_sandwich_theorem", broken)
    rep, stats = mod.sweep_sandwich_theorem(size=4, count=30, seed=0)
    assert rep.failed and stats["failed"] > 0

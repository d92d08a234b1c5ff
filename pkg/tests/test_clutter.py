import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockerlab.clutter import (
    Clutter,
    GroundSet,
    Kind,
    all_clutters,
    blocker,
    contract,
    delete,
    is_sperner,
    make_clutter,
    minimal_sets,
    random_clutter,
    verify_involution,
    verify_seymour,
)
from blockerlab.errors import BlockerLabError, LimitExceeded
from oracles import brute_force_blocker, subsets

S3 = ["1", "2", "3"]


def fam(*sets):
    return {frozenset(str(x) for x in s) for s in sets}


def test_make_clutter_proper():
    c = make_clutter([1, 2, 3], [[1, 2], [2, 3]])
    assert c.kind is Kind.PROPER
    assert set(c.sets) == fam({1, 2}, {2, 3})
    assert str(c) == "{{1,2},{2,3}}"


def test_make_clutter_trivial_kinds():
    assert make_clutter([1, 2, 3], []).kind is Kind.EMPTY
    assert make_clutter([1, 2, 3], [[]]).kind is Kind.ZEROHAT


def test_make_clutter_rejects_sperner_violation():
    with pytest.raises(BlockerLabError, match=r"\{1\} is contained in \{1,2\}"):
        make_clutter([1, 2, 3], [[1], [1, 2]])


def test_make_clutter_rejects_empty_set_alongside_others():
    with pytest.raises(BlockerLabError, match="Sperner"):
        make_clutter([1, 2], [[], [1]])


def test_make_clutter_rejects_outside_element():
    with pytest.raises(BlockerLabError, match="outside the ground set"):
        make_clutter([1, 2], [[3]])


def test_canonical_order_and_numeric_labels():
    c = make_clutter([10, 9, 2], [[10, 9], [2]])
    assert c.ground.elements == ("2", "9", "10")
    assert str(c) == "{{2},{9,10}}"
    assert c == make_clutter(["2", "9", "10"], [["2"], ["9", "10"]])


def test_ground_set_rejects_duplicates():
    with pytest.raises(BlockerLabError):
        GroundSet.of([1, 1])


def test_blocker_example_matches_oracle():
    c = make_clutter(S3, [[1, 2], [2, 3]])
    expected = brute_force_blocker(S3, c.sets)
    assert expected == fam({2}, {1, 3})
    assert set(blocker(c).sets) == expected


def test_blocker_trivial_alternation():
    assert blocker(make_clutter(S3, [])).kind is Kind.ZEROHAT
    assert blocker(make_clutter(S3, [[]])).kind is Kind.EMPTY


def test_blocker_single_singleton():
    assert set(blocker(make_clutter([1, 2], [[1]])).sets) == fam({1})


def test_delete_examples():
    r = delete(make_clutter(S3, [[1, 2], [3]]), ["1"])
    assert set(r.sets) == fam({3}) and r.ground.elements == ("2", "3")
    r = delete(make_clutter(S3, [[1, 2], [2, 3]]), ["2"])
    assert r.kind is Kind.EMPTY and r.ground.elements == ("1", "3")
    r = delete(make_clutter(S3, [[]]), ["1"])
    assert r.kind is Kind.ZEROHAT and r.ground.elements == ("2", "3")


def test_contract_examples():
    r = contract(make_clutter(S3, [[1, 2], [2, 3]]), ["1"])
    assert set(r.sets) == fam({2}) and r.ground.elements == ("2", "3")
    r = contract(make_clutter([1, 2], [[1, 2]]), ["1", "2"])
    assert r.kind is Kind.ZEROHAT and r.ground.elements == ()
    assert contract(make_clutter(S3, []), ["2"]).kind is Kind.EMPTY


@pytest.mark.parametrize("op", [delete, contract])
def test_x_outside_ground_is_error(op):
    with pytest.raises(BlockerLabError, match="X has elements outside"):
        op(make_clutter(S3, [[1]]), ["4"])


def test_verify_involution_examples():
    rep = verify_involution(make_clutter(S3, [[1, 2], [2, 3]]))
    assert rep.passed and rep.details["blocker"] == "{{2},{1,3}}"
    assert verify_involution(make_clutter(S3, [])).passed


def test_verify_seymour_example():
    rep = verify_seymour(make_clutter(S3, [[1, 2], [2, 3]]), ["1"])
    assert rep.passed
    assert rep.details["deletion"] == ["{{2}}", "{{2}}"]
    assert verify_seymour(make_clutter(S3, [[]]), ["1"]).passed


def test_verify_seymour_reports_failure_on_corrupted_blocker(monkeypatch):
    import blockerlab.clutter as mod

    real = mod.blocker

    def off_by_one(c):
        b = real(c)
        # drop a member so the identities break
        if b.kind is Kind.PROPER and len(b.sets) > 1:
            return Clutter(b.ground, Kind.PROPER, b.sets[1:])
        return b

    monkeypatch.setattr(mod, "blocker", off_by_one)
    rep = mod.verify_seymour(make_clutter(S3, [[1, 2], [2, 3]]), ["1"])
    assert rep.failed and rep.witness["identity"] in ("deletion", "contraction")


@pytest.mark.parametrize("n,count", [(0, 2), (1, 3), (2, 6), (3, 20), (4, 168)])
def test_all_clutters_counts(n, count):
    cs = list(all_clutters(range(1, n + 1)))
    assert len(cs) == count
    assert len(set(cs)) == count


def test_all_clutters_limit():
    with pytest.raises(LimitExceeded):
        list(all_clutters(range(5)))


def test_exhaustive_involution_and_seymour_n3():
    cs = list(all_clutters(S3))
    assert all(verify_involution(c).passed for c in cs)
    assert all(verify_seymour(c, x).passed for c in cs for x in subsets(S3))


# -- property tests --------------------------------------------------------


@st.composite
def clutters(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    ground = [str(i) for i in range(n)]
    raw = draw(st.lists(st.sets(st.sampled_from(ground), min_size=1), min_size=1, max_size=8))
    return make_clutter(ground, minimal_sets(frozenset(s) for s in raw))


@st.composite
def clutter_and_x(draw):
    c = draw(clutters())
    x = draw(st.sets(st.sampled_from(c.ground.elements)))
    return c, x


@given(clutters())
def test_blocker_is_sperner_and_matches_oracle(c):
    b = blocker(c)
    assert is_sperner(b.members())
    assert set(b.members()) == brute_force_blocker(c.ground.elements, c.sets)


@given(clutters())
def test_involution_property(c):
    assert blocker(blocker(c)) == c


@given(clutter_and_x())
def test_seymour_property(cx):
    c, x = cx
    assert verify_seymour(c, x).passed


@given(clutter_and_x())
def test_delete_contract_sizes_and_sperner(cx):
    c, x = cx
    d, k = delete(c, x), contract(c, x)
    removed = {g - frozenset(x) for g in c.sets}
    assert len(d.sets) <= len(c.sets)
    assert len(k.members()) <= len(removed)
    assert is_sperner(d.members()) and is_sperner(k.members())


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_random_clutter_blocker_oracle_up_to_12(seed):
    rng = random.Random(seed)
    ground = [str(i) for i in range(rng.randint(1, 12))]
    c = random_clutter(ground, rng)
    assert set(blocker(c).members()) == brute_force_blocker(ground, c.sets)

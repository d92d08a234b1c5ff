import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from blockerlab.bridge import boolean_lattice
from blockerlab.generators import random_bounded_poset
from blockerlab.poset import make_poset


def diamond_poset():
    return make_poset(["0", "a", "b", "t"], [("0", "a"), ("0", "b"), ("a", "t"), ("b", "t")])


def chain3_poset():
    return make_poset(["0", "a", "t"], [("0", "a"), ("a", "t")])


def nonmonotone_poset():
    """Smallest poset found where contraction by an atom set is not monotone."""
    return make_poset(["0", "1", "4", "5", "7"], [("0", "1"), ("0", "4"), ("4", "5"), ("5", "7"), ("1", "7")])


@pytest.fixture
def diamond():
    return diamond_poset()


@pytest.fixture
def chain3():
    return chain3_poset()


@pytest.fixture
def b3():
    return boolean_lattice(["1", "2", "3"]).poset


def poset_suite(n_random=20, seed=0, max_size=8):
    rng = random.Random(seed)
    suite = [("diamond", diamond_poset()), ("chain3", chain3_poset()),
             ("B_3", boolean_lattice(["1", "2", "3"]).poset)]
    for k in range(n_random):
        suite.append((f"random-{k}", random_bounded_poset(rng.randint(2, max_size), rng)))
    return suite


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

import pathlib
from fractions import Fraction as F

import pytest

import omlprob as q

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"

# Seeds/kinds shared by the round-trip and property suites (200 instances).
INSTANCE_KINDS = (("mo", 2), ("mo", 3), ("boolean", 2), ("boolean", 3))
SEEDS = range(50)


@pytest.fixture(scope="session")
def mo2():
    return q.build_catalog("mo", 2)


@pytest.fixture(scope="session")
def mo2_ids(mo2):
    return {lab: mo2.id_of(lab) for lab in mo2.labels}


def two_blocks_table(L):
    """The worked 6-element conditional-state table (columns a, a', b, b', 1)."""
    i = L.id_of
    a, ap, b, bp = i("a"), i("a'"), i("b"), i("b'")
    cols = {
        a: {a: 1, ap: 0, b: F(1, 5), bp: F(4, 5)},
        ap: {a: 0, ap: 1, b: F(11, 30), bp: F(19, 30)},
        b: {a: F(2, 5), ap: F(3, 5), b: 1, bp: 0},
        bp: {a: F(2, 5), ap: F(3, 5), b: 0, bp: 1},
        L.one: {a: F(2, 5), ap: F(3, 5), b: F(3, 10), bp: F(7, 10)},
    }
    table = {}
    for c, col in cols.items():
        for x, v in col.items():
            table[(x, c)] = F(v)
        table[(L.zero, c)] = F(0)
        table[(L.one, c)] = F(1)
    return frozenset(cols), table


@pytest.fixture(scope="session")
def example_f(mo2):
    cs, table = two_blocks_table(mo2)
    return q.validate_conditional_state(mo2, cs, table)


@pytest.fixture(scope="session")
def example_smap(example_f):
    return q.conditional_to_smap(example_f)


@pytest.fixture(scope="session")
def instances():
    """200 seeded (lattice, conditional state, s-map) triples."""
    out = []
    for kind in INSTANCE_KINDS:
        L = q.build_catalog(*kind)
        for seed in SEEDS:
            f = q.random_conditional_state(L, seed)
            out.append((L, f, q.conditional_to_smap(f)))
    return out

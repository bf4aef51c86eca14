import random

import pytest
from hypothesis import given, settings, strategies as st

from lagrangian.biflats import (
    Biflat,
    as_bichain,
    bichains,
    biflat_poset,
    biflats_complex,
    conormal_complex,
    enumerate_biflats,
    gap_condition,
    hasse,
    is_biflag,
    is_mixed,
    is_uniform,
    non_biflags,
    parse_biflat,
    unmixed_complex,
    unmixed_join_isomorphism,
    unmixed_poset,
)
from lagrangian.matroid import AxiomError, parse_matroid, uniform

from conftest import FIXTURES, fixture_matroid, random_graphic
from test_matroid import dual_flats_oracle


def names(items):
    return {b.short() for b in items}


def brute_biflats(m):
    e = m.ground
    return {
        Biflat(f, g, m.n)
        for f in m.flats
        for g in dual_flats_oracle(m)
        if f and g and f | g == e and not (f == e and g == e)
    }


def chain(m, *texts):
    return [parse_biflat(t, m.n) for t in texts]


# ---------------------------------------------------------------- enumeration

def test_m_a_biflats(M_A):
    assert names(enumerate_biflats(M_A)) == {"12|E", "12|34", "3|E", "4|E", "E|1", "E|2", "E|34"}


def test_m_b_biflats(M_B):
    bs = names(enumerate_biflats(M_B))
    assert len(bs) == 16
    assert {"125|34", "345|12"} <= bs


def test_m_c_biflats(M_C):
    bs = names(enumerate_biflats(M_C))
    assert {"1234|3456", "456|123", "E|256"} <= bs


def test_uniform_biflats_are_unmixed():
    m = uniform(2, 4)
    bs = enumerate_biflats(m)
    assert not any(b.mixed for b in bs)
    assert len(bs) == 8


@pytest.mark.parametrize("name", FIXTURES)
def test_enumeration_against_brute_force(name):
    m = fixture_matroid(name)
    assert set(enumerate_biflats(m)) == brute_biflats(m)


def test_enumeration_sorted_by_label(M_C):
    bs = enumerate_biflats(M_C)
    assert [str(b) for b in bs] == sorted(str(b) for b in bs)


def test_coloops_rejected():
    m = parse_matroid("ground 2\nflat\nflat 1\nflat 2\nflat 1 2\n")
    with pytest.raises(AxiomError):
        enumerate_biflats(m)


def test_labels(M_A):
    b = parse_biflat("12|E", M_A.n)
    assert str(b) == "1,2|1,2,3,4"
    assert parse_biflat(str(b), M_A.n) == b
    with pytest.raises(ValueError):
        parse_biflat("12", M_A.n)


# ---------------------------------------------------------------- mixed / unmixed

def test_m_a_mixed(M_A):
    assert names(b for b in enumerate_biflats(M_A) if is_mixed(b)) == {"12|34"}


def test_m_c_mixed(M_C):
    mixed = names(b for b in enumerate_biflats(M_C) if b.mixed)
    assert mixed == {"12|3456", "1234|156", "1234|256", "1234|3456",
                     "125|3456", "126|3456", "456|123", "1234|56"}


def test_unmixed_complex_of_m_a(M_A):
    cx = unmixed_complex(M_A)
    assert cx.f_vector == (6, 9)
    tops = chain(M_A, "12|E", "3|E", "4|E")
    bots = chain(M_A, "E|1", "E|2", "E|34")
    assert all([t, b] in cx for t in tops for b in bots)


def test_uniform_biflats_equals_unmixed():
    m = uniform(2, 4)
    assert biflats_complex(m) == unmixed_complex(m) == conormal_complex(m)


@pytest.mark.parametrize("name, size", [("M_A", 6), ("U24", 8), ("M_C", 22)])
def test_unmixed_join_isomorphism(name, size):
    m = uniform(2, 4) if name == "U24" else fixture_matroid(name)
    phi = unmixed_join_isomorphism(m)
    assert len(phi) == size
    assert sum(v.startswith("M:") for v in phi.values()) == len(m.proper_flats)


def test_unmixed_poset_excludes_mixed(M_C):
    assert all(not b.mixed for b in unmixed_poset(M_C).elements)
    assert len(unmixed_poset(M_C)) == 22


# ---------------------------------------------------------------- poset structure

def test_m_c_not_ranked(M_C):
    covers = {(a.short(), b.short()) for a, b in hasse(M_C)}
    long = ["126|E", "126|3456", "E|3456", "E|56"]
    short = ["126|E", "E|256", "E|56"]
    for path in (long, short):
        assert all((a, b) in covers for a, b in zip(path, path[1:]))
    assert len(long) != len(short)


def test_order_is_inclusion_then_reverse_inclusion(M_A):
    a, b, c = chain(M_A, "12|E", "12|34", "E|34")
    assert a < b < c
    assert not c <= a
    x, y = chain(M_A, "3|E", "4|E")
    assert not x.comparable(y)


# ---------------------------------------------------------------- bichains and biflags

def test_m_a_non_biflag(M_A):
    assert not is_biflag(M_A, chain(M_A, "12|E", "E|34"))
    assert is_biflag(M_A, [])
    assert all(is_biflag(M_A, [b]) for b in enumerate_biflats(M_A))


def test_m_c_gap_witness(M_C):
    c = chain(M_C, "12|E", "1234|3456", "E|56")
    assert not gap_condition(M_C, c)
    assert not is_biflag(M_C, c)


def test_gap_condition_empty_chain(M_A):
    assert gap_condition(M_A, [])


def test_non_chain_rejected(M_A):
    with pytest.raises(ValueError):
        is_biflag(M_A, chain(M_A, "3|E", "4|E"))
    with pytest.raises(ValueError):
        as_bichain(chain(M_A, "3|E", "3|E"))


@pytest.mark.parametrize("name, count", [("M_A", 2), ("M_B", 16), ("M_C", 228)])
def test_non_biflag_counts(name, count):
    assert len(non_biflags(fixture_matroid(name))) == count


@pytest.mark.parametrize("name", FIXTURES + ("U24",))
def test_gap_condition_exhaustive(name):
    m = uniform(2, 4) if name == "U24" else fixture_matroid(name)
    for c in bichains(m):
        assert is_biflag(m, c) == gap_condition(m, c)


def test_conormal_of_m_a(M_A):
    cx = conormal_complex(M_A)
    assert cx.f_vector == (7, 10)
    assert chain(M_A, "12|E", "E|34") not in cx


def test_conormal_of_m_b(M_B):
    bad = [set(chain(M_B, "125|E", "E|34")), set(chain(M_B, "345|E", "E|12"))]
    cx = biflats_complex(M_B)
    kept = {f for f in cx.label_faces if not any(b <= f for b in bad)}
    assert conormal_complex(M_B).label_faces == kept


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_conormal_is_downward_closed_on_random_graphic(seed):
    m = random_graphic(random.Random(seed), max_edges=6)
    cx = conormal_complex(m)
    for f in cx.faces:
        assert is_biflag(m, cx.labels(f))


def test_gap_condition_random_bichains():
    rng = random.Random(7)
    checked = 0
    while checked < 10_000:
        m = random_graphic(rng, max_edges=7)
        faces = biflats_complex(m).sorted_faces()
        cx = biflats_complex(m)
        for _ in range(200):
            c = cx.labels(rng.choice(faces))
            assert is_biflag(m, c) == gap_condition(m, c)
            checked += 1


# ---------------------------------------------------------------- uniformity

@pytest.mark.parametrize("name, expected", [("U24", True), ("M_A", False), ("M_B", False), ("M_C", False)])
def test_is_uniform(name, expected):
    m = uniform(2, 4) if name == "U24" else fixture_matroid(name)
    assert is_uniform(m) is expected


def test_is_uniform_criteria_agree_on_random_graphic():
    rng = random.Random(11)
    for _ in range(60):
        is_uniform(random_graphic(rng, max_edges=6))

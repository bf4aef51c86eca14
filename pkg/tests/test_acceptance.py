"""Acceptance gate: one test per criterion, one PASS/FAIL line per criterion.

The lines are collected in ``RESULTS`` and printed in the terminal summary
(see ``conftest.pytest_terminal_summary``) so they show up in every run.
"""

import os
import random

import pytest

from lagrangian.biflats import (
    bichains,
    biflats_complex,
    conormal_complex,
    enumerate_biflats,
    gap_condition,
    hasse,
    is_biflag,
    non_biflags,
    parse_biflat,
    unmixed_complex,
)
from lagrangian.collapse import (
    FreenessViolation,
    apply_sequence,
    minimal_bichains,
    theorem1_sequence,
    theorem2_sequence,
    validate_pair,
)
from lagrangian.complexes import SimplicialComplex
from lagrangian.homology import betti_gf2
from lagrangian.matroid import uniform
from lagrangian.shelling import NOT_SHELLABLE, SHELLABLE, UNKNOWN, search_shelling, is_shellable, verify_shelling

from conftest import FIXTURES, fixture_matroid, random_graphic

RESULTS: dict[float, str] = {}

ALL = FIXTURES + ("U24",)


def load(name):
    return uniform(2, 4) if name == "U24" else fixture_matroid(name)


class Gate:
    """Collects named checks for one criterion and records a single line."""

    def __init__(self, number: float, title: str, tag: str | None = None):
        self.number = number
        self.title = title
        self.tag = tag or f"{number:>2}"
        self.failures: list[str] = []

    def check(self, ok: bool, what: str) -> None:
        if not ok:
            self.failures.append(what)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        status = "PASS" if not self.failures else "FAIL"
        line = f"[{status}] criterion {self.tag}: {self.title}"
        if self.failures:
            line += " -- " + "; ".join(self.failures)
        RESULTS[self.number] = line
        if exc is None and self.failures:
            pytest.fail(line)
        return False


def short(items):
    return {b.short() for b in items}


def padded(t, k):
    return tuple(t) + (0,) * (k - len(t))


def test_criterion_01_biflat_enumeration():
    with Gate(1, "biflat enumeration (M_A exact, M_B 16, M_C members)") as g:
        g.check(short(enumerate_biflats(load("M_A"))) == {"12|E", "12|34", "3|E", "4|E", "E|1", "E|2", "E|34"},
                "M_A biflat set")
        g.check(len(enumerate_biflats(load("M_B"))) == 16, "M_B count")
        g.check({"1234|3456", "456|123", "E|256"} <= short(enumerate_biflats(load("M_C"))), "M_C members")


def test_criterion_02_non_biflag_counts():
    with Gate(2, "non-biflag counts 2/16/228, minimal bichains 1/2/9") as g:
        for name, bad, minimal in (("M_A", 2, 1), ("M_B", 16, 2), ("M_C", 228, 9)):
            m = load(name)
            got_bad, got_min = len(non_biflags(m)), len(minimal_bichains(m))
            g.check(got_bad == bad, f"{name} non-biflags {got_bad} != {bad}")
            g.check(got_min == minimal, f"{name} minimal bichains {got_min} != {minimal}")


def _replay_each(cx, seq, g, name):
    """Apply pair by pair, validating freeness of each against the running complex."""
    cur = cx
    for i, p in enumerate(seq):
        if not validate_pair(cur, p):
            g.check(False, f"{name} pair {i} not free")
            return None
        cur = apply_sequence(cur, [p])
    return cur


def test_criterion_03_first_collapse_schedule():
    with Gate(3, "first schedule: biflats complex collapses onto unmixed complex") as g:
        for name in ALL:
            m = load(name)
            cx = biflats_complex(m)
            seq = theorem1_sequence(m)
            g.check(_replay_each(cx, seq, g, name) == unmixed_complex(m), f"{name} end state")
            g.check(apply_sequence(cx, seq) == unmixed_complex(m), f"{name} apply_sequence")
        g.check(len(theorem1_sequence(load("M_A"))) == 2, "M_A has 2 pairs")


def test_criterion_04_second_collapse_schedule():
    with Gate(4, "second schedule: biflats complex collapses onto conormal complex") as g:
        for name in ALL:
            m = load(name)
            cx = biflats_complex(m)
            seq = theorem2_sequence(m)
            g.check(_replay_each(cx, seq, g, name) == conormal_complex(m), f"{name} end state")
        g.check(len(theorem2_sequence(load("M_A"))) == 1, "M_A has 1 pair")
        m = load("M_B")
        a, b = minimal_bichains(m)
        for order in ([a, b], [b, a]):
            seq = theorem2_sequence(m, order=order)
            g.check(apply_sequence(biflats_complex(m), seq) == conormal_complex(m), "M_B extension")


def test_criterion_05_homotopy_invariants():
    with Gate(5, "GF(2) Betti numbers agree across the three complexes") as g:
        for name in ALL:
            m = load(name)
            bs = [betti_gf2(f(m)) for f in (biflats_complex, conormal_complex, unmixed_complex)]
            k = max(map(len, bs))
            g.check(len({padded(b, k) for b in bs}) == 1, f"{name} Betti {bs}")
        m = load("M_A")
        for f in (biflats_complex, conormal_complex, unmixed_complex):
            g.check(padded(betti_gf2(f(m)), 3) == (0, 4, 0), f"M_A {f.__name__} Betti != (0,4)")


def test_criterion_06_table_properties():
    with Gate(6, "property table (cardinality, purity, flagness) for M_B, M_C") as g:
        for name in ("M_B", "M_C"):
            m = load(name)
            bf, cn, um = biflats_complex(m), conormal_complex(m), unmixed_complex(m)
            g.check(bf.max_facet_cardinality() == m.n - 1, f"{name} biflats max cardinality")
            g.check(cn.max_facet_cardinality() == m.n - 2, f"{name} conormal max cardinality")
            g.check(um.max_facet_cardinality() == m.n - 2, f"{name} unmixed max cardinality")
            g.check(not bf.is_pure(), f"{name} biflats pure")
            g.check(cn.is_pure() and um.is_pure(), f"{name} conormal/unmixed not pure")
            g.check(bf.is_flag() and um.is_flag(), f"{name} biflats/unmixed not flag")
        m = load("M_A")
        sizes = {len(f) for f in biflats_complex(m).facet_labels()}
        g.check(sizes == {2, 3}, "M_A facets of different cardinalities")
        m = load("M_C")
        cn = conormal_complex(m)
        witness = frozenset(parse_biflat(s, m.n) for s in ("12|E", "1234|3456", "E|56"))
        g.check(not cn.is_flag(), "conormal(M_C) flag")
        g.check(witness in {frozenset(f) for f in cn.minimal_nonfaces()}, "conormal(M_C) witness")


def test_criterion_07_uniform_degeneracy():
    with Gate(7, "uniform(2,4): identical complexes, empty sequences") as g:
        m = uniform(2, 4)
        g.check(biflats_complex(m) == conormal_complex(m) == unmixed_complex(m), "complexes differ")
        g.check(len(theorem1_sequence(m)) == 0, "first sequence nonempty")
        g.check(len(theorem2_sequence(m)) == 0, "second sequence nonempty")


def test_criterion_08_gap_condition_equivalence():
    with Gate(8, "is_biflag <=> gap_condition (exhaustive + 10,000 random)") as g:
        total = 0
        for name in ALL:
            m = load(name)
            for c in bichains(m):
                total += 1
                if is_biflag(m, c) != gap_condition(m, c):
                    g.check(False, f"{name} disagreement on {c}")
        g.check(total >= 228, "too few fixture bichains")
        rng = random.Random(20240)
        sampled = 0
        while sampled < 10_000:
            m = random_graphic(rng, max_edges=7)
            cx = biflats_complex(m)
            faces = cx.sorted_faces()
            for _ in range(250):
                c = cx.labels(rng.choice(faces))
                sampled += 1
                if is_biflag(m, c) != gap_condition(m, c):
                    g.check(False, f"random disagreement on {c}")


def test_criterion_09_shellability():
    with Gate(9, "unmixed complexes shellable with replayed certificate; two-triangle control refuted") as g:
        for name in ALL:
            cx = unmixed_complex(load(name))
            cert = is_shellable(cx)
            g.check(cert.status == SHELLABLE, f"{name} unmixed {cert.describe()}")
            g.check(cert.order is not None and verify_shelling(cx, cert.order), f"{name} certificate replay")
        control = SimplicialComplex.from_facets([["a", "b", "c"], ["c", "d", "e"]])
        g.check(is_shellable(control).status == NOT_SHELLABLE, "control (with obstructions)")
        g.check(search_shelling(control).status == NOT_SHELLABLE, "control (search only)")


@pytest.mark.slow
@pytest.mark.skipif(os.environ.get("LAGRANGIAN_SLOW") != "1", reason="set LAGRANGIAN_SLOW=1 to run")
def test_criterion_09_optional_exhaustive_search():
    with Gate(9.5, "search-only verdict on the biflats complex of M_C", tag=" 9 (optional)") as g:
        cert = search_shelling(biflats_complex(load("M_C")))
        g.check(cert.status in (NOT_SHELLABLE, UNKNOWN), f"got {cert.describe()}")
        RESULTS[9.6] = f"       search-only verdict: {cert.describe()} after {cert.nodes} nodes"


def test_criterion_10_structure():
    with Gate(10, "M_C biflat poset not ranked; dual involution and rank identity") as g:
        m = load("M_C")
        covers = {(a.short(), b.short()) for a, b in hasse(m)}
        for path in (["126|E", "126|3456", "E|3456", "E|56"], ["126|E", "E|256", "E|56"]):
            g.check(all((a, b) in covers for a, b in zip(path, path[1:])), f"{path} not saturated")
        for name in ALL:
            m = load(name)
            g.check(m.dual().dual() == m, f"{name} dual involution")
            g.check(m.r + m.dual().r == m.n, f"{name} rank identity")
        rng = random.Random(99)
        for _ in range(100):
            m = random_graphic(rng, max_edges=7)
            g.check(m.dual().dual() == m and m.r + m.dual().r == m.n, "random graphic matroid")

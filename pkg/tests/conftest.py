from __future__ import annotations

import random
from importlib import resources

import pytest

from lagrangian.matroid import AxiomError, Matroid, from_graph, loads, uniform

FIXTURES = ("M_A", "M_B", "M_C")


def fixture_matroid(name: str) -> Matroid:
    text = (resources.files("lagrangian") / "data" / f"{name}.matroid").read_text()
    return loads(text, name)


def fixture_graph(name: str) -> Matroid:
    text = (resources.files("lagrangian") / "data" / f"{name}.graph").read_text()
    return loads(text, name)


def random_graph_edges(rng: random.Random, max_edges: int = 7, max_vertices: int = 5):
    """Random loop-free multigraph without bridges (so its cycle matroid is coloopless)."""
    while True:
        nv = rng.randint(2, max_vertices)
        ne = rng.randint(2, max_edges)
        edges = []
        for eid in range(1, ne + 1):
            u, v = rng.sample(range(nv), 2)
            edges.append((eid, f"v{u}", f"v{v}"))
        try:
            from_graph(edges)
        except AxiomError:
            continue
        return edges


def random_graphic(rng: random.Random, max_edges: int = 7, max_vertices: int = 5) -> Matroid:
    return from_graph(random_graph_edges(rng, max_edges, max_vertices))


@pytest.fixture(scope="session")
def M_A() -> Matroid:
    return fixture_matroid("M_A")


@pytest.fixture(scope="session")
def M_B() -> Matroid:
    return fixture_matroid("M_B")


@pytest.fixture(scope="session")
def M_C() -> Matroid:
    return fixture_matroid("M_C")


@pytest.fixture(scope="session")
def U24() -> Matroid:
    return uniform(2, 4)


@pytest.fixture(scope="session", params=FIXTURES + ("U24",))
def any_fixture(request) -> Matroid:
    if request.param == "U24":
        return uniform(2, 4)
    return fixture_matroid(request.param)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])

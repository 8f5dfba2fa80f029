from __future__ import annotations

import functools
import random

import networkx as nx
import pytest

from alphaspec.enumeration import connected_graphs
from alphaspec.graph import Graph, build, is_connected

ACCEPTANCE_LINES: list[str] = []


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(h.nodes())}
    return build(len(index), [(index[u], index[v]) for u, v in h.edges()])


def nx_independence(h: nx.Graph) -> int:
    if h.number_of_nodes() == 0:
        return 0
    return max(len(c) for c in nx.find_cliques(nx.complement(h)))


@functools.lru_cache(maxsize=None)
def connected_classes(n: int) -> tuple[Graph, ...]:
    return tuple(connected_graphs(n))


def random_connected(rng: random.Random, n: int, extra: float) -> Graph:
    """Random tree on n vertices plus each other pair with probability ``extra``."""
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < extra:
                edges.add((u, v))
    g = build(n, sorted(edges))
    assert is_connected(g)
    return g


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

from __future__ import annotations

import networkx as nx
import pytest

from conftest import connected_classes, from_nx, to_nx
from alphaspec.enumeration import (
    Graph6Error,
    decode_graph6,
    encode_graph6,
    read_graph6_file,
    trees,
    write_graph6_file,
    connected_graphs,
)
from alphaspec.families import complete
from alphaspec.graph import GraphError, build, is_connected, is_tree

TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159]
CONNECTED_COUNTS = [1, 1, 2, 6, 21, 112, 853]


@pytest.mark.parametrize("n", range(1, 13))
def test_tree_counts_and_shape(n):
    ts = list(trees(n))
    assert len(ts) == TREE_COUNTS[n - 1]
    assert all(is_tree(t) and t.n == n for t in ts)


def test_trees_pairwise_non_isomorphic():
    ts = [to_nx(t) for t in trees(9)]
    for i, a in enumerate(ts):
        for b in ts[i + 1:]:
            assert not nx.is_isomorphic(a, b)


def test_tree_order_caps():
    with pytest.raises(GraphError):
        next(trees(0))
    with pytest.raises(GraphError):
        next(trees(21))


@pytest.mark.parametrize("n", range(1, 8))
def test_connected_counts(n):
    assert len(connected_classes(n)) == CONNECTED_COUNTS[n - 1]


def test_connected_classes_match_atlas():
    # networkx's atlas lists every graph on up to 7 vertices
    for n in (4, 5, 6):
        atlas = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == n and nx.is_connected(h)]
        ours = [to_nx(g) for g in connected_classes(n)]
        assert len(atlas) == len(ours)
        for h in atlas:
            assert sum(nx.is_isomorphic(h, g) for g in ours) == 1


def test_known_graph6_strings():
    assert encode_graph6(build(1, [])) == "@"
    assert encode_graph6(complete(3)) == "Bw"
    assert decode_graph6("Bw") == complete(3)
    assert decode_graph6(">>graph6<<Bw") == complete(3)


def test_graph6_matches_networkx():
    for g in list(trees(10)) + list(connected_classes(5)):
        ours = encode_graph6(g)
        theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert ours == theirs
        assert from_nx(nx.from_graph6_bytes(ours.encode())).edge_count == g.edge_count


def test_graph6_round_trip_everything():
    for n in range(1, 15):
        for t in trees(n):
            assert decode_graph6(encode_graph6(t)) == t
    for n in range(1, 7):
        for g in connected_classes(n):
            assert decode_graph6(encode_graph6(g)) == g


@pytest.mark.parametrize(
    "text, msg",
    [("", "empty"), ("B x", "outside"), ("Bww", "expected 1 data bytes"), ("Bx", "padding"), ("?", "order 0")],
)
def test_graph6_errors(text, msg):
    with pytest.raises(Graph6Error, match=msg):
        decode_graph6(text)


def test_graph6_files(tmp_path):
    path = tmp_path / "g.g6"
    assert write_graph6_file(path, trees(6)) == 6
    assert list(read_graph6_file(path)) == list(trees(6))
    bad = tmp_path / "bad.g6"
    bad.write_text(">>graph6<<Bw\n\n>comment\nB!\nCs\n")
    with pytest.raises(Graph6Error, match="line 4"):
        list(read_graph6_file(bad))
    errors = []
    good = list(read_graph6_file(bad, on_error=errors.append))
    assert len(good) == 2 and len(errors) == 1 and errors[0].line == 4


def test_connected_from_corpus(tmp_path):
    path = tmp_path / "c.g6"
    write_graph6_file(path, list(connected_classes(4)) + [build(4, [(0, 1)])] + list(connected_classes(5)))
    got = list(connected_graphs(4, corpus=str(path)))
    assert len(got) == 6 and all(is_connected(g) for g in got)
    with pytest.raises(GraphError, match="corpus"):
        next(connected_graphs(10))

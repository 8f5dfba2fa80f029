from __future__ import annotations

import itertools
import json
import random

import networkx as nx
import pytest

from conftest import connected_classes, nx_independence, to_nx
from alphaspec.canon import canonical_form, isomorphic
from alphaspec.enumeration import decode_graph6, write_graph6_file
from alphaspec.extremal import (
    ClassKey,
    SearchError,
    alpha_sweep,
    class_members,
    crossover,
    extremize,
    is_double_broom,
    predicted_relation,
    s1,
    spider_arms,
    strip_timing,
    sweep_csv,
    threshold_roots,
    verify_theorem,
)
from alphaspec.families import complete, cycle, fst, g12, indjoin, path, star, tabc
from alphaspec.graph import build, independence_number, is_connected, subdivide_edge
from alphaspec.spectra import lam


def _brute_independence(g):
    for k in range(g.n, 0, -1):
        for sub in itertools.combinations(range(g.n), k):
            if all(not g.has_edge(u, v) for u, v in itertools.combinations(sub, 2)):
                return k
    return 0


# --------------------------------------------------------------------------
# class generation
# --------------------------------------------------------------------------


def test_class_key_validation():
    with pytest.raises(SearchError):
        ClassKey(5, 0)
    with pytest.raises(SearchError):
        ClassKey(5, 6)
    with pytest.raises(SearchError):
        ClassKey(5, 2, "forest")
    with pytest.raises(SearchError):
        ClassKey(5, 2, "corpus")
    with pytest.raises(SearchError):
        ClassKey(12, 3, "connected")  # n - i = 9, beyond every native route
    with pytest.raises(SearchError):
        ClassKey(21, 17, "trees")


def test_class_examples():
    assert [isomorphic(g, complete(5)) for g in class_members(ClassKey(5, 1))] == [True]
    six = class_members(ClassKey(6, 2))
    for s, t in ((3, 3), (2, 4), (1, 5)):
        assert sum(isomorphic(g, fst(s, t)) for g in six) == 1
    assert any(isomorphic(g, g12(1, 1, 1, 1)) for g in class_members(ClassKey(11, 7, "trees")))


def test_class_sizes_match_atlas():
    """Every connected graph on <= 7 vertices from networkx's atlas, bucketed by independence number."""
    for n in range(1, 8):
        sizes: dict[int, int] = {}
        for h in nx.graph_atlas_g():
            if h.number_of_nodes() == n and nx.is_connected(h):
                i = nx_independence(h)
                sizes[i] = sizes.get(i, 0) + 1
        for i, count in sizes.items():
            key = ClassKey(n, i)
            if key._cover_ok() or n <= 9:
                assert len(class_members(key)) == count, (n, i)


def test_cover_route_matches_native_at_order_8():
    native = [g for g in connected_classes(8) if _brute_independence(g) == 4]
    cover = class_members(ClassKey(8, 4))
    assert len(cover) == len(native) == 4308
    assert sorted(canonical_form(g) for g in cover) == sorted(canonical_form(g) for g in native)


def test_tree_class_sizes():
    for n in (8, 11, 12):
        for i in range(1, n):
            want = sum(1 for t in __import__("alphaspec.enumeration", fromlist=["trees"]).trees(n)
                       if nx_independence(to_nx(t)) == i)
            assert len(class_members(ClassKey(n, i, "trees"))) == want


def test_corpus_scope_and_sampling(tmp_path):
    path_ = tmp_path / "c.g6"
    write_graph6_file(path_, connected_classes(6))
    key = ClassKey(6, 2, "corpus", str(path_))
    full = class_members(key)
    assert len(full) == 34
    a = class_members(key, sample=10, seed=3)
    b = class_members(key, sample=10, seed=3)
    assert len(a) == 10 and a == b


# --------------------------------------------------------------------------
# search
# --------------------------------------------------------------------------


@pytest.mark.parametrize(
    "n, i, scope, alpha, expected",
    [(7, 3, "connected", "0", cycle(7)), (9, 5, "connected", "1/2", path(9)), (10, 6, "trees", "1/2", tabc(1, 1, 7))],
)
def test_documented_minimisers(n, i, scope, alpha, expected):
    cert = extremize(ClassKey(n, i, scope), alpha, "min")
    assert len(cert.winners) == 1
    assert isomorphic(decode_graph6(cert.winners[0].canonical), expected)


def test_certificate_invariants():
    key = ClassKey(7, 3)
    members = class_members(key)
    for direction in ("min", "max"):
        cert = extremize(key, "3/4", direction, members=members)
        assert cert.evaluated_count == len(members) == 524
        for w in cert.winners:
            g = decode_graph6(w.canonical)
            assert abs(w.lam - cert.optimum) <= 1e-9
            assert independence_number(g).size == 3 and is_connected(g)
        assert [w.canonical for w in cert.winners] == sorted(w.canonical for w in cert.winners)
        assert cert.margin is not None and cert.margin > 1e-9
    with pytest.raises(SearchError):
        extremize(key, 0.5, members=[])
    with pytest.raises(ValueError):
        extremize(key, 0.5, direction="best", members=members)


def test_ties_are_all_reported():
    # the two leaves of a star are interchangeable, so a class of two
    # relabelled copies has a genuine tie
    g = star(5)
    cert = extremize(ClassKey(5, 4, "trees"), 0.5, members=[g, g])
    assert len(cert.winners) == 2 and cert.runner_up is None


def test_parallel_and_serial_agree():
    key = ClassKey(7, 3)
    members = class_members(key)
    c1 = extremize(key, "1/2", "max", workers=1, members=members)
    c2 = extremize(key, "1/2", "max", workers=2, members=members)
    assert c1 == c2


def test_lemma_join_bound_random_members():
    rng = random.Random(7)
    checked = 0
    for n in (7, 8, 9):
        for i in (n - 4, n - 3):
            members = class_members(ClassKey(n, i))
            top = indjoin(i, n)
            for g in rng.sample(members, min(len(members), 9)):
                for a in (0.0, 0.5, 0.9):
                    gap = lam(top, a) - lam(g, a)
                    assert gap > 1e-10 or isomorphic(g, top)
                checked += 1
    assert checked >= 50


@pytest.mark.parametrize("alpha", ["0", "1/2"])
def test_small_order_minimiser_statements(alpha):
    """Complete graph, path/cycle, spider and star minimisers for small orders."""
    for n in range(5, 9):
        expect = {1: complete(n), n - 1: star(n), (n + 1) // 2: path(n)}
        expect[n // 2] = path(n) if n % 2 == 0 else cycle(n)
        for i, want in expect.items():
            cert = extremize(ClassKey(n, i), alpha, members=[g for g in connected_classes(n) if _brute_independence(g) == i])
            assert len(cert.winners) == 1 and isomorphic(decode_graph6(cert.winners[0].canonical), want), (n, i)
    for n, i, want in ((9, 5, path(9)), (9, 8, star(9)), (10, 9, star(10)), (10, 6, tabc(1, 1, 7))):
        scope = "trees" if n == 10 and i == 6 else "connected"
        cert = extremize(ClassKey(n, i, scope), alpha)
        assert len(cert.winners) == 1 and isomorphic(decode_graph6(cert.winners[0].canonical), want)


# --------------------------------------------------------------------------
# sweeps, crossovers, roots
# --------------------------------------------------------------------------


def test_sweep_examples():
    rows = alpha_sweep([("cycle:5", cycle(5))], ["0", "0.5", "0.9"])
    assert [r[2] for r in rows] == pytest.approx([2, 2, 2], abs=1e-12)
    rows = alpha_sweep([("complete:4", complete(4))], ["0", "0.7"])
    assert [r[2] for r in rows] == pytest.approx([3, 3], abs=1e-12)
    csv = sweep_csv(alpha_sweep([("fst:3,3", fst(3, 3))], ["1/2"]))
    lines = csv.splitlines()
    assert lines[0] == "family,alpha,lambda,residual"
    assert lines[1].startswith("fst:3,3,1/2,2.5")


def test_crossovers():
    assert crossover(fst(3, 3), fst(2, 4), 0, "7/9") is None
    # K3 is 2-regular, so its lambda equals that of C5 for every alpha: no sign change
    assert crossover(complete(3), cycle(5), 0, 0.9) is None
    assert crossover(complete(4), cycle(5), 0, 0.9) is None
    x = crossover(fst(3, 3), fst(2, 4), 0, "0.999")
    if x is not None:  # reported, no expected value
        assert 7 / 9 < x < 0.999
    with pytest.raises(ValueError):
        crossover(path(3), path(4), 0.5, 0.5)


def test_crossover_locates_known_root():
    # T_{1,2,2} crosses the constant-2 cycle exactly at s2
    x = crossover(tabc(1, 2, 2), cycle(6), 0.1, 0.5)
    assert x is not None and abs(x - threshold_roots()["s2"].root) < 1e-8


def test_threshold_roots():
    roots = threshold_roots(n=4)
    assert roots["s1"].root == pytest.approx(0.5, abs=1e-15)
    for name, want in (("s2", 0.2192), ("s3", 0.1206), ("s4", 0.0517)):
        r = roots[name]
        assert abs(r.root - want) <= 1e-3
        assert r.residual <= 1e-12 and r.bracket[0] < r.root < r.bracket[1]
    with pytest.raises(ValueError):
        s1(3)


def test_spider_and_broom_recognition():
    assert spider_arms(tabc(1, 2, 5)) == (1, 2, 5)
    assert spider_arms(star(5)) == (1, 1, 1, 1)
    assert spider_arms(path(5)) is None
    broom = build(7, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6)])
    assert is_double_broom(broom) and not is_double_broom(tabc(1, 2, 2))
    roots = {k: v.root for k, v in threshold_roots().items()} | {"s1": s1(7)}
    assert predicted_relation(broom, 0.0, roots) == "skip"
    assert predicted_relation(tabc(1, 1, 4), 0.1, roots) == "<"
    assert predicted_relation(tabc(1, 3, 3), 0.0, roots) == "="


def test_double_broom_keeps_lambda_two_when_subdivided():
    """At alpha = 0 subdividing the internal path of a double broom leaves lambda = 2."""
    broom = build(6, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)])
    longer = subdivide_edge(broom, 0, 3)
    assert lam(broom, 0) == pytest.approx(2, abs=1e-12)
    assert lam(longer, 0) == pytest.approx(2, abs=1e-12)
    assert lam(longer, 0.3) < lam(broom, 0.3) - 1e-10


# --------------------------------------------------------------------------
# drivers
# --------------------------------------------------------------------------


def test_driver_statuses_small():
    assert verify_theorem("max-3.2", n=[6, 7]).status == "PASS"
    assert verify_theorem("small-n-3.4", n=[5, 6, 7]).status == "PASS"
    assert verify_theorem("main-3.9", n=[11, 13]).status == "PASS"
    assert verify_theorem("classify-2.10", n=[4, 5, 6, 7]).status == "PASS"
    assert verify_theorem("delta-gap-3.6", n=[11]).status == "PASS"
    assert verify_theorem("evec-3.7", n=[11, 12]).status == "PASS"
    assert verify_theorem("quotient-3.8").status == "FINDINGS"
    with pytest.raises(SearchError):
        verify_theorem("nope")
    with pytest.raises(SearchError):
        verify_theorem("small-n-3.4", n=[11])


def test_main_driver_listing():
    rep = verify_theorem("main-3.9", n=[13], alphas=["1/2", "3/5", "3/4", "9/10"])
    winners = {w["family_match"] for row in rep.per_alpha for w in row["winners"]}
    assert winners <= {"g12:2,1,1,2", "g13:2,0,2,2"}
    assert rep.extra["listed"]["13"]["listed"] == ["g12:2,1,1,2", "g13:2,0,2,2"]
    assert rep.extra["g13_shape"].startswith("reconstructed")


def test_order_14_near_tie_is_resolved_at_high_precision():
    """At alpha = 9/10 the two order-14 candidates differ by ~2.6e-12, under the tie tolerance."""
    import mpmath as mp

    def lam_mp(g, a):
        m = mp.matrix(g.n, g.n)
        for u in range(g.n):
            m[u, u] = a * g.degree(u)
        for u, v in g.edges():
            m[u, v] = m[v, u] = 1 - a
        return max(mp.eigsy(m, eigvals_only=True))

    mp.mp.dps = 50
    a = mp.mpf(9) / 10
    gap = lam_mp(g12(3, 1, 1, 2), a) - lam_mp(g12(3, 1, 0, 3), a)
    assert 1e-12 < gap < 1e-11
    rep = verify_theorem("main-3.9", n=[14], alphas=["9/10"])
    assert rep.status == "PASS"
    assert rep.extra["ties"] == [{"n": 14, "alpha": "9/10", "winners": ["g12:3,1,0,3", "g12:3,1,1,2"]}]


def test_small_n6_outside_stated_range_is_a_finding():
    rep = verify_theorem("small-n-3.4", n=[6], alphas=["0.9"])
    assert rep.status in ("FINDINGS", "FAIL")
    assert any("outside the stated range" in f for f in rep.findings)


def test_report_json_and_timing_strip():
    rep = verify_theorem("max-3.2", n=[6], alphas=["1/2"])
    d = json.loads(rep.to_json())
    assert set(d) >= {"theorem", "params", "alpha_grid", "status", "per_alpha", "findings", "config", "runtime"}
    row = d["per_alpha"][0]
    assert set(row) >= {"alpha", "winners", "class_size", "wall_time"}
    assert set(row["winners"][0]) == {"canonical", "family_match", "lambda"}
    assert "wall_time" not in json.dumps(strip_timing(d))
    assert json.loads(rep.to_json(timing=False)) == strip_timing(d)

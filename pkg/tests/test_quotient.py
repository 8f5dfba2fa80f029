from __future__ import annotations

import math

import numpy as np
import pytest
import sympy as sp

from conftest import random_connected
from test_poly import sx, to_sympy
from alphaspec.families import fst, g12, indjoin, path
from alphaspec.poly import ALPHA, K
from alphaspec.quotient import (
    QuotientError,
    balanced_g12_quotient,
    charpoly_exact,
    compare_g12_quotients,
    degree_partition,
    det_exact,
    g12_cells,
    is_equitable,
    make_partition,
    printed_balanced_charpoly,
    printed_charpoly_difference,
    printed_shifted_charpoly,
    quotient_matrix,
    quotient_radius,
    refine_to_equitable,
    shifted_g12_quotient,
    symbolic_quotient_matrix,
)
from alphaspec.spectra import lam


def test_partition_validation():
    g = path(4)
    with pytest.raises(QuotientError, match="empty"):
        make_partition(g, [[0, 1], [], [2, 3]])
    with pytest.raises(QuotientError, match="repeated"):
        make_partition(g, [[0, 1], [1, 2, 3]])
    with pytest.raises(QuotientError, match="cover"):
        make_partition(g, [[0, 1], [2]])
    with pytest.raises(QuotientError, match="not equitable"):
        quotient_matrix(g, [[0, 1, 2, 3]], 0.5)


def test_indjoin_two_cell_quotient():
    g = indjoin(4, 8)
    cells = [range(4), range(4, 8)]
    assert is_equitable(g, cells)
    b = quotient_matrix(g, cells, 0)
    assert np.allclose(b, [[0, 4], [4, 3]])  # charpoly x^2 - 3x - 16
    assert quotient_radius(b) == pytest.approx((3 + math.sqrt(73)) / 2, abs=1e-12)


def test_fst_quotient_half():
    g = fst(3, 3)
    cells = [[0, 3], [1, 2, 4, 5]]
    assert is_equitable(g, cells)
    assert quotient_radius(quotient_matrix(g, cells, 0.5)) == pytest.approx(2.5, abs=1e-12)


def _is_coarsest(g, part):
    # every vertex in a cell has the same counts, and merging any two cells breaks that
    if not is_equitable(g, part):
        return False
    for i in range(len(part)):
        for j in range(i + 1, len(part)):
            merged = [c for k, c in enumerate(part) if k not in (i, j)] + [part[i] + part[j]]
            if is_equitable(g, merged):
                return False
    return True


def test_refinement_is_equitable_and_coarsest(rng):
    for _ in range(40):
        g = random_connected(rng, rng.randint(2, 10), 0.25)
        part = refine_to_equitable(g)
        assert _is_coarsest(g, part)
        seeded = refine_to_equitable(g, degree_partition(g))
        assert is_equitable(g, seeded)


def test_quotient_radius_equals_full(rng):
    for _ in range(60):
        g = random_connected(rng, rng.randint(2, 12), 0.3)
        a = rng.random() * 0.99
        part = refine_to_equitable(g)
        assert abs(quotient_radius(quotient_matrix(g, part, a)) - lam(g, a)) <= 1e-10


def test_symbolic_quotient_matches_numeric(rng):
    g = g12(2, 2, 2, 2)
    cells = g12_cells((2, 2, 2, 2))
    sym = symbolic_quotient_matrix(g, cells)
    num = quotient_matrix(g, cells, 0.3)
    assert np.allclose([[float(e(alpha=0.3)) for e in row] for row in sym], num)


def test_charpoly_matches_sympy(rng):
    for _ in range(15):
        t = rng.randint(1, 6)
        ints = [[rng.randint(-4, 4) for _ in range(t)] for _ in range(t)]
        mixed = [[e * ALPHA + rng.randint(0, 2) * K for e in row] for row in ints]
        want = sp.Matrix([[to_sympy(e) for e in row] for row in mixed]).charpoly(sx).as_expr()
        assert sp.expand(to_sympy(charpoly_exact(mixed)) - want) == 0
        assert sp.expand(to_sympy(det_exact(ints)) - sp.Matrix(ints).det()) == 0
    with pytest.raises(QuotientError):
        charpoly_exact([[0] * 9 for _ in range(9)])


def test_g12_quotients_charpolys_with_sympy():
    for make_q in (balanced_g12_quotient, shifted_g12_quotient):
        q = make_q()
        want = sp.Matrix([[to_sympy(e) for e in row] for row in q]).charpoly(sx).as_expr()
        assert sp.expand(to_sympy(charpoly_exact(q)) - want) == 0


def test_published_text_relations():
    """Which published polynomial belongs to which matrix, checked independently of our charpoly."""
    bal = sp.Matrix([[to_sympy(e) for e in row] for row in balanced_g12_quotient()]).charpoly(sx).as_expr()
    sh = sp.Matrix([[to_sympy(e) for e in row] for row in shifted_g12_quotient()]).charpoly(sx).as_expr()
    p1, p2, pd = (to_sympy(p) for p in (printed_balanced_charpoly(), printed_shifted_charpoly(), printed_charpoly_difference()))
    assert sp.expand(bal - p2) == 0 and sp.expand(sh - p1) == 0
    assert sp.expand(bal - sh - pd) == 0
    assert sp.expand(p1 - p2 + pd) == 0


def test_compare_report():
    rep = compare_g12_quotients(ks=(2, 3), alphas=("1/2", "9/10"))
    assert rep["status"] == "FINDINGS"
    assert rep["symbolic"]["balanced_matches_printed_shifted"]
    assert rep["symbolic"]["shifted_matches_printed_balanced"]
    assert rep["symbolic"]["difference_vs_printed"] == []
    assert all(r["gap"] > 1e-10 for r in rep["numeric"])
    assert all(r["error"] <= 1e-10 for r in rep["quotient_agreement"])
    assert not rep["failures"]

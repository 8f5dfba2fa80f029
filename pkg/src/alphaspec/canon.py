"""Canonical forms under isomorphism.

Trees get an AHU encoding rooted at the centre. Everything else goes through
colour refinement plus individualisation, keeping the lexicographically
smallest adjacency string over the search leaves. Interchangeable twin
vertices are branched on once, which keeps joins like ``K_i^c v K_j`` cheap.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .graph import Graph, GraphError, _bits, is_tree

GENERAL_CAP = 12

TREE_AHU = "tree-AHU"
REFINEMENT = "refinement-backtrack"


@dataclass(frozen=True, order=True)
class CanonicalForm:
    method: str
    code: bytes

    def hex(self) -> str:
        return self.code.hex()


# --------------------------------------------------------------------------
# trees
# --------------------------------------------------------------------------


def tree_centers(g: Graph) -> list[int]:
    if g.n <= 2:
        return list(range(g.n))
    deg = g.degrees()
    layer = [v for v in range(g.n) if deg[v] == 1]
    left = g.n
    while left > 2:
        left -= len(layer)
        nxt = []
        for leaf in layer:
            for w in _bits(g.adj[leaf]):
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _rooted_ahu(g: Graph, root: int) -> tuple[str, list[int]]:
    """AHU string of ``g`` rooted at ``root`` and the matching preorder."""

    def walk(v: int, parent: int) -> tuple[str, list[int]]:
        kids = [walk(w, v) for w in _bits(g.adj[v]) if w != parent]
        kids.sort(key=lambda t: t[0])
        order = [v]
        for _, sub in kids:
            order.extend(sub)
        return "(" + "".join(code for code, _ in kids) + ")", order

    return walk(root, -1)


def _tree_canon(g: Graph) -> tuple[str, list[int]]:
    return min(_rooted_ahu(g, c) for c in tree_centers(g))


# --------------------------------------------------------------------------
# general graphs
# --------------------------------------------------------------------------


def _refine(adj: Sequence[int], colors: list[int]) -> list[int]:
    """Coarsest equitable refinement; colour ids are isomorphism-invariant ranks."""
    ncol = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in _bits(row)))) for v, row in enumerate(adj)]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == ncol:
            return new
        colors, ncol = new, len(rank)


def _leaf_bits(adj: Sequence[int], order: Sequence[int]) -> int:
    bits = 0
    n = len(order)
    for j in range(1, n):
        row = adj[order[j]]
        for i in range(j):
            bits = (bits << 1) | (row >> order[i] & 1)
    return bits


def _are_twins(adj: Sequence[int], u: int, v: int) -> bool:
    return adj[u] & ~(1 << v) == adj[v] & ~(1 << u)


def _search_canon(adj: Sequence[int], colors: list[int]) -> list[int]:
    n = len(adj)
    best: list = [None, None]  # bits, order

    def visit(colors: list[int]) -> None:
        colors = _refine(adj, colors)
        if len(set(colors)) == n:
            order = [0] * n
            for v, c in enumerate(colors):
                order[c] = v
            bits = _leaf_bits(adj, order)
            if best[0] is None or bits < best[0]:
                best[0], best[1] = bits, order
            return
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = min((len(vs), c) for c, vs in cells.items() if len(vs) > 1)[1]
        tried: list[int] = []
        for v in cells[target]:
            if any(_are_twins(adj, u, v) for u in tried):
                continue
            tried.append(v)
            branch = [2 * c for c in colors]
            branch[v] -= 1
            visit(branch)

    ranks = {c: i for i, c in enumerate(sorted(set(colors)))}
    visit([ranks[c] for c in colors])
    return best[1]


def canonical_order(g: Graph, colors: Optional[Sequence[int]] = None) -> list[int]:
    """Vertices listed in canonical position order.

    ``colors`` is an optional vertex colouring the isomorphism must preserve.
    Trees without a colouring use the AHU preorder; anything else the
    refinement search, capped at ``GENERAL_CAP`` vertices.
    """
    if colors is None and is_tree(g):
        return _tree_canon(g)[1]
    if g.n > GENERAL_CAP:
        raise GraphError(f"general canonical form capped at n={GENERAL_CAP}, got {g.n}")
    return _search_canon(g.adj, list(colors) if colors is not None else [0] * g.n)


def canonical_form(g: Graph, method: Optional[str] = None) -> CanonicalForm:
    """Exact isomorphism-complete code for ``g``.

    With ``method=None`` trees use AHU and other graphs the refinement search,
    so codes are comparable between any two graphs passed the same way.
    """
    if method is None:
        method = TREE_AHU if is_tree(g) else REFINEMENT
    if method == TREE_AHU:
        if not is_tree(g):
            raise GraphError("tree-AHU canonical form requires a tree")
        return CanonicalForm(TREE_AHU, _tree_canon(g)[0].encode())
    if method != REFINEMENT:
        raise GraphError(f"unknown canonical method {method!r}")
    if g.n > GENERAL_CAP:
        raise GraphError(f"general canonical form capped at n={GENERAL_CAP}, got {g.n}")
    order = _search_canon(g.adj, [0] * g.n)
    return CanonicalForm(REFINEMENT, bytes([g.n]) + _leaf_bits(g.adj, order).to_bytes(g.n * g.n // 8 + 1, "big"))


def canonical_relabel(g: Graph) -> Graph:
    """Copy of ``g`` with vertices renumbered into canonical positions."""
    from .graph import relabel

    order = canonical_order(g)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return relabel(g, perm)


def canonical_graph6(g: Graph) -> str:
    """graph6 text of the canonical relabelling; equal iff isomorphic."""
    from .enumeration import encode_graph6

    return encode_graph6(canonical_relabel(g))


def isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1) == canonical_form(g2)


def are_similar(g: Graph, u: int, v: int) -> bool:
    """True iff some automorphism of ``g`` sends ``u`` to ``v``.

    Trees of any order are decided by comparing rooted AHU codes; other
    graphs compare refinement codes with ``u`` (resp. ``v``) marked, which
    caps them at ``GENERAL_CAP`` vertices.
    """
    if u == v:
        return True
    if g.degree(u) != g.degree(v):
        return False
    if is_tree(g):
        return _rooted_ahu(g, u)[0] == _rooted_ahu(g, v)[0]
    if g.n > GENERAL_CAP:
        raise GraphError(f"similarity test capped at n={GENERAL_CAP}, got {g.n}")

    def marked(x: int) -> int:
        colors = [1] * g.n
        colors[x] = 0
        order = _search_canon(g.adj, colors)
        return _leaf_bits(g.adj, order)

    return marked(u) == marked(v)

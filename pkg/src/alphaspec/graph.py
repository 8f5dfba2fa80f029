"""Immutable simple graphs on bitset adjacency rows, plus the transforms and
invariants the extremal searches quantify over."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 64


class GraphError(ValueError):
    """Rejected graph construction or transform."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``adj[v]`` is the neighbour bitset of ``v``.

    Instances are hashable and never mutated; every transform returns a new
    graph. Use :func:`build` rather than the constructor unless ``adj`` is
    already known to be symmetric and loop-free.
    """

    n: int
    adj: tuple[int, ...]
    edge_count: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_ORDER:
            raise GraphError(f"order {self.n} outside 1..{MAX_ORDER}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match order")

    def degree(self, v: int) -> int:
        return _popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [_popcount(row) for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _from_adj(adj: Sequence[int]) -> Graph:
    adj = tuple(adj)
    return Graph(len(adj), adj, sum(_popcount(r) for r in adj) // 2)


def build(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on vertices ``0..n-1`` from an edge list.

    Raises :class:`GraphError` naming the offending pair on loops, repeated
    edges or out-of-range endpoints.
    """
    if not 1 <= n <= MAX_ORDER:
        raise GraphError(f"order {n} outside 1..{MAX_ORDER}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {(u, v)} has endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"loop at {(u, v)}")
        if adj[u] >> v & 1:
            raise GraphError(f"duplicate edge {(u, v)}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return _from_adj(adj)


def empty(n: int) -> Graph:
    return build(n, [])


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return _from_adj([(full ^ row) & ~(1 << v) for v, row in enumerate(g.adj)])


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every cross edge; ``g1`` keeps labels ``0..n1-1``."""
    n1, n = g1.n, g1.n + g2.n
    if n > MAX_ORDER:
        raise GraphError(f"join order {n} exceeds {MAX_ORDER}")
    low = (1 << n1) - 1
    high = ((1 << g2.n) - 1) << n1
    adj = [row | high for row in g1.adj] + [(row << n1) | low for row in g2.adj]
    return _from_adj(adj)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    n1, n = g1.n, g1.n + g2.n
    if n > MAX_ORDER:
        raise GraphError(f"union order {n} exceeds {MAX_ORDER}")
    return _from_adj(list(g1.adj) + [row << n1 for row in g2.adj])


def add_edge(g: Graph, u: int, v: int) -> Graph:
    if u == v or g.has_edge(u, v):
        raise GraphError(f"cannot add edge {(u, v)}")
    adj = list(g.adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return _from_adj(adj)


def remove_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise GraphError(f"edge {(u, v)} not present")
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return _from_adj(adj)


def remove_vertex(g: Graph, v: int) -> Graph:
    """Delete ``v``; vertices above ``v`` shift down by one."""
    if g.n == 1:
        raise GraphError("cannot delete the only vertex")
    low = (1 << v) - 1
    adj = []
    for w, row in enumerate(g.adj):
        if w != v:
            adj.append((row & low) | ((row >> (v + 1)) << v))
    return _from_adj(adj)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Image of ``g`` under the vertex map ``v -> perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError("relabelling is not a permutation")
    adj = [0] * g.n
    for v, row in enumerate(g.adj):
        img = 0
        for w in _bits(row):
            img |= 1 << perm[w]
        adj[perm[v]] = img
    return _from_adj(adj)


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    index = {v: i for i, v in enumerate(vertices)}
    adj = []
    for v in vertices:
        row = 0
        for w in _bits(g.adj[v]):
            if w in index:
                row |= 1 << index[w]
        adj.append(row)
    return _from_adj(adj)


def subdivide_edge(g: Graph, u: int, v: int) -> Graph:
    """Replace ``uv`` by the path ``u w v`` with the new vertex ``w = n``."""
    if not g.has_edge(u, v):
        raise GraphError(f"edge {(u, v)} not present")
    if g.n + 1 > MAX_ORDER:
        raise GraphError("subdivision exceeds order cap")
    w = g.n
    adj = list(g.adj) + [(1 << u) | (1 << v)]
    adj[u] = (adj[u] & ~(1 << v)) | (1 << w)
    adj[v] = (adj[v] & ~(1 << u)) | (1 << w)
    return _from_adj(adj)


def rewire(g: Graph, u: int, v: int, ys: Iterable[int]) -> Graph:
    """Move the edges ``{uy : y in ys}`` to ``{vy : y in ys}``.

    Requires ``ys`` nonempty and inside ``N(u) \\ (N(v) | {v})``.
    """
    ys = list(ys)
    if not ys:
        raise GraphError("rewire needs a nonempty vertex set")
    allowed = g.adj[u] & ~g.adj[v] & ~(1 << v)
    for y in ys:
        if not (0 <= y < g.n) or not allowed >> y & 1:
            raise GraphError(f"vertex {y} is not in N({u}) minus N[{v}]")
    adj = list(g.adj)
    for y in ys:
        adj[u] &= ~(1 << y)
        adj[y] = (adj[y] & ~(1 << u)) | (1 << v)
        adj[v] |= 1 << y
    return _from_adj(adj)


def attach_pendants(g: Graph, v: int, s: int) -> Graph:
    """Hang ``s`` new leaves (labels ``n..n+s-1``) on ``v``."""
    if s < 0:
        raise GraphError("negative pendant count")
    if g.n + s > MAX_ORDER:
        raise GraphError(f"order {g.n + s} exceeds {MAX_ORDER}")
    adj = list(g.adj)
    for i in range(s):
        w = g.n + i
        adj.append(1 << v)
        adj[v] |= 1 << w
    return _from_adj(adj)


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


def components(g: Graph) -> list[list[int]]:
    left = (1 << g.n) - 1
    out = []
    while left:
        start = left & -left
        seen = frontier = start
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        out.append(list(_bits(seen)))
        left &= ~seen
    return out


def is_tree(g: Graph) -> bool:
    return g.edge_count == g.n - 1 and is_connected(g)


def degree_sequence(g: Graph) -> list[int]:
    return sorted(g.degrees())


def max_degree(g: Graph) -> int:
    return max(g.degrees())


def min_degree(g: Graph) -> int:
    return min(g.degrees())


def is_regular(g: Graph) -> bool:
    return len(set(g.degrees())) == 1


def internal_paths(g: Graph) -> list[list[int]]:
    """Maximal paths whose ends have degree >= 3 and whose interior is degree 2.

    Each path is listed once, oriented to start at its smaller endpoint, and
    the list is sorted. A degree-2 cycle returning to its own major vertex is
    not a path and is skipped.
    """
    deg = g.degrees()
    found = set()
    for a in range(g.n):
        if deg[a] < 3:
            continue
        for nb in _bits(g.adj[a]):
            path = [a]
            prev, cur = a, nb
            while deg[cur] == 2 and cur != a:
                path.append(cur)
                prev, cur = cur, (g.adj[cur] & ~(1 << prev)).bit_length() - 1
            if cur == a or deg[cur] < 3:
                continue
            path.append(cur)
            if path[-1] < path[0]:
                path.reverse()
            found.add(tuple(path))
    return sorted(list(p) for p in found)


# --------------------------------------------------------------------------
# independence number
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class IndependenceCertificate:
    size: int
    witness: int  # bitset of one maximum independent set

    def vertices(self) -> list[int]:
        return list(_bits(self.witness))


def _clique_cover_bound(adj: Sequence[int], cand: int) -> int:
    cliques: list[int] = []
    for v in _bits(cand):
        row = adj[v]
        for i, c in enumerate(cliques):
            if c & row == c:
                cliques[i] = c | (1 << v)
                break
        else:
            cliques.append(1 << v)
    return len(cliques)


def independence_number(g: Graph) -> IndependenceCertificate:
    """Exact maximum independent set by branch and bound.

    Branches on a maximum-degree vertex of the residual graph (lowest index on
    ties); prunes with a greedy clique-cover bound. Vertices of residual degree
    0 or 1 are taken greedily, which never loses optimality.
    """
    adj = g.adj
    best_size = -1
    best_set = 0

    def search(cand: int, chosen: int, size: int) -> None:
        nonlocal best_size, best_set
        # forced moves: isolated and pendant vertices belong to some optimum
        changed = True
        while changed and cand:
            changed = False
            for v in _bits(cand):
                if _popcount(adj[v] & cand) <= 1:
                    chosen |= 1 << v
                    size += 1
                    cand &= ~(adj[v] | (1 << v))
                    changed = True
                    break  # cand changed under the iterator
        if not cand:
            if size > best_size:
                best_size, best_set = size, chosen
            return
        if size + _clique_cover_bound(adj, cand) <= best_size:
            return
        pivot, pdeg = -1, -1
        for v in _bits(cand):
            d = _popcount(adj[v] & cand)
            if d > pdeg:
                pivot, pdeg = v, d
        search(cand & ~(adj[pivot] | (1 << pivot)), chosen | (1 << pivot), size + 1)
        search(cand & ~(1 << pivot), chosen, size)

    search((1 << g.n) - 1, 0, 0)
    return IndependenceCertificate(best_size, best_set)


def is_independent(g: Graph, mask: int) -> bool:
    return all(not (g.adj[v] & mask) for v in _bits(mask))


def has_vertex_cover(g: Graph, k: int) -> bool:
    """Whether some set of at most ``k`` vertices touches every edge.

    Bounded search tree on an uncovered edge; cheap for k <= 4.
    """

    def cover(adj: list[int], budget: int) -> bool:
        for u in range(len(adj)):
            if adj[u]:
                break
        else:
            return True
        if budget == 0:
            return False
        v = adj[u].bit_length() - 1
        for w in (u, v):
            nxt = list(adj)
            for x in _bits(nxt[w]):
                nxt[x] &= ~(1 << w)
            nxt[w] = 0
            if cover(nxt, budget - 1):
                return True
        return False

    return cover(list(g.adj), k)

"""Named graph families, with a small text syntax such as ``g12:2,1,1,2``.

G12 and G13 are the two four-parameter trees on ``m1+m2+m3+m4+7`` vertices.
Both have major-side vertices u1..u4 (labels 0..3), connector vertices w1..w3
(labels 4..6), and ``m_i`` pendant leaves on ``u_i`` (labels 7.., grouped by
owner).

* G12 is the caterpillar on the spine u1 w1 u2 w2 u3 w3 u4.
* G13 is the spider centred at u2: u2 ~ w1, w2, w3 and u1 ~ w1, u3 ~ w2,
  u4 ~ w3.

Both shapes are rebuilt from degree and eigen-equation data rather than
from a drawing, so the search drivers re-check that they are really the
minimisers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph import Graph, GraphError, attach_pendants, build, complement, empty, join

KINDS = {
    "path": 1,
    "cycle": 1,
    "complete": 1,
    "star": 1,
    "tabc": 3,
    "fst": 2,
    "indjoin": 2,
    "g12": 4,
    "g13": 4,
}

_G12_SPINE = [(0, 4), (4, 1), (1, 5), (5, 2), (2, 6), (6, 3)]
_G13_SPIDER = [(1, 4), (1, 5), (1, 6), (0, 4), (2, 5), (3, 6)]


class FamilyError(GraphError):
    """Family undefined for the given parameters."""


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise FamilyError(f"unknown family {self.kind!r}")
        if len(self.params) != KINDS[self.kind]:
            raise FamilyError(f"{self.kind} takes {KINDS[self.kind]} parameters, got {len(self.params)}")

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        kind, sep, rest = text.strip().partition(":")
        if not sep:
            raise FamilyError(f"family spec {text!r} lacks ':'")
        try:
            params = tuple(int(p) for p in rest.split(","))
        except ValueError:
            raise FamilyError(f"non-integer parameter in {text!r}") from None
        return cls(kind.lower(), params)

    @classmethod
    def of(cls, kind: str, *params: int) -> "FamilySpec":
        return cls(kind, tuple(params))

    def __str__(self) -> str:
        return f"{self.kind}:" + ",".join(str(p) for p in self.params)

    @property
    def defined(self) -> bool:
        try:
            _check(self)
        except FamilyError:
            return False
        return True

    @property
    def order(self) -> int:
        k, p = self.kind, self.params
        if k in ("path", "cycle", "complete", "star"):
            return p[0]
        if k == "tabc":
            return sum(p) + 1
        if k == "fst":
            return p[0] + p[1]
        if k == "indjoin":
            return p[1]
        return sum(p) + 7


def _check(spec: FamilySpec) -> None:
    k, p = spec.kind, spec.params
    if k in ("path", "complete") and p[0] < 1:
        raise FamilyError(f"{spec}: order must be >= 1")
    if k == "cycle" and p[0] < 3:
        raise FamilyError(f"{spec}: cycles need order >= 3")
    if k == "star" and p[0] < 2:
        raise FamilyError(f"{spec}: stars need order >= 2")
    if k == "tabc" and min(p) < 1:
        raise FamilyError(f"{spec}: arm lengths must be >= 1")
    if k == "fst" and min(p) < 1:
        raise FamilyError(f"{spec}: clique sizes must be >= 1")
    if k == "indjoin" and not 1 <= p[0] <= p[1] - 1:
        raise FamilyError(f"{spec}: need 1 <= i <= n-1")
    if k in ("g12", "g13") and min(p) < 0:
        raise FamilyError(f"family undefined for these parameters: {spec}")


# --------------------------------------------------------------------------
# constructors
# --------------------------------------------------------------------------


def path(n: int) -> Graph:
    return build(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return build(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return build(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(n: int) -> Graph:
    """K_{1,n-1}, centre 0."""
    return build(n, [(0, i) for i in range(1, n)])


def tabc(a: int, b: int, c: int) -> Graph:
    """Spider with centre 0 and arms of a, b, c vertices."""
    edges = []
    nxt = 1
    for arm in (a, b, c):
        prev = 0
        for _ in range(arm):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return build(a + b + c + 1, edges)


def fst(s: int, t: int) -> Graph:
    """K_s on 0..s-1 and K_t on s..s+t-1 joined by the edge (0, s)."""
    n = s + t
    edges = [(i, j) for i in range(s) for j in range(i + 1, s)]
    edges += [(i, j) for i in range(s, n) for j in range(i + 1, n)]
    edges.append((0, s))
    return build(n, edges)


def fst_by_complement(s: int, t: int) -> Graph:
    """(K_{s,t} - e)^c with e = (0, s); same labelling as :func:`fst`."""
    n = s + t
    edges = [(i, j) for i in range(s) for j in range(s, n) if (i, j) != (0, s)]
    return complement(build(n, edges))


def indjoin(i: int, n: int) -> Graph:
    """K_i^c v K_{n-i}; the independent side takes labels 0..i-1."""
    return join(empty(i), complete(n - i))


def _pendant_tree(spine: Sequence[tuple[int, int]], m: Sequence[int]) -> Graph:
    g = build(7, spine)
    for owner, count in enumerate(m):
        g = attach_pendants(g, owner, count)
    return g


def g12(m1: int, m2: int, m3: int, m4: int) -> Graph:
    return make(FamilySpec.of("g12", m1, m2, m3, m4))


def g13(m1: int, m2: int, m3: int, m4: int) -> Graph:
    return make(FamilySpec.of("g13", m1, m2, m3, m4))


def make(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    _check(spec)
    k, p = spec.kind, spec.params
    if k == "path":
        return path(p[0])
    if k == "cycle":
        return cycle(p[0])
    if k == "complete":
        return complete(p[0])
    if k == "star":
        return star(p[0])
    if k == "tabc":
        return tabc(*p)
    if k == "fst":
        return fst(*p)
    if k == "indjoin":
        return indjoin(*p)
    if k == "g12":
        return _pendant_tree(_G12_SPINE, p)
    return _pendant_tree(_G13_SPIDER, p)


def family_degree_vector(spec: FamilySpec | str) -> tuple[int, int, int, int]:
    """``(d(u1), d(u2), d(u3), d(u4))``; sums to ``n - 1``."""
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    if spec.kind not in ("g12", "g13"):
        raise FamilyError(f"degree vector only defined for g12/g13, got {spec.kind}")
    m1, m2, m3, m4 = spec.params
    if spec.kind == "g12":
        return (m1 + 1, m2 + 2, m3 + 2, m4 + 1)
    return (m1 + 1, m2 + 3, m3 + 1, m4 + 1)


def pendant_labels(spec: FamilySpec) -> list[list[int]]:
    """Labels of the pendant leaves on u1..u4 for a g12/g13 spec."""
    out, nxt = [], 7
    for count in spec.params:
        out.append(list(range(nxt, nxt + count)))
        nxt += count
    return out


def g_family_specs(kind: str, n: int) -> list[FamilySpec]:
    """Every g12 (or g13) parameter tuple of order ``n``."""
    total = n - 7
    out = []
    for m1 in range(total + 1):
        for m2 in range(total - m1 + 1):
            for m3 in range(total - m1 - m2 + 1):
                out.append(FamilySpec.of(kind, m1, m2, m3, total - m1 - m2 - m3))
    return out


def main_theorem_candidates(n: int) -> list[FamilySpec]:
    """Listed minimiser families for order ``n >= 11``, including undefined entries.

    ``n = 4k + r`` selects one of four lists; entries with a negative
    parameter are returned as-is and reported as undefined by the caller.
    """
    k, r = divmod(n, 4)
    if n < 11 or (r != 3 and k < 3):
        raise FamilyError(f"no listed minimisers for n={n}")
    table = {
        0: [("g12", k - 2, k - 2, k - 2, k - 1), ("g12", k - 1, k - 3, k - 2, k - 1),
            ("g13", k - 2, k - 3, k - 1, k - 1), ("g13", k - 1, k - 4, k - 1, k - 1)],
        1: [("g12", k - 1, k - 2, k - 2, k - 1), ("g13", k - 1, k - 3, k - 1, k - 1)],
        2: [("g12", k, k - 2, k - 2, k - 1), ("g12", k - 1, k - 1, k - 2, k - 1),
            ("g12", k, k - 1, k - 3, k - 1), ("g12", k, k - 3, k - 1, k - 1),
            ("g12", k, k - 2, k - 3, k), ("g13", k, k - 3, k - 1, k - 1),
            ("g13", k - 1, k - 2, k - 1, k - 1), ("g13", k, k - 4, k, k - 1)],
        3: [("g12", k, k - 1, k - 2, k - 1), ("g12", k, k - 2, k - 1, k - 1),
            ("g12", k, k - 2, k - 2, k), ("g13", k, k - 2, k - 1, k - 1),
            ("g13", k, k - 3, k, k - 1), ("g13", k, k - 4, k, k)],
    }
    return [FamilySpec(kind, tuple(p)) for kind, *p in table[r]]


def match_family(g: Graph, candidates: Iterable[FamilySpec]) -> Optional[FamilySpec]:
    """First defined candidate isomorphic to ``g``."""
    from .canon import isomorphic

    for spec in candidates:
        if spec.defined and spec.order == g.n and isomorphic(make(spec), g):
            return spec
    return None


def small_named(n: int) -> list[FamilySpec]:
    """Named families of order ``n`` used to label search winners."""
    out = [FamilySpec.of("path", n), FamilySpec.of("complete", n)]
    if n >= 3:
        out.append(FamilySpec.of("cycle", n))
    if n >= 2:
        out.append(FamilySpec.of("star", n))
    for s in range(1, n // 2 + 1):
        out.append(FamilySpec.of("fst", s, n - s))
    for i in range(1, n):
        out.append(FamilySpec.of("indjoin", i, n))
    for a in range(1, n):
        for b in range(a, n):
            c = n - 1 - a - b
            if c >= b:
                out.append(FamilySpec.of("tabc", a, b, c))
    return out

"""Exhaustive generation of free trees and small connected graphs, and the
graph6 text format used for corpus files."""
from __future__ import annotations

import os
from typing import Callable, Iterator, Optional

from .graph import Graph, GraphError, _bits, _from_adj, is_connected

TREE_CAP = 20
NATIVE_CONNECTED_CAP = 9
GRAPH6_CAP = 62
GRAPH6_HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 text; ``line`` is set when reading a file."""

    def __init__(self, msg: str, line: Optional[int] = None):
        self.line = line
        super().__init__(msg if line is None else f"line {line}: {msg}")


# --------------------------------------------------------------------------
# free trees (level-sequence successor of Wright, Richmond, Odlyzko, McKay)
# --------------------------------------------------------------------------


def _split(levels: list[int]) -> tuple[list[int], list[int]]:
    """Split a rooted level sequence at the root's second child.

    Returns the first principal subtree (re-levelled so its root is 0) and
    the remainder (root plus the other subtrees).
    """
    m = len(levels)
    for i in range(2, len(levels)):
        if levels[i] == 1:
            m = i
            break
    return [x - 1 for x in levels[1:m]], [0] + levels[m:]


def _next_rooted(levels: list[int], p: Optional[int] = None) -> Optional[list[int]]:
    if p is None:
        p = len(levels) - 1
        while levels[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while levels[q] != levels[p] - 1:
        q -= 1
    out = list(levels)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _next_free(levels: list[int]) -> Optional[list[int]]:
    """Advance to the next level sequence that is canonical for a free tree."""
    left, rest = _split(levels)
    lh, rh = max(left), max(rest)
    ok = rh >= lh
    if ok and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            ok = False
    if ok:
        return levels
    p = len(left)
    nxt = _next_rooted(levels, p)
    if nxt is not None and levels[p] > 2:
        new_left, _ = _split(nxt)
        tail = list(range(1, max(new_left) + 2))
        nxt[-len(tail):] = tail
    return nxt


def _levels_to_graph(levels: list[int]) -> Graph:
    n = len(levels)
    adj = [0] * n
    stack: list[int] = []
    for v, lev in enumerate(levels):
        del stack[lev:]
        if stack:
            u = stack[-1]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        stack.append(v)
    return _from_adj(adj)


def trees(n: int) -> Iterator[Graph]:
    """Every free tree on ``n`` vertices exactly once, in a fixed order.

    Constant amortised time per tree; vertices are numbered in preorder of
    the centre-rooted level sequence.
    """
    if not 1 <= n <= TREE_CAP:
        raise GraphError(f"tree order {n} outside 1..{TREE_CAP}")
    if n == 1:
        yield _from_adj([0])
        return
    levels: Optional[list[int]] = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while levels is not None:
        levels = _next_free(levels)
        if levels is None:
            break
        yield _levels_to_graph(levels)
        levels = _next_rooted(levels)


# --------------------------------------------------------------------------
# connected graphs
# --------------------------------------------------------------------------


def _grow(g: Graph, mask: int) -> Graph:
    v = g.n
    adj = list(g.adj) + [mask]
    for w in _bits(mask):
        adj[w] |= 1 << v
    return _from_adj(adj)


def connected_graphs(n: int, corpus: Optional[str] = None) -> Iterator[Graph]:
    """One graph per isomorphism class of connected graphs of order ``n``.

    Natively (``n <= 9``) each class on ``n - 1`` vertices is extended by a
    vertex joined to every nonempty subset, deduplicated by canonical form;
    every connected graph has a non-cut vertex so nothing is missed. With a
    ``corpus`` graph6 file the classes are read from it instead and assumed
    isomorph-free, as produced by ``geng -c``.
    """
    if corpus is not None:
        for g in read_graph6_file(corpus):
            if g.n == n and is_connected(g):
                yield g
        return
    if not 1 <= n <= NATIVE_CONNECTED_CAP:
        raise GraphError(f"native connected generation capped at n={NATIVE_CONNECTED_CAP}; pass a graph6 corpus")
    yield from _connected_native(n)


def _connected_native(n: int) -> list[Graph]:
    from .canon import canonical_form

    level = [_from_adj([0])]
    for order in range(2, n + 1):
        seen: dict = {}
        for g in level:
            for mask in range(1, 1 << (order - 1)):
                h = _grow(g, mask)
                key = canonical_form(h)
                if key not in seen:
                    seen[key] = h
        level = list(seen.values())
    return level


# --------------------------------------------------------------------------
# graph6
# --------------------------------------------------------------------------


def encode_graph6(g: Graph) -> str:
    """graph6 text (no header, no newline) for a graph with ``n <= 62``."""
    if g.n > GRAPH6_CAP:
        raise Graph6Error(f"order {g.n} needs a multi-byte graph6 header")
    out = [chr(63 + g.n)]
    acc = nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def decode_graph6(line: str) -> Graph:
    text = line.strip()
    if text.startswith(GRAPH6_HEADER):
        text = text[len(GRAPH6_HEADER):]
    if not text:
        raise Graph6Error("empty graph6 string")
    for pos, ch in enumerate(text):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} at position {pos} outside graph6 range")
    n = ord(text[0]) - 63
    if n > GRAPH6_CAP:
        raise Graph6Error("multi-byte order header (n > 62) not supported")
    if n == 0:
        raise Graph6Error("graph6 order 0 not supported")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = text[1:]
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if nbits % 6:
        pad = (ord(body[-1]) - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise Graph6Error("nonzero padding bits")
    return _from_adj(adj)


def read_graph6_file(
    path: str | os.PathLike,
    on_error: Optional[Callable[[Graph6Error], None]] = None,
) -> Iterator[Graph]:
    """Lazily decode a newline-separated graph6 file.

    Blank lines and lines starting with ``>`` (other than a ``>>graph6<<``
    prefix on a data line) are skipped. A bad line raises
    :class:`Graph6Error` carrying its line number, unless ``on_error`` is
    given, in which case the error is handed to it and reading continues.
    """
    with open(path, encoding="ascii", errors="replace") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if text.startswith(GRAPH6_HEADER):
                text = text[len(GRAPH6_HEADER):]
            if not text or text.startswith(">"):
                continue
            try:
                yield decode_graph6(text)
            except Graph6Error as exc:
                err = Graph6Error(str(exc), lineno)
                if on_error is None:
                    raise err from None
                on_error(err)


def write_graph6_file(path: str | os.PathLike, graphs) -> int:
    count = 0
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(encode_graph6(g) + "\n")
            count += 1
    return count

"""Finite simple graphs stored as integer bit rows.

Vertex sets are Python ints used as bitsets (bit ``v`` set iff ``v`` is in
the set).  ``bits(mask)`` and ``vertex_set(iterable)`` convert both ways.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, TextIO

import numpy as np

from .. import gf2

__all__ = [
    "Graph",
    "GraphFormatError",
    "bits",
    "vertex_set",
    "popcount",
    "parse_graph",
    "format_graph",
    "read_graph",
    "random_graph",
]


class GraphFormatError(ValueError):
    """Raised on malformed graph text."""


def popcount(x: int) -> int:
    return x.bit_count()


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vertex_set(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << int(v)
    return mask


@dataclass(frozen=True)
class Graph:
    """Undirected loop-free graph on vertices ``0..n-1``.

    ``rows[v]`` is the neighbourhood of ``v`` as a bitset.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(rows)}")
        full = (1 << self.n) - 1
        for v, r in enumerate(rows):
            if r & ~full:
                raise ValueError(f"row {v} has bits outside 0..{self.n - 1}")
            if (r >> v) & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in bits(r):
                if not (rows[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_dense(cls, a) -> "Graph":
        a = np.asarray(a)
        n = a.shape[0]
        return cls(n, tuple(vertex_set(np.flatnonzero(a[i])) for i in range(n)))

    @classmethod
    def from_edge_mask(cls, n: int, mask: int) -> "Graph":
        """Graph whose edge ``i`` (in ``combinations(range(n), 2)`` order) is bit ``i``."""
        return cls.from_edges(n, (e for i, e in enumerate(combinations(range(n), 2)) if (mask >> i) & 1))

    @classmethod
    def null(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def star(cls, n_leaves: int) -> "Graph":
        """Centre 0 joined to leaves ``1..n_leaves``."""
        return cls.from_edges(n_leaves + 1, ((0, i) for i in range(1, n_leaves + 1)))

    @classmethod
    def matching(cls, k: int, extra: int = 0) -> "Graph":
        """``k`` disjoint edges (2j, 2j+1) followed by ``extra`` isolated vertices."""
        return cls.from_edges(2 * k + extra, ((2 * j, 2 * j + 1) for j in range(k)))

    # -- queries ------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    def n_edges(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    def edges_within(self, s: int) -> int:
        """Number of edges with both ends in vertex set ``s``."""
        return sum(popcount(self.rows[v] & s) for v in bits(s)) // 2

    def isolated(self) -> list[int]:
        return [v for v, r in enumerate(self.rows) if r == 0]

    def all_vertices(self) -> int:
        return (1 << self.n) - 1

    def adjacency(self) -> gf2.BitMatrix:
        return gf2.BitMatrix.from_int_rows(self.rows, self.n)

    def to_dense(self) -> np.ndarray:
        return self.adjacency().to_dense()

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, renumbered in the order given."""
        vs = list(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        return Graph.from_edges(len(vs), ((pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos))

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def edge_mask(self) -> int:
        mask = 0
        for i, (u, v) in enumerate(combinations(range(self.n), 2)):
            if self.has_edge(u, v):
                mask |= 1 << i
        return mask

    # -- output -------------------------------------------------------

    def to_text(self) -> str:
        return format_graph(self)

    def to_dot(self, name: str = "G", labels: list[str] | None = None) -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.n):
            lab = labels[v] if labels else str(v)
            lines.append(f'  {v} [label="{lab}"];')
        for u, v in self.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# -- text format --------------------------------------------------------
#
#   n=<int>
#   u v        (one edge per line, 0-based)
#   # comment


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_graph(text: str) -> Graph:
    lines = [s for s in (_strip(ln) for ln in text.splitlines()) if s]
    if not lines:
        raise GraphFormatError("empty graph text")
    head = lines[0].replace(" ", "")
    if not head.startswith("n="):
        raise GraphFormatError(f"first line must be 'n=<int>', got {lines[0]!r}")
    try:
        n = int(head[2:])
    except ValueError:
        raise GraphFormatError(f"bad vertex count in {lines[0]!r}") from None
    if n < 0:
        raise GraphFormatError("vertex count must be non-negative")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"edge line must be 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {ln!r}") from None
        edges.append((u, v))
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def format_graph(g: Graph) -> str:
    out = io.StringIO()
    out.write(f"n={g.n}\n")
    for u, v in g.edges():
        out.write(f"{u} {v}\n")
    return out.getvalue()


def read_graph(f: TextIO) -> Graph:
    return parse_graph(f.read())


def random_graph(n: int, rng: np.random.Generator, p: float = 0.5) -> Graph:
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph.from_dense(upper | upper.T)

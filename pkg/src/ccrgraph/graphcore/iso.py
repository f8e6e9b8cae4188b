"""The subset graph G^{<inf} (finite truncation) and small-graph isomorphism."""

from __future__ import annotations

from .graph import Graph, bits, popcount

__all__ = ["g_infinity", "subset_order", "graphs_isomorphic", "SizeLimitError"]

GINF_LIMIT = 4
ISO_LIMIT = 16


class SizeLimitError(ValueError):
    """Input exceeds the configured size cap."""


def subset_order(n: int) -> list[int]:
    """Vertices of ``g_infinity``: nonempty subsets in binary counting order."""
    return list(range(1, 1 << n))


def g_infinity(g: Graph, limit: int = GINF_LIMIT) -> Graph:
    """Graph on the nonempty subsets of V, ``s ~ t`` iff the number of
    pairs ``(i, j)`` in ``s x t`` with ``i ~ j`` is odd.

    Vertex ``m - 1`` is the subset with characteristic bitmask ``m``.
    """
    if g.n > limit:
        raise SizeLimitError(f"g_infinity is capped at n={limit} (got {g.n}); output has 2^n - 1 vertices")
    subsets = subset_order(g.n)
    # parity of edges from each vertex into each subset, as one bitset per subset
    odd_into = []
    for s in subsets:
        mask = 0
        for v in range(g.n):
            if popcount(g.rows[v] & s) & 1:
                mask |= 1 << v
        odd_into.append(mask)
    m = len(subsets)
    rows = [0] * m
    for a in range(m):
        for b in range(a + 1, m):
            # count = sum over i in s_a of |N(i) & s_b|
            if popcount(subsets[a] & odd_into[b]) & 1:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
    return Graph(m, tuple(rows))


def _joint_refine(g: Graph, h: Graph) -> tuple[list[int], list[int]] | None:
    cg = [0] * g.n
    ch = [0] * h.n
    while True:
        sg = [(cg[v], tuple(sorted(cg[u] for u in bits(g.rows[v])))) for v in range(g.n)]
        sh = [(ch[v], tuple(sorted(ch[u] for u in bits(h.rows[v])))) for v in range(h.n)]
        if sorted(sg) != sorted(sh):
            return None
        table = {s: i for i, s in enumerate(sorted(set(sg)))}
        ng = [table[s] for s in sg]
        nh = [table[s] for s in sh]
        if len(table) == len(set(cg)):
            return ng, nh
        cg, ch = ng, nh


def graphs_isomorphic(g: Graph, h: Graph, limit: int = ISO_LIMIT) -> list[int] | None:
    """A bijection ``p`` with ``g.has_edge(u, v) == h.has_edge(p[u], p[v])``, or None.

    Backtracking over vertices of ``g``, most constrained first, with
    candidates restricted to the same refined colour class in ``h``.
    """
    if g.n > limit or h.n > limit:
        raise SizeLimitError(f"isomorphism search is capped at {limit} vertices")
    if g.n != h.n or g.n_edges() != h.n_edges():
        return None
    if sorted(g.degrees()) != sorted(h.degrees()):
        return None
    n = g.n
    if n == 0:
        return []
    joint = _joint_refine(g, h)
    if joint is None:
        return None
    cg, ch = joint
    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(ch[v], []).append(v)

    mapping = [-1] * n
    used = 0

    def order() -> list[int]:
        # small colour classes first, then prefer neighbours of placed vertices
        seq: list[int] = []
        placed = 0
        remaining = set(range(n))
        while remaining:
            v = min(
                remaining,
                key=lambda x: (-popcount(g.rows[x] & placed), len(classes[cg[x]]), x),
            )
            seq.append(v)
            placed |= 1 << v
            remaining.remove(v)
        return seq

    seq = order()

    def extend(depth: int) -> bool:
        nonlocal used
        if depth == n:
            return True
        v = seq[depth]
        for w in classes[cg[v]]:
            if (used >> w) & 1:
                continue
            ok = True
            for u in seq[:depth]:
                if g.has_edge(v, u) != h.has_edge(w, mapping[u]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used |= 1 << w
            if extend(depth + 1):
                return True
            used &= ~(1 << w)
            mapping[v] = -1
        return False

    if extend(0):
        return list(mapping)
    return None

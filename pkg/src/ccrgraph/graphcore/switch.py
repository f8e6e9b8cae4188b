"""Switch moves and the canonical form of B(G).

A switch move ``(x, s)`` with ``x in s`` replaces vertex ``x`` by a new
vertex standing for the product of the generators in ``s``.  The new vertex
keeps index ``x`` and is adjacent to ``u`` iff an odd number of vertices of
``s`` are adjacent to ``u``.  Over GF(2) the move is the column operation
``e_x <- sum_{v in s} e_v`` on the basis, i.e. a congruence ``A -> E^T A E``.

:func:`canonicalize` reduces any graph by such moves to ``k`` disjoint edges
``(0,1), (2,3), ...`` followed by ``l`` isolated vertices; then
``B(G) = M_{2^k} (x) C^{2^l}``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import gf2
from .graph import Graph, bits, vertex_set

__all__ = [
    "SwitchMove",
    "CanonicalForm",
    "AlgebraClass",
    "CanonicalizationError",
    "apply_switch",
    "replay",
    "canonical_graph",
    "canonicalize",
    "classify",
    "equivalent",
    "is_simple",
    "algebra_label",
]


class CanonicalizationError(RuntimeError):
    """The move-based reduction disagreed with the GF(2) congruence oracle."""


@dataclass(frozen=True)
class SwitchMove:
    x: int
    s: int

    def __post_init__(self):
        if self.s <= 0:
            raise ValueError("switch set must be nonempty")
        if not (self.s >> self.x) & 1:
            raise ValueError(f"vertex {self.x} is not in the switch set {list(bits(self.s))}")

    @classmethod
    def of(cls, x: int, s) -> "SwitchMove":
        return cls(x, s if isinstance(s, int) else vertex_set(s))

    def vertices(self) -> list[int]:
        return list(bits(self.s))


def _move_inplace(rows: list[int], x: int, s: int) -> None:
    new = 0
    for w in bits(s):
        new ^= rows[w]
    new &= ~(1 << x)
    changed = new ^ rows[x]
    rows[x] = new
    bit = 1 << x
    for u in bits(changed):
        rows[u] ^= bit


def apply_switch(g: Graph, m: SwitchMove) -> Graph:
    """Return ``G - x + s`` with the new vertex at index ``x``."""
    if m.s >> g.n:
        raise ValueError(f"switch set {list(bits(m.s))} is not within 0..{g.n - 1}")
    rows = list(g.rows)
    _move_inplace(rows, m.x, m.s)
    return Graph(g.n, tuple(rows))


def replay(g: Graph, moves) -> Graph:
    rows = list(g.rows)
    for m in moves:
        if m.s >> g.n:
            raise ValueError(f"move {m} out of range for n={g.n}")
        _move_inplace(rows, m.x, m.s)
    return Graph(g.n, tuple(rows))


def canonical_graph(k: int, l: int) -> Graph:
    return Graph.matching(k, l)


def algebra_label(k: int, l: int) -> str:
    return f"M_{2 ** k} ⊗ C^{2 ** l}"


@dataclass(frozen=True)
class CanonicalForm:
    """Certificate that ``B(G) = M_{2^k} (x) C^{2^l}``.

    ``basis.forward`` has as column ``v`` the original-vertex support of
    canonical vertex ``v``, so ``forward^T A forward`` is the canonical
    adjacency matrix.
    """

    k: int
    l: int
    moves: tuple[SwitchMove, ...]
    basis: gf2.BasisChange

    @property
    def n(self) -> int:
        return 2 * self.k + self.l

    def graph(self) -> Graph:
        return canonical_graph(self.k, self.l)

    def support(self, v: int) -> int:
        """Original vertices whose product realizes canonical vertex ``v``."""
        fwd = self.basis.forward
        return vertex_set(i for i in range(self.n) if fwd[i, v])

    def preimage(self, x: int) -> int:
        """Canonical vertices whose product realizes original vertex ``x``."""
        return self.basis.inverse.T.row(x) if self.n else 0


@dataclass(frozen=True)
class AlgebraClass:
    n: int
    k: int
    l: int
    label: str
    simple: bool


class _Reducer:
    """Mutable state for the move-by-move reduction."""

    def __init__(self, g: Graph):
        self.n = g.n
        self.rows = list(g.rows)
        self.moves: list[SwitchMove] = []
        # columns of the basis change: original support of each current vertex
        self.cols = [1 << v for v in range(g.n)]
        # rows of the inverse; each move's elementary matrix is an involution
        self.inv = [1 << v for v in range(g.n)]

    def move(self, x: int, s: int) -> None:
        if s == 1 << x:
            return
        _move_inplace(self.rows, x, s)
        col = 0
        for w in bits(s):
            col ^= self.cols[w]
        self.cols[x] = col
        # S^{-1} <- E S^{-1}: rows r in s - {x} pick up row x
        row_x = self.inv[x]
        for r in bits(s & ~(1 << x)):
            self.inv[r] ^= row_x
        self.moves.append(SwitchMove(x, s))

    def swap(self, a: int, b: int) -> None:
        """Exchange the roles of vertices a and b with three moves."""
        if a == b:
            return
        ab = (1 << a) | (1 << b)
        self.move(a, ab)
        self.move(b, ab)
        self.move(a, ab)


def canonicalize(g: Graph) -> CanonicalForm:
    """Reduce ``g`` to its canonical graph by switch moves.

    Vertices are absorbed one at a time.  The processed prefix is always a
    set of disjoint edges plus isolated vertices.  A new vertex ``x`` first
    gets rid of its edges into every matched pair ``(a, b)`` by multiplying
    with ``b`` (to drop the edge to ``a``) and/or ``a`` (to drop the edge to
    ``b``); what remains is a star from ``x`` to unmatched vertices
    ``y_1..y_p``, and replacing ``y_j`` by ``y_1 y_j`` for ``j >= 2`` leaves
    the single edge ``x y_1``.  Finally the pairs are swapped into index
    order.

    The resulting ``k`` is cross-checked against
    :func:`ccrgraph.gf2.congruent_canonicalize`.
    """
    red = _Reducer(g)
    pairs: list[tuple[int, int]] = []
    unmatched: list[int] = []
    for x in range(g.n):
        s = 1 << x
        for a, b in pairs:
            if (red.rows[x] >> a) & 1:
                s |= 1 << b
            if (red.rows[x] >> b) & 1:
                s |= 1 << a
        red.move(x, s)
        ys = [y for y in unmatched if (red.rows[x] >> y) & 1]
        if not ys:
            unmatched.append(x)
            continue
        y1 = ys[0]
        for yj in ys[1:]:
            red.move(yj, (1 << y1) | (1 << yj))
        unmatched.remove(y1)
        pairs.append((y1, x))

    # place the pairs at (0,1), (2,3), ... and unmatched vertices after them
    target = [v for p in pairs for v in p] + unmatched
    at = [0] * g.n  # at[index] = target position of the vertex stored there
    where = [0] * g.n  # inverse of at
    for pos, v in enumerate(target):
        at[v], where[pos] = pos, v
    for pos in range(g.n):
        cur = where[pos]
        if cur != pos:
            red.swap(pos, cur)
            other = at[pos]
            at[pos], at[cur] = pos, other
            where[pos], where[other] = pos, cur

    k, l = len(pairs), len(unmatched)
    if tuple(red.rows) != canonical_graph(k, l).rows:
        raise CanonicalizationError("move script did not reach the canonical graph")
    oracle_k, _ = gf2.congruent_canonicalize(g.adjacency())
    if oracle_k != k:
        raise CanonicalizationError(f"switch moves give k={k} but GF(2) congruence gives k={oracle_k}")

    fwd_rows = [0] * g.n
    for v, col in enumerate(red.cols):
        for i in bits(col):
            fwd_rows[i] |= 1 << v
    basis = gf2.BasisChange(
        gf2.BitMatrix.from_int_rows(fwd_rows, g.n),
        gf2.BitMatrix.from_int_rows(red.inv, g.n),
    )
    return CanonicalForm(k, l, tuple(red.moves), basis)


def classify(g: Graph) -> AlgebraClass:
    cf = canonicalize(g)
    return AlgebraClass(g.n, cf.k, cf.l, algebra_label(cf.k, cf.l), cf.l == 0)


def equivalent(g: Graph, h: Graph) -> bool:
    """Whether ``B(g)`` and ``B(h)`` are isomorphic."""
    if g.n != h.n:
        return False
    return canonicalize(g).k == canonicalize(h).k


def is_simple(g: Graph) -> tuple[bool, int | None]:
    """Simplicity of ``B(g)`` with a witness when it fails.

    ``B(g)`` is simple iff every nonempty vertex set ``s`` has some vertex
    with an odd number of neighbours in ``s``, i.e. the adjacency matrix has
    trivial kernel.  Otherwise the first kernel vector is returned: its word
    commutes with every generator and is central.
    """
    kernel = gf2.kernel_basis(g.adjacency())
    if not kernel:
        return True, None
    return False, kernel[0]


"""Phase-tracked words in the generators of B(G).

A word ``i^p * u_{s_1} u_{s_2} ... u_{s_m}`` (``s_1 < ... < s_m``) is stored
as the pair ``(support, power)``.  Multiplication only needs the graph:
moving a generator past an adjacent one costs a sign, and ``u_i^2 = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits, popcount

__all__ = [
    "GeneratorWord",
    "PatternError",
    "UNIT",
    "word_mul",
    "word_adjoint",
    "word_power_sign",
    "is_self_adjoint",
    "self_adjoint_phase",
    "self_adjoint_word",
    "cocycle",
    "commutes",
    "normalize_pairing",
]

_PHASES = (1, 1j, -1, -1j)


class PatternError(ValueError):
    """Input generators do not have the required commutation pattern."""


@dataclass(frozen=True, order=True)
class GeneratorWord:
    """``phase * prod_{v in support} u_v`` in increasing vertex order.

    ``power`` is the exponent of ``i`` in the phase, taken mod 4.
    """

    support: int
    power: int = 0

    def __post_init__(self):
        if self.support < 0:
            raise ValueError("support must be a non-negative bitset")
        object.__setattr__(self, "power", self.power % 4)

    @classmethod
    def from_phase(cls, phase: complex, support: int) -> "GeneratorWord":
        for p, z in enumerate(_PHASES):
            if abs(complex(phase) - z) < 1e-12:
                return cls(support, p)
        raise ValueError(f"phase {phase!r} is not a fourth root of unity")

    @classmethod
    def generator(cls, v: int) -> "GeneratorWord":
        return cls(1 << v)

    @property
    def phase(self) -> complex:
        return _PHASES[self.power]

    def vertices(self) -> list[int]:
        return list(bits(self.support))

    def scaled(self, power: int) -> "GeneratorWord":
        return GeneratorWord(self.support, self.power + power)

    def __str__(self) -> str:
        sign = ("", "i", "-", "-i")[self.power]
        body = "·".join(f"u{v}" for v in self.vertices()) or "1"
        return f"{sign}{body}"


UNIT = GeneratorWord(0, 0)


def _check(g: Graph, w: GeneratorWord) -> None:
    if w.support >> g.n:
        raise ValueError(f"word {w} uses vertices outside 0..{g.n - 1}")


def word_mul(g: Graph, w1: GeneratorWord, w2: GeneratorWord) -> GeneratorWord:
    """Normal form of ``w1 * w2``.

    Each generator ``u_j`` of ``w2`` is moved left past the generators
    ``u_i`` of ``w1`` with ``i > j``; every adjacent pair passed contributes
    a factor -1.  Repeated generators then meet and cancel.
    """
    _check(g, w1)
    _check(g, w2)
    s1 = w1.support
    swaps = 0
    for j in bits(w2.support):
        swaps += popcount(g.rows[j] & s1 & ~((2 << j) - 1))
    return GeneratorWord(s1 ^ w2.support, w1.power + w2.power + 2 * swaps)


def word_adjoint(g: Graph, w: GeneratorWord) -> GeneratorWord:
    """``w^*``: conjugate phase, reversed product (one sign per inner edge)."""
    _check(g, w)
    return GeneratorWord(w.support, -w.power + 2 * g.edges_within(w.support))


def word_power_sign(g: Graph, w: GeneratorWord) -> int:
    """``w^2`` is ``+1`` or ``-1`` times the unit; return that sign."""
    sq = word_mul(g, w, w)
    return 1 if sq.power == 0 else -1


def is_self_adjoint(g: Graph, w: GeneratorWord) -> bool:
    return word_adjoint(g, w) == w


def self_adjoint_phase(g: Graph, s: int) -> complex:
    """``1`` if ``u_s`` is self-adjoint, ``1j`` if ``i u_s`` is.

    Reversing ``u_s`` costs one sign per edge inside ``s``.
    """
    if s <= 0:
        raise ValueError("vertex set must be nonempty")
    if s >> g.n:
        raise ValueError(f"vertex set outside 0..{g.n - 1}")
    return 1j if g.edges_within(s) & 1 else 1


def self_adjoint_word(g: Graph, s: int) -> GeneratorWord:
    return GeneratorWord(s, 1 if g.edges_within(s) & 1 else 0)


def cocycle(g: Graph, s: int, t: int) -> int:
    """``(-1)^{#{(x, y) in s x t : x ~ y}}``."""
    count = 0
    for x in bits(s):
        count += popcount(g.rows[x] & t)
    return -1 if count & 1 else 1


def commutes(g: Graph, s: int, t: int) -> bool:
    """Whether the words supported on ``s`` and ``t`` commute."""
    return cocycle(g, s, t) == 1


def normalize_pairing(g: Graph, us: list[int], vs: list[int], l: int) -> list[GeneratorWord]:
    """Turn a split pattern into the matched pattern.

    Input: ``u_i`` and ``v_j`` (``i, j = 1..n``, here 0-based) such that for
    ``j < l`` ``v_j`` anticommutes with ``u_i`` iff ``i == j``, and for
    ``i >= l`` ``u_i`` anticommutes with ``v_j`` iff ``i == j``.  The block
    ``i < l <= j`` is unconstrained.

    Output: ``w_j = v_j`` for ``j < l`` and ``w_j = v_j prod_{i in K(j)} v_i``
    otherwise, where ``K(j) = {i < l : v_j u_i = -u_i v_j}``.  Then ``w_j``
    anticommutes with ``u_m`` iff ``m == j``.  Each word is returned
    self-adjoint (an extra factor ``i`` is applied when needed).
    """
    n = len(us)
    if len(vs) != n:
        raise PatternError("us and vs must have equal length")
    if not 0 <= l <= n:
        raise PatternError(f"split point {l} outside 0..{n}")
    if len(set(us) | set(vs)) != 2 * n:
        raise PatternError("us and vs must be distinct vertices")
    for v in list(us) + list(vs):
        if not 0 <= v < g.n:
            raise PatternError(f"vertex {v} outside the graph")

    def anti(i: int, j: int) -> bool:
        return g.has_edge(us[i], vs[j])

    for i in range(n):
        for j in range(n):
            if (j < l or i >= l) and anti(i, j) != (i == j):
                raise PatternError(f"u[{i}] and v[{j}] violate the split pattern at l={l}")

    words = []
    for j in range(n):
        w = GeneratorWord.generator(vs[j])
        if j >= l:
            for i in range(l):
                if anti(i, j):
                    w = word_mul(g, w, GeneratorWord.generator(vs[i]))
        if not is_self_adjoint(g, w):
            w = w.scaled(1)
        words.append(w)

    for j, w in enumerate(words):
        for m in range(n):
            if (cocycle(g, w.support, 1 << us[m]) == -1) != (m == j):
                raise AssertionError(f"normalized word {j} has the wrong pattern against u[{m}]")
    return words

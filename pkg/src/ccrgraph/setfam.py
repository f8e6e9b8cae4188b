"""Finite set families over a universe ``Y = {0..m-1}``.

Members are bitsets (Python ints).  A family is an *indexed* multiset:
duplicates and empty members are allowed, and member order matters, so
that taking the dual twice returns the same indexed family.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .graphcore import Graph, SizeLimitError, bits, classify, popcount, vertex_set

__all__ = [
    "SetFamily",
    "FinitePair",
    "FamilyFormatError",
    "ResourceExhaustedError",
    "SizeLimitError",
    "DensifyReport",
    "is_independent",
    "is_separating",
    "separation_counts",
    "is_noncovered",
    "is_almost_disjoint",
    "dual",
    "fk_family",
    "branch_family",
    "bipartite_graph",
    "lambda_witness",
    "extend_to_full_matrix",
    "pair_subgraph",
    "densify",
    "parse_family",
    "format_family",
]

SEPARATING_EXHAUSTIVE_LIMIT = 12
FK_DEPTH_LIMIT = 3
EXTEND_STEP_LIMIT = 200_000


class FamilyFormatError(ValueError):
    """Malformed family text."""


class ResourceExhaustedError(RuntimeError):
    """The finite universe or family is too small for the requested step."""


@dataclass(frozen=True)
class SetFamily:
    universe_size: int
    members: tuple[int, ...] = ()

    def __post_init__(self):
        if self.universe_size < 0:
            raise ValueError("universe size must be non-negative")
        members = tuple(int(x) for x in self.members)
        object.__setattr__(self, "members", members)
        for i, x in enumerate(members):
            if x < 0 or x >> self.universe_size:
                raise ValueError(f"member {i} is not a subset of 0..{self.universe_size - 1}")

    @classmethod
    def from_sets(cls, universe_size: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(universe_size, tuple(vertex_set(s) for s in sets))

    @classmethod
    def singletons(cls, m: int) -> "SetFamily":
        return cls(m, tuple(1 << i for i in range(m)))

    @classmethod
    def power_set(cls, m: int, include_empty: bool = True) -> "SetFamily":
        """All subsets of ``Y`` in binary counting order."""
        start = 0 if include_empty else 1
        return cls(m, tuple(range(start, 1 << m)))

    def __len__(self) -> int:
        return len(self.members)

    @property
    def universe(self) -> int:
        return (1 << self.universe_size) - 1

    def member(self, i: int) -> list[int]:
        return list(bits(self.members[i]))

    def as_lists(self) -> list[list[int]]:
        return [list(bits(x)) for x in self.members]

    def union(self, indices: Iterable[int] | None = None) -> int:
        out = 0
        for i in range(len(self.members)) if indices is None else indices:
            out |= self.members[i]
        return out

    def replace(self, i: int, x: int) -> "SetFamily":
        members = list(self.members)
        members[i] = x
        return SetFamily(self.universe_size, tuple(members))

    def deduplicate(self) -> "SetFamily":
        """Drop repeated members, keeping first occurrences."""
        seen: set[int] = set()
        out = []
        for x in self.members:
            if x not in seen:
                seen.add(x)
                out.append(x)
        return SetFamily(self.universe_size, tuple(out))


@dataclass(frozen=True)
class FinitePair:
    """``f``: member indices, ``g``: universe elements.

    After :func:`extend_to_full_matrix` the tuples are aligned: ``f[j]``
    is the partner of ``g[j]``, and the first ``split`` partners meet the
    chosen elements only in their own partner element.
    """

    f: tuple[int, ...] = ()
    g: tuple[int, ...] = ()
    split: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(int(i) for i in self.f))
        object.__setattr__(self, "g", tuple(int(k) for k in self.g))
        if len(set(self.f)) != len(self.f) or len(set(self.g)) != len(self.g):
            raise ValueError("pair entries must be distinct")

    def check(self, fam: SetFamily) -> None:
        for i in self.f:
            if not 0 <= i < len(fam):
                raise ValueError(f"member index {i} out of range")
        for k in self.g:
            if not 0 <= k < fam.universe_size:
                raise ValueError(f"element {k} outside the universe")

    def contains(self, other: "FinitePair") -> bool:
        return set(other.f) <= set(self.f) and set(other.g) <= set(self.g)

    def as_dict(self) -> dict:
        return {"f": list(self.f), "g": list(self.g), "split": self.split}


# -- independence and the weakened conditions ---------------------------


def is_independent(fam: SetFamily, max_selection: int) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...]] | None]:
    """Check ``(cap F) minus (cup G)`` is nonempty for disjoint index sets.

    All ``F`` (nonempty) and ``G`` with ``|F| + |G| <= max_selection`` are
    checked, by total size and then lexicographically, so the returned
    counterexample ``(F, G)`` is a smallest one.
    """
    n = len(fam.members)
    cap = min(max_selection, n)
    xs = fam.members
    full = fam.universe
    for total in range(1, cap + 1):
        for a in range(1, total + 1):
            for F in combinations(range(n), a):
                inter = full
                for i in F:
                    inter &= xs[i]
                b = total - a
                if b == 0:
                    if not inter:
                        return False, (F, ())
                    continue
                if not inter:
                    continue  # already reported at a smaller total
                rest = [i for i in range(n) if i not in F]
                for G in combinations(rest, b):
                    if inter & ~fam.union(G) == 0:
                        return False, (F, G)
    return True, None


def _subsets_up_to(m: int, max_size: int | None) -> Iterable[int]:
    if max_size is None:
        return range(1, 1 << m)
    return (vertex_set(c) for k in range(1, min(max_size, m) + 1) for c in combinations(range(m), k))


def _witnessed(members: Sequence[int], s: int) -> int:
    hit = 0
    for x in members:
        t = x & s
        if t and not t & (t - 1):
            hit |= t
    return hit


def separation_counts(
    fam: SetFamily, max_size: int | None = None
) -> tuple[int, int, list[tuple[int, int]]]:
    """Count pairs ``(s, j)``, ``j in s``, with some member meeting ``s`` in ``{j}``.

    ``max_size=None`` checks every nonempty ``s`` (universe size at most
    12); otherwise only ``|s| <= max_size``.  Returns ``(witnessed, total,
    failures)`` with ``failures`` in enumeration order.
    """
    m = fam.universe_size
    if max_size is None and m > SEPARATING_EXHAUSTIVE_LIMIT:
        raise SizeLimitError(
            f"exhaustive separation check is capped at m={SEPARATING_EXHAUSTIVE_LIMIT}; pass max_size"
        )
    witnessed = total = 0
    failures: list[tuple[int, int]] = []
    if m <= 63 and fam.members:
        arr = np.array(fam.members, dtype=np.uint64)
    else:
        arr = None
    for s in _subsets_up_to(m, max_size):
        if arr is not None:
            t = arr & np.uint64(s)
            single = (t != 0) & ((t & (t - np.uint64(1))) == 0)
            hit = int(np.bitwise_or.reduce(t[single])) if single.any() else 0
        else:
            hit = _witnessed(fam.members, s)
        total += popcount(s)
        witnessed += popcount(hit)
        for j in bits(s & ~hit):
            failures.append((s, j))
    return witnessed, total, failures


def is_separating(fam: SetFamily, max_size: int | None = None) -> tuple[bool, tuple[list[int], int] | None]:
    """For every nonempty ``s`` and ``j in s`` some member has ``x & s == {j}``.

    Over the whole finite universe this holds iff every singleton is a
    member (take ``s = Y``); ``max_size`` restricts to small ``s``, the
    meaningful finite stand-in for density.
    Returns the first failing ``(s, j)`` as (element list, j).
    """
    m = fam.universe_size
    if max_size is None and m > SEPARATING_EXHAUSTIVE_LIMIT:
        raise SizeLimitError(
            f"exhaustive separation check is capped at m={SEPARATING_EXHAUSTIVE_LIMIT}; pass max_size"
        )
    for s in _subsets_up_to(m, max_size):
        hit = _witnessed(fam.members, s)
        if hit != s:
            return False, (list(bits(s)), next(bits(s & ~hit)))
    return True, None


def is_noncovered(fam: SetFamily) -> tuple[bool, int | None]:
    """Every member has an element outside the union of all other members."""
    xs = fam.members
    n = len(xs)
    prefix = [0] * (n + 1)
    for i, x in enumerate(xs):
        prefix[i + 1] = prefix[i] | x
    suffix = 0
    bad = None
    for i in range(n - 1, -1, -1):
        if xs[i] & ~(prefix[i] | suffix) == 0:
            bad = i
        suffix |= xs[i]
    return (bad is None), bad


def is_almost_disjoint(fam: SetFamily, threshold: int) -> tuple[bool, tuple[int, int] | None]:
    """``|x & y| <= threshold`` for all pairs of distinct member indices."""
    xs = fam.members
    for i, j in combinations(range(len(xs)), 2):
        if popcount(xs[i] & xs[j]) > threshold:
            return False, (i, j)
    return True, None


def dual(fam: SetFamily) -> SetFamily:
    """Family over the member indices: ``z(i) = {x : i in member x}``."""
    zs = [0] * fam.universe_size
    for idx, x in enumerate(fam.members):
        for i in bits(x):
            zs[i] |= 1 << idx
    return SetFamily(len(fam.members), tuple(zs))


# -- constructions ------------------------------------------------------


def fk_family(depth: int, limit: int = FK_DEPTH_LIMIT) -> tuple[SetFamily, list[tuple[int, tuple[str, ...]]]]:
    """Independent family from branches of the binary tree, truncated at ``depth``.

    The universe lists, for each level ``m = 0..depth``, every set ``T`` of
    binary strings of length ``m`` (strings ordered by value, sets in
    binary counting order of their characteristic vectors).  Each level
    contributes its own empty set.  Member ``X_f`` for ``f`` in
    ``{0,1}^depth`` (binary order) holds the level sets ``T`` containing
    the prefix of ``f`` of that length.

    Returns the family and a legend ``index -> (m, strings of T)``.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth > limit:
        raise SizeLimitError(f"fk_family is capped at depth {limit} (got {depth})")
    legend: list[tuple[int, tuple[str, ...]]] = []
    offsets = []
    for m in range(depth + 1):
        offsets.append(len(legend))
        strings = [format(v, f"0{m}b") if m else "" for v in range(1 << m)]
        for t in range(1 << (1 << m)):
            legend.append((m, tuple(strings[v] for v in bits(t))))
    members = []
    for f in range(1 << depth):
        x = 0
        for m in range(depth + 1):
            prefix = f >> (depth - m)  # value of the first m characters
            for t in range(1 << (1 << m)):
                if (t >> prefix) & 1:
                    x |= 1 << (offsets[m] + t)
        members.append(x)
    return SetFamily(len(legend), tuple(members)), legend


def branch_family(depth: int) -> SetFamily:
    """Root-to-leaf paths of the complete binary tree of the given depth.

    Nodes are numbered breadth-first (root 0, children of ``v`` are
    ``2v+1``, ``2v+2``).  Two distinct branches share exactly their common
    prefix, at most ``depth`` nodes.
    """
    n_nodes = (1 << (depth + 1)) - 1
    members = []
    for leaf in range((1 << depth) - 1, n_nodes):
        x, v = 0, leaf
        while True:
            x |= 1 << v
            if v == 0:
                break
            v = (v - 1) // 2
        members.append(x)
    return SetFamily(n_nodes, tuple(members))


def bipartite_graph(fam: SetFamily) -> Graph:
    """Vertices ``0..m-1`` are the universe, then one vertex per member."""
    m = fam.universe_size
    edges = [(i, m + idx) for idx, x in enumerate(fam.members) for i in bits(x)]
    return Graph.from_edges(m + len(fam.members), edges)


def pair_subgraph(fam: SetFamily, pair: FinitePair) -> Graph:
    """Induced subgraph of :func:`bipartite_graph` on ``pair.g`` then ``pair.f``."""
    vs = list(pair.g) + [fam.universe_size + i for i in pair.f]
    return bipartite_graph(fam).induced(vs)


# -- the full-matrix pattern -------------------------------------------


def lambda_witness(fam: SetFamily, pair: FinitePair) -> FinitePair | None:
    """Order ``pair`` as ``x(1..n)``, ``k(1..n)`` with split ``l`` such that

    * ``j <= l``: ``x(j)`` meets ``{k(1..n)}`` exactly in ``k(j)``;
    * ``i > l``: ``k(i)`` lies in ``x(i)`` and in no other chosen member.

    Such a pair generates a full matrix algebra.  Returns ``None`` when
    no ordering exists (including ``|f| != |g|`` or an empty pair).
    """
    pair.check(fam)
    n = len(pair.f)
    if n == 0 or n != len(pair.g):
        return None
    K = vertex_set(pair.g)
    xs = [fam.members[i] for i in pair.f]
    owners = {k: [a for a in range(n) if (xs[a] >> k) & 1] for k in pair.g}

    def kind(a: int, k: int) -> int:
        """0: not admissible, 1: exact meet, 2: private element."""
        if not (xs[a] >> k) & 1:
            return 0
        if xs[a] & K == 1 << k:
            return 1
        return 2 if owners[k] == [a] else 0

    match = _match([[k for k in pair.g if kind(a, k)] for a in range(n)])
    if match is None:
        return None
    order = sorted(range(n), key=lambda a: (kind(a, match[a]) != 1, a))
    split = sum(1 for a in order if kind(a, match[a]) == 1)
    return FinitePair(tuple(pair.f[a] for a in order), tuple(match[a] for a in order), split)


def _match(candidates: list[list[int]]) -> list[int] | None:
    """Perfect matching of rows to distinct candidates (augmenting paths)."""
    owner: dict[int, int] = {}

    def augment(a: int, seen: set[int]) -> bool:
        for k in candidates[a]:
            if k in seen:
                continue
            seen.add(k)
            if k not in owner or augment(owner[k], seen):
                owner[k] = a
                return True
        return False

    for a in range(len(candidates)):
        if not augment(a, set()):
            return None
    out = [0] * len(candidates)
    for k, a in owner.items():
        out[a] = k
    return out


def _literal_extension(fam: SetFamily, pair: FinitePair) -> FinitePair | None:
    """Two-step selection: private elements for the members, then exact
    meets for the elements.  Returns None if a selection is unavailable."""
    xs = fam.members
    F = list(pair.f)
    G = list(pair.g)
    # pad the smaller side
    while len(G) < len(F):
        covered = fam.union(F)
        pool = [k for k in range(fam.universe_size) if k not in G]
        fresh = [k for k in pool if not (covered >> k) & 1] or pool
        if not fresh:
            return None
        G.append(fresh[0])
    while len(F) < len(G):
        gmask = vertex_set(G)
        added = False
        for i in range(len(xs)):
            if i in F:
                continue
            trial = F + [i]
            if all(xs[a] & ~(fam.union(b for b in trial if b != a) | gmask) for a in trial):
                F.append(i)
                added = True
                break
        if not added:
            return None
    gmask = vertex_set(G)
    ks = []
    for a in F:
        private = xs[a] & ~(fam.union(b for b in F if b != a) | gmask)
        if not private:
            return None
        ks.append((private & -private).bit_length() - 1)
    K = gmask | vertex_set(ks)
    partners = []
    for k in G:
        hit = next((i for i, x in enumerate(xs) if x & K == 1 << k), None)
        if hit is None:
            return None
        partners.append(hit)
    return FinitePair(tuple(partners + F), tuple(G + ks), len(G))


def _search_extension(fam: SetFamily, pair: FinitePair, max_size: int) -> FinitePair | None:
    """Smallest ``K`` containing ``pair.g`` (then lexicographic) for which
    the members of ``pair.f`` can be given admissible partners in ``K`` and
    every remaining element of ``K`` has a fresh member meeting ``K`` in it."""
    xs = fam.members
    F = list(pair.f)
    G = list(pair.g)
    rest = [k for k in range(fam.universe_size) if k not in G]
    steps = 0
    lo = max(len(F), len(G), 1)
    for size in range(lo, min(max_size, fam.universe_size) + 1):
        for extra in combinations(rest, size - len(G)):
            steps += 1
            if steps > EXTEND_STEP_LIMIT:
                raise ResourceExhaustedError("extension search exceeded its step budget")
            Kl = G + list(extra)
            K = vertex_set(Kl)
            exact = {k: [i for i, x in enumerate(xs) if x & K == 1 << k and i not in F] for k in Kl}
            owners = {k: [a for a in F if (xs[a] >> k) & 1] for k in Kl}
            cands = []
            for a in F:
                row = []
                for k in Kl:
                    if (xs[a] >> k) & 1 and (xs[a] & K == 1 << k or owners[k] == [a]):
                        row.append(k)
                cands.append(row)
            for match in _all_matchings(cands):
                used = set(match)
                free = [k for k in Kl if k not in used]
                if all(exact[k] for k in free):
                    f = F + [exact[k][0] for k in free]
                    g = match + free
                    w = lambda_witness(fam, FinitePair(tuple(f), tuple(g)))
                    if w is not None:
                        return w
    return None


def _reduce(basis: dict[int, int], v: int) -> int:
    """Reduce ``v`` against an XOR basis keyed by leading bit."""
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            return v
        v ^= basis[top]
    return 0


def _invertible_extension(fam: SetFamily, pair: FinitePair, max_size: int) -> FinitePair | None:
    """Smallest ``K`` containing ``pair.g`` such that the members of
    ``pair.f`` plus greedily chosen further members restrict to a basis of
    ``GF(2)^K``.  A square invertible incidence block is exactly the
    condition for the induced bipartite subgraph to have ``l = 0``; this
    covers pairs (e.g. nested members) that admit no ordered pattern."""
    xs = fam.members
    F = list(pair.f)
    G = list(pair.g)
    rest = [k for k in range(fam.universe_size) if k not in G]
    steps = 0
    for size in range(max(len(F), len(G), 1), min(max_size, fam.universe_size) + 1):
        for extra in combinations(rest, size - len(G)):
            steps += 1
            if steps > EXTEND_STEP_LIMIT:
                raise ResourceExhaustedError("extension search exceeded its step budget")
            K = vertex_set(G + list(extra))
            basis: dict[int, int] = {}
            ok = True
            for a in F:
                r = _reduce(basis, xs[a] & K)
                if not r:
                    ok = False
                    break
                basis[r.bit_length() - 1] = r
            if not ok:
                continue
            added = []
            for i, x in enumerate(xs):
                if len(basis) == size:
                    break
                if i in F:
                    continue
                r = _reduce(basis, x & K)
                if r:
                    basis[r.bit_length() - 1] = r
                    added.append(i)
            if len(basis) == size:
                return FinitePair(tuple(F + added), tuple(G + list(extra)))
    return None


def _all_matchings(cands: list[list[int]]):
    n = len(cands)
    chosen: list[int] = []

    def rec(a: int):
        if a == n:
            yield list(chosen)
            return
        for k in cands[a]:
            if k not in chosen:
                chosen.append(k)
                yield from rec(a + 1)
                chosen.pop()

    yield from rec(0)


def extend_to_full_matrix(fam: SetFamily, pair: FinitePair, max_size: int | None = None) -> FinitePair:
    """Enlarge ``pair`` to one whose induced bipartite subgraph gives a full
    matrix algebra (see :func:`lambda_witness` for the pattern).

    Tries, in order: the pair itself; the two-step selection (private
    elements for the given members, then members meeting the chosen
    elements exactly in one point); a bounded search over element sets.
    If no ordered pattern exists, falls back to any square invertible
    incidence block; such a result has ``split=None``.
    Raises :class:`ResourceExhaustedError` when none succeeds.
    """
    pair.check(fam)
    witness = lambda_witness(fam, pair)
    if witness is None:
        witness = _literal_extension(fam, pair)
        if witness is not None:
            witness = lambda_witness(fam, witness)
    if witness is None:
        cap = fam.universe_size if max_size is None else max_size
        witness = _search_extension(fam, pair, cap)
        if witness is None:
            witness = _invertible_extension(fam, pair, cap)
    if witness is None:
        raise ResourceExhaustedError(
            f"no full-matrix extension of f={list(pair.f)}, g={list(pair.g)} within this family"
        )
    if not witness.contains(pair):
        raise AssertionError("extension lost part of the input pair")
    if classify(pair_subgraph(fam, witness)).l != 0:
        raise AssertionError("extension does not generate a full matrix algebra")
    return witness


# -- densify ------------------------------------------------------------


@dataclass
class DensifyReport:
    edits: list[tuple[int, int]] = field(default_factory=list)
    witnessed_before: int = 0
    witnessed_after: int = 0
    total: int = 0
    budget: int = 0
    max_selection: int = 0
    separation_size: int | None = None
    unsatisfied: list[tuple[list[int], int]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "edits": [list(e) for e in self.edits],
            "witnessed_before": self.witnessed_before,
            "witnessed_after": self.witnessed_after,
            "total_pairs": self.total,
            "budget": self.budget,
            "budget_used": len(self.edits),
            "max_selection": self.max_selection,
            "separation_size": self.separation_size,
            "unsatisfied": [[s, j] for s, j in self.unsatisfied],
        }


def densify(
    fam: SetFamily,
    edit_budget: int,
    max_selection: int | None = None,
    separation_size: int | None = 2,
    report_limit: int = 20,
) -> tuple[SetFamily, DensifyReport]:
    """Greedy single-element toggles that raise the separation count.

    Each step toggles the (member, element) pair with the largest gain in
    witnessed ``(s, j)`` pairs among those keeping the family independent
    at ``max_selection`` (default ``min(4, |members|)``); ties go to the
    lowest member index, then the lowest element.  Stops when the budget
    (number of toggles) is spent or nothing improves.
    """
    if edit_budget < 0:
        raise ValueError("edit budget must be non-negative")
    sel = min(4, len(fam)) if max_selection is None else max_selection
    ok, bad = is_independent(fam, sel)
    if not ok:
        raise ValueError(f"input family is not independent at selection size {sel}: {bad}")
    before, total, _ = separation_counts(fam, separation_size)
    current, score = fam, before
    report = DensifyReport(
        witnessed_before=before, total=total, budget=edit_budget, max_selection=sel,
        separation_size=separation_size,
    )
    while len(report.edits) < edit_budget and score < total:
        best = None
        for a in range(len(current)):
            x = current.members[a]
            for e in range(current.universe_size):
                trial = current.replace(a, x ^ (1 << e))
                gain = separation_counts(trial, separation_size)[0] - score
                if gain <= 0 or (best is not None and gain <= best[0]):
                    continue
                if is_independent(trial, sel)[0]:
                    best = (gain, a, e, trial)
        if best is None:
            break
        gain, a, e, current = best
        score += gain
        report.edits.append((a, e))
    witnessed, _, failures = separation_counts(current, separation_size)
    report.witnessed_after = witnessed
    report.unsatisfied = [(list(bits(s)), j) for s, j in failures[:report_limit]]
    return current, report


# -- text format --------------------------------------------------------
#
#   m=<int>
#   0,2,5      (one member per line)
#              (an empty line is the empty member)
#   # comment  (whole-line comments are skipped)


def parse_family(text: str) -> SetFamily:
    lines = text.splitlines()
    body = []
    head = None
    for ln in lines:
        stripped = ln.strip()
        if stripped.startswith("#"):
            continue
        content = ln.split("#", 1)[0].strip()
        if head is None:
            if not content:
                continue
            head = content.replace(" ", "")
            continue
        body.append(content)
    if head is None:
        raise FamilyFormatError("empty family text")
    if not head.startswith("m="):
        raise FamilyFormatError(f"first line must be 'm=<int>', got {head!r}")
    try:
        m = int(head[2:])
    except ValueError:
        raise FamilyFormatError(f"bad universe size in {head!r}") from None
    if m < 0:
        raise FamilyFormatError("universe size must be non-negative")
    members = []
    for content in body:
        if not content:
            members.append(0)
            continue
        x = 0
        for tok in content.split(","):
            tok = tok.strip()
            try:
                k = int(tok)
            except ValueError:
                raise FamilyFormatError(f"non-integer element {tok!r}") from None
            if not 0 <= k < m:
                raise FamilyFormatError(f"element {k} outside 0..{m - 1}")
            x |= 1 << k
        members.append(x)
    return SetFamily(m, tuple(members))


def format_family(fam: SetFamily) -> str:
    out = io.StringIO()
    out.write(f"m={fam.universe_size}\n")
    for x in fam.members:
        out.write(",".join(str(k) for k in bits(x)) + "\n")
    return out.getvalue()

"""Exhaustive enumeration of labeled graphs by algebra class."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .graph import Graph
from .iso import SizeLimitError
from .switch import canonicalize

__all__ = ["ClassTable", "enumerate_classes", "isomorphism_types", "ENUM_LIMIT"]

ENUM_LIMIT = 6
TYPES_LIMIT = 5


@dataclass
class ClassTable:
    """Counts per ``k`` for all graphs on ``n`` labeled vertices.

    ``types`` (isomorphism-type counts) is only filled for ``n <= 5``.
    """

    n: int
    labeled: dict[int, int] = field(default_factory=dict)
    types: dict[int, int] | None = None
    representatives: dict[int, list[Graph]] | None = None

    @property
    def n_classes(self) -> int:
        return len(self.labeled)

    def as_dict(self) -> dict:
        rows = []
        for k in sorted(self.labeled):
            row = {"k": k, "l": self.n - 2 * k, "labeled": self.labeled[k]}
            if self.types is not None:
                row["types"] = self.types[k]
            rows.append(row)
        return {"n": self.n, "classes": self.n_classes, "rows": rows}


def _count_range(n: int, start: int, stop: int) -> dict[int, int]:
    counts: dict[int, int] = {}
    for mask in range(start, stop):
        k = canonicalize(Graph.from_edge_mask(n, mask)).k
        counts[k] = counts.get(k, 0) + 1
    return counts


def _edge_permutations(n: int) -> list[list[int]]:
    """For each vertex permutation, the induced permutation of edge slots."""
    edges = list(combinations(range(n), 2))
    index = {e: i for i, e in enumerate(edges)}
    out = []
    for perm in permutations(range(n)):
        out.append([index[tuple(sorted((perm[u], perm[v])))] for u, v in edges])
    return out


def _permute_mask(mask: int, slots: list[int]) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << slots[i]
        mask >>= 1
        i += 1
    return out


def isomorphism_types(n: int) -> list[int]:
    """One edge mask per isomorphism type (the smallest mask of each orbit)."""
    if n > TYPES_LIMIT:
        raise SizeLimitError(f"isomorphism types are only enumerated for n <= {TYPES_LIMIT}")
    perms = _edge_permutations(n)
    n_masks = 1 << (n * (n - 1) // 2)
    seen = bytearray(n_masks)
    reps = []
    for mask in range(n_masks):
        if seen[mask]:
            continue
        reps.append(mask)
        for slots in perms:
            seen[_permute_mask(mask, slots)] = 1
    return reps


def enumerate_classes(n: int, limit: int = ENUM_LIMIT, jobs: int = 1) -> ClassTable:
    """Classify all ``2^{n(n-1)/2}`` labeled graphs on ``n`` vertices.

    With ``jobs > 1`` the mask range is split across worker processes; the
    merged table does not depend on the split.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > limit:
        raise SizeLimitError(f"enumeration is capped at n={limit} (got {n})")
    n_masks = 1 << (n * (n - 1) // 2)
    if jobs <= 1 or n_masks < 1024:
        labeled = _count_range(n, 0, n_masks)
    else:
        step = -(-n_masks // jobs)
        bounds = [(lo, min(lo + step, n_masks)) for lo in range(0, n_masks, step)]
        labeled = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_count_range, [n] * len(bounds), *zip(*bounds))
            for part in parts:
                for k, c in part.items():
                    labeled[k] = labeled.get(k, 0) + c
    table = ClassTable(n, dict(sorted(labeled.items())))
    if n <= TYPES_LIMIT:
        types: dict[int, int] = {}
        reps: dict[int, list[Graph]] = {}
        for mask in isomorphism_types(n):
            g = Graph.from_edge_mask(n, mask)
            k = canonicalize(g).k
            types[k] = types.get(k, 0) + 1
            reps.setdefault(k, []).append(g)
        table.types = dict(sorted(types.items()))
        table.representatives = dict(sorted(reps.items()))
    return table

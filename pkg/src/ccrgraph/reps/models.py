"""Matrix models of B(G).

Three constructions:

* :func:`rep_pairs`: one qubit per vertex pair ``i < j``.  It realizes the
  relations but is not faithful: isolated vertices become the identity and
  the span of words is usually far below ``2^n``.  Use it for relation and
  norm checks only.
* :func:`rep_bipartite`: for a set family, bit flips on the universe
  qubits and sign masks for the members.
* :func:`rep_canonical`: the faithful model on ``(C^2)^{(x) k} (x) C^{2^l}``
  obtained from the canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..graphcore import CanonicalForm, GeneratorWord, Graph, bits, canonical_graph, canonicalize, self_adjoint_word
from ..setfam import SetFamily, bipartite_graph
from .operators import DIM_CAP, PAULI_X, PAULI_Z, CapExceededError, TensorOperator

__all__ = [
    "Representation",
    "RelationError",
    "LAZY_DIM_CAP",
    "DEFAULT_TOLERANCE",
    "rep_pairs",
    "rep_bipartite",
    "rep_canonical",
    "canonical_generators",
]

DEFAULT_TOLERANCE = 1e-12
LAZY_DIM_CAP = 1 << 16


class RelationError(AssertionError):
    """A constructed representation failed its own relation check."""


@dataclass(frozen=True)
class Representation:
    """Generators ``u_v`` (one per vertex of ``graph``) acting on ``C^dim``.

    In dense mode generators are ``np.ndarray``; in lazy mode they are
    :class:`TensorOperator` and only support vector products.
    ``words`` (canonical model only) gives each generator as a word over
    the canonical generators ``factors``.
    """

    graph: Graph
    kind: str
    dim: int
    generators: tuple
    tolerance: float = DEFAULT_TOLERANCE
    lazy: bool = False
    words: tuple[GeneratorWord, ...] | None = None
    factors: tuple[TensorOperator, ...] | None = None
    canonical: CanonicalForm | None = None

    @property
    def n(self) -> int:
        return self.graph.n


def _finish(rep: Representation, check: bool) -> Representation:
    if check:
        from .checks import verify_relations

        report = verify_relations(rep)
        if not report.passed:
            raise RelationError(f"{rep.kind} model fails its relations: {report.failures[:3]}")
    return rep


def _build(
    graph: Graph, kind: str, n_sites: int, ops: list[TensorOperator], lazy: bool, cap: int,
    tolerance: float, check: bool,
) -> Representation:
    dim = 1 << n_sites
    if lazy:
        if dim > LAZY_DIM_CAP:
            raise CapExceededError(f"dimension {dim} exceeds the lazy cap {LAZY_DIM_CAP}")
        gens = tuple(ops)
    else:
        if dim > cap:
            raise CapExceededError(f"dimension {dim} exceeds cap {cap}; use lazy=True for vector-only checks")
        gens = tuple(op.to_dense(cap) for op in ops)
    return _finish(Representation(graph, kind, dim, gens, tolerance, lazy), check)


def rep_pairs(
    g: Graph, lazy: bool = False, cap: int = DIM_CAP, tolerance: float = DEFAULT_TOLERANCE, check: bool = True
) -> Representation:
    """Tensor product over vertex pairs ``i < j`` (site order = lexicographic).

    At site ``(i, j)`` with ``i ~ j``, ``u_i`` carries ``diag(1, -1)`` and
    ``u_j`` carries ``[[0, 1], [1, 0]]``; all other factors are identities.
    """
    sites = list(combinations(range(g.n), 2))
    ops = []
    for k in range(g.n):
        fs = {}
        for s, (i, j) in enumerate(sites):
            if g.has_edge(i, j):
                if k == i:
                    fs[s] = PAULI_Z
                elif k == j:
                    fs[s] = PAULI_X
        ops.append(TensorOperator.from_sites(len(sites), fs))
    return _build(g, "pairs", len(sites), ops, lazy, cap, tolerance, check)


def rep_bipartite(
    fam: SetFamily, lazy: bool = False, cap: int = DIM_CAP, tolerance: float = DEFAULT_TOLERANCE, check: bool = True
) -> Representation:
    """One qubit per universe element; generators in the vertex order of
    :func:`ccrgraph.setfam.bipartite_graph` (elements, then members).

    Element ``i`` flips qubit ``i``; member ``x`` applies ``diag(1, -1)``
    on every qubit in ``x``.
    """
    m = fam.universe_size
    ops = [TensorOperator.from_sites(m, {i: PAULI_X}) for i in range(m)]
    ops += [TensorOperator.from_sites(m, {i: PAULI_Z for i in bits(x)}) for x in fam.members]
    return _build(bipartite_graph(fam), "bipartite", m, ops, lazy, cap, tolerance, check)


def canonical_generators(k: int, l: int) -> list[TensorOperator]:
    """Generators of the canonical graph on ``k`` qubits times ``C^{2^l}``.

    Pair ``j`` (vertices ``2j``, ``2j+1``) gets ``diag(1,-1)`` and the flip
    on qubit ``j``.  Unmatched vertex ``2k + r`` is the diagonal sign
    ``(-1)^{bit r of t}`` on basis index ``t`` of ``C^{2^l}``, which is
    ``diag(1,-1)`` on tensor site ``k + l - 1 - r``.
    """
    q = k + l
    ops = []
    for j in range(k):
        ops.append(TensorOperator.from_sites(q, {j: PAULI_Z}))
        ops.append(TensorOperator.from_sites(q, {j: PAULI_X}))
    for r in range(l):
        ops.append(TensorOperator.from_sites(q, {k + l - 1 - r: PAULI_Z}))
    return ops


def _word_tensor(factors: list[TensorOperator], w: GeneratorWord, n_sites: int) -> TensorOperator:
    out = TensorOperator.identity(n_sites)
    for v in bits(w.support):
        out = out @ factors[v]
    return out.scaled(w.phase)


def rep_canonical(
    g: Graph, cap: int = DIM_CAP, tolerance: float = DEFAULT_TOLERANCE, check: bool = True
) -> Representation:
    """Faithful model: ``dim = 2^{k+l}`` and the words span ``2^n`` dimensions.

    Original vertex ``x`` is realized by the self-adjoint word over the
    canonical vertices whose product maps to ``x`` (column ``x`` of the
    inverse basis change), with the phase ``+1`` or ``+i`` that makes it
    self-adjoint.
    """
    cf = canonicalize(g)
    q = cf.k + cf.l
    dim = 1 << q
    if dim > cap:
        raise CapExceededError(f"dimension {dim} exceeds cap {cap}")
    target = canonical_graph(cf.k, cf.l)
    factors = canonical_generators(cf.k, cf.l)
    words = tuple(self_adjoint_word(target, cf.preimage(x)) for x in range(g.n))
    gens = tuple(_word_tensor(factors, w, q).to_dense(cap) for w in words)
    rep = Representation(
        g, "canonical", dim, gens, tolerance, False, words=words, factors=tuple(factors), canonical=cf
    )
    return _finish(rep, check)

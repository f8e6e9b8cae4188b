from functools import reduce

import networkx as nx
import numpy as np
import pytest
from conftest import graphs
from hypothesis import given
from hypothesis import strategies as st

from ccrgraph.graphcore import (
    UNIT,
    GeneratorWord,
    Graph,
    PatternError,
    SizeLimitError,
    canonical_graph,
    cocycle,
    commutes,
    equivalent,
    g_infinity,
    graphs_isomorphic,
    is_self_adjoint,
    normalize_pairing,
    self_adjoint_phase,
    word_adjoint,
    word_mul,
)

EDGE = Graph.complete(2)
I2 = np.eye(2)
Z = np.diag([1.0, -1.0])
X = np.array([[0.0, 1.0], [1.0, 0.0]])


def pauli_generators(g: Graph) -> list[np.ndarray]:
    """u_v = X_v * prod_{w < v, w ~ v} Z_w; an independent matrix model of B(G)."""
    out = []
    for v in range(g.n):
        mats = [I2] * g.n
        mats[v] = X
        for w in range(v):
            if g.has_edge(v, w):
                mats[w] = Z
        out.append(reduce(np.kron, mats, np.eye(1)))
    return out


def word_matrix(gens, w: GeneratorWord) -> np.ndarray:
    m = np.eye(gens[0].shape[0] if gens else 1, dtype=complex)
    for v in w.vertices():
        m = m @ gens[v]
    return w.phase * m


@st.composite
def graph_and_words(draw, count=2, max_n=6):
    g = draw(graphs(min_n=1, max_n=max_n))
    ws = [
        GeneratorWord(draw(st.integers(0, (1 << g.n) - 1)), draw(st.integers(0, 3)))
        for _ in range(count)
    ]
    return g, ws


# -- word products ------------------------------------------------------


def test_word_mul_examples():
    a, b = GeneratorWord.generator(0), GeneratorWord.generator(1)
    assert word_mul(EDGE, a, b) == GeneratorWord(0b11, 0)
    assert word_mul(EDGE, b, a) == GeneratorWord(0b11, 2)
    assert word_mul(EDGE, a, a) == UNIT
    w = GeneratorWord(0b11, 1)
    assert word_mul(EDGE, w, UNIT) == w == word_mul(EDGE, UNIT, w)


def test_word_validation():
    with pytest.raises(ValueError):
        word_mul(EDGE, GeneratorWord(0b100), UNIT)
    with pytest.raises(ValueError):
        GeneratorWord(-1)
    assert GeneratorWord(1, 5).power == 1
    assert str(GeneratorWord(0b101, 2)) == "-u0·u2"


def test_self_adjoint_phase_examples():
    assert self_adjoint_phase(EDGE, 0b01) == 1
    assert self_adjoint_phase(EDGE, 0b11) == 1j
    assert self_adjoint_phase(Graph.null(4), 0b1011) == 1
    with pytest.raises(ValueError):
        self_adjoint_phase(EDGE, 0)


@given(graph_and_words(count=2))
def test_word_mul_matches_matrices(data):
    g, (w1, w2) = data
    gens = pauli_generators(g)
    got = word_matrix(gens, word_mul(g, w1, w2))
    assert np.allclose(got, word_matrix(gens, w1) @ word_matrix(gens, w2), atol=1e-12)


@given(graph_and_words(count=1))
def test_adjoint_matches_matrices(data):
    g, (w,) = data
    gens = pauli_generators(g)
    assert np.allclose(word_matrix(gens, word_adjoint(g, w)), word_matrix(gens, w).conj().T)
    assert word_mul(g, w, word_adjoint(g, w)) == UNIT


@given(graph_and_words(count=3))
def test_word_mul_associative(data):
    g, (a, b, c) = data
    assert word_mul(g, word_mul(g, a, b), c) == word_mul(g, a, word_mul(g, b, c))


@given(graphs(min_n=1, max_n=8), st.data())
def test_self_adjoint_phase_gives_self_adjoint_word(g, data):
    s = data.draw(st.integers(1, (1 << g.n) - 1))
    w = GeneratorWord.from_phase(self_adjoint_phase(g, s), s)
    assert is_self_adjoint(g, w)


# -- cocycle ------------------------------------------------------------


def test_cocycle_examples():
    assert cocycle(EDGE, 0, 0b11) == 1 == cocycle(EDGE, 0b11, 0)
    assert cocycle(EDGE, 0b01, 0b10) == -1
    assert cocycle(Graph.complete(3), 0b011, 0b110) == -1


@given(graphs(max_n=9), st.data())
def test_cocycle_laws(g, data):
    full = (1 << g.n) - 1
    s, t1, t2 = (data.draw(st.integers(0, full)) for _ in range(3))
    assert cocycle(g, s, t1) == cocycle(g, t1, s)
    assert cocycle(g, s, t1 ^ t2) == cocycle(g, s, t1) * cocycle(g, s, t2)
    if g.edges_within(s) % 2 == 0:
        assert cocycle(g, s, s) == 1


@given(graph_and_words(count=2))
def test_commutes_matches_matrices(data):
    g, (w1, w2) = data
    gens = pauli_generators(g)
    a, b = word_matrix(gens, w1), word_matrix(gens, w2)
    assert commutes(g, w1.support, w2.support) == np.allclose(a @ b, b @ a)


# -- pairing normalisation ----------------------------------------------


def test_normalize_pairing_already_matched():
    g = canonical_graph(2, 0)  # pairs (0,1), (2,3)
    words = normalize_pairing(g, [0, 2], [1, 3], 0)
    assert words == [GeneratorWord.generator(1), GeneratorWord.generator(3)]
    assert normalize_pairing(g, [0, 2], [1, 3], 2) == words


def test_normalize_pairing_repairs_extra_edge():
    # u = (0, 1), v = (2, 3); v_1 is also adjacent to u_0
    g = Graph.from_edges(4, [(0, 2), (1, 3), (0, 3)])
    w = normalize_pairing(g, [0, 1], [2, 3], 1)
    assert w[0] == GeneratorWord.generator(2)
    assert w[1].support == 0b1100
    for j in range(2):
        for m, u in enumerate([0, 1]):
            assert (cocycle(g, w[j].support, 1 << u) == -1) == (m == j)


def test_normalize_pairing_rejects_bad_pattern():
    g = Graph.from_edges(4, [(0, 2), (1, 3), (0, 3)])
    with pytest.raises(PatternError):
        normalize_pairing(g, [0, 1], [2, 3], 0)
    with pytest.raises(PatternError):
        normalize_pairing(g, [0, 1], [2, 3], 3)


# -- subset graph and isomorphism ---------------------------------------


def test_g_infinity_examples():
    assert g_infinity(Graph.null(1)) == Graph.null(1)
    assert g_infinity(Graph.null(3)) == Graph.null(7)
    assert g_infinity(EDGE) == Graph.complete(3)
    with pytest.raises(SizeLimitError):
        g_infinity(Graph.null(5))


def test_isomorphism_examples():
    k3 = Graph.complete(3)
    assert graphs_isomorphic(k3, k3.relabel([2, 0, 1])) is not None
    assert graphs_isomorphic(k3, Graph.path(3)) is None
    assert graphs_isomorphic(g_infinity(EDGE), k3) is not None
    with pytest.raises(SizeLimitError):
        graphs_isomorphic(Graph.null(17), Graph.null(17))


def _nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@given(graphs(max_n=8), graphs(max_n=8))
def test_isomorphism_matches_networkx(g, h):
    p = graphs_isomorphic(g, h)
    assert (p is not None) == nx.is_isomorphic(_nx(g), _nx(h))
    if p is not None:
        assert sorted(p) == list(range(g.n))
        for u in range(g.n):
            for v in range(g.n):
                assert g.has_edge(u, v) == h.has_edge(p[u], p[v])


@given(graphs(min_n=2, max_n=9), st.permutations(range(9)))
def test_isomorphism_finds_relabelling(g, perm):
    p = [x for x in perm if x < g.n]
    assert graphs_isomorphic(g, g.relabel(p)) is not None


def test_subset_graph_detects_equivalence_n3():
    gs = [Graph.from_edge_mask(3, m) for m in range(8)]
    infs = [g_infinity(g) for g in gs]
    for a in range(8):
        for b in range(8):
            assert equivalent(gs[a], gs[b]) == (graphs_isomorphic(infs[a], infs[b]) is not None)

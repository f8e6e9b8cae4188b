"""End-to-end acceptance checks, one test per numbered criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary
(``criterion N: ...``) and then asserts, so a failing criterion also fails
the run.
"""

import time

import conftest
import numpy as np

from ccrgraph import gf2
from ccrgraph.graphcore import (
    GeneratorWord,
    Graph,
    SwitchMove,
    apply_switch,
    canonicalize,
    classify,
    cocycle,
    enumerate_classes,
    equivalent,
    g_infinity,
    graphs_isomorphic,
    isomorphism_types,
    random_graph,
    replay,
    self_adjoint_word,
    word_mul,
)
from ccrgraph.reps import (
    center_dimension,
    commutant_dimension,
    min_generator_distance,
    rep_bipartite,
    rep_canonical,
    rep_pairs,
    span_dimension,
    state_vanishing_check,
    tensor_gap_bound,
    verify_relations,
    word_to_operator,
)
from ccrgraph.setfam import (
    FinitePair,
    SetFamily,
    bipartite_graph,
    dual,
    extend_to_full_matrix,
    fk_family,
    is_independent,
    is_noncovered,
    is_separating,
    pair_subgraph,
)

SQRT2 = np.sqrt(2.0)


def record(cid: int, ok: bool, detail: str) -> None:
    conftest.ACCEPTANCE_RESULTS[cid] = (bool(ok), detail)
    print(f"criterion {cid}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, f"criterion {cid}: {detail}"


def all_graphs(n: int):
    for mask in range(1 << (n * (n - 1) // 2)):
        yield Graph.from_edge_mask(n, mask)


def random_family(rng, m: int, size: int) -> SetFamily:
    return SetFamily(m, tuple(int(x) for x in rng.integers(0, 1 << m, size=size)))


def test_criterion_01_four_vertex_classes():
    t0 = time.perf_counter()
    types = [Graph.from_edge_mask(4, m) for m in isomorphism_types(4)]
    counts: dict[int, int] = {}
    for g in types:
        c = classify(g)
        counts[c.k] = counts.get(c.k, 0) + 1
    table = enumerate_classes(4)
    elapsed = time.perf_counter() - t0
    ok = (
        len(types) == 11
        and counts == {0: 1, 1: 6, 2: 4}
        and table.n_classes == 3
        and table.types == counts
        and elapsed < 1.0
    )
    record(1, ok, f"types={len(types)} per-k={counts} classes={table.n_classes} in {elapsed:.2f}s")


def test_criterion_02_class_count():
    t0 = time.perf_counter()
    found = {}
    for n in range(1, 7):
        ks = {canonicalize(g).k for g in all_graphs(n)}
        found[n] = sorted(ks)
    elapsed = time.perf_counter() - t0
    ok = all(found[n] == list(range(n // 2 + 1)) for n in found) and elapsed < 30
    record(2, ok, f"k values per n={found} in {elapsed:.1f}s")


def test_criterion_03_dual_oracle():
    t0 = time.perf_counter()
    checked, bad = 0, []
    for n in range(0, 6):
        for g in all_graphs(n):
            cf = canonicalize(g)
            k, _ = gf2.congruent_canonicalize(g.adjacency())
            if cf.k != k or replay(g, cf.moves) != cf.graph():
                bad.append(g)
            checked += 1
    rng = np.random.default_rng(3)
    for _ in range(1000):
        n = int(rng.integers(1, 65))
        g = random_graph(n, rng, float(rng.uniform(0.05, 0.95)))
        cf = canonicalize(g)
        k, _ = gf2.congruent_canonicalize(g.adjacency())
        if cf.k != k or replay(g, cf.moves) != cf.graph():
            bad.append(g)
        checked += 1
    elapsed = time.perf_counter() - t0
    record(3, not bad and elapsed < 60, f"{checked} graphs, {len(bad)} disagreements, {elapsed:.1f}s")


def test_criterion_04_switch_invariance():
    rng = np.random.default_rng(4)
    bad = 0
    for _ in range(10_000):
        n = int(rng.integers(1, 13))
        g = random_graph(n, rng, float(rng.uniform(0.1, 0.9)))
        x = int(rng.integers(n))
        s = int(rng.integers(1 << n)) | (1 << x)
        if classify(apply_switch(g, SwitchMove(x, s))) != classify(g):
            bad += 1
    record(4, bad == 0, f"10000 random moves, {bad} changed the class")


def test_criterion_05_representation_suite():
    t0 = time.perf_counter()
    worst_dev = 0.0
    failures = []
    pairs_checked = canonical_checked = 0
    # rep_pairs: every labelled graph up to 4 vertices, one graph per
    # isomorphism type at 5 (relabelling permutes tensor sites, a unitary change)
    pair_inputs = [g for n in range(1, 5) for g in all_graphs(n)]
    pair_inputs += [Graph.from_edge_mask(5, m) for m in isomorphism_types(5)]
    for g in pair_inputs:
        rep = rep_pairs(g, check=False)
        rel = verify_relations(rep)
        worst_dev = max(worst_dev, rel.max_deviation)
        if not rel.passed:
            failures.append(("pairs relations", g))
        if g.n >= 2 and len(g.isolated()) <= 1 and min_generator_distance(rep)[0] < SQRT2 - 1e-9:
            failures.append(("pairs distance", g))
        pairs_checked += 1
    for n in range(1, 6):
        for g in all_graphs(n):
            rep = rep_canonical(g, check=False)
            rel = verify_relations(rep)
            worst_dev = max(worst_dev, rel.max_deviation)
            cf = rep.canonical
            if not rel.passed:
                failures.append(("canonical relations", g))
            if span_dimension(rep) != 1 << n:
                failures.append(("span", g))
            if center_dimension(rep) != 1 << cf.l or commutant_dimension(rep) != 1 << cf.l:
                failures.append(("center/commutant", g))
            if n >= 2 and min_generator_distance(rep)[0] < SQRT2 - 1e-9:
                failures.append(("canonical distance", g))
            canonical_checked += 1
    elapsed = time.perf_counter() - t0
    ok = not failures and worst_dev <= 1e-12 and elapsed < 300
    record(
        5, ok,
        f"pairs={pairs_checked} canonical={canonical_checked} max deviation={worst_dev:.1e} "
        f"failures={len(failures)} {elapsed:.0f}s",
    )


def test_criterion_06_irreducible_bipartite():
    t0 = time.perf_counter()
    dims = {m: commutant_dimension(rep_bipartite(SetFamily.power_set(m))) for m in (2, 3)}
    elapsed = time.perf_counter() - t0
    record(6, dims == {2: 1, 3: 1} and elapsed < 10, f"commutant dims {dims} in {elapsed:.2f}s")


def test_criterion_07_subset_graph_equivalence():
    t0 = time.perf_counter()
    gs = [g for n in range(0, 5) for g in all_graphs(n)]
    infs = [g_infinity(g) for g in gs]
    mismatches = 0
    for a in range(len(gs)):
        for b in range(a, len(gs)):
            iso = infs[a].n == infs[b].n and graphs_isomorphic(infs[a], infs[b]) is not None
            if equivalent(gs[a], gs[b]) != iso:
                mismatches += 1
    elapsed = time.perf_counter() - t0
    n_pairs = len(gs) * (len(gs) + 1) // 2
    record(7, mismatches == 0 and elapsed < 120, f"{n_pairs} pairs, {mismatches} mismatches, {elapsed:.1f}s")


def test_criterion_08_fk_independence():
    fam, _ = fk_family(3)
    ok, bad = is_independent(fam, 4)
    record(8, ok, f"8 members over {fam.universe_size} elements, counterexample={bad}")


def test_criterion_09_duality():
    rng = np.random.default_rng(9)
    involution_bad = 0
    for _ in range(100):
        fam = random_family(rng, int(rng.integers(0, 9)), int(rng.integers(0, 9)))
        involution_bad += dual(dual(fam)) != fam
    pattern_bad = iso_bad = 0
    for _ in range(50):
        fam = random_family(rng, int(rng.integers(1, 7)), int(rng.integers(1, 7)))
        d = dual(fam)
        lhs = is_separating(fam)[0] and is_noncovered(fam)[0]
        rhs = is_separating(d)[0] and is_noncovered(d)[0]
        pattern_bad += lhs != rhs
        iso_bad += graphs_isomorphic(bipartite_graph(fam), bipartite_graph(d)) is None
    ok = involution_bad == pattern_bad == iso_bad == 0
    record(9, ok, f"involution {involution_bad}/100, condition {pattern_bad}/50, bipartite {iso_bad}/50 failures")


def test_criterion_10_word_oracle():
    rng = np.random.default_rng(10)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 9))
        g = random_graph(n, rng)
        rep = rep_canonical(g)
        for _ in range(1000):
            w1 = GeneratorWord(int(rng.integers(1 << n)), int(rng.integers(4)))
            w2 = GeneratorWord(int(rng.integers(1 << n)), int(rng.integers(4)))
            lhs = word_to_operator(rep, w1) @ word_to_operator(rep, w2)
            rhs = word_to_operator(rep, word_mul(g, w1, w2))
            worst = max(worst, float(np.abs(lhs - rhs).max()))
    record(10, worst <= 1e-12, f"20 graphs x 1000 pairs, max entry deviation {worst:.1e}")


def test_criterion_11_cocycle_laws():
    rng = np.random.default_rng(11)
    bad = 0
    for _ in range(10_000):
        n = int(rng.integers(1, 13))
        g = random_graph(n, rng)
        s, t1, t2 = (int(v) for v in rng.integers(0, 1 << n, size=3))
        bad += cocycle(g, s, t1) != cocycle(g, t1, s)
        bad += cocycle(g, s, t1 ^ t2) != cocycle(g, s, t1) * cocycle(g, s, t2)
    record(11, bad == 0, f"10000 triples, {bad} violations")


def test_criterion_12_state_vanishing():
    worst, exhaustive = 0.0, 0
    for n in range(1, 5):
        for g in all_graphs(n):
            rep = rep_canonical(g)
            for x in range(n):
                for s in range(1, 1 << n):
                    if cocycle(g, 1 << x, s) == -1:
                        worst = max(worst, state_vanishing_check(rep, x, self_adjoint_word(g, s)))
                        exhaustive += 1
    rng = np.random.default_rng(12)
    lazy_cases, reps = 0, {}
    while lazy_cases < 1000:
        n = int(rng.integers(2, 7))
        g = random_graph(n, rng)
        x = int(rng.integers(n))
        s = int(rng.integers(1, 1 << n))
        if cocycle(g, 1 << x, s) != -1:
            continue
        rep = reps.get(g) or reps.setdefault(g, rep_pairs(g, lazy=True, check=False))
        val = state_vanishing_check(rep, x, self_adjoint_word(g, s), samples=2, seed=lazy_cases)
        worst = max(worst, val)
        lazy_cases += 1
    record(12, worst <= 1e-12, f"{exhaustive} exhaustive + {lazy_cases} lazy cases, max |<b xi, xi>| = {worst:.1e}")


def test_criterion_13_full_matrix_extension():
    fam = SetFamily.power_set(5, include_empty=False)
    rng = np.random.default_rng(13)
    bad = []
    for _ in range(50):
        nf, ng = (int(v) for v in rng.integers(0, 3, size=2))
        f = tuple(int(v) for v in rng.choice(len(fam), size=nf, replace=False))
        g = tuple(int(v) for v in rng.choice(5, size=ng, replace=False))
        pair = FinitePair(f, g)
        try:
            out = extend_to_full_matrix(fam, pair)
        except Exception as exc:  # any failure counts against the criterion
            bad.append((pair, repr(exc)))
            continue
        if not out.contains(pair) or classify(pair_subgraph(fam, out)).l != 0:
            bad.append((pair, "pattern"))
    record(13, not bad, f"50 pairs, {len(bad)} failures{': ' + str(bad[:2]) if bad else ''}")


def _haar_unitary(rng, d: int = 2) -> np.ndarray:
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_criterion_14_tensor_gap():
    rng = np.random.default_rng(14)
    bad = 0
    for _ in range(1000):
        a, b = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(2))
        gap = tensor_gap_bound(a, b, _haar_unitary(rng), _haar_unitary(rng))
        bad += not gap.holds
    record(14, bad == 0, f"1000 random cases, {bad} violations")


def test_criterion_15_performance():
    rng = np.random.default_rng(15)
    m = gf2.random_alternating(4096, rng)
    t0 = time.perf_counter()
    r = gf2.rank(m)
    t_rank = time.perf_counter() - t0
    g = random_graph(1024, rng)
    t0 = time.perf_counter()
    cf = canonicalize(g)
    t_can = time.perf_counter() - t0
    ok = t_rank < 5 and t_can < 10 and r % 2 == 0 and 2 * cf.k + cf.l == 1024
    record(15, ok, f"rank 4096: {t_rank:.2f}s (rank {r}); canonicalize 1024: {t_can:.2f}s (k={cf.k})")

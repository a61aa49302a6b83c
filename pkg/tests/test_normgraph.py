import itertools
import random

import pytest

from singerk46.errors import BoundExceeded, BudgetExceeded, VerificationFailed
from singerk46.normgraph import (
    BicliqueCert,
    NGGraph,
    build_k46,
    check_ktt_free,
    common_neighborhood,
    count_k46,
    degree_law,
    ng_build,
    search_biclique,
    verify_biclique,
)
from singerk46.normsys import find_six
from singerk46.tower import TowerCtx


@pytest.fixture(scope="module")
def graphs():
    return {q: ng_build(q, 4) for q in (2, 3, 4, 5)}


def test_vertex_counts(graphs):
    assert graphs[2].n == 8 and graphs[3].n == 54 and graphs[5].n == 500
    with pytest.raises(BoundExceeded):
        NGGraph(5, 4, bound=100)


def test_index_roundtrip(graphs):
    g = graphs[3]
    for i in range(g.n):
        assert g.index(g.vertex(i)) == i


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_degree_law(graphs, q):
    g = graphs[q]
    r = degree_law(g)
    assert r["ok"] and r["expected_degree"] == q ** 3 - 1
    assert r["ordered_adjacent_pairs"] == g.n * (q ** 3 - 1)
    assert r["loopless"] == (q % 2 == 0)


def test_adjacency_oracles_agree(graphs):
    g = graphs[3]
    bits = g.materialize()
    for i in range(g.n):
        for j in range(g.n):
            direct = g.adjacent(g.vertex(i), g.vertex(j))
            assert direct == g.adjacent_i(i, j) == bool(bits[i] >> j & 1)


def test_common_neighbourhood_routes(graphs):
    rng = random.Random(2)
    for q in (3, 4, 5):
        g = graphs[q]
        for _ in range(150):
            S = [g.vertex(i) for i in rng.sample(range(g.n), rng.choice([2, 3, 4]))]
            nb = common_neighborhood(g, S)  # raises on disagreement
            if len(S) == 4:
                assert len(nb) <= 6


def test_common_neighbourhood_repeated_first(graphs):
    g = graphs[3]
    A = g.F.elt(5)
    S = [(A, g.base[0]), (A, g.base[1])]
    assert common_neighborhood(g, S) == []


@pytest.mark.parametrize("q", [5, 7, 8, 9, 11, 13, 16])
def test_build_k46(q):
    tc = TowerCtx.build(q, 3)
    cert = build_k46(tc, find_six(tc))
    assert verify_biclique(cert)
    assert len(cert.left) == 4 and len(cert.right) == 6
    if q % 2 == 0:
        assert cert.construction["D"] is None
    nb = common_neighborhood(cert.graph, cert.left, check=q <= 9)
    assert {(A.code, a.code) for A, a in nb} == {(A.code, a.code) for A, a in cert.right}


def test_verify_biclique_rejects(graphs):
    tc = TowerCtx.build(5, 3)
    cert = build_k46(tc, find_six(tc), graph=None)
    bad = BicliqueCert(cert.graph, cert.left, cert.right[:5] + [cert.left[0]])
    with pytest.raises(VerificationFailed):
        verify_biclique(bad)


@pytest.mark.parametrize("q", [2, 3])
def test_no_k46_small(graphs, q):
    assert search_biclique(graphs[q], 6) is None


@pytest.mark.slow
def test_no_k46_q4(graphs):
    st = {}
    assert search_biclique(graphs[4], 6, stats=st) is None
    assert st["pairs"] > 0


def test_search_finds_k46_q5(graphs):
    cert = search_biclique(graphs[5], 6)
    assert cert is not None and verify_biclique(cert)


def test_search_budget(graphs):
    with pytest.raises(BudgetExceeded):
        search_biclique(graphs[4], 6, budget_seconds=0.0)


def test_search_matches_brute_force_on_small_graph(graphs):
    # brute force over all 4-sets of NG(3,4): no 4-set has 6 common neighbours outside itself
    g = graphs[3]
    bits = g.materialize()
    worst = 0
    for S in itertools.combinations(range(g.n), 4):
        acc = bits[S[0]] & bits[S[1]] & bits[S[2]] & bits[S[3]]
        for i in S:
            acc &= ~(1 << i)
        worst = max(worst, acc.bit_count())
    assert worst < 6


@pytest.mark.parametrize("q", [2, 3])
def test_k47_free_full(graphs, q):
    r = check_ktt_free(graphs[q], 4, 7)
    assert r.free and r.mode == "full"


@pytest.mark.parametrize("q", [4, 5])
def test_k47_free_sampled(graphs, q):
    r = check_ktt_free(graphs[q], 4, 7, samples=20000, seed=q)
    assert r.free and r.checked == 20000 and r.max_common <= 6


def test_k46_not_free_at_q5(graphs):
    r = check_ktt_free(graphs[5], 4, 6)
    assert not r.free and r.counterexample


def test_count_k46(graphs):
    assert count_k46(graphs[2]).value == 0 and count_k46(graphs[2]).exact
    assert count_k46(graphs[3]).value == 0
    est = count_k46(graphs[5], samples=20000, seed=1)
    assert not est.exact and est.label == "ESTIMATE" and est.value > 0
    assert est.low <= est.value <= est.high

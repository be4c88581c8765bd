import math
from fractions import Fraction
from itertools import combinations

import pytest

from hellylab import constructions
from hellylab.analysis import (
    check_pairwise_forces_tuple,
    clique_count,
    complete_graph,
    kalai_fraction,
    pipeline_report,
)
from hellylab.errors import BudgetExceeded, InputError
from hellylab.geometry import BoxFamily, PointSet, is_S_intersecting, s_pair_graph


def test_kalai_examples():
    assert kalai_fraction(1, 3) == 1.0
    assert kalai_fraction(0, 3) == 0.0
    assert kalai_fraction(Fraction(3, 4), 1) == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(InputError):
        kalai_fraction(Fraction(3, 2), 1)


def test_clique_examples(w4):
    assert clique_count(complete_graph(4), 3) == 4
    assert clique_count({1: set(), 2: set()}, 2) == 0
    family, S = w4
    assert clique_count(s_pair_graph(family, S), 4) == 1


def test_clique_count_matches_bruteforce():
    g = {1: {2, 3, 5}, 2: {1, 3, 4}, 3: {1, 2, 4, 5}, 4: {2, 3}, 5: {1, 3}}
    for m in range(1, 5):
        brute = sum(
            all(v in g[u] for u, v in combinations(c, 2)) for c in combinations(g, m)
        )
        assert clique_count(g, m) == brute


def test_complete_graph_cliques():
    for n in range(1, 8):
        for m in range(1, n + 1):
            assert clique_count(complete_graph(n), m) == math.comb(n, m)


def test_pipeline_w4(w4):
    family, S = w4
    r = pipeline_report(family, S)
    assert r.pair_density == 1
    assert r.tuple_densities[3] == 0 and r.tuple_densities[4] == 0
    assert r.max_fraction == Fraction(1, 2)
    assert r.kalai_fraction == 0.0 and r.ok


def test_pipeline_w4_double_count(w4):
    family, S = w4
    r = pipeline_report(family, S, N=4)
    dc = r.double_counting
    # four boxes cannot force a triple in the plane: the count is only informative here
    assert dc["cliques"] == 1 and dc["tuple_lower_bound"] == "1" and dc["tuple_count"] == 0
    assert not dc["holds"] and r.ok
    with pytest.raises(InputError):
        pipeline_report(family, S, N=2)


def test_pipeline_lower_bound_d9():
    family, S, _ = constructions.lower_bound_family(9)
    r = pipeline_report(family, S)
    assert r.pair_density == 1 and r.max_fraction == Fraction(2, 3)
    assert r.kalai_fraction is None  # 2d exceeds n


def test_pipeline_empty_S(w4):
    family, _ = w4
    r = pipeline_report(family, PointSet(2, []))
    assert all(v == 0 for v in r.tuple_densities.values()) and r.max_fraction == 0


def test_pipeline_matches_naive():
    for seed in range(15):
        F, S = constructions.random_instance(2, 7, seed, intersect_mode="pairwise")
        r = pipeline_report(F, S)
        for p, count in r.tuple_counts.items():
            naive = sum(is_S_intersecting(F, t, S) for t in combinations(range(1, 8), p))
            assert count == naive


def test_pipeline_budget():
    F = BoxFamily.from_bounds([([0], [1])] * 25)
    with pytest.raises(BudgetExceeded):
        pipeline_report(F, PointSet(1, []))


def test_forcing_on_w4_is_candidate(w4):
    out = check_pairwise_forces_tuple(*w4)
    assert out["pairwise_S_intersecting"] and out["counterexample_candidate"]
    assert out["max_size"] == 2 and out["dependent_tuple_size"] == 2


def test_forcing_not_applicable():
    F = BoxFamily.from_intervals([[(0, 1), (2, 3)]])
    out = check_pairwise_forces_tuple(F, PointSet(1, [[0]]))
    assert out["applicable"] is False and not out["counterexample_candidate"]


def test_forcing_planar_five_boxes():
    for seed in range(30):
        F, S = constructions.random_pairwise_S_instance(2, 5, seed)
        out = check_pairwise_forces_tuple(F, S)
        assert out["found"] and out["max_size"] >= 3

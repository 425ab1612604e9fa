from itertools import combinations

import pytest

from amodlab.arcs import (
    ArcError,
    SeparationRelation,
    conjectured_bouquet_dimension,
    connectivity_bound,
    cycle_distance,
    fundamental_domain,
    general_bound,
    min_related,
    puncture_budget,
    separation_min_formula,
    sphere_witness,
    witness_arcs,
    witness_disjointness,
)
from amodlab.simplicial import octahedron, reduced_homology


def sep(q, r):
    return SeparationRelation.separation(q, r)


def brute_min_related(rel):
    """Smallest inclusion-maximal pairwise related set, by subset search."""
    pts = range(rel.q)
    best = None
    for k in range(1, rel.q + 1):
        for sub in combinations(pts, k):
            if not all(rel.related(a, b) for a, b in combinations(sub, 2)):
                continue
            if any(all(rel.related(x, a) for a in sub) for x in pts if x not in sub):
                continue
            return k
    return best


def test_relation_basics():
    rel = sep(7, 2)
    assert rel.related(0, 3) and not rel.related(0, 2)
    assert all(not rel.related(i, i) for i in range(7))
    assert all(rel.related(i, j) == rel.related(j, i) for i in range(7) for j in range(7))
    assert cycle_distance(0, 6, 7) == 1


def test_relation_from_matrix():
    rel = SeparationRelation.from_matrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    assert rel.related(0, 1) and not rel.related(1, 2)
    assert min_related(rel) == 1
    with pytest.raises(ArcError):
        SeparationRelation.from_matrix([[0, 1], [0, 0]])


def test_min_related_examples():
    assert min_related(sep(7, 2)) == 2
    assert min_related(sep(5, 0)) == 5
    # {0, 3} is maximal: every other point lies next to 0 or 3
    assert min_related(sep(6, 1)) == 2


def test_min_related_matches_subset_search():
    for q in range(1, 11):
        for r in range(0, 5):
            assert min_related(sep(q, r)) == brute_min_related(sep(q, r))


def test_min_related_formula_where_it_holds():
    assert separation_min_formula(7, 2) == 2
    assert separation_min_formula(6, 1) == 3
    assert separation_min_formula(9, 0) == 9
    for q in range(1, 17):
        assert min_related(sep(q, 0)) == q
        # r large: nothing related, singletons are maximal
        assert min_related(sep(q, q)) == 1


def test_bounds_examples():
    assert connectivity_bound(4, 6, 1) == 0
    assert connectivity_bound(2, 1, 0) == -1
    assert connectivity_bound(6, 3, 0) == 1
    assert general_bound(4, sep(6, 1)) == 0
    assert general_bound(2, sep(1, 0)) == -1
    with pytest.raises(ArcError):
        connectivity_bound(1, 3, 0)


def test_connectivity_bound_monotone():
    for p in range(2, 15):
        for q in range(1, 15):
            for r in range(0, 6):
                b = connectivity_bound(p, q, r)
                assert connectivity_bound(p + 1, q, r) >= b
                assert connectivity_bound(p, q + 1, r) >= b
                assert connectivity_bound(p, q, r + 1) <= b


def test_conjectured_dimension_is_separate_output():
    assert conjectured_bouquet_dimension(4, sep(6, 1)) == 1
    assert conjectured_bouquet_dimension(10, sep(9, 0)) == 8


def test_fundamental_domain_examples():
    pent = fundamental_domain(5, 1)
    assert len(pent.facets) == 5 and pent.dimension == 1
    assert reduced_homology(pent).betti == [0, 1]
    full = fundamental_domain(6, 0)
    assert full.facets == frozenset({tuple(range(6))})
    assert reduced_homology(full).is_trivial()
    three = fundamental_domain(6, 2)
    assert sorted(three.facets) == [(0, 3), (1, 4), (2, 5)]
    assert reduced_homology(three).betti == [2, 0]


def test_fundamental_domain_dimension_when_q_exceeds_r():
    for q in range(1, 17):
        for r in range(0, 7):
            if q > r:
                assert fundamental_domain(q, r).dimension == q // (r + 1) - 1


def test_fundamental_domain_cap():
    capped = fundamental_domain(6, 0, cap=2)
    assert capped.dimension == 1
    assert len(capped.facets) == 15
    assert fundamental_domain(5, 1, cap=3) == fundamental_domain(5, 1)


def test_sphere_witness_examples():
    s0 = sphere_witness(1, 1)
    assert s0.facets == frozenset({(0,), (1,)})
    assert reduced_homology(sphere_witness(2, 4)).betti == [0, 1]
    oct3 = sphere_witness(3, 1)
    assert reduced_homology(oct3).betti == [0, 0, 1]
    assert sorted(len(f) for f in oct3.facets) == [3] * 8
    assert oct3.graph().number_of_edges() == octahedron().graph().number_of_edges()


def test_sphere_witness_independent_of_generation():
    for k in range(1, 6):
        base = sphere_witness(k, 1)
        for j in range(2, 5):
            shifted = sphere_witness(k, j).shifted(-(j - 1) * k)
            assert shifted == base
        rep = reduced_homology(base)
        assert rep.betti == [0] * (k - 1) + [1]


def test_witness_arcs_and_disjointness():
    arcs = witness_arcs(2, 3)
    assert [(a.marked_point, a.generation) for a in arcs] == [(1, 3), (2, 3), (1, 4), (2, 4)]
    assert witness_disjointness(3, 1, 3)
    assert not witness_disjointness(3, 1, 2)
    assert witness_disjointness(5, 4, 6)


def test_puncture_budget():
    assert [puncture_budget(k) for k in (1, 3, 10)] == [2, 6, 20]
    with pytest.raises(ArcError):
        puncture_budget(0)

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from amodlab.simplicial import (
    AbsentSimplexError,
    EmptyComplexError,
    OverlappingVerticesError,
    SimplicialComplex,
    cycle,
    homological_connectivity,
    is_flag,
    join,
    octahedron,
    rational_betti,
    reduced_homology,
    simplex,
    sphere_boundary,
    torus7,
)
from amodlab.snf import SparseMatrix, rank, rational_rank, smith_invariants

S0 = SimplicialComplex([[0], [1]])


def betti(K):
    return reduced_homology(K).betti


def test_link_examples():
    tri = cycle(3)
    assert tri.link([0]) == SimplicialComplex([[1], [2]])
    assert simplex([0, 1, 2]).link([0, 1]) == SimplicialComplex([[2]])
    lk = octahedron().link([0])
    assert sorted(lk.facets) == [(2, 4), (2, 5), (3, 4), (3, 5)]
    assert betti(lk) == [0, 1]


def test_link_of_absent_simplex():
    with pytest.raises(AbsentSimplexError):
        cycle(4).link([0, 2])


def test_link_of_facet_is_empty_simplex_complex():
    lk = simplex([0, 1]).link([0, 1])
    assert lk.faces(-1) == [()]
    assert lk.vertices == ()


def test_join_examples():
    sq = join(S0, S0.shifted(2))
    assert betti(sq) == [0, 1]
    assert betti(octahedron()) == [0, 0, 1]
    cone = join(simplex([9]), torus7())
    assert reduced_homology(cone).is_trivial()


def test_join_needs_disjoint_vertices():
    with pytest.raises(OverlappingVerticesError):
        join(S0, S0)


def test_reference_homology():
    assert betti(sphere_boundary(4)) == [0, 0, 1]
    rep = reduced_homology(torus7())
    assert rep.betti == [0, 2, 1] and not rep.torsion
    assert torus7().reduced_euler_characteristic() == -1
    assert betti(cycle(5)) == [0, 1]


def test_projective_plane_torsion():
    rp2 = SimplicialComplex([
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
        (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
    ])
    rep = reduced_homology(rp2)
    assert rep.betti == [0, 0, 0]
    assert rep.torsion == {1: [2]}
    assert rep.to_dict() == {"betti": [0, 0, 0], "torsion": [[1, [2]]]}
    assert rational_betti(rp2) == [0, 0, 0]


def test_disconnected_and_empty():
    two_points = SimplicialComplex([[0], [5]])
    assert betti(two_points) == [1]
    with pytest.raises(EmptyComplexError):
        reduced_homology(SimplicialComplex())


def test_flagness():
    assert not is_flag(cycle(3))
    assert is_flag(simplex(range(5)))
    assert is_flag(octahedron())
    assert not is_flag(sphere_boundary(4))


def test_homological_connectivity():
    assert homological_connectivity(octahedron(), 1)
    assert not homological_connectivity(cycle(5), 1)
    assert homological_connectivity(cycle(5), -1)
    assert not homological_connectivity(SimplicialComplex(), -1)


def test_text_round_trip():
    K = torus7()
    text = "# seven-vertex torus\n" + K.to_text()
    assert SimplicialComplex.from_text(text) == K


def test_maximal_facets_only():
    K = SimplicialComplex([[0, 1, 2], [0, 1], [3]])
    assert K.facets == frozenset({(0, 1, 2), (3,)})
    assert K.f_vector() == [4, 3, 1]


def test_negative_vertex_rejected():
    with pytest.raises(ValueError):
        SimplicialComplex([[-1, 0]])


# -- Smith normal form ------------------------------------------------------


def dense_to_sparse(rows):
    ncols = len(rows[0]) if rows else 0
    cols = [{i: rows[i][j] for i in range(len(rows)) if rows[i][j]} for j in range(ncols)]
    return SparseMatrix(len(rows), ncols, cols)


def test_smith_small_examples():
    assert smith_invariants(dense_to_sparse([[2, 4], [6, 8]])) == [2, 4]
    assert smith_invariants(dense_to_sparse([[2, 0], [0, 3]])) == [1, 6]
    assert smith_invariants(dense_to_sparse([[0, 0], [0, 0]])) == []


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_matches_rational_oracle(rows):
    assert rank(dense_to_sparse(rows)) == rational_rank(rows)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_smith_product_is_determinant(rows):
    det = (rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
           - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
           + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]))
    inv = smith_invariants(dense_to_sparse(rows))
    if det == 0:
        assert len(inv) < 3
    else:
        prod = 1
        for x in inv:
            prod *= x
        assert prod == abs(det)
        assert all(inv[i + 1] % inv[i] == 0 for i in range(len(inv) - 1))


@settings(max_examples=60, deadline=None)
@given(st.sets(st.frozensets(st.integers(0, 6), min_size=1, max_size=4), min_size=1, max_size=8))
def test_random_complexes_snf_vs_rational(facets):
    K = SimplicialComplex(facets)
    rep = reduced_homology(K)
    assert rep.betti == rational_betti(K)
    chi = sum((-1) ** d * b for d, b in enumerate(rep.betti))
    assert chi == K.reduced_euler_characteristic()


def test_boundary_squares_to_zero():
    K = sphere_boundary(5)
    d2, d1 = K.boundary_matrix(2).to_dense(), K.boundary_matrix(1).to_dense()
    prod = [[sum(d1[i][k] * d2[k][j] for k in range(len(d2))) for j in range(len(d2[0]))]
            for i in range(len(d1))]
    assert all(v == 0 for row in prod for v in row)


def test_faces_dimensions():
    K = sphere_boundary(4)
    assert len(K.faces(1)) == 6
    assert K.faces(-1) == [()]
    assert all(len(f) == 3 for f in K.faces(2))
    assert set(K.faces(2)) == set(combinations(range(4), 3))

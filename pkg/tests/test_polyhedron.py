from fractions import Fraction

import pytest

from polycircuits.errors import EmptyPolyhedron, NotPointed
from polycircuits.linalg import matrix, primitive, vector
from polycircuits.polyhedron import (
    AffineMap,
    HPolyhedron,
    LinearMap,
    adjacent_vertices,
    affine_image_description,
    cartesian_product,
    dim,
    edge_directions,
    homogenize,
    implicit_equality_rows,
    is_pointed,
    lineality_basis,
    minimize_description,
    minkowski_sum,
    preimage_description,
    project,
    slack_standard_form,
    vrep,
)


def normalized_rows(P):
    """Facet system as a set of (primitive normal, scaled rhs) pairs."""
    out = set()
    for row, rhs in zip(P.B, P.d):
        key = primitive(row)
        scale = next(x for x in row if x != 0) / next(x for x in key if x != 0)
        out.add((key, rhs / scale))
    return out


def unit_square():
    return HPolyhedron.make(2, B=[[-1, 0], [0, -1], [1, 0], [0, 1]], d=[0, 0, 1, 1])


def orthant(n):
    return HPolyhedron.make(n, B=[[-1 if j == i else 0 for j in range(n)] for i in range(n)], d=[0] * n)


PI34 = LinearMap(matrix=matrix([[2, 1, 0, 0], [0, 0, 2, 1], [0, 1, 0, 1]]))

# Eliminating y from {x = PI34 y, y >= 0} by hand: substitute
# y1=(x1-y2)/2, y3=(x2-y4)/2, y2=x3-y4, then Fourier-Motzkin on y4 gives
# max(0, x3-x1) <= y4 <= min(x2, x3), i.e. exactly these four facets.
R3_ROWS = {
    (vector([-1, 0, 0]), Fraction(0)),
    (vector([0, -1, 0]), Fraction(0)),
    (vector([0, 0, -1]), Fraction(0)),
    (vector([-1, -1, 1]), Fraction(0)),
}


def test_dim_and_implicit_equalities():
    assert dim(unit_square()) == 2
    # x <= 0 and -x <= 0 pin the first coordinate
    P = HPolyhedron.make(2, B=[[1, 0], [-1, 0], [0, 1], [0, -1]], d=[0, 0, 1, 0])
    assert implicit_equality_rows(P) == (0, 1)
    assert dim(P) == 1
    point = HPolyhedron.make(2, A=[[1, 0], [0, 1]], b=[3, 4])
    assert dim(point) == 0


def test_dim_raises_on_empty():
    empty = HPolyhedron.make(1, B=[[1], [-1]], d=[-1, 0])
    with pytest.raises(EmptyPolyhedron):
        dim(empty)


def test_minimize_drops_redundant_and_promotes_implicit():
    P = HPolyhedron.make(
        2,
        B=[[1, 0], [-1, 0], [0, 1], [0, -1], [2, 2], [1, 1]],
        d=[0, 0, 1, 0, 10, 7],
    )
    M = minimize_description(P)
    assert len(M.A) == 1 and primitive(M.A[0]) == vector([1, 0])
    assert normalized_rows(M) == {
        (vector([0, 1]), Fraction(1)),
        (vector([0, -1]), Fraction(0)),
    }


def test_minimize_keeps_duplicate_row_once():
    P = HPolyhedron.make(1, B=[[-1], [-2], [1]], d=[0, 0, 5])
    M = minimize_description(P)
    assert normalized_rows(M) == {(vector([-1]), Fraction(0)), (vector([1]), Fraction(5))}


def test_pointedness_and_lineality():
    assert is_pointed(unit_square())
    slab = HPolyhedron.make(2, B=[[1, 0], [-1, 0]], d=[1, 0])
    assert not is_pointed(slab)
    assert lineality_basis(slab) == [vector([0, 1])]


def test_vrep_square_and_orthant():
    V = vrep(unit_square())
    assert V.vertices == tuple(sorted(vector(v) for v in [(0, 0), (0, 1), (1, 0), (1, 1)]))
    assert V.rays == ()
    V3 = vrep(orthant(3))
    assert V3.vertices == (vector([0, 0, 0]),)
    assert set(V3.rays) == {vector([1, 0, 0]), vector([0, 1, 0]), vector([0, 0, 1])}


def test_vrep_requires_pointed():
    slab = HPolyhedron.make(2, B=[[1, 0], [-1, 0]], d=[1, 0])
    with pytest.raises(NotPointed):
        vrep(slab)


def test_adjacency_on_square():
    sq = unit_square()
    assert adjacent_vertices(sq, vector([0, 0]), vector([1, 0]))
    assert not adjacent_vertices(sq, vector([0, 0]), vector([1, 1]))


def test_edge_directions_square_and_cone():
    assert set(edge_directions(unit_square())) == {vector([1, 0]), vector([0, 1])}
    R3 = HPolyhedron.make(3, B=[[-1, 0, 0], [0, -1, 0], [0, 0, -1], [-1, -1, 1]], d=[0] * 4)
    assert set(edge_directions(R3)) == {
        vector([1, 0, 0]),
        vector([0, 1, 0]),
        vector([1, 0, 1]),
        vector([0, 1, 1]),
    }


def test_project_orthant_through_pi34():
    R3 = project(orthant(4), PI34)
    assert R3.A == ()
    assert normalized_rows(R3) == R3_ROWS


def test_project_simplex_through_pi34():
    S4 = HPolyhedron.make(
        4,
        B=[[-1 if j == i else 0 for j in range(4)] for i in range(4)] + [[1, 1, 1, 1]],
        d=[0, 0, 0, 0, 1],
    )
    P3 = project(S4, PI34)
    assert normalized_rows(P3) == R3_ROWS | {(vector([1, 1, 1]), Fraction(2))}
    V = vrep(P3)
    assert V.rays == ()
    assert set(V.vertices) == {
        vector(v) for v in [(0, 0, 0), (2, 0, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1)]
    }


def test_project_composes():
    drop_last = LinearMap(matrix=matrix([[1, 0, 0], [0, 1, 0]]))
    first = project(orthant(4), PI34)
    assert normalized_rows(project(first, drop_last)) == {
        (vector([-1, 0]), Fraction(0)),
        (vector([0, -1]), Fraction(0)),
    }


def test_project_empty_raises():
    empty = HPolyhedron.make(1, B=[[1], [-1]], d=[-1, 0])
    with pytest.raises(EmptyPolyhedron):
        project(empty, LinearMap(matrix=matrix([[1]])))


def test_cartesian_product_blocks():
    P = cartesian_product(unit_square(), orthant(1))
    assert P.n == 3
    assert len(P.B) == 5
    assert P.B[4] == vector([0, 0, -1])


def test_minkowski_sum_of_segments():
    seg1 = HPolyhedron.make(2, A=[[0, 1]], b=[0], B=[[-1, 0], [1, 0]], d=[0, 1])
    seg2 = HPolyhedron.make(2, A=[[1, 0]], b=[0], B=[[0, -1], [0, 1]], d=[0, 1])
    sq = minkowski_sum(seg1, seg2)
    assert normalized_rows(sq) == normalized_rows(unit_square())


def test_homogenize_layout():
    S2 = HPolyhedron.make(2, B=[[-1, 0], [0, -1], [1, 1]], d=[0, 0, 1])
    H = homogenize(S2)
    assert H.n == 3 and H.A == ()
    assert H.B[0] == vector([-1, 0, 0])  # t >= 0 first
    assert H.B[3] == vector([-1, 1, 1])  # x1 + x2 <= t
    assert all(x == 0 for x in H.d)


def test_homogenize_with_equalities():
    P = HPolyhedron.make(2, A=[[1, 1]], b=[1], B=[[-1, 0]], d=[0])
    H = homogenize(P)
    assert H.A == (vector([-1, 1, 1]),)
    assert H.b == vector([0])


def test_slack_standard_form_triangle():
    S2 = HPolyhedron.make(2, B=[[-1, 0], [0, -1], [1, 1]], d=[0, 0, 1])
    S, sigma = slack_standard_form(S2)
    assert S.n == 3
    assert S.A == (vector([1, 1, 1]),) and S.b == vector([1])
    assert normalized_rows(S) == {
        (vector([-1, 0, 0]), Fraction(0)),
        (vector([0, -1, 0]), Fraction(0)),
        (vector([0, 0, -1]), Fraction(0)),
    }
    # slack map sends the vertex (1,0) to (1 - (-1), 0, 1 - 1) = (1, 0, 0)
    assert sigma(vector([1, 0])) == vector([1, 0, 0])
    assert S.contains(sigma(vector([0, 0])))


def test_affine_image_and_preimage_roundtrip():
    sq = unit_square()
    phi = AffineMap(matrix=matrix([[1, 1], [0, 1]]), offset=vector([3, -2]))
    img = affine_image_description(sq, phi)
    for v in vrep(sq).vertices:
        assert img.contains(phi(v))
    assert not img.contains(phi(vector([2, 2])))

    tau = LinearMap(matrix=matrix([[1, 1], [0, 1]]))
    pre = preimage_description(sq, tau)
    assert pre.contains(vector([1, 0]))  # tau -> (1, 0), inside
    assert not pre.contains(vector([2, 0]))

import random
from fractions import Fraction

import pytest

from polycircuits.circuits import (
    basic_solutions,
    circuits_of_homogenization,
    enumerate_circuits,
    enumerate_circuits_bruteforce,
    is_edge_direction,
)
from polycircuits.directions import CircuitSet
from polycircuits.errors import BudgetExceeded, NotPointed
from polycircuits.linalg import matrix, vector
from polycircuits.polyhedron import HPolyhedron, LinearMap, edge_directions, project


def cube(n):
    B = [[-1 if j == i else 0 for j in range(n)] for i in range(n)]
    B += [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    return HPolyhedron.make(n, B=B, d=[0] * n + [1] * n)


def simplex(n):
    B = [[-1 if j == i else 0 for j in range(n)] for i in range(n)] + [[1] * n]
    return HPolyhedron.make(n, B=B, d=[0] * n + [1])


def cone_r3():
    return HPolyhedron.make(3, B=[[-1, 0, 0], [0, -1, 0], [0, 0, -1], [-1, -1, 1]], d=[0] * 4)


# Worked out by hand from the 4-row description: every pair of rows with a
# one-dimensional kernel yields a candidate, all six have incomparable
# two-row supports.
R3_CIRCUITS = CircuitSet.of(
    [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1), (1, 0, 1), (1, -1, 0)]
)

# Adding the translated facet x1+x2+x3 <= 2 to the cone rows admits two more
# support-minimal directions; the rest of the ten pairs repeat lines.
P3_CIRCUITS = CircuitSet.of(list(R3_CIRCUITS) + [(0, 1, -1), (1, 0, -1)])


def p3():
    return HPolyhedron.make(
        3,
        B=[[-1, 0, 0], [0, -1, 0], [0, 0, -1], [-1, -1, 1], [1, 1, 1]],
        d=[0, 0, 0, 0, 2],
    )


def test_circuits_of_cone():
    assert enumerate_circuits(cone_r3()).directions == R3_CIRCUITS.directions


def test_circuits_of_p3():
    assert enumerate_circuits(p3()).directions == P3_CIRCUITS.directions


def test_circuits_of_cube_are_unit_directions():
    C = enumerate_circuits(cube(3))
    assert C.directions == tuple(sorted(vector(v) for v in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]))


def test_circuits_of_simplex():
    C = enumerate_circuits(simplex(3))
    expected = CircuitSet.of(
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)]
    )
    assert C.directions == expected.directions


def test_circuits_with_equality_block():
    # {x : x1+x2+x3 = 0, x >= 0} is the origin; its kernel coordinates
    # still expose the three difference circuits.
    P = HPolyhedron.make(
        3, A=[[1, 1, 1]], b=[0],
        B=[[-1, 0, 0], [0, -1, 0], [0, 0, -1]], d=[0, 0, 0],
    )
    expected = CircuitSet.of([(1, -1, 0), (1, 0, -1), (0, 1, -1)])
    assert enumerate_circuits(P).directions == expected.directions


def test_sign_symmetry_and_canonical_form():
    for g in enumerate_circuits(p3()):
        assert next(x for x in g if x != 0) > 0
        assert all(x.denominator == 1 for x in g)


def test_nonpointed_returns_lineality():
    slab = HPolyhedron.make(2, B=[[1, 0], [-1, 0]], d=[1, 0])
    C = enumerate_circuits(slab)
    assert C.is_subspace
    assert C.lineality == (vector([0, 1]),)
    assert vector([0, -5]) in C and vector([1, 0]) not in C
    CB = enumerate_circuits_bruteforce(slab)
    assert CB.is_subspace and CB.lineality == C.lineality


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        enumerate_circuits(cube(8), budget=10)


@pytest.mark.parametrize(
    "P",
    [cube(3), simplex(3), cone_r3(), p3(), cube(2)],
    ids=["cube3", "simplex3", "coneR3", "p3", "square"],
)
def test_bruteforce_agrees(P):
    assert enumerate_circuits(P).directions == enumerate_circuits_bruteforce(P).directions


@pytest.mark.parametrize("seed", range(25))
def test_bruteforce_agrees_on_random_systems(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    rows = [[-1 if j == i else 0 for j in range(n)] for i in range(n)]
    rhs = [0] * n
    for _ in range(rng.randint(1, 3)):
        rows.append([rng.randint(-2, 2) for _ in range(n)])
        rhs.append(rng.randint(0, 3))
    eqs, eq_rhs = [], []
    if rng.random() < 0.4:
        eqs.append([rng.randint(-2, 2) for _ in range(n)])
        eq_rhs.append(0)
    P = HPolyhedron.make(n, A=eqs, b=eq_rhs, B=rows, d=rhs)
    assert enumerate_circuits(P).directions == enumerate_circuits_bruteforce(P).directions


def test_basic_solutions_of_square():
    pts = basic_solutions(cube(2))
    assert set(pts) == {vector(v) for v in [(0, 0), (0, 1), (1, 0), (1, 1)]}


def test_basic_solutions_include_infeasible_points():
    # triangle x,y >= 0, x+y <= 1: the three line intersections are basic,
    # and all three happen to be vertices; cutting with x <= 2 adds the
    # infeasible crossings on that line.
    T = HPolyhedron.make(2, B=[[-1, 0], [0, -1], [1, 1], [1, 0]], d=[0, 0, 1, 2])
    pts = basic_solutions(T)
    assert vector([2, 0]) in pts and vector([2, -1]) in pts
    assert not T.contains(vector([2, -1]))


def test_basic_solutions_require_equality_rows_satisfied():
    P = HPolyhedron.make(2, A=[[1, 1]], b=[1], B=[[-1, 0], [0, -1]], d=[0, 0])
    pts = basic_solutions(P)
    assert set(pts) == {vector([0, 1]), vector([1, 0])}


def test_basic_solutions_not_pointed():
    slab = HPolyhedron.make(2, B=[[1, 0], [-1, 0]], d=[1, 0])
    with pytest.raises(NotPointed):
        basic_solutions(slab)


def test_homogenization_split_of_triangle():
    T = simplex(2)
    CH, split = circuits_of_homogenization(T)
    assert split.direction_class.directions == enumerate_circuits(T).directions
    assert set(split.point_class) == {vector(v) for v in [(0, 0), (1, 0), (0, 1)]}
    # every homogenization circuit is one of the two classes
    assert len(CH) == len(split.direction_class) + len(split.point_class)


def test_edge_direction_membership():
    P = p3()
    assert is_edge_direction(vector([1, -1, 0]), P)
    assert not is_edge_direction(vector([0, 0, 1]), P)
    # circuits always contain the edge directions
    assert set(edge_directions(P)).issubset(set(enumerate_circuits(P)))


def test_p3_nonedge_circuit_is_exactly_e3():
    P = p3()
    C = set(enumerate_circuits(P))
    E = set(edge_directions(P))
    assert C - E == {vector([0, 0, 1])}

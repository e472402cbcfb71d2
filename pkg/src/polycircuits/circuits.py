"""Circuits (elementary vectors), basic solutions, and homogenization.

A circuit of {A x = b, B x <= d} is a kernel vector of A whose image
under B has support-minimal nonzero pattern among all nonzero kernel
vectors. The set depends on the literal description, so nothing here
minimizes or reorders rows behind the caller's back.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .directions import BasicSolutionSet, CircuitSet
from .errors import CorrespondenceViolation, NotPointed
from .linalg import (
    Vector,
    canonicalize_direction,
    dot,
    identity,
    kernel_basis,
    mat_vec,
    matmul,
    rank,
    solve,
    transpose,
    vec_scale,
    vec_sub,
    vector,
)
from .polyhedron import (
    DEFAULT_BUDGET,
    HPolyhedron,
    check_budget,
    edge_directions,
    homogenize,
    is_pointed,
    lineality_basis,
)

__all__ = [
    "basic_solutions",
    "circuits_of_homogenization",
    "enumerate_circuits",
    "enumerate_circuits_bruteforce",
    "HomogenizationSplit",
    "is_edge_direction",
]


def _support_mask(v: Sequence[Fraction]) -> int:
    m = 0
    for i, x in enumerate(v):
        if x != 0:
            m |= 1 << i
    return m


def _keep_support_minimal(cands: dict[Vector, int]) -> list[Vector]:
    masks = list(set(cands.values()))
    out = []
    for g, m in cands.items():
        if not any(other != m and other & m == other for other in masks):
            out.append(g)
    return out


def enumerate_circuits(P: HPolyhedron, budget: Optional[int] = DEFAULT_BUDGET) -> CircuitSet:
    """All circuit directions of P's description, canonically represented.

    Works in kernel coordinates of the equality block: candidate
    directions are the one-dimensional kernels of (n'-1)-row subsets of
    the reduced inequality matrix, then non-support-minimal candidates
    are discarded. A non-pointed system yields its lineality basis
    instead (every nonzero lineality vector is a circuit there).
    """
    N = kernel_basis(P.A, P.n) if P.A else list(identity(P.n))
    np_ = len(N)
    if np_ == 0:
        return CircuitSet(source="circuits")
    NT = transpose(tuple(N))  # n x n', maps reduced coords to ambient
    Bred = matmul(P.B, NT) if P.B else ()
    q = len(Bred)

    lin = kernel_basis(Bred, np_) if Bred else list(identity(np_))
    if lin:
        return CircuitSet.subspace((mat_vec(NT, v) for v in lin), source="lineality")

    k = np_ - 1
    check_budget(comb(q, k), budget, "circuit candidate subsets")
    cands: dict[Vector, int] = {}
    seen: set[Vector] = set()
    for S in itertools.combinations(range(q), k):
        ker = kernel_basis([Bred[i] for i in S], np_)
        if len(ker) != 1:
            continue
        ghat = canonicalize_direction(ker[0])
        if ghat in seen:
            continue
        seen.add(ghat)
        g = canonicalize_direction(mat_vec(NT, ghat))
        cands[g] = _support_mask(dot(row, ghat) for row in Bred)
    return CircuitSet(directions=tuple(sorted(_keep_support_minimal(cands))), source="circuits")


def enumerate_circuits_bruteforce(P: HPolyhedron, budget: Optional[int] = DEFAULT_BUDGET) -> CircuitSet:
    """Literal transcription of the circuit definition, for cross-checking.

    Candidates come from every inequality-row subset whose kernel
    (together with the equality rows) is one-dimensional, of any size,
    computed in ambient coordinates; minimality is then applied pairwise.
    """
    if not is_pointed(P):
        return CircuitSet.subspace(lineality_basis(P), source="lineality")
    q = len(P.B)
    check_budget(2**q, budget, "brute-force row subsets")
    cands: dict[Vector, int] = {}
    for size in range(q + 1):
        for S in itertools.combinations(range(q), size):
            M = P.A + tuple(P.B[i] for i in S)
            ker = kernel_basis(M, P.n) if M else list(identity(P.n))
            if len(ker) != 1:
                continue
            g = canonicalize_direction(ker[0])
            if g not in cands:
                cands[g] = _support_mask(mat_vec(P.B, g))
    return CircuitSet(directions=tuple(sorted(_keep_support_minimal(cands))), source="circuits-bruteforce")


def basic_solutions(
    P: HPolyhedron, budget: Optional[int] = DEFAULT_BUDGET, verify: bool = True
) -> BasicSolutionSet:
    """All points (feasible or not) whose tight rows have full column rank.

    Points satisfy every equality row; only inequality rows may be
    violated. With `verify`, each returned point is checked to be
    support-minimal against the others and a sample of non-basic points
    is checked to be dominated, which is the support characterization
    that makes these the degree-one homogenization circuits.
    """
    if not is_pointed(P):
        raise NotPointed(P.name or "polyhedron")
    n, q = P.n, len(P.B)
    k = n - (rank(P.A) if P.A else 0)
    check_budget(comb(q, k), budget, "basic solution subsets")
    pts = set()
    for S in itertools.combinations(range(q), k):
        M = P.A + tuple(P.B[i] for i in S)
        if rank(M) < n:
            continue
        x = solve(M, P.b + tuple(P.d[i] for i in S))
        if x is not None:
            pts.add(x)
    result = BasicSolutionSet.of(pts)
    if verify:
        _verify_support_characterization(P, result)
    return result


def _violation_mask(P: HPolyhedron, x: Vector) -> int:
    return _support_mask(vec_sub(mat_vec(P.B, x), P.d))


def _verify_support_characterization(P: HPolyhedron, sols: BasicSolutionSet) -> None:
    masks = {x: _violation_mask(P, x) for x in sols}
    values = list(set(masks.values()))
    for x, m in masks.items():
        if any(other != m and other & m == other for other in values):
            raise CorrespondenceViolation(f"basic solution {x} is not support-minimal")
    # Non-basic sample: midpoints of basic pairs stay on the equality block.
    half = Fraction(1, 2)
    pairs = itertools.islice(itertools.combinations(sols, 2), 50)
    for u, v in pairs:
        z = vec_scale(half, vector(tuple(a + b for a, b in zip(u, v))))
        tight = P.A + tuple(P.B[i] for i in P.tight_inequality_rows(z))
        if (rank(tight) if tight else 0) == P.n:
            if z not in sols:
                raise CorrespondenceViolation(f"missed basic solution {z}")
            continue
        zm = _violation_mask(P, z)
        if not any(m != zm and m & zm == m for m in values):
            raise CorrespondenceViolation(f"non-basic point {z} not dominated")


@dataclass(frozen=True)
class HomogenizationSplit:
    """Homogenization circuits split by the leading coordinate."""

    direction_class: CircuitSet  # leading coordinate 0, dehomogenized
    point_class: BasicSolutionSet  # leading coordinate rescaled to 1


def circuits_of_homogenization(
    P: HPolyhedron, budget: Optional[int] = DEFAULT_BUDGET
) -> tuple[CircuitSet, HomogenizationSplit]:
    """Circuits of the homogenization cone, with the verified two-class split.

    Expects a pointed P with minimized description. Raises
    CorrespondenceViolation if the split does not reproduce exactly the
    circuits and the basic solutions of P.
    """
    if not is_pointed(P):
        raise NotPointed(P.name or "polyhedron")
    CH = enumerate_circuits(homogenize(P), budget)
    dirs, points = [], []
    for v in CH:
        if v[0] == 0:
            dirs.append(v[1:])
        else:  # canonical representative has positive leading entry
            points.append(vec_scale(Fraction(1, v[0]), v[1:]))
    split = HomogenizationSplit(
        direction_class=CircuitSet.of(dirs, source="hom-degree-0"),
        point_class=BasicSolutionSet.of(points),
    )
    CP = enumerate_circuits(P, budget)
    BP = basic_solutions(P, budget)
    if split.direction_class.directions != CP.directions:
        raise CorrespondenceViolation("degree-0 class does not match the circuits")
    if split.point_class.points != BP.points:
        raise CorrespondenceViolation("degree-1 class does not match the basic solutions")
    return CH, split


def is_edge_direction(g: Sequence[Fraction], P: HPolyhedron, budget: Optional[int] = DEFAULT_BUDGET) -> bool:
    return canonicalize_direction(vector(g)) in edge_directions(P, budget=budget)

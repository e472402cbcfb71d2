"""Inheritance reports and exact verification of the structural laws.

The central question: which circuits of a projection are images of circuits
of the lifted system?  check_inheritance answers it for one (Q, pi) pair and
classifies the failures.  The verify_* functions each re-derive both sides of
one known identity from scratch and compare canonicalized direction sets, so
they double as cross-checks of the enumeration machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .circuits import (
    basic_solutions,
    circuits_of_homogenization,
    enumerate_circuits,
)
from .constructions import DisjunctiveFamily, balas_extension
from .directions import CircuitSet
from .errors import (
    CorrespondenceViolation,
    NotInjectiveOnQ,
    NotPointed,
    ProjectionMismatch,
)
from .linalg import (
    is_zero,
    kernel_basis,
    mat_vec,
    matrix,
    rank,
    vec_neg,
    zero_vector,
)
from .lp import is_implied
from .polyhedron import (
    DEFAULT_BUDGET,
    HPolyhedron,
    LinearMap,
    cartesian_product,
    edge_directions,
    is_pointed,
    minimize_description,
    project,
    slack_standard_form,
)

ALL_INHERITED = "AllInherited"
NOT_ALL_INHERITED = "NotAllInherited"


@dataclass(frozen=True)
class InheritanceReport:
    """Classification of the circuits of P against those lifted from Q."""

    P_circuits: CircuitSet
    Q_circuits: CircuitSet
    projected: CircuitSet
    inherited: CircuitSet
    non_inherited: CircuitSet
    edge_dirs: CircuitSet
    inherited_equals_edges: bool
    verdict: str

    def summary(self) -> str:
        lines = [
            f"verdict: {self.verdict}",
            f"|C(P)| = {len(self.P_circuits)}, "
            f"|C(Q)| = {len(self.Q_circuits) if not self.Q_circuits.is_subspace else 'subspace'}, "
            f"projected lines = {len(self.projected) if not self.projected.is_subspace else 'subspace'}",
            f"inherited = {len(self.inherited)}, non-inherited = {len(self.non_inherited)}, "
            f"edge directions = {len(self.edge_dirs)}",
            f"inherited equals edge directions: {self.inherited_equals_edges}",
        ]
        if self.non_inherited:
            shown = ", ".join(str(tuple(map(str, g))) for g in self.non_inherited)
            lines.append(f"non-inherited witnesses: {shown}")
        return "\n".join(lines)


def _descriptions_match(P_desc: HPolyhedron, image: HPolyhedron) -> bool:
    """Same point set, decided by implying every row in both directions."""

    def rows_implied(src: HPolyhedron, tgt: HPolyhedron) -> bool:
        for a, beta in zip(src.A, src.b):
            if not is_implied(a, beta, tgt):
                return False
            if not is_implied(vec_neg(a), -beta, tgt):
                return False
        return all(is_implied(b, d, tgt) for b, d in zip(src.B, src.d))

    return rows_implied(P_desc, image) and rows_implied(image, P_desc)


def check_inheritance(
    Q: HPolyhedron,
    pi: LinearMap,
    P_desc: Optional[HPolyhedron] = None,
    budget: Optional[int] = DEFAULT_BUDGET,
) -> InheritanceReport:
    """Full inheritance classification for the projection of Q under pi.

    When P_desc is given it must describe pi(Q) exactly as a point set
    (checked row by row); circuits of the image are then computed on that
    description, since circuit sets are description-sensitive.  Without it
    the image is derived by elimination and minimized.  Raises
    NotPointed when the image has a lineality space, and fails loudly if the
    computed data ever contradicts the edge-inheritance guarantee.
    """
    if pi.in_dim(Q.n) != Q.n:
        raise ProjectionMismatch(f"map expects {pi.in_dim(Q.n)} coordinates, Q has {Q.n}")
    image = project(Q, pi)
    if P_desc is not None:
        if P_desc.n != pi.out_dim:
            raise ProjectionMismatch(
                f"supplied description lives in dimension {P_desc.n}, map lands in {pi.out_dim}"
            )
        if not _descriptions_match(P_desc, image):
            raise ProjectionMismatch("supplied description is not the image point set")
        P = P_desc
    else:
        P = image

    CP = enumerate_circuits(P, budget)
    if CP.is_subspace:
        raise NotPointed(P.name or "projection image")
    CQ = enumerate_circuits(Q, budget)

    if CQ.is_subspace:
        projected = CircuitSet.subspace(
            (w for w in (pi(v) for v in CQ.lineality) if not is_zero(w)),
            source="projected",
        )
        if not projected.lineality:
            projected = CircuitSet.of((), source="projected")
    else:
        projected = pi.image_directions(CQ)

    inherited = CircuitSet.of((g for g in CP if g in projected), source="inherited")
    non_inherited = CircuitSet.of((g for g in CP if g not in projected), source="non-inherited")

    edge_dirs = edge_directions(P, budget)
    if any(e not in inherited for e in edge_dirs):
        raise CorrespondenceViolation("an edge direction of the image was not inherited")
    if not CQ.is_subspace:
        # stronger form of the same guarantee: edges come from edges
        lifted_edges = pi.image_directions(edge_directions(Q, budget))
        if any(e not in lifted_edges for e in edge_dirs):
            raise CorrespondenceViolation("an edge direction of the image lifts to no edge of Q")

    return InheritanceReport(
        P_circuits=CP,
        Q_circuits=CQ,
        projected=projected,
        inherited=inherited,
        non_inherited=non_inherited,
        edge_dirs=edge_dirs,
        inherited_equals_edges=set(inherited) == set(edge_dirs),
        verdict=ALL_INHERITED if len(non_inherited) == 0 else NOT_ALL_INHERITED,
    )


# ---------------------------------------------------------------------------
# structural laws, each verified by enumerating both sides independently


def verify_cartesian_law(
    P1: HPolyhedron, P2: HPolyhedron, budget: Optional[int] = DEFAULT_BUDGET
) -> bool:
    """Circuits of a product are the two factor circuit sets, zero-padded."""
    if not (is_pointed(P1) and is_pointed(P2)):
        raise NotPointed("cartesian law needs pointed factors")
    lhs = enumerate_circuits(cartesian_product(P1, P2), budget)
    padded = [tuple(g) + tuple(zero_vector(P2.n)) for g in enumerate_circuits(P1, budget)]
    padded += [tuple(zero_vector(P1.n)) + tuple(g) for g in enumerate_circuits(P2, budget)]
    return set(lhs) == set(CircuitSet.of(padded))


def verify_slack_law(P: HPolyhedron, budget: Optional[int] = DEFAULT_BUDGET) -> bool:
    """Circuits of the slack embedding are the images of C(P) under the
    inequality matrix.  Description-sensitive: P should be minimal."""
    if not is_pointed(P):
        raise NotPointed(P.name or "slack law input")
    S, _ = slack_standard_form(P)
    lhs = enumerate_circuits(S, budget)
    B = matrix(P.B)
    rhs = CircuitSet.of(mat_vec(B, g) for g in enumerate_circuits(P, budget))
    return set(lhs) == set(rhs)


def verify_hom_law(P: HPolyhedron, budget: Optional[int] = DEFAULT_BUDGET) -> bool:
    """Circuits of the homogenization split into the level-zero copies of
    C(P) and the level-one basic solutions, with nothing left over."""
    if not is_pointed(P):
        raise NotPointed(P.name or "hom law input")
    try:
        circuits_of_homogenization(P, budget)
    except CorrespondenceViolation:
        return False
    return True


def verify_balas_circuits(
    family: DisjunctiveFamily, budget: Optional[int] = DEFAULT_BUDGET
) -> bool:
    """Circuits of the disjunctive lift are exactly: single-slot copies of
    piece circuits, plus weight swaps e_i - e_j carrying a basic solution of
    piece i against a negated basic solution of piece j."""
    for piece in family.pieces:
        if not is_pointed(piece):
            raise NotPointed(piece.name or "family piece")
    Q, _ = balas_extension(family)
    actual = set(enumerate_circuits(Q, budget))

    p, n = family.p, family.n
    piece_circuits = [list(enumerate_circuits(piece, budget)) for piece in family.pieces]
    piece_basics = [list(basic_solutions(piece, budget)) for piece in family.pieces]

    def lifted(weights, blocks):
        out = list(weights)
        for blk in blocks:
            out.extend(blk)
        return out

    expected = []
    zero_blk = tuple(zero_vector(n))
    for i in range(p):
        for g in piece_circuits[i]:
            blocks = [zero_blk] * p
            blocks[i] = tuple(g)
            expected.append(lifted(zero_vector(p), blocks))
    for i in range(p):
        for j in range(i + 1, p):
            for s in piece_basics[i]:
                for t in piece_basics[j]:
                    weights = list(zero_vector(p))
                    weights[i], weights[j] = 1, -1
                    blocks = [zero_blk] * p
                    blocks[i] = tuple(s)
                    blocks[j] = tuple(vec_neg(t))
                    expected.append(lifted(weights, blocks))
    return actual == set(CircuitSet.of(expected))


def verify_isomorphism_law(
    Q: HPolyhedron, pi: LinearMap, budget: Optional[int] = DEFAULT_BUDGET
) -> bool:
    """Under a map injective on Q's affine hull, circuits transfer exactly.

    Both sides are computed on minimal descriptions: Q is minimized first so
    its implicit equalities are explicit, and the image is minimized by the
    elimination step.
    """
    Qm = minimize_description(Q)
    ker = kernel_basis(pi.matrix, Q.n)
    hull_dirs = kernel_basis(Qm.A, Q.n)
    if ker and hull_dirs:
        stacked = rank(matrix(list(ker) + list(hull_dirs)))
        if stacked != len(ker) + len(hull_dirs):
            raise NotInjectiveOnQ("map kernel meets the affine hull of Q")

    CQ = enumerate_circuits(Qm, budget)
    lhs = enumerate_circuits(project(Qm, pi), budget)
    if CQ.is_subspace or lhs.is_subspace:
        if not (CQ.is_subspace and lhs.is_subspace):
            return False
        mapped = [pi(v) for v in CQ.lineality]
        both = list(lhs.lineality) + [m for m in mapped if not is_zero(m)]
        return rank(matrix(both)) == rank(matrix(lhs.lineality)) == rank(
            matrix([m for m in mapped if not is_zero(m)])
        )
    rhs = pi.image_directions(CQ)
    return set(lhs) == set(rhs)

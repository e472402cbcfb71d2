"""H-representation polyhedra {A x = b, B x <= d} and geometric operations.

Descriptions matter here: several quantities computed downstream
(circuits in particular) depend on the literal row system, not just on
the point set, so operations never silently rewrite a description. The
explicit `minimize_description` pass is the only place rows are
promoted or dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

from .directions import CircuitSet
from .errors import BudgetExceeded, EmptyPolyhedron, NotPointed
from .linalg import (
    ONE,
    ZERO,
    Matrix,
    Vector,
    dot,
    identity,
    is_zero,
    kernel_basis,
    mat_vec,
    matmul,
    matrix,
    primitive,
    rank,
    row_space_basis_indices,
    rref,
    solve,
    transpose,
    vec_add,
    vec_scale,
    vec_sub,
    vector,
    zero_vector,
)
from . import lp

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class HPolyhedron:
    """{x in R^n : A x = b, B x <= d}; either row block may be empty."""

    n: int
    A: Matrix = ()
    b: Vector = ()
    B: Matrix = ()
    d: Vector = ()
    name: str = ""

    def __post_init__(self):
        assert len(self.A) == len(self.b) and len(self.B) == len(self.d)
        assert all(len(row) == self.n for row in self.A)
        assert all(len(row) == self.n for row in self.B)

    @staticmethod
    def make(n, A=(), b=(), B=(), d=(), name="") -> "HPolyhedron":
        return HPolyhedron(
            n=n, A=matrix(A), b=vector(b), B=matrix(B), d=vector(d), name=name
        )

    def contains(self, x: Sequence[Fraction]) -> bool:
        x = vector(x)
        if any(dot(row, x) != rhs for row, rhs in zip(self.A, self.b)):
            return False
        return all(dot(row, x) <= rhs for row, rhs in zip(self.B, self.d))

    def tight_inequality_rows(self, x: Sequence[Fraction]) -> tuple[int, ...]:
        x = vector(x)
        return tuple(i for i, (row, rhs) in enumerate(zip(self.B, self.d)) if dot(row, x) == rhs)

    def renamed(self, name: str) -> "HPolyhedron":
        return replace(self, name=name)


@dataclass(frozen=True)
class LinearMap:
    """x -> M x."""

    matrix: Matrix
    name: str = ""

    @property
    def out_dim(self) -> int:
        return len(self.matrix)

    def in_dim(self, default: int = 0) -> int:
        return len(self.matrix[0]) if self.matrix else default

    def __call__(self, x: Sequence[Fraction]) -> Vector:
        return mat_vec(self.matrix, x)

    def compose(self, inner: "LinearMap") -> "LinearMap":
        return LinearMap(matrix=matmul(self.matrix, inner.matrix))

    def image_directions(self, dirs: Iterable[Sequence[Fraction]]) -> CircuitSet:
        """Canonical nonzero images of a direction collection."""
        return CircuitSet.of(v for v in (self(g) for g in dirs) if not is_zero(v))

    @staticmethod
    def identity(n: int) -> "LinearMap":
        return LinearMap(matrix=identity(n))


@dataclass(frozen=True)
class AffineMap:
    """x -> M x + offset."""

    matrix: Matrix
    offset: Vector

    def __call__(self, x: Sequence[Fraction]) -> Vector:
        return vec_add(mat_vec(self.matrix, x), self.offset)

    @property
    def linear(self) -> LinearMap:
        return LinearMap(matrix=self.matrix)


@dataclass(frozen=True)
class VRep:
    """conv(vertices) + cone(rays); rays are primitive with fixed sign."""

    vertices: tuple[Vector, ...] = ()
    rays: tuple[Vector, ...] = ()


def check_budget(count: int, budget: Optional[int], what: str) -> None:
    if budget is not None and count > budget:
        raise BudgetExceeded(count, budget, what)


def is_pointed(P: HPolyhedron) -> bool:
    """Trivial lineality space: ker(A) meets ker(B) only at zero."""
    stacked = P.A + P.B
    if not stacked:
        return P.n == 0
    return rank(stacked) == P.n


def lineality_basis(P: HPolyhedron) -> list[Vector]:
    stacked = P.A + P.B
    if not stacked:
        return [vector(v) for v in identity(P.n)]
    return kernel_basis(stacked, P.n)


def implicit_equality_rows(P: HPolyhedron) -> tuple[int, ...]:
    """Inequality rows that hold with equality on the whole polyhedron."""
    if not lp.is_feasible(P):
        raise EmptyPolyhedron(P.name or "polyhedron")
    out = []
    for i, (row, rhs) in enumerate(zip(P.B, P.d)):
        if lp.is_implied(tuple(-x for x in row), -rhs, P):
            out.append(i)
    return tuple(out)


def dim(P: HPolyhedron) -> int:
    """Dimension of the affine hull; raises EmptyPolyhedron when empty."""
    implicit = implicit_equality_rows(P)
    eqs = P.A + tuple(P.B[i] for i in implicit)
    return P.n - (rank(eqs) if eqs else 0)


def minimize_description(P: HPolyhedron) -> HPolyhedron:
    """Promote implicit equalities, then drop every redundant row.

    The result has full-row-rank A and each inequality row facet-defining.
    """
    implicit = set(implicit_equality_rows(P))  # raises on empty input
    A = list(P.A) + [P.B[i] for i in sorted(implicit)]
    b = list(P.b) + [P.d[i] for i in sorted(implicit)]
    B = [row for i, row in enumerate(P.B) if i not in implicit]
    d = [rhs for i, rhs in enumerate(P.d) if i not in implicit]

    keep = row_space_basis_indices(A) if A else []
    A = [A[i] for i in keep]
    b = [b[i] for i in keep]

    # Cheap syntactic pass first: scale to primitive normals, drop exact
    # duplicates and dominated parallel rows.
    seen: dict[Vector, Fraction] = {}
    for row, rhs in zip(B, d):
        if is_zero(row):
            continue  # 0 <= d is vacuous for feasible P
        key = primitive(row)
        scale = next(x for x in row if x != 0) / next(x for x in key if x != 0)
        val = rhs / scale
        if key not in seen or val < seen[key]:
            seen[key] = val
    B = list(seen.keys())
    d = [seen[k] for k in B]

    # LP pass: drop rows implied by the rest, one at a time.
    i = 0
    while i < len(B):
        rest = HPolyhedron(
            n=P.n,
            A=tuple(A),
            b=tuple(b),
            B=tuple(B[:i] + B[i + 1 :]),
            d=tuple(d[:i] + d[i + 1 :]),
        )
        if lp.is_implied(B[i], d[i], rest):
            del B[i], d[i]
        else:
            i += 1
    return HPolyhedron(n=P.n, A=tuple(A), b=tuple(b), B=tuple(B), d=tuple(d), name=P.name)


def vrep(P: HPolyhedron, budget: Optional[int] = DEFAULT_BUDGET) -> VRep:
    """All vertices and extreme rays by tight-row enumeration.

    Requires a pointed polyhedron: every vertex is the unique solution of
    some n independent tight rows, every extreme ray spans the kernel of
    some n-1 independent tight rows of the recession cone.
    """
    if not is_pointed(P):
        raise NotPointed(P.name or "polyhedron")
    if not lp.is_feasible(P):
        raise EmptyPolyhedron(P.name or "polyhedron")
    n, q = P.n, len(P.B)
    rank_A = rank(P.A) if P.A else 0
    k = n - rank_A  # pointedness guarantees k <= q

    vertices = set()
    check_budget(comb(q, k), budget, "vertex candidates")
    for S in itertools.combinations(range(q), k):
        Msub = P.A + tuple(P.B[i] for i in S)
        if rank(Msub) < n:
            continue
        x = solve(Msub, P.b + tuple(P.d[i] for i in S))
        if x is not None and P.contains(x):
            vertices.add(x)

    rays = set()
    if k >= 1:
        check_budget(comb(q, k - 1), budget, "ray candidates")
        for S in itertools.combinations(range(q), k - 1):
            Msub = P.A + tuple(P.B[i] for i in S)
            ker = kernel_basis(Msub, n)
            if len(ker) != 1:
                continue
            r = ker[0]
            Br = mat_vec(P.B, r)
            if all(x <= 0 for x in Br):
                rays.add(primitive(r))
            elif all(x >= 0 for x in Br):
                rays.add(primitive(vec_scale(-ONE, r)))
    return VRep(vertices=tuple(sorted(vertices)), rays=tuple(sorted(rays)))


def minimal_face_dim(P: HPolyhedron, x: Sequence[Fraction]) -> int:
    """Dimension of the smallest face containing an interior point of it."""
    assert P.contains(x)
    tight = P.tight_inequality_rows(x)
    rows = P.A + tuple(P.B[i] for i in tight)
    return P.n - (rank(rows) if rows else 0)


def adjacent_vertices(P: HPolyhedron, u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    mid = vec_scale(Fraction(1, 2), vec_add(vector(u), vector(v)))
    return minimal_face_dim(P, mid) == 1


def edge_directions(P: HPolyhedron, budget: Optional[int] = DEFAULT_BUDGET) -> CircuitSet:
    """Directions of bounded edges (adjacent vertex differences) and extreme rays."""
    V = vrep(P, budget=budget)
    dirs = list(V.rays)
    for u, v in itertools.combinations(V.vertices, 2):
        if adjacent_vertices(P, u, v):
            dirs.append(vec_sub(u, v))
    return CircuitSet.of(dirs, source="edges")


def cartesian_product(P1: HPolyhedron, P2: HPolyhedron) -> HPolyhedron:
    """Block-diagonal description of P1 x P2 with P1 rows first."""
    n = P1.n + P2.n
    pad1 = zero_vector(P2.n)
    pad2 = zero_vector(P1.n)
    A = tuple(row + pad1 for row in P1.A) + tuple(pad2 + row for row in P2.A)
    B = tuple(row + pad1 for row in P1.B) + tuple(pad2 + row for row in P2.B)
    return HPolyhedron(n=n, A=A, b=P1.b + P2.b, B=B, d=P1.d + P2.d)


def homogenize(P: HPolyhedron) -> HPolyhedron:
    """Cone {(t, x) : t >= 0, A x - b t = 0, B x - d t <= 0}, t-row first."""
    A = tuple((-rhs,) + row for row, rhs in zip(P.A, P.b))
    B = ((-ONE,) + zero_vector(P.n),) + tuple((-rhs,) + row for row, rhs in zip(P.B, P.d))
    return HPolyhedron(
        n=P.n + 1,
        A=A,
        b=zero_vector(len(A)),
        B=B,
        d=zero_vector(len(B)),
        name=f"hom({P.name})" if P.name else "",
    )


def slack_standard_form(P: HPolyhedron) -> tuple[HPolyhedron, AffineMap]:
    """Standard-form copy in slack space plus the slack map x -> d - B x.

    The image polyhedron {s >= 0, U s = U d} uses the inequality parts of
    a kernel basis of [B^T A^T] as equality normals. Requires a pointed
    input with independent equality rows (i.e. a minimized description).
    """
    if not is_pointed(P):
        raise NotPointed(P.name or "polyhedron")
    q = len(P.B)
    stacked = transpose(P.B) if not P.A else tuple(
        br + ar for br, ar in zip(transpose(P.B), transpose(P.A))
    )
    basis = kernel_basis(stacked, q + len(P.A)) if stacked else []
    U = tuple(v[:q] for v in basis)
    assert (rank(U) == len(U)) if U else True, "equality rows must be independent"
    eq_rhs = tuple(dot(u, P.d) for u in U)
    S = HPolyhedron(
        n=q,
        A=U,
        b=eq_rhs,
        B=tuple(vec_scale(-ONE, row) for row in identity(q)),
        d=zero_vector(q),
        name=f"slack({P.name})" if P.name else "",
    )
    sigma = AffineMap(matrix=tuple(vec_scale(-ONE, row) for row in P.B), offset=P.d)
    return S, sigma


class _Eliminator:
    """Fourier-Motzkin with equality substitution and exact redundancy pruning."""

    def __init__(self, nvars: int, eqs, ineqs):
        # Rows are (coeffs list over live variables, rhs).
        self.live = list(range(nvars))
        self.eqs = [(list(r), rhs) for r, rhs in eqs]
        self.ineqs = [(list(r), rhs) for r, rhs in ineqs]

    def eliminate(self, target_vars: set[int]) -> None:
        while True:
            pending = [j for j, v in enumerate(self.live) if v in target_vars]
            if not pending:
                return
            j = self._pick(pending)
            self._eliminate_one(j)
            self._prune()

    def _pick(self, pending: list[int]) -> int:
        best, best_cost = None, None
        for j in pending:
            if any(r[j] != 0 for r, _ in self.eqs):
                return j  # substitution never adds rows
            pos = sum(1 for r, _ in self.ineqs if r[j] > 0)
            neg = sum(1 for r, _ in self.ineqs if r[j] < 0)
            cost = pos * neg - pos - neg
            if best_cost is None or cost < best_cost:
                best, best_cost = j, cost
        return best

    def _eliminate_one(self, j: int) -> None:
        pivot = next((i for i, (r, _) in enumerate(self.eqs) if r[j] != 0), None)
        if pivot is not None:
            prow, prhs = self.eqs.pop(pivot)
            inv = ONE / prow[j]
            prow = [x * inv for x in prow]
            prhs = prhs * inv

            def subst(rows):
                out = []
                for r, rhs in rows:
                    if r[j] != 0:
                        f = r[j]
                        r = [x - f * y for x, y in zip(r, prow)]
                        rhs = rhs - f * prhs
                    out.append((r, rhs))
                return out

            self.eqs = subst(self.eqs)
            self.ineqs = subst(self.ineqs)
        else:
            pos = [(r, rhs) for r, rhs in self.ineqs if r[j] > 0]
            neg = [(r, rhs) for r, rhs in self.ineqs if r[j] < 0]
            keep = [(r, rhs) for r, rhs in self.ineqs if r[j] == 0]
            for rp, bp in pos:
                for rn, bn in neg:
                    a, c = rp[j], -rn[j]
                    row = [c * x + a * y for x, y in zip(rp, rn)]
                    keep.append((row, c * bp + a * bn))
            self.ineqs = keep
        del self.live[j]
        self.eqs = [(r[:j] + r[j + 1 :], rhs) for r, rhs in self.eqs]
        self.ineqs = [(r[:j] + r[j + 1 :], rhs) for r, rhs in self.ineqs]

    def _prune(self) -> None:
        """Trim duplicates and LP-redundant inequality rows."""
        seen: dict[Vector, Fraction] = {}
        for r, rhs in self.ineqs:
            if is_zero(r):
                continue
            key = primitive(r)
            scale = next(x for x in r if x != 0) / next(x for x in key if x != 0)
            val = rhs / scale
            if key not in seen or val < seen[key]:
                seen[key] = val
        rows = [(list(k), v) for k, v in seen.items()]
        i = 0
        while i < len(rows):
            others = rows[:i] + rows[i + 1 :]
            probe = HPolyhedron(
                n=len(self.live),
                A=tuple(tuple(r) for r, _ in self.eqs),
                b=tuple(rhs for _, rhs in self.eqs),
                B=tuple(tuple(r) for r, _ in others),
                d=tuple(rhs for _, rhs in others),
            )
            if lp.is_implied(tuple(rows[i][0]), rows[i][1], probe):
                del rows[i]
            else:
                i += 1
        self.ineqs = rows

    def result(self, n: int) -> HPolyhedron:
        assert len(self.live) == n
        return HPolyhedron(
            n=n,
            A=tuple(tuple(r) for r, _ in self.eqs),
            b=tuple(rhs for _, rhs in self.eqs),
            B=tuple(tuple(r) for r, _ in self.ineqs),
            d=tuple(rhs for _, rhs in self.ineqs),
        )


def project(P: HPolyhedron, pi: LinearMap) -> HPolyhedron:
    """Minimized description of pi(P) by Fourier-Motzkin elimination.

    Works on the graph system {x = pi(y), y in P} over (x, y) and
    eliminates all y variables, substituting through equality rows when
    possible and pruning redundant rows after every elimination step.
    """
    m = P.n
    nt = pi.out_dim
    assert pi.in_dim(m) == m, "map domain does not match polyhedron"
    if not lp.is_feasible(P):
        raise EmptyPolyhedron(P.name or "polyhedron")

    eqs = []
    for i in range(nt):
        row = [ZERO] * (nt + m)
        row[i] = ONE
        for jj in range(m):
            row[nt + jj] = -pi.matrix[i][jj]
        eqs.append((row, ZERO))
    for row, rhs in zip(P.A, P.b):
        eqs.append(([ZERO] * nt + list(row), rhs))
    ineqs = [([ZERO] * nt + list(row), rhs) for row, rhs in zip(P.B, P.d)]

    elim = _Eliminator(nt + m, eqs, ineqs)
    elim.eliminate(set(range(nt, nt + m)))
    return minimize_description(elim.result(nt))


def minkowski_sum(P1: HPolyhedron, P2: HPolyhedron) -> HPolyhedron:
    assert P1.n == P2.n
    summing = LinearMap(matrix=tuple(row + row for row in identity(P1.n)))
    return project(cartesian_product(P1, P2), summing)


def affine_image_description(P: HPolyhedron, phi: AffineMap) -> HPolyhedron:
    """Description of phi(P) for invertible linear part, by row composition."""
    Minv = _inverse(phi.matrix)
    # x = M y + t  =>  rows become (row . M^-1) x <= rhs + row . M^-1 t
    A = tuple(mat_vec(transpose(Minv), row) for row in P.A)
    B = tuple(mat_vec(transpose(Minv), row) for row in P.B)
    b = tuple(rhs + dot(row, phi.offset) for row, rhs in zip(A, P.b))
    d = tuple(rhs + dot(row, phi.offset) for row, rhs in zip(B, P.d))
    return HPolyhedron(n=P.n, A=A, b=b, B=B, d=d, name=P.name)


def preimage_description(P: HPolyhedron, tau: LinearMap) -> HPolyhedron:
    """{x : tau(x) in P} by composing rows with tau; tau need not be square."""
    mt = tau.matrix
    A = tuple(mat_vec(transpose(mt), row) for row in P.A)
    B = tuple(mat_vec(transpose(mt), row) for row in P.B)
    return HPolyhedron(n=tau.in_dim(P.n), A=A, b=P.b, B=B, d=P.d)


def _inverse(M: Matrix) -> Matrix:
    n = len(M)
    aug = tuple(row + ident for row, ident in zip(M, identity(n)))
    R, pivots = rref(aug)
    if pivots[:n] != tuple(range(n)):
        raise ValueError("matrix not invertible")
    return tuple(row[n:] for row in R[:n])

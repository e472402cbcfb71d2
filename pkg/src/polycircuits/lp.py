"""Exact two-phase primal simplex over rational data.

Bland's rule everywhere, so runs terminate and are deterministic for a
fixed row and column order. Every answer ships with an exact
certificate that is re-checked against the original data before it is
returned: a feasible point plus equal-value dual multipliers for
optimal, a recession direction with positive growth for unbounded, and
Farkas multipliers for infeasible. A certificate failure raises
CorrespondenceViolation since it can only come from a bug here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CorrespondenceViolation
from .linalg import (
    ONE,
    ZERO,
    Vector,
    dot,
    is_zero,
    mat_vec,
    rank,
    row_space_basis_indices,
    solve,
    transpose,
    vec_sub,
    vector,
)

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Optional[Fraction] = None
    point: Optional[Vector] = None
    ray: Optional[Vector] = None


def lp_solve(objective: Sequence[Fraction], poly, sense: str = "max") -> LPResult:
    """Optimize objective over {A x = b, B x <= d} with free variables x."""
    assert sense in ("max", "min")
    c = vector(objective)
    n = poly.n
    assert len(c) == n, "objective dimension mismatch"
    # Internal solver minimizes; for max we minimize -c.
    cmin = tuple(-x for x in c) if sense == "max" else c

    res = _solve_min(cmin, poly)

    if res.status == OPTIMAL:
        value = dot(c, res.point)
        _assert(poly.contains(res.point), "optimal point infeasible")
        return LPResult(OPTIMAL, value=value, point=res.point)
    if res.status == UNBOUNDED:
        r = res.ray
        _assert(is_zero(mat_vec(poly.A, r)) if poly.A else True, "ray leaves equalities")
        _assert(all(x <= 0 for x in mat_vec(poly.B, r)) if poly.B else True, "ray not recessive")
        growth = dot(c, r)
        _assert(growth > 0 if sense == "max" else growth < 0, "ray does not improve")
        return LPResult(UNBOUNDED, ray=r)
    return LPResult(INFEASIBLE)


def is_feasible(poly) -> bool:
    return lp_solve([ZERO] * poly.n, poly).status != INFEASIBLE


def is_implied(normal: Sequence[Fraction], rhs, poly) -> bool:
    """True iff a^T x <= rhs holds on all of poly (vacuously on empty)."""
    res = lp_solve(normal, poly, sense="max")
    if res.status == UNBOUNDED:
        return False
    if res.status == INFEASIBLE:
        return True
    return res.value <= rhs


def _assert(cond: bool, msg: str) -> None:
    if not cond:
        raise CorrespondenceViolation(f"simplex certificate check failed: {msg}")


def _solve_min(c: Vector, poly) -> LPResult:
    """Minimize c^T x over poly; point/ray are in original x coordinates."""
    n, A, b, B, d = poly.n, poly.A, poly.b, poly.B, poly.d
    p, q = len(A), len(B)

    # Independent equality rows; inequality rows are always independent in
    # standard form thanks to their slack columns.
    if p:
        keep = row_space_basis_indices(A)
        if len(keep) < p and rank([row + (rhs,) for row, rhs in zip(A, b)]) > len(keep):
            return LPResult(INFEASIBLE)
        A = tuple(A[i] for i in keep)
        b = tuple(b[i] for i in keep)
        p = len(A)

    # Standard form: z = (u, w, s) >= 0 with x = u - w, slack s on B rows.
    nz = 2 * n + q
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(p):
        rows.append(list(A[i]) + [-x for x in A[i]] + [ZERO] * q)
        rhs.append(b[i])
    for i in range(q):
        slack = [ZERO] * q
        slack[i] = ONE
        rows.append(list(B[i]) + [-x for x in B[i]] + slack)
        rhs.append(d[i])
    cz = list(c) + [-x for x in c] + [ZERO] * q
    m = len(rows)

    std = _StandardLP(rows, rhs, cz)
    out = std.solve()

    if out[0] == INFEASIBLE:
        return LPResult(INFEASIBLE)
    if out[0] == UNBOUNDED:
        zray = out[1]
        xray = vec_sub(zray[:n], zray[n : 2 * n])
        return LPResult(UNBOUNDED, ray=xray)
    zpt = out[1]
    x = vec_sub(zpt[:n], zpt[n : 2 * n])
    return LPResult(OPTIMAL, value=dot(c, x), point=x)


class _StandardLP:
    """min c^T z, M z = rhs, z >= 0, with M of full row rank."""

    def __init__(self, M: list[list[Fraction]], rhs: list[Fraction], c: list[Fraction]):
        self.M = M
        self.rhs = rhs
        self.c = c
        self.m = len(M)
        self.nz = len(c)

    def solve(self):
        m, nz = self.m, self.nz
        if m == 0:
            j = next((j for j in range(nz) if self.c[j] < 0), None)
            if j is None:
                return (OPTIMAL, vector([ZERO] * nz))
            ray = [ZERO] * nz
            ray[j] = ONE
            return (UNBOUNDED, vector(ray))

        # Phase 1: artificial columns form the initial basis.
        tab = []
        for i in range(m):
            sign = ONE if self.rhs[i] >= 0 else -ONE
            art = [ZERO] * m
            art[i] = ONE
            tab.append([sign * x for x in self.M[i]] + art + [sign * self.rhs[i]])
        basis = [nz + i for i in range(m)]
        obj = self._reduced_obj([ZERO] * nz + [ONE] * m, tab, basis)
        status = self._iterate(tab, obj, basis, eligible=nz + m)
        assert status is None, "phase 1 cannot be unbounded"
        if -obj[-1] != 0:
            self._check_farkas(tab, basis)
            return (INFEASIBLE,)

        # Full row rank guarantees every artificial can be pivoted out.
        for i in range(m):
            if basis[i] >= nz:
                col = next(j for j in range(nz) if tab[i][j] != 0)
                self._pivot(tab, obj, basis, i, col)
        for row in tab:
            del row[nz:-1]

        # Phase 2 on the real columns.
        obj = self._reduced_obj(list(self.c), tab, basis)
        status = self._iterate(tab, obj, basis, eligible=nz)
        if status is not None:
            enter = status
            ray = [ZERO] * nz
            ray[enter] = ONE
            for i in range(m):
                ray[basis[i]] = -tab[i][enter]
            self._check_ray(vector(ray))
            return (UNBOUNDED, vector(ray))
        z = [ZERO] * nz
        for i in range(m):
            z[basis[i]] = tab[i][-1]
        self._check_optimal(vector(z), basis)
        return (OPTIMAL, vector(z))

    def _reduced_obj(self, c: list[Fraction], tab, basis) -> list[Fraction]:
        obj = list(c) + [ZERO] * (len(tab[0]) - len(c)) if tab else list(c) + [ZERO]
        for i, j in enumerate(basis):
            if obj[j] != 0:
                f = obj[j]
                obj[:] = [x - f * y for x, y in zip(obj, tab[i])]
        return obj

    def _iterate(self, tab, obj, basis, eligible: int):
        """Run Bland pivots to optimality; returns entering column if unbounded."""
        while True:
            enter = next((j for j in range(eligible) if obj[j] < 0), None)
            if enter is None:
                return None
            leave, best = None, None
            for i in range(len(tab)):
                a = tab[i][enter]
                if a > 0:
                    ratio = tab[i][-1] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        leave, best = i, ratio
            if leave is None:
                return enter
            self._pivot(tab, obj, basis, leave, enter)

    @staticmethod
    def _pivot(tab, obj, basis, r: int, c: int) -> None:
        inv = ONE / tab[r][c]
        tab[r] = [x * inv for x in tab[r]]
        for i in range(len(tab)):
            if i != r and tab[i][c] != 0:
                f = tab[i][c]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
        if obj[c] != 0:
            f = obj[c]
            obj[:] = [x - f * y for x, y in zip(obj, tab[r])]
        basis[r] = c

    def _dual_from_basis(self, basis, cost) -> Vector:
        cols = tuple(tuple(self.M[i][j] for i in range(self.m)) for j in basis)
        y = solve(cols, tuple(cost[j] for j in basis))
        assert y is not None
        return y

    def _check_optimal(self, z: Vector, basis) -> None:
        _assert(all(x >= 0 for x in z), "negative basic value")
        _assert(all(dot(row, z) == r for row, r in zip(self.M, self.rhs)), "point violates rows")
        y = self._dual_from_basis(basis, self.c)
        cols = transpose(self.M)
        _assert(all(dot(y, cols[j]) <= self.c[j] for j in range(self.nz)), "dual infeasible")
        _assert(dot(y, self.rhs) == dot(vector(self.c), z), "duality gap")

    def _check_ray(self, ray: Vector) -> None:
        _assert(all(x >= 0 for x in ray), "ray leaves the cone")
        _assert(all(dot(row, ray) == 0 for row in self.M), "ray not in row kernel")
        _assert(dot(vector(self.c), ray) < 0, "ray does not decrease objective")

    def _check_farkas(self, tab, basis) -> None:
        # Phase-1 dual: y^T M <= 0 on real columns yet y^T rhs > 0.
        sgn = [ONE if self.rhs[i] >= 0 else -ONE for i in range(self.m)]
        Msigned = [[sgn[i] * x for x in self.M[i]] for i in range(self.m)]
        cost = [ZERO] * self.nz + [ONE] * self.m
        cols = tuple(
            tuple((Msigned[i][j] if j < self.nz else (ONE if j - self.nz == i else ZERO)) for i in range(self.m))
            for j in basis
        )
        y = solve(cols, tuple(cost[j] for j in basis))
        assert y is not None
        yorig = tuple(s * v for s, v in zip(sgn, y))
        _assert(all(dot(yorig, col) <= 0 for col in transpose(self.M)), "Farkas columns")
        _assert(dot(yorig, self.rhs) > 0, "Farkas rhs")

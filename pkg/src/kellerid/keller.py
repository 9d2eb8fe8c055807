"""Determinant identities for components of plane automorphisms and Keller maps.

A curve ``f = y^m + a_1(x) y^(m-1) + ... + a_m(x)`` is encoded by :class:`CurveF`.
Everything is computed from the (2m-2) x (2m-2) matrix ``M``: the formal-degree
Sylvester matrix of ``f_x`` and ``f_y`` in ``y`` with the ``f_x`` rows on top.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import (
    ONE,
    ZERO,
    AlgebraError,
    MPoly,
    NonConformingInput,
    U,
    V,
    Y,
    gcd_many,
    rational_roots,
)
from .polymatrix import PolyMatrix, determinant, replace_rows, resultant, sylvester, versor


class KellerError(AlgebraError):
    pass


class ZeroPartialX(KellerError):
    pass


class BadIndex(KellerError):
    pass


class DegenerateQ(KellerError):
    pass


class NotKeller(KellerError):
    pass


class ReconstructionMismatch(KellerError):
    pass


@dataclass(frozen=True)
class CurveF:
    m: int
    a: Tuple[MPoly, ...]

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"m must be at least 2, got {self.m}")
        a = tuple(c if isinstance(c, MPoly) else MPoly.const(c) for c in self.a)
        if len(a) != self.m:
            raise ValueError(f"expected {self.m} coefficients a_1..a_m, got {len(a)}")
        for i, c in enumerate(a, 1):
            if not c.involves_only(("x",)):
                raise NonConformingInput(f"a_{i} = {c} must be a polynomial in x only")
        object.__setattr__(self, "a", a)

    @classmethod
    def from_poly(cls, f: MPoly) -> "CurveF":
        """Split a polynomial monic in y; raises ValueError otherwise."""
        if not f.involves_only(("x", "y")):
            raise NonConformingInput(f"{f} must involve only x and y")
        cs = f.coefficients_in("y")
        m = len(cs) - 1
        if cs[-1] != ONE:
            raise ValueError(f"{f} is not monic in y")
        return cls(m, tuple(cs[m - i] for i in range(1, m + 1)))

    @classmethod
    def from_coefficients(cls, rows: Sequence[Sequence]) -> "CurveF":
        """Build from ascending-in-x coefficient lists ``[a_1, ..., a_m]``."""
        return cls(len(rows), tuple(MPoly.univariate(r, "x") for r in rows))

    def poly(self) -> MPoly:
        f = Y ** self.m
        for i, c in enumerate(self.a, 1):
            f = f + c * Y ** (self.m - i)
        return f

    def fx(self) -> MPoly:
        return self.poly().derivative("x")

    def fy(self) -> MPoly:
        return self.poly().derivative("y")

    def __str__(self) -> str:
        return str(self.poly())


@dataclass(frozen=True)
class AssumptionsReport:
    monic_form_ok: bool
    degree_bounds_ok: bool
    reduced_all_lambda: bool
    bad_lambda_gcd: MPoly
    dy_fx_positive: bool
    bad_lambda_roots: Tuple[Fraction, ...] = ()

    @property
    def all_ok(self) -> bool:
        return self.monic_form_ok and self.degree_bounds_ok and self.reduced_all_lambda and self.dy_fx_positive

    def warnings(self) -> List[str]:
        out = []
        if not self.degree_bounds_ok:
            out.append("main assumption 1 fails: some deg a_i > i")
        if not self.reduced_all_lambda:
            out.append(f"main assumption 2 fails: f - lambda is not reduced at roots of {self.bad_lambda_gcd} (lambda = v)")
        if not self.dy_fx_positive:
            out.append("main assumption 3 fails: deg_y f_x = 0")
        return out


@dataclass(frozen=True)
class MatrixM:
    matrix: PolyMatrix
    m: int
    k_vanish: int


@dataclass(frozen=True)
class IdentityAIndex:
    k: int
    i: int
    j: int

    def __post_init__(self):
        if self.k < 1 or self.i < 0 or self.j < 0 or self.i + self.j != self.k - 1:
            raise BadIndex(f"need k >= 1, i, j >= 0 and i + j = k - 1; got {self}")


@dataclass(frozen=True)
class IdentityReport:
    family: str
    k: int
    residual: MPoly
    i: Optional[int] = None
    j: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.residual.is_zero()

    @property
    def label(self) -> str:
        if self.family == "A":
            return f"A(k={self.k}, i={self.i}, j={self.j})"
        return f"B(k={self.k})"


@dataclass(frozen=True)
class TheoremCheck:
    identities: Tuple[IdentityReport, ...]
    warnings: Tuple[str, ...] = ()

    @property
    def verdict(self) -> bool:
        return all(r.holds for r in self.identities)


@dataclass(frozen=True)
class QData:
    Q: MPoly
    N: int
    Qk: Tuple[MPoly, ...]


@dataclass(frozen=True)
class QOracleResult:
    verdict: bool
    data: QData
    orders: Tuple[float, ...]
    warnings: Tuple[str, ...] = ()


@dataclass(frozen=True)
class AssociatedG:
    b: Tuple[MPoly, ...]
    b_tilde: Tuple[MPoly, ...]
    g: MPoly
    jac_value: Fraction
    R: Fraction


@dataclass(frozen=True)
class DetResCheck:
    k: int
    holds: bool
    detM: MPoly
    res: MPoly


# -- main assumptions ------------------------------------------------------

def check_main_assumptions(f: CurveF) -> AssumptionsReport:
    degree_ok = all(c.degree("x") <= i for i, c in enumerate(f.a, 1))
    F = f.poly()
    fy = f.fy()
    # lambda is carried by v
    D = resultant(F - V, fy, "y", f.m, f.m - 1)
    G = gcd_many(D.coefficients_in("x"), "v")
    reduced = not G.is_zero() and G.is_constant()
    roots: Tuple[Fraction, ...] = ()
    if not G.is_zero() and not G.is_constant():
        roots = tuple(rational_roots(G, "v"))
    return AssumptionsReport(
        monic_form_ok=True,
        degree_bounds_ok=degree_ok,
        reduced_all_lambda=reduced,
        bad_lambda_gcd=G,
        dy_fx_positive=f.fx().degree("y") > 0,
        bad_lambda_roots=roots,
    )


def normalize_a1(f: CurveF) -> CurveF:
    """Apply y -> y - a_1/m so the new a_1 vanishes."""
    if f.a[0].is_zero():
        return f
    shifted = f.poly().substitute("y", Y - f.a[0].scale(Fraction(1, f.m)))
    return CurveF.from_poly(shifted)


def jacobian(p: MPoly, q: MPoly) -> MPoly:
    for h in (p, q):
        if not h.involves_only(("x", "y")):
            raise NonConformingInput(f"{h} must involve only x and y")
    return p.derivative("x") * q.derivative("y") - p.derivative("y") * q.derivative("x")


# -- the matrix M ----------------------------------------------------------

def build_M(f: CurveF) -> MatrixM:
    m = f.m
    mat = sylvester(f.fx(), f.fy(), "y", m - 1, m - 1)
    k = 0
    while k < m and f.a[k].derivative("x").is_zero():
        k += 1
    return MatrixM(mat, m, k)


def check_detM_resultant(f: CurveF) -> DetResCheck:
    fx, fy = f.fx(), f.fy()
    if fx.is_zero():
        raise ZeroPartialX(f"f_x = 0 for f = {f}")
    M = build_M(f)
    detM = determinant(M.matrix)
    res = resultant(fx, fy, "y", fx.degree("y"), fy.degree("y"))
    k, m = M.k_vanish, f.m
    factor = (-1) ** (k * (m + 1)) * m ** k
    return DetResCheck(k, detM == res.scale(factor), detM, res)


def _versor_matrix(M: MatrixM, top: Sequence[int], bottom: Sequence[int]) -> PolyMatrix:
    """Replace top-block rows r and bottom-block rows (m-1)+s by versors at m+r-1, m+s-1."""
    m, n = M.m, M.matrix.n
    reps = [(r, versor(n, m + r - 1)) for r in top]
    reps += [((m - 1) + s, versor(n, m + s - 1)) for s in bottom]
    return replace_rows(M.matrix, reps)


def identity_A_term(f: CurveF, rset: Sequence[int], sset: Sequence[int], M: Optional[MatrixM] = None) -> MPoly:
    m = f.m
    for name, s in (("rset", rset), ("sset", sset)):
        if list(s) != sorted(set(s)):
            raise BadIndex(f"{name} must be strictly ascending: {s}")
        if s and not (1 <= s[0] and s[-1] <= m - 1):
            raise BadIndex(f"{name} must lie in 1..{m - 1}: {s}")
    M = M or build_M(f)
    return determinant(_versor_matrix(M, rset, sset))


def check_identity_A(
    f: CurveF, idx: IdentityAIndex, include_overlapping: bool = False, M: Optional[MatrixM] = None
) -> IdentityReport:
    """k-th x-derivative of the sum over versor placements of size (i, j).

    Placements sharing an index between the two blocks produce two equal rows
    and are skipped unless ``include_overlapping`` is set.
    """
    if idx.k > f.m - 1:
        raise BadIndex(f"k must be at most m - 1 = {f.m - 1}, got {idx.k}")
    M = M or build_M(f)
    idxs = range(1, f.m)
    total = ZERO
    for rset in itertools.combinations(idxs, idx.i):
        for sset in itertools.combinations(idxs, idx.j):
            if not include_overlapping and set(rset) & set(sset):
                continue
            total = total + identity_A_term(f, rset, sset, M)
    return IdentityReport("A", idx.k, total.derivative("x", idx.k), idx.i, idx.j)


def identity_A_indices(m: int) -> List[IdentityAIndex]:
    return [IdentityAIndex(k, i, k - 1 - i) for k in range(1, m) for i in range(k - 1, -1, -1)]


def check_theorem_A(f: CurveF, assumptions: Optional[AssumptionsReport] = None) -> TheoremCheck:
    assumptions = assumptions or check_main_assumptions(f)
    M = build_M(f)
    reports = tuple(check_identity_A(f, idx, M=M) for idx in identity_A_indices(f.m))
    return TheoremCheck(reports, tuple(assumptions.warnings()))


# -- the resultant Q(x, u, v) --------------------------------------------------

def build_Q(f: CurveF) -> QData:
    """Determinant of M with a_m' -> a_m' - u (top block) and a_{m-1} -> a_{m-1} - v (bottom block)."""
    M = build_M(f)
    m = f.m
    rows = [list(r) for r in M.matrix.rows]
    for r in range(1, m):
        rows[r - 1][m + r - 2] = rows[r - 1][m + r - 2] - U
        rows[m - 1 + r - 1][m + r - 2] = rows[m - 1 + r - 1][m + r - 2] - V
    Q = determinant(PolyMatrix(rows))
    if Q.is_zero():
        raise DegenerateQ(f"Q vanishes identically for f = {f}")
    Qk = tuple(Q.coefficients_in("x"))
    return QData(Q, len(Qk) - 1, Qk)


def component_oracle_Q(f: CurveF, assumptions: Optional[AssumptionsReport] = None) -> QOracleResult:
    """ord Q_0 = 0 and ord Q_i >= i at (u, v) = (0, 0)."""
    assumptions = assumptions or check_main_assumptions(f)
    data = build_Q(f)
    orders = tuple(q.order_at_origin(("u", "v")) for q in data.Qk)
    ok = orders[0] == 0 and all(orders[i] >= i for i in range(1, len(orders)))
    return QOracleResult(ok, data, orders, tuple(assumptions.warnings()))


# -- Keller identities and the associated polynomial --------------------------

def _last_column_versor(M: MatrixM, row: int) -> MPoly:
    n = M.matrix.n
    return determinant(replace_rows(M.matrix, [(row, versor(n, n))]))


def cramer_top(M: MatrixM, t: int) -> MPoly:
    """det M with top-block row t replaced by the last-column versor."""
    return _last_column_versor(M, t)


def cramer_bottom(M: MatrixM, t: int) -> MPoly:
    """det M with row (m-1)+(t-1) replaced by the last-column versor."""
    return _last_column_versor(M, (M.m - 1) + (t - 1))


def identity_B(f: CurveF, k: int, M: Optional[MatrixM] = None) -> IdentityReport:
    m = f.m
    if not 0 <= k <= m - 1:
        raise BadIndex(f"k must lie in 0..{m - 1}, got {k}")
    M = M or build_M(f)
    if k == 0:
        residual = determinant(M.matrix).derivative("x")
    elif k == 1:
        residual = cramer_top(M, 1).derivative("x")
    else:
        residual = cramer_top(M, k).derivative("x") + cramer_bottom(M, k).scale(m - k)
    return IdentityReport("B", k, residual)


def check_theorem_B(f: CurveF, assumptions: Optional[AssumptionsReport] = None) -> TheoremCheck:
    assumptions = assumptions or check_main_assumptions(f)
    M = build_M(f)
    reports = tuple(identity_B(f, k, M) for k in range(f.m))
    warnings = [w for w in assumptions.warnings() if "assumption 1" not in w]
    return TheoremCheck(reports, tuple(warnings))


def construct_associated(f: CurveF) -> AssociatedG:
    """Cramer-rule reconstruction of g with Jac(f, g) = 1 and deg_y g <= m - 1."""
    m = f.m
    M = build_M(f)
    detM = determinant(M.matrix)
    if detM.is_zero() or not detM.is_constant():
        raise NotKeller(f"det M = {detM} is not a nonzero constant")
    failed = [r.label for r in (identity_B(f, k, M) for k in range(m)) if not r.holds]
    if failed:
        raise NotKeller(f"identities {', '.join(failed)} fail for f = {f}")
    R = Fraction(detM.constant_value())
    b = [cramer_top(M, i).scale(1 / ((m - i) * R)) for i in range(1, m)]
    b_tilde = [ZERO] + [cramer_bottom(M, j).scale(-1 / R) for j in range(2, m + 1)]
    b.append(b_tilde[-1].antiderivative("x"))
    for i in range(m - 1):
        if b[i].derivative("x") != b_tilde[i]:
            raise ReconstructionMismatch(f"b_{i + 1}' = {b[i].derivative('x')} but formula gives {b_tilde[i]}")
    g = ZERO
    for i, bi in enumerate(b, 1):
        g = g + bi * Y ** (m - i)
    jac = jacobian(f.poly(), g)
    if jac != ONE:
        raise ReconstructionMismatch(f"Jac(f, g) = {jac} for f = {f}, g = {g}")
    return AssociatedG(tuple(b), tuple(b_tilde), g, Fraction(1), R)


# -- degree 3 ------------------------------------------------------------------

@dataclass(frozen=True)
class M3Result:
    A3: bool
    B3: bool
    residuals: Tuple[MPoly, MPoly, MPoly, MPoly] = field(repr=False)


def identities_m3(a2: MPoly, a3: MPoly) -> M3Result:
    """Closed forms for f = y^3 + a2*y + a3.

    residuals = ((a2')^2 a2 + 3 (a3')^2)', a2'', a3''', a3''; A uses the first
    three, B swaps a3''' for a3''.
    """
    for c in (a2, a3):
        if not c.involves_only(("x",)):
            raise NonConformingInput(f"{c} must be a polynomial in x only")
    d2, d3 = a2.derivative("x"), a3.derivative("x")
    r1 = (d2 * d2 * a2 + (d3 * d3).scale(3)).derivative("x")
    r2 = a2.derivative("x", 2)
    r3a = a3.derivative("x", 3)
    r3b = a3.derivative("x", 2)
    A3 = r1.is_zero() and r2.is_zero() and r3a.is_zero()
    B3 = r1.is_zero() and r2.is_zero() and r3b.is_zero()
    return M3Result(A3, B3, (r1, r2, r3a, r3b))

"""Brute-force ground truth that does not go through the determinant identities."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .algebra import ONE, ZERO, MPoly, X, Y, render
from .keller import CurveF, check_main_assumptions, check_theorem_A, check_theorem_B, identities_m3, jacobian


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class DegreeBounds:
    degy_g: int
    degx_b: int

    def __post_init__(self):
        if self.degy_g < 0 or self.degx_b < 0:
            raise ValueError("degree bounds must be non-negative")

    @classmethod
    def default(cls, m: int) -> "DegreeBounds":
        return cls(m, 2 * m * m)


def _solve_sparse(rows: List[Tuple[Dict[int, Fraction], Fraction]], nunknowns: int) -> Optional[List[Fraction]]:
    """One solution of a sparse linear system (free unknowns set to 0), or None.

    Each pivot row is kept reduced against all earlier pivots, so reducing a
    new row by the pivots in creation order never reintroduces a pivot column.
    """
    pivots: List[Tuple[int, Dict[int, Fraction], Fraction]] = []
    for coeffs, rhs in rows:
        row = dict(coeffs)
        for col, prow, prhs in pivots:
            factor = row.get(col)
            if not factor:
                continue
            for pc, pv in prow.items():
                s = row.get(pc, 0) - factor * pv
                if s:
                    row[pc] = s
                else:
                    row.pop(pc, None)
            rhs = rhs - factor * prhs
        if not row:
            if rhs:
                return None
            continue
        col = min(row)
        inv = 1 / Fraction(row[col])
        row = {c: v * inv for c, v in row.items()}
        rhs = rhs * inv
        pivots.append((col, row, rhs))
    sol = [Fraction(0)] * nunknowns
    for col, row, rhs in reversed(pivots):
        val = rhs
        for c, v in row.items():
            if c != col:
                val -= v * sol[c]
        sol[col] = val
    return sol


def keller_oracle_linear(f: CurveF, bounds: Optional[DegreeBounds] = None) -> Optional[MPoly]:
    """Solve Jac(f, g) = 1 for g with deg_y g <= degy_g and deg_x of each coefficient <= degx_b.

    The unknowns are the coefficients of the monomials x^d y^e in g; the
    Jacobian is linear in them, so matching all monomial coefficients gives an
    exact linear system. The constant term of g is free and pinned to 0.
    """
    bounds = bounds or DegreeBounds.default(f.m)
    F = f.poly()
    fx, fy = F.derivative("x"), F.derivative("y")
    basis = [(d, e) for e in range(bounds.degy_g + 1) for d in range(bounds.degx_b + 1)]
    columns = []
    for d, e in basis:
        col = ZERO
        if e:
            col = col + fx * MPoly.monomial((d, e - 1, 0, 0), e)
        if d:
            col = col - fy * MPoly.monomial((d - 1, e, 0, 0), d)
        columns.append(col)
    eqs: Dict[tuple, Dict[int, Fraction]] = {}
    for idx, col in enumerate(columns):
        for mono, c in col.items():
            eqs.setdefault(mono, {})[idx] = c
    target = (0, 0, 0, 0)
    eqs.setdefault(target, {})
    rows = [(coeffs, Fraction(1 if mono == target else 0)) for mono, coeffs in sorted(eqs.items())]
    sol = _solve_sparse(rows, len(basis))
    if sol is None:
        return None
    g = MPoly({(d, e, 0, 0): c for (d, e), c in zip(basis, sol)})
    if jacobian(F, g) != ONE:
        raise AssertionError(f"linear oracle produced g = {g} with Jac != 1")
    return g


# -- corpus of automorphism components ---------------------------------------------

@dataclass(frozen=True)
class CorpusSpec:
    """f = x + p(y + q(x)) with p monic of degree m in y and deg q <= 1 in x."""

    m: int
    p: MPoly
    q: MPoly

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("m must be at least 2")
        if not self.p.involves_only(("y",)) or self.p.degree("y") != self.m:
            raise ValueError(f"p = {self.p} must be a polynomial in y of degree {self.m}")
        if self.p.coefficients_in("y")[-1] != ONE:
            raise ValueError(f"p = {self.p} must be monic")
        if not self.q.involves_only(("x",)) or self.q.degree("x") > 1:
            raise ValueError(f"q = {self.q} must be a polynomial in x of degree <= 1")


def corpus_components(spec: CorpusSpec) -> Tuple[CurveF, MPoly]:
    """First coordinate of (x, y) -> (x + p(y + q(x)), y + q(x)), and its partner."""
    partner = Y + spec.q
    f = X + spec.p.substitute("y", partner)
    return CurveF.from_poly(f), partner


def corpus_family(m: int, lo: int, hi: int, qs: Sequence[MPoly]) -> Iterator[Tuple[CorpusSpec, CurveF, MPoly]]:
    """Every monic p of degree m with lower coefficients in lo..hi, for each q."""
    for lower in itertools.product(range(lo, hi + 1), repeat=m):
        p = MPoly.univariate(list(lower) + [1], "y")
        for q in qs:
            spec = CorpusSpec(m, p, q)
            f, partner = corpus_components(spec)
            yield spec, f, partner


# -- (B) => (A) scans -------------------------------------------------------------

@dataclass
class ScanReport:
    m: int
    lo: int
    hi: int
    exhaustive: bool
    tested: int = 0
    b_pass: int = 0
    a_pass: int = 0
    counterexamples: List[str] = field(default_factory=list)
    m3_mismatches: List[str] = field(default_factory=list)


def _scan_instances(m: int, lo: int, hi: int) -> Iterator[CurveF]:
    ranges = [itertools.product(range(lo, hi + 1), repeat=i + 1) for i in range(2, m + 1)]
    for combo in itertools.product(*ranges):
        yield CurveF.from_coefficients([[0]] + [list(c) for c in combo])


def _random_instance(m: int, lo: int, hi: int, rng: random.Random) -> CurveF:
    rows = [[0]] + [[rng.randint(lo, hi) for _ in range(i + 1)] for i in range(2, m + 1)]
    return CurveF.from_coefficients(rows)


EXHAUSTIVE_MAX_M = 3
EXHAUSTIVE_MAX_RANGE = 5


def implication_scan(
    m: int, lo: int, hi: int, exhaustive: bool = False, samples: int = 200, seed: int = 0
) -> ScanReport:
    """Count instances where identities (B) hold but (A) do not (a_1 = 0, deg a_i <= i)."""
    if m not in (2, 3, 4):
        raise BudgetExceeded(f"scans support m in 2..4, got {m}")
    if lo > hi:
        raise ValueError("empty coefficient range")
    if exhaustive and (m > EXHAUSTIVE_MAX_M or hi - lo + 1 > EXHAUSTIVE_MAX_RANGE):
        raise BudgetExceeded(
            f"exhaustive scans need m <= {EXHAUSTIVE_MAX_M} and at most {EXHAUSTIVE_MAX_RANGE} coefficient values"
        )
    if exhaustive:
        instances = _scan_instances(m, lo, hi)
    else:
        rng = random.Random(seed)
        instances = (_random_instance(m, lo, hi, rng) for _ in range(samples))
    report = ScanReport(m, lo, hi, exhaustive)
    seen = set()
    for f in instances:
        key = tuple(f.a)
        if key in seen:
            continue
        seen.add(key)
        asm = check_main_assumptions(f)
        a_ok = check_theorem_A(f, asm).verdict
        b_ok = check_theorem_B(f, asm).verdict
        report.tested += 1
        report.a_pass += a_ok
        report.b_pass += b_ok
        if b_ok and not a_ok:
            report.counterexamples.append(render(f.poly()))
        if m == 3:
            r = identities_m3(f.a[1], f.a[2])
            if (r.A3, r.B3) != (a_ok, b_ok):
                report.m3_mismatches.append(render(f.poly()))
    report.counterexamples.sort()
    report.m3_mismatches.sort()
    return report

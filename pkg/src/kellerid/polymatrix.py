"""Square matrices with polynomial entries, determinants and resultants."""
from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

from .algebra import ONE, ZERO, AlgebraError, MPoly, _var_index


class MatrixError(AlgebraError):
    pass


class IndexOutOfRange(MatrixError):
    pass


class LengthMismatch(MatrixError):
    pass


class SizeGuardExceeded(MatrixError):
    pass


class DegreeExceedsFormal(MatrixError):
    pass


def _entry(v) -> MPoly:
    return v if isinstance(v, MPoly) else MPoly.const(v)


class PolyMatrix:
    """Immutable n x n matrix of :class:`MPoly` entries."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Sequence]):
        rows = tuple(tuple(_entry(v) for v in row) for row in rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise LengthMismatch(f"matrix is not square: row of length {len(row)} in {n} rows")
        self._rows = rows

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> Tuple[Tuple[MPoly, ...], ...]:
        return self._rows

    def __getitem__(self, ij: Tuple[int, int]) -> MPoly:
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"PolyMatrix({[[str(e) for e in r] for r in self._rows]})"

    def to_strings(self) -> List[List[str]]:
        return [[str(e) for e in r] for r in self._rows]

    def replace_row(self, row_index: int, new_row: Sequence) -> "PolyMatrix":
        return replace_row(self, row_index, new_row)

    def determinant(self) -> MPoly:
        return determinant(self)


def versor(n: int, column: int) -> List[MPoly]:
    """Unit row of length ``n`` with the 1 in 1-based ``column``."""
    if not 1 <= column <= n:
        raise IndexOutOfRange(f"column {column} outside 1..{n}")
    return [ONE if j == column - 1 else ZERO for j in range(n)]


def replace_row(M: PolyMatrix, row_index: int, new_row: Sequence) -> PolyMatrix:
    """Copy of ``M`` with 1-based row ``row_index`` replaced."""
    if not 1 <= row_index <= M.n:
        raise IndexOutOfRange(f"row {row_index} outside 1..{M.n}")
    if len(new_row) != M.n:
        raise LengthMismatch(f"new row has length {len(new_row)}, expected {M.n}")
    rows = list(M.rows)
    rows[row_index - 1] = tuple(_entry(v) for v in new_row)
    return PolyMatrix(rows)


def replace_rows(M: PolyMatrix, replacements: Iterable[Tuple[int, Sequence]]) -> PolyMatrix:
    rows = list(M.rows)
    for row_index, new_row in replacements:
        if not 1 <= row_index <= M.n:
            raise IndexOutOfRange(f"row {row_index} outside 1..{M.n}")
        if len(new_row) != M.n:
            raise LengthMismatch(f"new row has length {len(new_row)}, expected {M.n}")
        rows[row_index - 1] = tuple(_entry(v) for v in new_row)
    return PolyMatrix(rows)


def determinant(M: PolyMatrix) -> MPoly:
    """Fraction-free (Bareiss) elimination with row pivoting.

    Each division by the previous pivot is exact, so entries stay polynomial.
    A column with no nonzero pivot candidate means the determinant is zero.
    """
    n = M.n
    if n == 0:
        return ONE
    a = [list(r) for r in M.rows]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        piv = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            lead = ri[k]
            for j in range(k + 1, n):
                t = ri[j] * piv
                if lead and rk[j]:
                    t = t - lead * rk[j]
                ri[j] = t.exquo(prev) if prev != ONE else t
            ri[k] = ZERO
        prev = piv
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


REFERENCE_MAX_N = 8


def determinant_reference(M: PolyMatrix) -> MPoly:
    """Laplace expansion along rows, memoized on the set of unused columns."""
    n = M.n
    if n > REFERENCE_MAX_N:
        raise SizeGuardExceeded(f"cofactor reference limited to n <= {REFERENCE_MAX_N}, got {n}")
    rows = M.rows
    memo = {}

    def minor(k: int, cols: int) -> MPoly:
        # rows k..n-1 against the column bitmask ``cols``
        if k == n:
            return ONE
        key = cols
        if key in memo:
            return memo[key]
        total = ZERO
        pos = 0
        for j in range(n):
            if cols >> j & 1:
                if rows[k][j]:
                    term = rows[k][j] * minor(k + 1, cols & ~(1 << j))
                    total = total - term if pos & 1 else total + term
                pos += 1
        memo[key] = total
        return total

    return minor(0, (1 << n) - 1)


def sylvester(p: MPoly, q: MPoly, var: str, dp: int, dq: int) -> PolyMatrix:
    """Formal-degree Sylvester matrix: ``dq`` rows of p on top, ``dp`` rows of q below.

    Coefficient rows run from the formal leading coefficient down, so leading
    zeros stay in place when the true degree is below the formal one.
    """
    if dp < 0 or dq < 0 or dp + dq < 1:
        raise ValueError("formal degrees must be non-negative with dp + dq >= 1")
    i = _var_index(var)
    if p.degree(i) > dp:
        raise DegreeExceedsFormal(f"deg_{var} of {p} exceeds formal degree {dp}")
    if q.degree(i) > dq:
        raise DegreeExceedsFormal(f"deg_{var} of {q} exceeds formal degree {dq}")
    n = dp + dq

    def desc(poly: MPoly, d: int) -> List[MPoly]:
        cs = poly.coefficients_in(var)
        cs = cs + [ZERO] * (d + 1 - len(cs))
        return cs[::-1]

    pc, qc = desc(p, dp), desc(q, dq)
    rows = []
    for r in range(dq):
        rows.append([ZERO] * r + pc + [ZERO] * (n - r - dp - 1))
    for r in range(dp):
        rows.append([ZERO] * r + qc + [ZERO] * (n - r - dq - 1))
    return PolyMatrix(rows)


def resultant(p: MPoly, q: MPoly, var: str, dp: int, dq: int) -> MPoly:
    return determinant(sylvester(p, q, var, dp, dq))

"""Exact rational numbers and sparse polynomials in the variables x, y, u, v.

Coefficients are kept as ``int`` whenever they are integral and as
:class:`fractions.Fraction` otherwise; the two compare and hash equal, so the
term dictionaries of equal polynomials are equal.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

VARS = ("x", "y", "u", "v")
NVARS = len(VARS)

Monomial = Tuple[int, int, int, int]
Coeff = Union[int, Fraction]

ZERO_EXP: Monomial = (0, 0, 0, 0)


class AlgebraError(Exception):
    """Base class for polynomial-ring errors."""


class NonUnivariateInput(AlgebraError):
    pass


class NonConformingInput(AlgebraError):
    pass


class InexactDivision(AlgebraError):
    pass


def rational(value) -> Coeff:
    """Coerce ``value`` to the canonical exact coefficient type."""
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return rational(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return rational(Fraction(value))
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def _norm(c: Coeff) -> Coeff:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div(a: Coeff, b: Coeff) -> Coeff:
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        return q if not r else Fraction(a, b)
    return _norm(Fraction(a) / b)


def format_rational(c: Coeff) -> str:
    """Render as ``"n"`` or ``"n/d"``."""
    c = _norm(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def _var_index(var: Union[str, int]) -> int:
    if isinstance(var, int):
        if 0 <= var < NVARS:
            return var
    elif var in VARS:
        return VARS.index(var)
    raise ValueError(f"unknown variable {var!r}")


def _sort_key(e: Monomial):
    # graded, then y-major / reversed variable precedence: v > u > y > x
    return (sum(e), e[3], e[2], e[1], e[0])


class MPoly:
    """Immutable sparse polynomial over Q in x, y, u, v."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None):
        clean: Dict[Monomial, Coeff] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != NVARS or any(k < 0 for k in e):
                    raise ValueError(f"bad exponent vector {e!r}")
                c = rational(c)
                if c:
                    clean[tuple(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Coeff]) -> "MPoly":
        # terms must already be canonical
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "MPoly":
        c = rational(c)
        return cls._raw({ZERO_EXP: c} if c else {})

    @classmethod
    def var(cls, name: Union[str, int], power: int = 1) -> "MPoly":
        e = [0] * NVARS
        e[_var_index(name)] = power
        return cls._raw({tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "MPoly":
        return cls({tuple(exps): c})

    @classmethod
    def univariate(cls, coeffs: Sequence, var: Union[str, int] = "x") -> "MPoly":
        """Build ``sum(coeffs[k] * var**k)`` from ascending coefficients."""
        i = _var_index(var)
        terms = {}
        for k, c in enumerate(coeffs):
            e = [0] * NVARS
            e[i] = k
            terms[tuple(e)] = c
        return cls(terms)

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, Coeff]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Coeff]]:
        return iter(self._terms.items())

    def sorted_terms(self) -> List[Tuple[Monomial, Coeff]]:
        return sorted(self._terms.items(), key=lambda t: _sort_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ZERO_EXP in self._terms)

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(ZERO_EXP, 0)

    def constant_term(self) -> Coeff:
        return self._terms.get(ZERO_EXP, 0)

    def degree(self, var: Union[str, int, None] = None) -> int:
        """Degree in ``var`` (total degree if None); -1 for the zero polynomial."""
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e) for e in self._terms)
        i = _var_index(var)
        return max(e[i] for e in self._terms)

    def variables(self) -> Tuple[str, ...]:
        used = [False] * NVARS
        for e in self._terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(VARS[i] for i in range(NVARS) if used[i])

    def involves_only(self, allowed: Iterable[str]) -> bool:
        return set(self.variables()) <= set(allowed)

    # -- ring structure ------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == MPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    @staticmethod
    def _coerce(other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        return MPoly.const(other)

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for e, c in small.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MPoly":
        other = self._coerce(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return MPoly._raw({})
        out: Dict[Monomial, Coeff] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
                out[e] = out.get(e, 0) + ca * cb
        return MPoly._raw({e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "MPoly":
        c = rational(c)
        if not c:
            return MPoly._raw({})
        return MPoly._raw({e: _norm(v * c) for e, v in self._terms.items()})

    def __truediv__(self, c) -> "MPoly":
        if isinstance(c, MPoly):
            return self.exquo(c)
        c = rational(c)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self.scale(Fraction(1) / c)

    def leading_term(self) -> Tuple[Monomial, Coeff]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=_sort_key)
        return e, self._terms[e]

    def exquo(self, d: "MPoly") -> "MPoly":
        """Exact quotient ``self / d``; raises InexactDivision otherwise."""
        d = self._coerce(d)
        if not d:
            raise ZeroDivisionError("division by the zero polynomial")
        if d.is_constant():
            c = d.constant_value()
            return MPoly._raw({e: _div(v, c) for e, v in self._terms.items()})
        de, dc = d.leading_term()
        rest = [(e, c) for e, c in d._terms.items() if e != de]
        rem = dict(self._terms)
        quo: Dict[Monomial, Coeff] = {}
        while rem:
            e = max(rem, key=_sort_key)
            qe = (e[0] - de[0], e[1] - de[1], e[2] - de[2], e[3] - de[3])
            if min(qe) < 0:
                raise InexactDivision(f"{d} does not divide {self}")
            qc = _div(rem.pop(e), dc)
            quo[qe] = qc
            for re_, rc in rest:
                t = (qe[0] + re_[0], qe[1] + re_[1], qe[2] + re_[2], qe[3] + re_[3])
                s = rem.get(t, 0) - qc * rc
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return MPoly._raw(quo)

    # -- calculus and substitution -------------------------------------

    def derivative(self, var: Union[str, int] = "x", times: int = 1) -> "MPoly":
        i = _var_index(var)
        p = self
        for _ in range(times):
            out = {}
            for e, c in p._terms.items():
                k = e[i]
                if k:
                    ne = list(e)
                    ne[i] = k - 1
                    out[tuple(ne)] = c * k
            p = MPoly._raw(out)
        return p

    def antiderivative(self, var: Union[str, int] = "x") -> "MPoly":
        i = _var_index(var)
        if not self.involves_only((VARS[i],)):
            raise NonUnivariateInput(f"{self} involves variables other than {VARS[i]}")
        out = {}
        for e, c in self._terms.items():
            ne = list(e)
            ne[i] += 1
            out[tuple(ne)] = _div(c, ne[i])
        return MPoly._raw(out)

    def substitute(self, var: Union[str, int], q) -> "MPoly":
        i = _var_index(var)
        q = self._coerce(q)
        buckets: Dict[int, Dict[Monomial, Coeff]] = {}
        for e, c in self._terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            buckets.setdefault(k, {})[tuple(ne)] = c
        result = MPoly._raw({})
        powers = {0: MPoly.const(1)}
        for k in sorted(buckets):
            if k not in powers:
                powers[k] = q ** k
            result = result + MPoly._raw(buckets[k]) * powers[k]
        return result

    def coefficients_in(self, var: Union[str, int]) -> List["MPoly"]:
        """``[c_0, ..., c_d]`` with ``self == sum(c_k * var**k)``; ``[0]`` for zero."""
        i = _var_index(var)
        if not self._terms:
            return [MPoly._raw({})]
        d = self.degree(i)
        parts: List[Dict[Monomial, Coeff]] = [{} for _ in range(d + 1)]
        for e, c in self._terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            parts[k][tuple(ne)] = c
        return [MPoly._raw(t) for t in parts]

    def evaluate(self, values: Mapping[str, object]) -> "MPoly":
        p = self
        for name, val in values.items():
            p = p.substitute(name, val)
        return p

    def order_at_origin(self, vars: Sequence[str] = ("u", "v")) -> float:
        """Lowest total degree in ``vars`` over nonzero terms; ``inf`` for zero."""
        if not self.involves_only(vars):
            raise NonConformingInput(f"{self} involves variables outside {tuple(vars)}")
        if not self._terms:
            return math.inf
        idx = [_var_index(v) for v in vars]
        return min(sum(e[i] for i in idx) for e in self._terms)

    # -- display --------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"MPoly({render(self)!r})"


def _render_monomial(e: Monomial) -> str:
    parts = []
    for name, k in zip(VARS, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render(p: MPoly) -> str:
    """Canonical text form, reparseable by :func:`kellerid.parser.parse_poly`."""
    if not p:
        return "0"
    out = []
    for n, (e, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = _render_monomial(e)
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if n == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


X = MPoly.var("x")
Y = MPoly.var("y")
U = MPoly.var("u")
V = MPoly.var("v")
ZERO = MPoly.const(0)
ONE = MPoly.const(1)


def derivative(p: MPoly, var: str, times: int = 1) -> MPoly:
    return p.derivative(var, times)


def antiderivative(p: MPoly, var: str = "x") -> MPoly:
    """Antiderivative with zero constant of integration."""
    return p.antiderivative(var)


def substitute(p: MPoly, var: str, q: MPoly) -> MPoly:
    return p.substitute(var, q)


def coefficients_in(p: MPoly, var: str) -> List[MPoly]:
    return p.coefficients_in(var)


def order_at_origin(p: MPoly, vars: Sequence[str] = ("u", "v")) -> float:
    return p.order_at_origin(vars)


def _univariate_var(polys: Sequence[MPoly], var: Optional[str]) -> int:
    used = set()
    for p in polys:
        used.update(p.variables())
    if var is None:
        if len(used) > 1:
            raise NonUnivariateInput(f"arguments involve several variables {sorted(used)}")
        var = used.pop() if used else "x"
    elif not used <= {var}:
        raise NonUnivariateInput(f"arguments involve variables other than {var}")
    return _var_index(var)


def _dense(p: MPoly, i: int) -> List[Fraction]:
    coeffs = [Fraction(0)] * (p.degree(i) + 1)
    for e, c in p.items():
        coeffs[e[i]] = Fraction(c)
    return coeffs


def _from_dense(coeffs: Sequence[Fraction], i: int) -> MPoly:
    terms = {}
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * NVARS
            e[i] = k
            terms[tuple(e)] = _norm(c)
    return MPoly._raw(terms)


def _dense_rem(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a = list(a)
    lb = b[-1]
    while len(a) >= len(b):
        q = a[-1] / lb
        shift = len(a) - len(b)
        for k, bc in enumerate(b):
            a[shift + k] -= q * bc
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def gcd_univariate(p: MPoly, q: MPoly, var: Optional[str] = None) -> MPoly:
    """Monic gcd of two univariate polynomials (0 if both are zero)."""
    i = _univariate_var((p, q), var)
    a = _dense(p, i) if p else []
    b = _dense(q, i) if q else []
    while b:
        a, b = b, _dense_rem(a, b)
    if not a:
        return ZERO
    lead = a[-1]
    return _from_dense([c / lead for c in a], i)


def gcd_many(polys: Iterable[MPoly], var: Optional[str] = None) -> MPoly:
    g = ZERO
    for p in polys:
        g = gcd_univariate(g, p, var)
        if g == ONE:
            break
    return g


def rational_roots(p: MPoly, var: Optional[str] = None) -> List[Fraction]:
    """Distinct rational roots of a univariate polynomial, ascending."""
    i = _univariate_var((p,), var)
    if not p:
        raise ValueError("zero polynomial has every number as a root")
    coeffs = _dense(p, i)
    roots = set()
    while coeffs and coeffs[0] == 0:
        roots.add(Fraction(0))
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return sorted(roots)
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    lo, hi = abs(ints[0]), abs(ints[-1])

    def divisors(n: int) -> List[int]:
        return [d for d in range(1, n + 1) if n % d == 0]

    for a in divisors(lo):
        for b in divisors(hi):
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if sum(c * cand ** k for k, c in enumerate(coeffs)) == 0:
                    roots.add(cand)
    return sorted(roots)

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from kellerid.algebra import ONE, ZERO, MPoly, NonConformingInput, U, V, X, Y
from kellerid.keller import (
    BadIndex,
    CurveF,
    IdentityAIndex,
    NotKeller,
    ZeroPartialX,
    build_M,
    build_Q,
    check_detM_resultant,
    check_identity_A,
    check_main_assumptions,
    check_theorem_A,
    check_theorem_B,
    component_oracle_Q,
    construct_associated,
    identities_m3,
    identity_A_indices,
    identity_A_term,
    identity_B,
    jacobian,
    normalize_a1,
)
from kellerid.polymatrix import PolyMatrix, determinant

from conftest import curves

sx, sy, su, sv, slam = sympy.symbols("x y u v lam")


def sym(p: MPoly):
    return sum((sympy.Rational(c) * sx**e[0] * sy**e[1] * su**e[2] * sv**e[3] for e, c in p.items()), sympy.Integer(0))


def curve(expr) -> CurveF:
    return CurveF.from_poly(expr)


Y2X = curve(Y**2 + X)
SHEAR = curve((Y + X) ** 2 + X)
Y3X = curve(Y**3 + X)
Y2X2 = curve(Y**2 + X**2)
Y2XY = curve(Y**2 + X * Y)


def display_M(f: CurveF):
    """M written out directly from the coefficient display, as a sympy matrix."""
    m = f.m
    a = [sym(c) for c in f.a]
    top = [sympy.diff(c, sx) for c in a]
    bottom = [sympy.Integer(m)] + [(m - i) * a[i - 1] for i in range(1, m)]
    n = 2 * m - 2
    M = sympy.zeros(n, n)
    for r in range(m - 1):
        for c, val in enumerate(top):
            M[r, r + c] = val
        for c, val in enumerate(bottom):
            M[m - 1 + r, r + c] = val
    return M


def with_unit_rows(M, rows_cols):
    M = M.copy()
    for row, col in rows_cols:
        M[row - 1, :] = sympy.zeros(1, M.shape[1])
        M[row - 1, col - 1] = 1
    return M


# -- construction -----------------------------------------------------------------

def test_curve_rejects_bad_input():
    with pytest.raises(ValueError):
        CurveF(1, (X,))
    with pytest.raises(NonConformingInput):
        CurveF(2, (Y, X))
    with pytest.raises(ValueError):
        CurveF.from_poly(2 * Y**2 + X)


def test_curve_round_trip():
    f = CurveF.from_coefficients([[0], [1, 3], [0, 1]])
    assert f.poly() == Y**3 + (3 * X + 1) * Y + X
    assert CurveF.from_poly(f.poly()) == f


# -- main assumptions -------------------------------------------------------------

def test_assumptions_shear():
    r = check_main_assumptions(SHEAR)
    assert (r.monic_form_ok, r.degree_bounds_ok, r.reduced_all_lambda, r.dy_fx_positive) == (True,) * 4
    assert r.bad_lambda_gcd == ONE
    # D(x, lam) from sympy is -4(x - lam) up to a constant; its coefficients in x have gcd 1
    D = sympy.resultant(sym(SHEAR.poly()) - slam, sympy.diff(sym(SHEAR.poly()), sy), sy)
    assert sympy.simplify(D / (sx - slam)).is_constant()


def test_assumptions_square():
    r = check_main_assumptions(curve(Y**2 - 2 * X * Y + X**2))
    assert not r.reduced_all_lambda
    assert r.bad_lambda_gcd == V
    assert r.bad_lambda_roots == (Fraction(0),)
    f = sym(Y**2 - 2 * X * Y + X**2)
    D = sympy.resultant(f - slam, sympy.diff(f, sy), sy)
    assert sympy.simplify(D / slam).is_constant()


def test_assumptions_fx_constant():
    r = check_main_assumptions(Y2X)
    assert (r.monic_form_ok, r.degree_bounds_ok, r.reduced_all_lambda) == (True,) * 3
    assert not r.dy_fx_positive
    assert any("assumption 3" in w for w in r.warnings())


def test_assumptions_degree_bound():
    r = check_main_assumptions(curve(Y**2 + X**2 * Y))
    assert not r.degree_bounds_ok


def test_reducedness_against_discriminant():
    # y^2 - x^2 - lam has y-discriminant 4(x^2 + lam), never identically zero
    f = curve(Y**2 - X**2)
    assert check_main_assumptions(f).reduced_all_lambda
    # f - 1 = (y^2 - x)^2
    g = curve((Y**2 - X) ** 2 + 1)
    r = check_main_assumptions(g)
    assert not r.reduced_all_lambda and Fraction(1) in r.bad_lambda_roots


# -- normalization ---------------------------------------------------------------

def test_normalize_examples():
    assert normalize_a1(SHEAR).poly() == Y**2 + X
    assert normalize_a1(Y3X) == Y3X
    assert normalize_a1(curve((Y + X) ** 3 + X)).poly() == Y**3 + X
    shifted = SHEAR.poly().substitute("y", Y - X)
    assert normalize_a1(SHEAR).poly() == shifted


@given(curves())
def test_normalize_kills_a1(f):
    g = normalize_a1(f)
    assert g.a[0] == ZERO
    assert g.poly() == f.poly().substitute("y", Y - f.a[0].scale(Fraction(1, f.m)))


# -- M and det M ------------------------------------------------------------------

def test_build_M_examples():
    assert build_M(Y2X).matrix == PolyMatrix([[0, 1], [2, 0]]) and build_M(Y2X).k_vanish == 1
    assert build_M(SHEAR).matrix == PolyMatrix([[2, 2 * X + 1], [2, 2 * X]]) and build_M(SHEAR).k_vanish == 0
    m = PolyMatrix([[0, 0, 1, 0], [0, 0, 0, 1], [3, 0, 0, 0], [0, 3, 0, 0]])
    assert build_M(Y3X).matrix == m and build_M(Y3X).k_vanish == 2
    assert build_M(curve(Y**2)).k_vanish == 2


@given(curves(ms=(2, 3)))
def test_build_M_matches_display(f):
    M = build_M(f).matrix
    ref = display_M(f)
    for i, j in itertools.product(range(M.n), repeat=2):
        assert sympy.expand(sym(M[i, j]) - ref[i, j]) == 0


def test_detres_examples():
    r = check_detM_resultant(Y3X)
    assert (r.k, r.holds, r.detM, r.res) == (2, True, MPoly.const(9), ONE)
    r = check_detM_resultant(Y2X)
    assert (r.k, r.holds, r.detM, r.res) == (1, True, MPoly.const(-2), ONE)
    r = check_detM_resultant(Y2X2)
    assert (r.k, r.holds, r.detM, r.res) == (1, True, -4 * X, 2 * X)
    with pytest.raises(ZeroPartialX):
        check_detM_resultant(curve(Y**3 + 2 * Y))


@given(curves(ms=(2, 3, 4, 5)))
def test_detres_property(f):
    assume(not f.fx().is_zero())
    assert check_detM_resultant(f).holds


def test_detM_matches_sympy_resultant_up_to_constant():
    f = curve(Y**3 + X * Y**2 + (X**2 - 1) * Y + X**3)
    F = sym(f.poly())
    res = sympy.resultant(sympy.diff(F, sx), sympy.diff(F, sy), sy)
    ratio = sympy.simplify(sym(determinant(build_M(f).matrix)) / res)
    assert ratio.is_constant() and ratio != 0


# -- identities (A) -----------------------------------------------------------------

def test_identity_A_term_examples():
    assert identity_A_term(Y3X, (1,), ()) == MPoly.const(9)
    assert identity_A_term(Y3X, (), (1,)) == ZERO
    assert identity_A_term(SHEAR, (1,), (1,)) == ZERO
    with pytest.raises(BadIndex):
        identity_A_term(Y3X, (3,), ())
    with pytest.raises(BadIndex):
        identity_A_term(Y3X, (2, 1), ())


@given(curves(ms=(3, 4)), st.data())
def test_overlapping_versor_terms_vanish(f, data):
    r = data.draw(st.integers(1, f.m - 1))
    assert identity_A_term(f, (r,), (r,)) == ZERO


def test_identity_A_examples():
    r = check_identity_A(Y2X, IdentityAIndex(1, 0, 0))
    assert r.holds and r.residual == ZERO
    r = check_identity_A(Y2X2, IdentityAIndex(1, 0, 0))
    assert not r.holds and r.residual == MPoly.const(-4)
    r = check_identity_A(Y3X, IdentityAIndex(2, 1, 0))
    assert r.holds
    assert identity_A_term(Y3X, (1,), ()) + identity_A_term(Y3X, (2,), ()) == MPoly.const(18)


def test_identity_A_bad_index():
    with pytest.raises(BadIndex):
        IdentityAIndex(2, 0, 0)
    with pytest.raises(BadIndex):
        check_identity_A(Y2X, IdentityAIndex(2, 1, 0))


def test_identity_A_indices():
    assert [(i.k, i.i, i.j) for i in identity_A_indices(3)] == [(1, 0, 0), (2, 1, 0), (2, 0, 1)]
    assert len(identity_A_indices(4)) == 1 + 2 + 3


def sympy_identity_A(f: CurveF, k: int, i: int, j: int):
    m = f.m
    M = display_M(f)
    total = sympy.Integer(0)
    for rs in itertools.combinations(range(1, m), i):
        for ss in itertools.combinations(range(1, m), j):
            rows = [(r, m + r - 1) for r in rs] + [(m - 1 + s, m + s - 1) for s in ss]
            total += with_unit_rows(M, rows).det()
    return sympy.expand(sympy.diff(total, sx, k))


@settings(max_examples=25)
@given(curves(ms=(2, 3), lo=-2, hi=2))
def test_identity_A_against_sympy(f):
    for idx in identity_A_indices(f.m):
        ours = check_identity_A(f, idx, include_overlapping=True).residual
        skip = check_identity_A(f, idx).residual
        assert ours == skip
        assert sympy.expand(sym(ours) - sympy_identity_A(f, idx.k, idx.i, idx.j)) == 0


def test_family_A_verdicts():
    assert check_theorem_A(SHEAR).verdict and len(check_theorem_A(SHEAR).identities) == 1
    assert not check_theorem_A(Y2X2).verdict
    r = check_theorem_A(Y3X)
    assert r.verdict and [(x.k, x.i, x.j) for x in r.identities] == [(1, 0, 0), (2, 1, 0), (2, 0, 1)]


# -- Q and the order oracle ---------------------------------------------------------

def test_build_Q_examples():
    q = build_Q(Y2X)
    assert q.Q == 2 * U - 2 and q.N == 0 and q.Qk == (2 * U - 2,)
    q = build_Q(Y2X2)
    assert q.Q == 2 * U - 4 * X and q.N == 1 and q.Qk == (2 * U, MPoly.const(-4))
    q = build_Q(Y3X)
    assert q.Q == 9 * (1 - U) ** 2 and q.N == 0


@given(curves(ms=(2, 3, 4), lo=-1, hi=1))
def test_Q_never_vanishes(f):
    # the pure u^(m-1) term of Q is +-m^(m-1), independent of f
    q = build_Q(f).Q
    assert abs(q.terms.get((0, 0, f.m - 1, 0), 0)) == f.m ** (f.m - 1)


@settings(max_examples=20)
@given(curves(ms=(2, 3), lo=-2, hi=2))
def test_Q_is_resultant_up_to_constant(f):
    F = sym(f.poly())
    ref = sympy.resultant(sympy.diff(F, sx) - su, sympy.diff(F, sy) - sv, sy)
    ratio = sympy.cancel(sym(build_Q(f).Q) / ref)
    assert ratio.is_constant() and ratio != 0


def test_Q_oracle_examples():
    assert component_oracle_Q(Y2X).verdict
    r = component_oracle_Q(Y2X2)
    assert not r.verdict and r.orders == (1, 0)
    assert component_oracle_Q(Y3X).verdict


# -- identities (B) and reconstruction -----------------------------------------------

def test_identity_B_examples():
    assert identity_B(SHEAR, 0).holds
    r = identity_B(Y2XY, 0)
    assert not r.holds and r.residual == ONE
    r = identity_B(Y3X, 2)
    assert r.holds
    with pytest.raises(BadIndex):
        identity_B(Y3X, 3)


def test_family_B_verdicts():
    assert check_theorem_B(SHEAR).verdict
    r = check_theorem_B(Y2X2)
    assert not r.verdict and not r.identities[0].holds
    assert check_theorem_B(Y3X).verdict


def test_construct_associated_examples():
    a = construct_associated(SHEAR)
    assert a.b == (ONE, X) and a.b_tilde == (ZERO, ONE) and a.g == Y + X and a.R == -2 and a.jac_value == 1
    a = construct_associated(Y3X)
    assert a.b == (ZERO, ONE, ZERO) and a.g == Y and a.R == 9
    with pytest.raises(NotKeller):
        construct_associated(Y2X2)


def test_construct_associated_without_degree_bounds():
    # a_1 = 2x^2 violates deg a_1 <= 1; the identities and g still work
    f = curve((Y + X**2) ** 2 + X)
    assert not check_main_assumptions(f).degree_bounds_ok
    assert check_theorem_B(f).verdict
    a = construct_associated(f)
    assert jacobian(f.poly(), a.g) == ONE


@given(curves(ms=(2, 3, 4), lo=-1, hi=1))
def test_reconstruction_whenever_B_holds(f):
    if not check_theorem_B(f).verdict:
        return
    assume(not determinant(build_M(f).matrix).is_zero())
    a = construct_associated(f)
    assert jacobian(f.poly(), a.g) == ONE
    assert a.g.degree("y") <= f.m - 1
    for b, bt in zip(a.b, a.b_tilde):
        assert b.derivative("x") == bt


def test_jacobian_examples():
    assert jacobian(Y**2 + X, Y) == ONE
    p = X**2 * Y + Y**3
    assert jacobian(p, p) == ZERO
    assert jacobian(X, Y) == ONE
    with pytest.raises(NonConformingInput):
        jacobian(U, Y)


# -- degree three closed forms ---------------------------------------------------------

def test_m3_examples():
    r = identities_m3(ZERO, X)
    assert r.A3 and r.B3
    r = identities_m3(X**2, ZERO)
    assert not r.A3 and not r.B3 and r.residuals[1] == MPoly.const(2)
    r = identities_m3(ZERO, X**2)
    assert not r.A3 and not r.B3
    assert r.residuals[0] == 24 * X and r.residuals[3] == MPoly.const(2)
    with pytest.raises(NonConformingInput):
        identities_m3(Y, X)


@given(
    st.lists(st.integers(-3, 3), min_size=3, max_size=3),
    st.lists(st.integers(-3, 3), min_size=4, max_size=4),
)
def test_m3_forms_match_general_identities(c2, c3):
    f = CurveF.from_coefficients([[0], c2, c3])
    r = identities_m3(f.a[1], f.a[2])
    assert r.A3 == check_theorem_A(f).verdict
    assert r.B3 == check_theorem_B(f).verdict
    assert r.A3 == r.B3


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_m2_A_equals_B(c1, c2):
    f = CurveF.from_coefficients([c1, c2])
    assert check_theorem_A(f).verdict == check_theorem_B(f).verdict


@settings(max_examples=30)
@given(curves(ms=(2, 3), lo=-2, hi=2))
def test_normalization_preserves_verdicts(f):
    g = normalize_a1(f)
    assert check_theorem_A(f).verdict == check_theorem_A(g).verdict
    assert check_theorem_B(f).verdict == check_theorem_B(g).verdict

"""Exact checks of determinant identities for Jacobian-conjecture components."""
from .algebra import MPoly, gcd_univariate, render
from .keller import (
    CurveF,
    build_M,
    build_Q,
    check_detM_resultant,
    check_main_assumptions,
    check_theorem_A,
    check_theorem_B,
    component_oracle_Q,
    construct_associated,
    identities_m3,
    jacobian,
    normalize_a1,
)
from .oracles import DegreeBounds, implication_scan, keller_oracle_linear
from .parser import parse_curve, parse_poly
from .polymatrix import PolyMatrix, determinant, determinant_reference, resultant, sylvester

__version__ = "0.1.0"

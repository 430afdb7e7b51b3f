"""Named points of the parameter plane."""
from fractions import Fraction

from .rational import RationalPoint2, as_fraction, check_dimension, check_index


def breuer_hall(d):
    check_dimension(d)
    return RationalPoint2(Fraction(-1, d - 2), Fraction(-1, d - 2))


def k_breuer_hall(d, k):
    """L_k^BH; k-positive and indecomposable for 1 ≤ k ≤ d/2−1."""
    check_dimension(d)
    check_index(d, k)
    den = k * d - k - 1
    return RationalPoint2(Fraction(-1, den), Fraction(-k, den))


def k_reduction(d, k):
    """Z ↦ (k·Tr(Z)·I − Z)/(kd−1)."""
    check_dimension(d)
    check_index(d, k)
    return RationalPoint2(Fraction(-1, k * d - 1), Fraction(0))


def lp_point(d):
    check_dimension(d)
    den = d * d - 3 * d
    return RationalPoint2(Fraction(-2, den), Fraction(-(d - 2), den))


def pv_point(d):
    check_dimension(d)
    return RationalPoint2(Fraction(1, d + 2), Fraction(1, d + 2))


def gap_state(d):
    """PPT state with Schmidt number d/2 whose partial transpose has Schmidt number 2."""
    check_dimension(d)
    return RationalPoint2(Fraction(1, 2 * d - 2), Fraction(2 * d - 3, 2 * d * d - 2))


def sindici_piani_params(d, p):
    """(a,b) such that the optimal Sindici–Piani state is ρ_{a,b}^Γ."""
    check_dimension(d)
    p = as_fraction(p)
    return RationalPoint2((1 - p) / (d + 1), p)


def state_triangle_apex(d):
    den = d * d - d - 2
    return RationalPoint2(Fraction(-2, den), Fraction(-d, den))

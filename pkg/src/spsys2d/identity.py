"""Symbolic proof machinery for the determinant identity D8 + D4 = 0.

D8 is the 8x8 determinant detecting a nontrivial intersection of the two
extended subspaces; D4 is the resultant of the two associated binary quadratic
forms.  Their sum vanishes identically as a polynomial in the 16 variables,
which is the computational heart of the Main Lemma.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactpoly import (
    LaplaceTerm,
    Polynomial,
    SymMatrix,
    det_laplace,
    laplace_terms,
    var_index,
)

MAX_DEGREE = 8  # an 8x8 determinant of degree-<=1 entries

APPENDIX_PIVOT_ROWS = (0, 1, 2, 3)


def _v(name: str) -> Polynomial:
    return Polynomial.var(var_index(name))


def _z() -> Polynomial:
    return Polynomial.zero()


def det8_matrix() -> SymMatrix:
    """The structured 8x8 matrix whose determinant is D8.

    Rows: the four extensions of the first plane's covectors by the third
    factor, then the four extensions of the second plane's covectors by the
    first factor; columns in the fixed big-endian tensor basis.
    """
    a, b, c, d = _v("a"), _v("b"), _v("c"), _v("d")
    e, f, g, h = _v("e"), _v("f"), _v("g"), _v("h")
    A, B, C, D = _v("A"), _v("B"), _v("C"), _v("D")
    E, F, G, H = _v("E"), _v("F"), _v("G"), _v("H")
    z = _z()
    return SymMatrix(
        [
            [a, b, c, d, z, z, z, z],
            [e, f, g, h, z, z, z, z],
            [z, z, z, z, a, b, c, d],
            [z, z, z, z, e, f, g, h],
            [A, B, z, z, C, D, z, z],
            [E, F, z, z, G, H, z, z],
            [z, z, A, B, z, z, C, D],
            [z, z, E, F, z, z, G, H],
        ]
    )


@dataclass(frozen=True)
class QuadCoeffs:
    """Coefficients p, q, r of a binary quadratic form, with the split q = q1 + q2."""

    p: Polynomial
    q: Polynomial
    r: Polynomial
    q1: Polynomial
    q2: Polynomial


def quad_coeffs(u_row, v_row) -> QuadCoeffs:
    """Quadratic-form coefficients from two covector coefficient rows.

    For rows (a,b,c,d) and (e,f,g,h): p = ag - ce, q1 = ah - de, q2 = bg - cf,
    q = q1 + q2, r = bh - df, each a 2x2 minor of the stacked rows.
    """
    if len(u_row) != 4 or len(v_row) != 4:
        raise ValueError("coefficient rows must have length 4")
    a, b, c, d = u_row
    e, f, g, h = v_row
    p = a * g - c * e
    q1 = a * h - d * e
    q2 = b * g - c * f
    r = b * h - d * f
    return QuadCoeffs(p=p, q=q1 + q2, r=r, q1=q1, q2=q2)


def resultant4(p, q, r, P, Q, R) -> Polynomial:
    """Resultant of two binary quadratic forms as the 4x4 Sylvester determinant."""
    z = Polynomial.zero()
    m = SymMatrix(
        [
            [p, q, r, z],
            [z, p, q, r],
            [P, Q, R, z],
            [z, P, Q, R],
        ]
    )
    from .exactpoly import det_cofactor

    return det_cofactor(m)


def d8_polynomial() -> Polynomial:
    """D8, expanded via the Laplace expansion by the first four rows."""
    d8 = det_laplace(det8_matrix(), APPENDIX_PIVOT_ROWS)
    assert d8.degree() <= MAX_DEGREE
    return d8


def _coefficient_rows():
    first = [[_v(n) for n in "abcd"], [_v(n) for n in "efgh"]]
    second = [[_v(n) for n in "ABCD"], [_v(n) for n in "EFGH"]]
    return first, second


def d4_polynomial() -> Polynomial:
    """D4, built from the two quadratic forms' coefficients and their resultant."""
    first, second = _coefficient_rows()
    lo = quad_coeffs(*first)
    hi = quad_coeffs(*second)
    d4 = resultant4(lo.p, lo.q, lo.r, hi.p, hi.q, hi.r)
    assert d4.degree() <= MAX_DEGREE
    return d4


def surviving_laplace_terms() -> list[LaplaceTerm]:
    """The nonzero terms of the Laplace expansion of D8 by the first four rows.

    Exactly 18 of the 70 column selections survive the structural-zero check.
    """
    return laplace_terms(det8_matrix(), APPENDIX_PIVOT_ROWS)


def main_identity_residual() -> Polynomial:
    """D8 + D4; identically zero, returned as a polynomial for verification."""
    return d8_polynomial() + d4_polynomial()

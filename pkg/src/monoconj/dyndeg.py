"""Dynamical degrees of monomial maps.

lambda_k(f_M) is the spectral radius of the k-th exterior power of M.  The
spectral radius comes from the exact characteristic polynomial: it is split
into squarefree parts, the roots of each part are found with mpmath's
polynomial solver (whose error estimate is checked against the requested
tolerance), and the largest modulus wins.  When every root lies on the unit
circle the polynomial is a product of cyclotomics and the answer is exactly
1.0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import sympy

from .matrix import IntMatrix, as_matrix, char_poly, exterior_power
from .monomial import MonomialMap, matrix_projective_degree
from .poly import IntPoly, cyclotomic_factorization, squarefree_decomposition, to_intpoly

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class DegreeProfile:
    lambdas: tuple[float, ...]
    moduli: tuple[float, ...]
    tolerance: float
    exact_one: tuple[bool, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "lambdas": list(self.lambdas),
            "moduli": list(self.moduli),
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class DegreeGrowth:
    degrees: tuple[int, ...]
    rate: float

    def to_json(self) -> dict:
        return {"degrees": list(self.degrees), "rate": self.rate}


def cauchy_bound(coeffs) -> Fraction:
    """Exact upper bound 1 + max |a_i / a_n| on the moduli of all roots."""
    lead = Fraction(coeffs[-1])
    return 1 + max((abs(Fraction(c) / lead) for c in coeffs[:-1]), default=Fraction(0))


def _roots_with_error(coeffs, tolerance):
    """Roots of a squarefree rational polynomial, each within tolerance."""
    monic = [Fraction(c) / Fraction(coeffs[-1]) for c in coeffs]
    if len(monic) == 2:
        return [mpmath.mpf(-monic[0].numerator) / monic[0].denominator]
    digits = max(30, int(-mpmath.log10(tolerance)) + 20)
    with mpmath.workdps(digits):
        hi_first = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(monic)]
        for extra in (0, 20, 60, 200):
            roots, err = mpmath.polyroots(
                hi_first, maxsteps=200 + 20 * len(hi_first), extraprec=64 + extra, error=True
            )
            if err < tolerance / 10:
                return roots
    raise ArithmeticError(f"root isolation did not reach tolerance {tolerance}")


def root_moduli(p: IntPoly, tolerance: float = DEFAULT_TOLERANCE) -> list[float]:
    """Moduli of all roots of p counted with multiplicity, sorted descending."""
    out = []
    for factor, mult in squarefree_decomposition(p.coeffs):
        for r in _roots_with_error(factor, tolerance):
            out.extend([float(abs(r))] * mult)
    return sorted(out, reverse=True)


def root_census(p: IntPoly) -> tuple[int, int]:
    """(real roots, complex-conjugate pairs), with multiplicity; exact Sturm counts."""
    t = sympy.Symbol("t")
    real = 0
    for factor, mult in squarefree_decomposition(p.coeffs):
        coeffs = to_intpoly(factor).coeffs
        real += mult * int(sympy.Poly(list(reversed(coeffs)), t).count_roots())
    return real, (p.degree - real) // 2


def spectral_radius(a: IntMatrix, tolerance: float = DEFAULT_TOLERANCE) -> tuple[float, bool]:
    """(rho, exact) where exact means rho == 1 was certified via cyclotomics."""
    p = char_poly(a)
    if p.coeffs[0] != 0 and cyclotomic_factorization(p) is not None:
        return 1.0, True
    bound = cauchy_bound(p.coeffs)
    moduli = root_moduli(p, tolerance)
    rho = moduli[0] if moduli else 0.0
    assert rho <= float(bound) + tolerance
    return rho, False


def dynamical_degrees(f, tolerance: float = DEFAULT_TOLERANCE) -> DegreeProfile:
    """lambda_1..lambda_n of f_M via spectral radii of exterior powers."""
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    m = f.matrix if isinstance(f, MonomialMap) else as_matrix(f)
    lambdas, exact = [], []
    for k in range(1, m.n + 1):
        rho, is_one = spectral_radius(exterior_power(m, k), tolerance)
        lambdas.append(rho)
        exact.append(is_one)
    moduli = root_moduli(char_poly(m), tolerance)
    return DegreeProfile(tuple(lambdas), tuple(moduli), tolerance, tuple(exact))


def degree_growth(f, length: int) -> DegreeGrowth:
    """Degrees of f, f^2, ..., f^L and the growth estimate deg(f^L)^(1/L)."""
    if length < 1:
        raise ValueError("length must be >= 1")
    m = f.matrix if isinstance(f, MonomialMap) else as_matrix(f)
    degrees = []
    power = m
    for _ in range(length):
        degrees.append(matrix_projective_degree(power))
        power = power @ m
    rate = float(mpmath.root(degrees[-1], length))
    return DegreeGrowth(tuple(degrees), rate)

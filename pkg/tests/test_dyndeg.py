import math
import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings

from conftest import sympy_matrix, transvection_product, unimodular
from monoconj.dyndeg import (
    cauchy_bound,
    degree_growth,
    dynamical_degrees,
    root_census,
    root_moduli,
    spectral_radius,
)
from monoconj.matrix import IntMatrix, char_poly, exterior_power
from monoconj.monomial import MonomialMap, parse_map

GOLDEN_SQ = (3 + math.sqrt(5)) / 2


def numpy_moduli(m: IntMatrix):
    return sorted(np.abs(np.linalg.eigvals(np.array(m.tolist(), dtype=float))), reverse=True)


def test_identity_has_all_degrees_one():
    prof = dynamical_degrees(MonomialMap(IntMatrix.identity(3)))
    assert prof.lambdas == (1.0, 1.0, 1.0)
    assert all(prof.exact_one)


@pytest.mark.parametrize("text", ["1/x, 1/y", "x*y, y", "x*y, 1/x", "y, 1/x", "y, 1/(x*y)"])
def test_periodic_and_parabolic_maps_are_exactly_one(text):
    prof = dynamical_degrees(parse_map(text))
    assert prof.lambdas[0] == 1.0
    assert prof.exact_one[0]


def test_cat_map_first_degree_matches_exact_root():
    t = sympy.Symbol("t")
    exact = max(sympy.solve(t**2 - 3 * t + 1, t), key=float)
    prof = dynamical_degrees(MonomialMap(IntMatrix([[2, 1], [1, 1]])))
    assert abs(prof.lambdas[0] - float(exact)) < 1e-9
    assert abs(prof.lambdas[0] - GOLDEN_SQ) < 1e-9
    assert prof.lambdas[1] == 1.0


def test_tolerance_must_be_positive():
    with pytest.raises(ValueError):
        dynamical_degrees(MonomialMap(IntMatrix.identity(2)), 0)


def test_root_helpers():
    p = char_poly(IntMatrix([[0, 0, 1], [1, 0, 1], [0, 1, 3]]))
    assert root_census(p) == (1, 1)
    assert root_census(char_poly(IntMatrix([[2, 1], [1, 1]]))) == (2, 0)
    assert root_census(char_poly(IntMatrix.identity(3))) == (3, 0)
    assert root_census(char_poly(IntMatrix([[0, 1], [-1, 0]]))) == (0, 1)
    moduli = root_moduli(p)
    assert all(x <= float(cauchy_bound(p.coeffs)) for x in moduli)
    assert math.prod(moduli) == pytest.approx(1.0, abs=1e-9)
    oracle = sorted((abs(complex(r)) for r in sympy.Poly(p.to_list()[::-1], sympy.Symbol("t")).nroots(n=30)), reverse=True)
    assert moduli == pytest.approx(oracle, abs=1e-9)


def test_spectral_radius_of_nilpotent_is_zero():
    rho, exact = spectral_radius(IntMatrix([[0, 1], [0, 0]]))
    assert rho == 0.0 and not exact


@settings(max_examples=40, deadline=None)
@given(unimodular(3, 10))
def test_lambdas_match_numpy_products(m):
    prof = dynamical_degrees(MonomialMap(m))
    oracle = numpy_moduli(m)
    for k in range(1, 4):
        assert prof.lambdas[k - 1] == pytest.approx(math.prod(oracle[:k]), rel=1e-6, abs=1e-6)
    assert abs(prof.lambdas[2] - 1) < 1e-9


@settings(max_examples=40, deadline=None)
@given(unimodular(4, 10))
def test_duality_and_log_concavity(m):
    f = MonomialMap(m)
    lam = (1.0,) + dynamical_degrees(f).lambdas
    inv = (1.0,) + dynamical_degrees(MonomialMap(m.inverse())).lambdas
    n = m.n
    for k in range(n + 1):
        assert lam[k] == pytest.approx(inv[n - k], rel=1e-6, abs=2e-9)
    for k in range(1, n):
        assert lam[k] ** 2 >= lam[k - 1] * lam[k + 1] - 1e-6 * max(1.0, lam[k] ** 2)


@settings(max_examples=30, deadline=None)
@given(unimodular(3, 8), unimodular(3, 6))
def test_conjugation_invariance(m, p):
    conj = p @ m @ p.inverse()
    for k in range(1, 4):
        assert char_poly(exterior_power(conj, k)) == char_poly(exterior_power(m, k))
    assert dynamical_degrees(MonomialMap(conj)) == dynamical_degrees(MonomialMap(m))


def test_first_degree_is_top_root_modulus():
    r = random.Random(11)
    for _ in range(20):
        m = transvection_product(r, 3, 9)
        rho, exact = spectral_radius(m)
        if exact:
            # numpy is inaccurate on Jordan blocks; check cyclotomicity exactly
            t = sympy.Symbol("t")
            for factor, _ in sympy.factor_list(sympy_matrix(m).charpoly(t).as_expr())[1]:
                assert sympy.Poly(factor, t).is_cyclotomic
        else:
            assert rho == pytest.approx(max(numpy_moduli(m)), rel=1e-6)
        assert rho == pytest.approx(root_moduli(char_poly(m))[0], rel=1e-12)


def test_degree_growth_shear():
    g = degree_growth(parse_map("x*y, y"), 12)
    assert g.degrees == tuple(range(2, 14))


def test_degree_growth_identity_and_errors():
    assert degree_growth(MonomialMap(IntMatrix.identity(3)), 5).degrees == (1,) * 5
    with pytest.raises(ValueError):
        degree_growth(MonomialMap(IntMatrix.identity(2)), 0)


def test_cat_map_degrees_are_even_fibonacci():
    fib = [0, 1]
    while len(fib) < 30:
        fib.append(fib[-1] + fib[-2])
    g = degree_growth(MonomialMap(IntMatrix([[2, 1], [1, 1]])), 12)
    assert g.degrees == tuple(fib[2 * k + 2] for k in range(1, 13))


def _growth_sample(seed, count):
    r = random.Random(seed)
    out = []
    while len(out) < count:
        m = transvection_product(r, 3, 6, k=1)
        lam = dynamical_degrees(MonomialMap(m)).lambdas[0]
        if lam >= 1.2:
            out.append((m, lam))
    return out


def test_growth_rate_at_twenty_within_tenth():
    # stated window for L = 20; deg(f^L) ~ C lam^L leaves a C^(1/L) factor
    misses = []
    for m, lam in _growth_sample(5, 30):
        rate = degree_growth(MonomialMap(m), 20).rate
        if abs(rate - lam) >= 1e-1:
            misses.append((m.tolist(), round(lam, 4), round(rate, 4)))
    assert not misses, f"{len(misses)}/30 outside 1e-1: {misses[:3]}"


def test_growth_rate_converges_for_long_orbits():
    for m, lam in _growth_sample(5, 30):
        short = degree_growth(MonomialMap(m), 20).rate
        long = degree_growth(MonomialMap(m), 200).rate
        assert abs(long - lam) < 1e-1
        assert abs(long - lam) <= abs(short - lam) + 1e-12

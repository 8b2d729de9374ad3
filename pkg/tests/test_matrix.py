import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from conftest import sympy_matrix, transvection_product, unimodular
from monoconj.matrix import (
    IntMatrix,
    char_poly,
    det,
    exterior_power,
    is_unimodular,
    smith_normal_form,
)
from monoconj.poly import IntPoly, cyclotomic, cyclotomic_factorization, squarefree_decomposition

small = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n).map(IntMatrix)


def test_det_examples():
    assert det(IntMatrix.identity(3)) == 1
    for rows in ([[7, 18], [5, 13]], [[0, 1], [-1, 0]]):
        assert det(IntMatrix(rows)) == sympy.Matrix(rows).det() == 1


def test_char_poly_examples():
    assert char_poly(IntMatrix.identity(2)) == IntPoly((1, -2, 1))
    t = sympy.Symbol("t")
    for rows in ([[1, 1], [-1, 0]], [[0, 0, 1], [1, 0, 1], [0, 1, 3]]):
        oracle = sympy.Matrix(rows).charpoly(t).all_coeffs()
        assert char_poly(IntMatrix(rows)).coeffs == tuple(int(c) for c in reversed(oracle))
    assert str(char_poly(IntMatrix([[0, 0, 1], [1, 0, 1], [0, 1, 3]]))) == "t^3 - 3*t^2 - t - 1"


def test_exterior_power_examples():
    a = IntMatrix([[2, 1], [1, 1]])
    assert exterior_power(a, 1) == a
    assert exterior_power(a, 2) == IntMatrix([[1]])
    m = IntMatrix([[1, 2, 0], [3, 1, 4], [0, 5, 1]])
    assert exterior_power(m, 3) == IntMatrix([[det(m)]])
    with pytest.raises(ValueError):
        exterior_power(m, 4)
    with pytest.raises(ValueError):
        exterior_power(m, 0)


def test_exterior_power_entries_are_minors():
    m = IntMatrix([[1, 2, 0], [3, 1, 4], [0, 5, 1]])
    sm = sympy_matrix(m)
    e = exterior_power(m, 2)
    subsets = [(0, 1), (0, 2), (1, 2)]
    for i, rs in enumerate(subsets):
        for j, cs in enumerate(subsets):
            assert e[i, j] == sm.extract(list(rs), list(cs)).det()


@pytest.mark.parametrize(
    "rows, diagonal",
    [([[1, 0], [0, 1]], (1, 1)), ([[2, 0], [0, 3]], (1, 6)), ([[0, 2], [0, 0]], (2, 0))],
)
def test_smith_examples(rows, diagonal):
    form = smith_normal_form(IntMatrix(rows))
    assert form.diagonal == diagonal
    assert form.left @ IntMatrix(rows) @ form.right == form.diagonal_matrix()


def test_unimodular_examples():
    assert is_unimodular(IntMatrix.identity(4))
    assert is_unimodular(IntMatrix([[1519, 1164], [-1964, -1505]]))
    assert not is_unimodular(IntMatrix([[2, 0], [0, 1]]))


def test_matrix_is_immutable_and_validated():
    m = IntMatrix([[1, 2], [3, 4]])
    with pytest.raises(AttributeError):
        m.rows = ()
    with pytest.raises(ValueError):
        IntMatrix([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(TypeError):
        IntMatrix([[1.5, 0], [0, 1]])
    with pytest.raises(ValueError):
        IntMatrix.from_json("[[1,2],[3")
    assert IntMatrix.from_json("[[7,18],[5,13]]").to_json() == "[[7,18],[5,13]]"


@settings(max_examples=60, deadline=None)
@given(square(3), square(3))
def test_det_multiplicative(a, b):
    assert det(a @ b) == det(a) * det(b)


@settings(max_examples=40, deadline=None)
@given(square(3), unimodular(3))
def test_char_poly_conjugation_invariant(a, p):
    assert char_poly(p @ a @ p.inverse()) == char_poly(a)


@settings(max_examples=40, deadline=None)
@given(square(3), square(3), st.integers(1, 3))
def test_exterior_power_functorial(a, b, k):
    assert exterior_power(a @ b, k) == exterior_power(a, k) @ exterior_power(b, k)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(square))
def test_smith_form_contract(a):
    form = smith_normal_form(a)
    d = form.diagonal
    assert all(x >= 0 for x in d)
    assert form.left @ a @ form.right == form.diagonal_matrix()
    assert abs(det(form.left)) == 1 and abs(det(form.right)) == 1
    nonzero = [x for x in d if x]
    assert list(d[: len(nonzero)]) == nonzero  # zeros last
    for x, y in zip(d, d[1:]):
        assert y % x == 0 if x else y == 0
    oracle = sympy_snf(sympy_matrix(a), domain=sympy.ZZ)
    assert sorted(abs(oracle[i, i]) for i in range(a.n)) == sorted(d)


def test_inverse_and_powers():
    r = random.Random(3)
    for _ in range(20):
        p = transvection_product(r, 3, 6)
        assert p @ p.inverse() == IntMatrix.identity(3)
        assert p**-2 @ p**2 == IntMatrix.identity(3)
    with pytest.raises(ValueError):
        IntMatrix([[2, 0], [0, 1]]).inverse()


def test_cyclotomic_tools():
    assert cyclotomic(6) == IntPoly((1, -1, 1))
    assert cyclotomic(12) == IntPoly((1, 0, -1, 0, 1))
    p = cyclotomic(4) * cyclotomic(4) * cyclotomic(3)
    assert cyclotomic_factorization(p) == {3: 1, 4: 2}
    assert cyclotomic_factorization(IntPoly((1, -3, 1))) is None
    parts = squarefree_decomposition((IntPoly((-1, 1)) * IntPoly((-1, 1)) * IntPoly((1, 1))).coeffs)
    assert [m for _, m in parts] == [1, 2]
    assert str(IntPoly((-1, 0, 3, 1))) == "t^3 + 3*t^2 - 1"

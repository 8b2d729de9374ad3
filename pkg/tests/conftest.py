"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import itertools
import random

import pytest
import sympy
from hypothesis import strategies as st

from monoconj.matrix import IntMatrix

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {text}")


@pytest.fixture
def rng():
    return random.Random(20240601)


# -- random unimodular matrices ----------------------------------------------------


def transvection_product(r: random.Random, n: int, steps: int, k: int = 2) -> IntMatrix:
    p = IntMatrix.identity(n)
    for _ in range(steps):
        i, j = r.sample(range(n), 2)
        e = [[int(a == b) for b in range(n)] for a in range(n)]
        e[i][j] = r.choice([x for x in range(-k, k + 1) if x])
        p = p @ IntMatrix(e)
    return p


def sl2_word(r: random.Random, length: int, k: int = 3) -> IntMatrix:
    p = IntMatrix.identity(2)
    for _ in range(length):
        a = r.randint(-k, k)
        p = p @ r.choice(
            [IntMatrix([[1, a], [0, 1]]), IntMatrix([[1, 0], [a, 1]]), IntMatrix([[0, -1], [1, 0]])]
        )
    return p


def random_hyperbolic(r: random.Random, limit: int = 50, positive: bool = False) -> IntMatrix:
    while True:
        p, q, s = (r.randint(-limit, limit) for _ in range(3))
        if q == 0 or (p * s - 1) % q:
            continue
        rr = (p * s - 1) // q
        t = p + s
        if abs(rr) > limit or abs(t) <= 2 or (positive and t <= 2):
            continue
        return IntMatrix([[p, rr], [q, s]])


@st.composite
def unimodular(draw, n: int = 2, max_steps: int = 8):
    steps = draw(st.integers(0, max_steps))
    seed = draw(st.integers(0, 2**32 - 1))
    m = transvection_product(random.Random(seed), n, steps)
    if draw(st.booleans()):
        m = m @ IntMatrix.diag([-1] + [1] * (n - 1))
    return m


@st.composite
def hyperbolic_sl2(draw):
    a = draw(st.lists(st.integers(1, 9), min_size=2, max_size=8).filter(lambda s: len(s) % 2 == 0))
    from monoconj.sl2 import realize

    word = sl2_word(random.Random(draw(st.integers(0, 2**32 - 1))), draw(st.integers(0, 10)))
    m = word @ realize(a) @ word.inverse()
    return -m if draw(st.booleans()) else m


# -- oracles --------------------------------------------------------------------------


def sympy_matrix(m: IntMatrix) -> sympy.Matrix:
    return sympy.Matrix(m.tolist())


def brute_conjugator(m: IntMatrix, n: IntMatrix, box: int = 8, det_values=(1, -1)):
    """Search P with entries in [-box, box], det P in det_values, P M = N P."""
    (p, r), (q, s) = m.rows
    (p2, r2), (q2, s2) = n.rows
    rng_ = range(-box, box + 1)
    for a, b, c, d in itertools.product(rng_, repeat=4):
        if a * d - b * c not in det_values:
            continue
        if (
            a * p + b * q == p2 * a + r2 * c
            and a * r + b * s == p2 * b + r2 * d
            and c * p + d * q == q2 * a + s2 * c
            and c * r + d * s == q2 * b + s2 * d
        ):
            return IntMatrix([[a, b], [c, d]])
    return None


def brute_reduced(trace: int) -> list[IntMatrix]:
    """All reduced matrices [[p,r],[q,s]] of the given trace, by enumeration."""
    out = []
    for p in range(trace):
        s = trace - p
        for q in range(p + 1, s):
            if (p * s - 1) % q == 0:
                out.append(IntMatrix([[p, (p * s - 1) // q], [q, s]]))
    return out


def homogenized_degree(m: IntMatrix) -> int:
    """Degree of f_M on P^n by clearing denominators symbolically."""
    n = m.n
    xs = sympy.symbols(f"X1:{n + 1}")
    z = sympy.Symbol("Z")
    comps = [sympy.Integer(1)]
    for row in m.rows:
        term = sympy.Integer(1)
        for x, e in zip(xs, row):
            term *= (x / z) ** e
        comps.append(term)
    nums = [sympy.fraction(sympy.together(c)) for c in comps]
    den = sympy.lcm([d for _, d in nums])
    polys = [sympy.cancel(num * den / d) for num, d in nums]
    g = polys[0]
    for p in polys[1:]:
        g = sympy.gcd(g, p)
    polys = [sympy.cancel(p / g) for p in polys]
    degrees = {sympy.Poly(p, *xs, z).total_degree() for p in polys}
    assert len(degrees) == 1
    return degrees.pop()

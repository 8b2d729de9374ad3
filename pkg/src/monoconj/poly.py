"""Dense univariate polynomials with exact coefficients.

Coefficients are stored lowest degree first.  ``IntPoly`` is the public
integer type; the module-level helpers also accept rational coefficient
tuples, which is what the squarefree/gcd machinery works over.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPoly:
    """Polynomial in ``t`` with integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def from_roots_product(cls, *polys: "IntPoly") -> "IntPoly":
        out = cls((1,))
        for p in polys:
            out = out * p
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(poly_mul(self.coeffs, other.coeffs))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(poly_add(self.coeffs, other.coeffs))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def divmod_monic(self, divisor: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Division by a monic integer polynomial; stays in Z[t]."""
        if divisor.leading != 1:
            raise ValueError("divisor must be monic")
        q, r = poly_divmod(self.coeffs, divisor.coeffs)
        return IntPoly(q), IntPoly(r)

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def format_poly(coeffs: Sequence, var: str = "t") -> str:
    coeffs = _trim(coeffs)
    if not coeffs:
        return "0"
    parts = []
    for deg in range(len(coeffs) - 1, -1, -1):
        c = coeffs[deg]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if deg == 0:
            body = str(mag)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_add(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def poly_divmod(a, b):
    """Long division; exact for rationals, and for integers when b is monic."""
    a = list(_trim(a))
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    if len(a) < len(b):
        return (), tuple(a)
    quot = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c == 0:
            continue
        if lead == 1:
            f = c
        elif isinstance(c, int) and isinstance(lead, int) and c % lead == 0:
            f = c // lead
        else:
            f = Fraction(c) / lead
        quot[i] = f
        for j, bj in enumerate(b):
            a[i + j] -= f * bj
    return _trim(quot), _trim(a)


def poly_derivative(a):
    return _trim(i * a[i] for i in range(1, len(a)))


def poly_monic(a):
    a = _trim(a)
    lead = Fraction(a[-1])
    return tuple(Fraction(c) / lead for c in a)


def poly_gcd(a, b):
    """Monic gcd over Q."""
    a, b = _trim(a), _trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return poly_monic(a) if a else ()


def to_intpoly(a) -> IntPoly:
    """Clear a rational polynomial to a primitive integer one with positive lead."""
    a = _trim(a)
    if not a:
        return IntPoly(())
    den = 1
    for c in a:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return IntPoly(tuple(c // g for c in ints))


def squarefree_decomposition(a) -> list[tuple[tuple, int]]:
    """Yun's algorithm over Q: returns [(monic factor, multiplicity), ...]."""
    a = poly_monic(a)
    if len(a) <= 1:
        return []
    out = []
    da = poly_derivative(a)
    g = poly_gcd(a, da)
    b, _ = poly_divmod(a, g)
    c, _ = poly_divmod(da, g)
    d = poly_add(c, tuple(-x for x in poly_derivative(b)))
    i = 1
    while len(b) > 1:
        h = poly_gcd(b, d)
        b, _ = poly_divmod(b, h)
        c, _ = poly_divmod(d, h)
        if len(h) > 1:
            out.append((h, i))
        d = poly_add(c, tuple(-x for x in poly_derivative(b)))
        i += 1
    return out


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> IntPoly:
    """The k-th cyclotomic polynomial."""
    if k < 1:
        raise ValueError("k must be positive")
    num = (-1,) + (0,) * (k - 1) + (1,)
    for d in range(1, k):
        if k % d == 0:
            num, rem = poly_divmod(num, cyclotomic(d).coeffs)
            assert not rem
    return IntPoly(num)


def _totient(k: int) -> int:
    return sum(1 for j in range(1, k + 1) if gcd(j, k) == 1)


def cyclotomic_factorization(p: IntPoly) -> dict[int, int] | None:
    """Write p as a product of cyclotomic polynomials.

    Returns {k: multiplicity} or None when p has a root that is not a root
    of unity.  Only k with phi(k) <= deg p can occur, and phi(k) >= sqrt(k/2),
    so k <= 2 deg^2 bounds the search.
    """
    if p.is_zero() or abs(p.leading) != 1:
        return None
    rest = p if p.leading == 1 else -p
    found: dict[int, int] = {}
    deg = rest.degree
    for k in range(1, 2 * deg * deg + 3):
        if rest.degree == 0:
            break
        if _totient(k) > rest.degree:
            continue
        phi = cyclotomic(k)
        while rest.degree >= phi.degree:
            quo, rem = rest.divmod_monic(phi)
            if not rem.is_zero():
                break
            rest = quo
            found[k] = found.get(k, 0) + 1
    if rest.coeffs != (1,):
        return None
    return found

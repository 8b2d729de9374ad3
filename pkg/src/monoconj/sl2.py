"""Conjugacy of 2x2 integer matrices.

A reduced matrix is [[p, r], [q, s]] in SL(2, Z) with s > q > p >= 0.  Every
hyperbolic M in SL(2, Z) has sign(tr M) * M conjugate to a reduced matrix, and
the reduced matrices of a class are read off from its LLS period, an
even-length cyclic sequence of positive integers.

Conjugators produced here always act as ``C @ A @ C^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import NamedTuple, Sequence, Union

from .matrix import IntMatrix, as_matrix, char_poly
from .poly import IntPoly
from .verdict import (
    Conjugate,
    ConjugacyVerdict,
    mismatch,
    symmetric,
    verify_certificate,
)


class SpectrumError(ValueError):
    """The matrix is outside the domain of the requested operation."""


class ReductionCapExceeded(RuntimeError):
    """The reduction loop ran past its iteration cap."""


# -- small 2x2 helpers on plain int tuples ------------------------------------

_I2 = (1, 0, 0, 1)


def _mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _inv(x):
    a, b, c, d = x
    det = a * d - b * c
    return (d * det, -b * det, -c * det, a * det)


def _conj(x, m):
    return _mul(_mul(x, m), _inv(x))


def _flat(m: IntMatrix):
    (a, b), (c, d) = m.rows
    return (a, b, c, d)


def _mat(x) -> IntMatrix:
    return IntMatrix([[x[0], x[1]], [x[2], x[3]]])


def _check_2x2(m) -> IntMatrix:
    m = as_matrix(m)
    if m.n != 2:
        raise SpectrumError(f"expected a 2x2 matrix, got {m.n}x{m.n}")
    return m


# -- continued fractions ---------------------------------------------------------


@dataclass(frozen=True)
class CFExpansion:
    """[a_0; a_1 : ... : a_m] = a_0 + 1/(a_1 + 1/(... + 1/a_m))."""

    terms: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))
        if not self.terms:
            raise ValueError("a continued fraction needs at least one term")

    def value(self) -> Fraction:
        return cf_eval(self.terms)


def cf_eval(terms: Union[CFExpansion, Sequence[int]]) -> Fraction:
    """Exact value of a finite continued fraction."""
    if isinstance(terms, CFExpansion):
        terms = terms.terms
    terms = list(terms)
    if not terms:
        raise ValueError("a continued fraction needs at least one term")
    value = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        if value == 0:
            raise ZeroDivisionError("zero denominator inside continued fraction")
        value = a + 1 / value
    return value


def cf_expand(value: Fraction) -> list[int]:
    """Euclidean expansion of a rational."""
    value = Fraction(value)
    num, den = value.numerator, value.denominator
    out = []
    while den:
        a, rem = divmod(num, den)
        out.append(a)
        num, den = den, rem
    return out


def cf_expand_odd(value) -> tuple[int, ...]:
    """Odd-length positive expansion of q/p > 1."""
    if isinstance(value, tuple):
        value = Fraction(*value)
    value = Fraction(value)
    if value <= 1:
        raise ValueError(f"expected q/p > 1 with p >= 1, got {value}")
    terms = cf_expand(value)
    if len(terms) % 2 == 0:
        if terms[-1] >= 2:
            terms[-1] -= 1
            terms.append(1)
        else:
            terms.pop()
            terms[-1] += 1
    return tuple(terms)


# -- LLS periods -------------------------------------------------------------------


def _rotations(seq):
    return [tuple(seq[i:]) + tuple(seq[:i]) for i in range(len(seq))]


def minimal_period(entries: Sequence[int]) -> tuple[int, ...]:
    """Shortest block whose repetition gives the cyclic sequence."""
    entries = tuple(entries)
    n = len(entries)
    for d in range(1, n + 1):
        if n % d == 0 and entries == entries[:d] * (n // d):
            return entries[:d]
    return entries


class LLSPeriod:
    """Even-length cyclic sequence of positive integers; equality up to rotation."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[int]):
        entries = tuple(int(e) for e in entries)
        if len(entries) < 2 or len(entries) % 2:
            raise ValueError(f"LLS period must have even length >= 2, got {list(entries)}")
        if any(e < 1 for e in entries):
            raise ValueError(f"LLS period entries must be positive, got {list(entries)}")
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("LLSPeriod is immutable")

    def canonical(self) -> tuple[int, ...]:
        return min(_rotations(self.entries))

    def minimal_period(self) -> tuple[int, ...]:
        return minimal_period(self.entries)

    def rotations(self) -> list[tuple[int, ...]]:
        return _rotations(self.entries)

    def __eq__(self, other):
        if isinstance(other, LLSPeriod):
            return len(self.entries) == len(other.entries) and other.entries in self.rotations()
        if isinstance(other, (tuple, list)):
            try:
                return self == LLSPeriod(other)
            except ValueError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash(self.canonical())

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return f"LLSPeriod{self.entries}"

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"


# -- spectrum classes ----------------------------------------------------------------

COMPLEX_REPRESENTATIVES = {
    1: (IntMatrix([[1, 1], [-1, 0]]), 6),
    0: (IntMatrix([[0, 1], [-1, 0]]), 4),
    -1: (IntMatrix([[0, 1], [-1, -1]]), 3),
}


@dataclass(frozen=True)
class ComplexSpectrum:
    representative: IntMatrix
    order: int
    tag = "complex_spectrum"


@dataclass(frozen=True)
class DoubleRoot:
    root_sign: int
    n: int
    tag = "double_root"

    @property
    def representative(self) -> IntMatrix:
        return IntMatrix([[self.root_sign, self.n], [0, self.root_sign]])


@dataclass(frozen=True)
class RealSpectrum:
    eig_sign: int
    lls: LLSPeriod
    tag = "real_spectrum"


@dataclass(frozen=True)
class DetMinusOne:
    char_poly: IntPoly
    tag = "det_minus_one"


SpectrumClass = Union[ComplexSpectrum, DoubleRoot, RealSpectrum, DetMinusOne]


def classify(m) -> SpectrumClass:
    m = _check_2x2(m)
    d = m.det()
    if d not in (1, -1):
        raise SpectrumError(f"matrix is not unimodular (det {d})")
    if d == -1:
        return DetMinusOne(char_poly(m))
    t = m.trace()
    disc = t * t - 4
    if disc < 0:
        rep, order = COMPLEX_REPRESENTATIVES[t]
        return ComplexSpectrum(rep, order)
    if disc == 0:
        rho = t // 2
        (a, b), (c, e) = m.rows
        return DoubleRoot(rho, gcd(gcd(a - rho, b), gcd(c, e - rho)))
    return RealSpectrum(1 if t > 0 else -1, lls_period(m))


# -- reduction -----------------------------------------------------------------------


@dataclass(frozen=True)
class ReducedForm:
    """conjugator @ (sign * M) @ conjugator^-1 == reduced, det(conjugator) == 1."""

    reduced: IntMatrix
    sign: int
    conjugator: IntMatrix
    iterations: int = 0


def is_reduced(m) -> bool:
    (p, r), (q, s) = as_matrix(m).rows
    return s > q > p >= 0 and p * s - q * r == 1


def bit_size(m: IntMatrix) -> int:
    return max(1, m.entry_bits())


def _check_hyperbolic(m: IntMatrix):
    d = m.det()
    if d != 1:
        raise SpectrumError(f"reduction needs det 1, got {d}")
    t = m.trace()
    if t * t < 4:
        raise SpectrumError("complex spectrum: no reduced form")
    if t * t == 4:
        raise SpectrumError("double root: characteristic polynomial is reducible")


def _make_q_positive(a):
    """SL(2,Z) matrix X such that X a X^-1 has positive lower-left entry.

    For X = [[u, v], [c, d]] the new lower-left entry equals
    g(d, c) = q d^2 + (p - s) d c - r c^2, so it suffices to find a coprime
    (d, c) with g > 0.  With q < 0 the form is positive on a strip of width
    c * sqrt(disc) / |q|, which contains an integer once c is large enough.
    """
    p, r, q, s = a
    disc = (p + s) ** 2 - 4
    y = isqrt(q * q // disc) + 1
    while True:
        base = (s - p) * y // (2 * q)
        for x in (base, base + 1):
            if q * x * x + (p - s) * x * y - r * y * y > 0:
                g = gcd(x, y)
                d, c = x // g, y // g
                u, v = _bezout(d, c)  # u d - v c == 1
                return (u, v, c, d)
        y += 1


def _bezout(d, c):
    """(u, v) with u*d - v*c == 1 for coprime d, c."""
    old_r, rem = d, c
    old_s, s_ = 1, 0
    old_t, t_ = 0, 1
    while rem:
        quo = old_r // rem
        old_r, rem = rem, old_r - quo * rem
        old_s, s_ = s_, old_s - quo * s_
        old_t, t_ = t_, old_t - quo * t_
    # old_s*d + old_t*c == old_r == +-1
    return old_s * old_r, -old_t * old_r


def _shift_state(a, e, j):
    """[[1,0],[e j,1]] a [[1,0],[-e j,1]] in closed form."""
    p, r, q, s = a
    return (p - e * j * r, r, q + e * j * (p - s) - j * j * r, s + e * j * r)


def _run_length(a, e):
    """Number of consecutive L^e steps the loop would take from state a.

    State j of the run is the closed-form conjugate by L^(e j).  The loop
    keeps taking L^e with a zero translation exactly while 0 <= p_j < q_j and
    s_j <= q_j.  Each condition is linear or concave in j, hence holds on an
    initial segment, so galloping plus bisection finds its end.
    """

    def good(j):
        p, _, q, s = _shift_state(a, e, j)
        return 0 <= p < q and s <= q

    t, step = 0, 1
    while good(t + step):
        t += step
        step *= 2
    while step > 1:
        step //= 2
        if good(t + step):
            t += step
    return t + 1


def reduce(m) -> ReducedForm:
    """Conjugate sign(tr M) * M to a reduced matrix inside SL(2, Z)."""
    m = _check_2x2(m)
    _check_hyperbolic(m)
    sign = 1 if m.trace() > 0 else -1
    a = tuple(sign * x for x in _flat(m))
    conj = _I2
    if a[2] <= 0:
        x = _make_q_positive(a)
        a = _conj(x, a)
        conj = x
    cap = 64 * bit_size(m)
    it = 0
    while True:
        it += 1
        if it > cap:
            raise ReductionCapExceeded(f"reduction exceeded {cap} iterations")
        p, r, q, s = a
        assert q > 0
        k = -(p // q)
        if k:
            x = (1, k, 0, 1)
            a = _conj(x, a)
            conj = _mul(x, conj)
        p, r, q, s = a
        if s > q:
            break
        if r < 0:
            x = (0, -1, 1, 0)
        else:
            e = 1 if p <= s else -1
            j = _run_length(a, e)
            x = (1, 0, e * j, 1)
        a = _conj(x, a)
        conj = _mul(x, conj)
    out = ReducedForm(_mat(a), sign, _mat(conj), it)
    if not is_reduced(out.reduced) or out.conjugator.det() != 1:
        raise AssertionError(f"reduction produced a non-reduced matrix {out.reduced}")
    if out.conjugator @ m.scale(sign) != out.reduced @ out.conjugator:
        raise AssertionError("reduction certificate does not verify")
    return out


# -- LLS periods, realization, enumeration --------------------------------------------


def _lls_of_reduced(a) -> tuple[int, ...]:
    p, r, q, s = a
    if p == 0:
        return (1, s - 2)
    return cf_expand_odd(Fraction(q, p)) + ((s - 1) // q,)


def lls_period(m) -> LLSPeriod:
    return LLSPeriod(_lls_of_reduced(_flat(reduce(m).reduced)))


def realize(seq) -> IntMatrix:
    """The reduced matrix whose LLS period is exactly ``seq`` (not rotated)."""
    entries = tuple(seq.entries if isinstance(seq, LLSPeriod) else LLSPeriod(seq).entries)
    lam = entries[-1]
    if entries[:-1] == (1,):
        return IntMatrix([[0, -1], [1, lam + 2]])
    v = cf_eval(entries[:-1])
    q, p = v.numerator, v.denominator
    s0 = pow(p, -1, q) or q
    s = lam * q + s0
    r = (p * s - 1) // q
    return IntMatrix([[p, r], [q, s]])


def enumerate_reduced(m) -> list[IntMatrix]:
    """All reduced matrices in the GL(2, Z) class of sign(tr M) * M."""
    lls = lls_period(m)
    start = lls.canonical()
    count = len(lls.minimal_period())
    return [realize(start[i:] + start[:i]) for i in range(count)]


def _rotate_once(a, seq):
    """det -1 conjugator taking realize(seq) to realize(seq rotated by one)."""
    target = seq[1:] + seq[:1]
    want = _flat(realize(target))
    p, r, q, s = a
    if p == 0:
        x = (0, 1, 1, seq[1] + 1)
    else:
        x = (-seq[0], 1, 1, 0)
        if target[:-1] == (1,):
            x = _mul((1, -1, 0, 1), x)
    b = _conj(x, a)
    if b != want and b[2] > 0:
        t = (1, -(b[0] // b[2]), 0, 1)
        x = _mul(t, x)
        b = _conj(x, a)
    if b != want:
        raise AssertionError(f"rotation step failed for {seq}")
    return b, x, target


def reduced_conjugator(a: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    """GL(2, Z) matrix X with X a X^-1 = b for reduced a, b in one class."""
    cur = _flat(a)
    goal = _flat(b)
    seq = _lls_of_reduced(cur)
    x = _I2
    for _ in range(len(seq)):
        if cur == goal:
            return _mat(x)
        cur, step, seq = _rotate_once(cur, seq)
        x = _mul(step, x)
    return _mat(x) if cur == goal else None


# -- 2x2 conjugacy decision ---------------------------------------------------------


def _primitive(v):
    g = gcd(*v)
    return tuple(x // g for x in v)


def _definite_basis(m: IntMatrix) -> IntMatrix:
    """B with B^-1 M B = [[0,-1],[1,t]] for elliptic M in SL(2,Z).

    B = [u | M u] for a shortest u of the definite form det(v, M v).
    """
    (p, r), (q, s) = m.rows
    # F(x, y) = det((x,y), M(x,y)) = q x^2 + (s - p) x y - r y^2
    sgn = 1 if q > 0 else -1
    a_, b_, c_ = sgn * q, sgn * (s - p), sgn * (-r)
    e1, e2 = (1, 0), (0, 1)
    # Lagrange reduction of the positive form a x^2 + b x y + c y^2
    while True:
        if abs(b_) > a_:
            k = (b_ + a_) // (2 * a_)
            # substitute x -> x - k y
            e2 = (e2[0] - k * e1[0], e2[1] - k * e1[1])
            b_, c_ = b_ - 2 * k * a_, a_ * k * k - b_ * k + c_
        elif a_ > c_:
            e1, e2 = e2, (-e1[0], -e1[1])
            a_, b_, c_ = c_, -b_, a_
        else:
            break
    u = e1
    mu = (p * u[0] + r * u[1], q * u[0] + s * u[1])
    basis = IntMatrix([[u[0], mu[0]], [u[1], mu[1]]])
    if basis.det() not in (1, -1):
        raise AssertionError("shortest vector does not span with its image")
    return basis


def _parabolic_basis(m: IntMatrix, rho: int, n: int) -> IntMatrix:
    """B with B^-1 M B = [[rho, n], [0, rho]]."""
    (a, b), (c, d) = m.rows
    rows = ((a - rho, b), (c, d - rho))
    # kernel of M - rho I
    row = rows[0] if any(rows[0]) else rows[1]
    u = _primitive((-row[1], row[0]))
    x, y = _bezout(u[0], -u[1])  # x*u0 + y*u1 == 1
    w = (-y, x)  # det [u | w] == u0*x + u1*y == 1
    basis = (u[0], w[0], u[1], w[1])
    img = _mul(_inv(basis), _flat(m))
    img = _mul(img, basis)
    if img[1] < 0:
        basis = _mul(basis, (1, 0, 0, -1))
        img = _conj((1, 0, 0, -1), img)
    if img != (rho, n, 0, rho):
        raise AssertionError("parabolic normal form failed")
    return _mat(basis)


def _class_json(c) -> str:
    if isinstance(c, ComplexSpectrum):
        return f"complex spectrum of order {c.order}"
    if isinstance(c, DoubleRoot):
        return f"double root {c.root_sign} with n={c.n}"
    if isinstance(c, RealSpectrum):
        return f"real spectrum, eig sign {c.eig_sign}, lls {c.lls}"
    return f"det -1, char poly {c.char_poly}"


class _TwistedLLS(NamedTuple):
    """LLS period of a matrix together with that of its diag(1,-1) twist."""

    lls: LLSPeriod
    twisted: LLSPeriod

    def __str__(self):
        return f"{self.lls} (twisted {self.twisted})"


def _twist(m: IntMatrix) -> IntMatrix:
    j = IntMatrix([[1, 0], [0, -1]])
    return j @ m @ j


def conjugate_2x2(m, n, bound: int = 30) -> ConjugacyVerdict:
    """Decide GL(2, Z)-conjugacy; certificate P satisfies P M P^-1 = N.

    det -1 pairs go through the generic filters and lattice search.
    """
    m, n = _check_2x2(m), _check_2x2(n)
    return symmetric(_conjugate_2x2)(m, n, bound)


def _conjugate_2x2(m: IntMatrix, n: IntMatrix, bound: int) -> ConjugacyVerdict:
    dm, dn = m.det(), n.det()
    for d, label in ((dm, "first"), (dn, "second")):
        if d not in (1, -1):
            raise SpectrumError(f"{label} matrix is not unimodular (det {d})")
    if dm != dn:
        return mismatch("det", dm, dn)
    if m == n:
        return Conjugate(IntMatrix.identity(2))
    if dm == -1:
        from .gln import exact_filters, lattice_search

        return exact_filters(m, n) or lattice_search(m, n, bound)
    if m.trace() != n.trace():
        return mismatch("trace", m.trace(), n.trace())
    cm, cn = classify(m), classify(n)
    if type(cm) is not type(cn):
        return mismatch("spectrum class", _class_json(cm), _class_json(cn))
    if isinstance(cm, ComplexSpectrum):
        p = _definite_basis(n) @ _definite_basis(m).inverse()
    elif isinstance(cm, DoubleRoot):
        if (cm.root_sign, cm.n) != (cn.root_sign, cn.n):
            return mismatch("double root index", (cm.root_sign, cm.n), (cn.root_sign, cn.n))
        if cm.n == 0:
            p = IntMatrix.identity(2)
        else:
            bm = _parabolic_basis(m, cm.root_sign, cm.n)
            bn = _parabolic_basis(n, cn.root_sign, cn.n)
            p = bn @ bm.inverse()
    else:
        if cm.eig_sign != cn.eig_sign:
            return mismatch("eigenvalue sign", cm.eig_sign, cn.eig_sign)
        twisted = lls_period(_twist(m))
        if cm.lls == cn.lls:
            source = m
        elif twisted == cn.lls:
            source = _twist(m)
        else:
            return mismatch("lls", _TwistedLLS(cm.lls, twisted), _TwistedLLS(cn.lls, lls_period(_twist(n))))
        rm, rn = reduce(source), reduce(n)
        q = reduced_conjugator(rm.reduced, rn.reduced)
        if q is None:
            raise AssertionError("equal LLS periods but no rotation matches")
        p = rn.conjugator.inverse() @ q @ rm.conjugator
        if source is not m:
            p = p @ IntMatrix([[1, 0], [0, -1]])
    if not verify_certificate(m, n, p):
        raise AssertionError("2x2 certificate does not verify")
    return Conjugate(p)

"""Conjugacy in GL(n, Z) for general n.

The decision pipeline is:

1. exact similarity invariants (characteristic polynomial, determinant,
   trace, Smith forms of M - kI for small k);
2. similarity over Q via invariant factors, which also yields a rational
   conjugator;
3. for n = 2, the complete decision from :mod:`monoconj.sl2`;
4. otherwise, a search over the integer lattice {X : X M = N X} for a
   unimodular point, in graded lexicographic order of coefficients.

Only steps 1-3 can answer "not conjugate".  Step 4 either finds a
certificate or gives up with the bound it used.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

import sympy
from sympy.polys.matrices import DomainMatrix

from .matrix import (
    IntMatrix,
    as_matrix,
    char_poly,
    det_rows,
    nullspace,
    rank,
    rat_det,
    rat_matmul,
    smith_normal_form,
    smith_rows,
)
from .poly import IntPoly
from .verdict import (
    Conjugate,
    ConjugacyVerdict,
    NotConjugate,
    Undecided,
    mismatch,
    symmetric,
    verify_certificate,
)

MAX_DIMENSION = 8
CANDIDATE_CAP = 10**7
SNF_SHIFTS = (0, 1, -1, 2, -2, 3, -3)

RationalMatrix = tuple  # tuple of tuples of Fraction


# -- similarity invariants -----------------------------------------------------------


def _shift_label(k: int) -> str:
    if k == 0:
        return "snf(M)"
    return f"snf(M - {k}I)" if k > 0 else f"snf(M + {-k}I)"


def _shifted_snf(k: int) -> Callable[[IntMatrix], tuple]:
    def snf(m: IntMatrix) -> tuple:
        return smith_normal_form(m - IntMatrix.identity(m.n).scale(k)).diagonal

    return snf


INVARIANTS: dict[str, Callable[[IntMatrix], object]] = {
    "char_poly": lambda m: str(char_poly(m)),
    "det": lambda m: m.det(),
    "trace": lambda m: m.trace(),
}
for _k in SNF_SHIFTS:
    INVARIANTS[_shift_label(_k)] = _shifted_snf(_k)


def invariant_filter(m, n) -> Optional[NotConjugate]:
    """None when every listed invariant agrees, else the first mismatch."""
    m, n = as_matrix(m), as_matrix(n)
    _same_dim(m, n)
    for name, fn in INVARIANTS.items():
        left, right = fn(m), fn(n)
        if left != right:
            return mismatch(name, left, right)
    return None


# -- rational canonical form ---------------------------------------------------------


def _companion(coeffs) -> list[list[int]]:
    """Companion matrix of a monic polynomial (lowest coefficient first)."""
    d = len(coeffs) - 1
    out = [[0] * d for _ in range(d)]
    for i in range(1, d):
        out[i][i - 1] = 1
    for i in range(d):
        out[i][d - 1] = -coeffs[i]
    return out


def _poly_at(coeffs, m: IntMatrix) -> IntMatrix:
    acc = IntMatrix([[0] * m.n for _ in range(m.n)])
    ident = IntMatrix.identity(m.n)
    for c in reversed(coeffs):
        acc = acc @ m + ident.scale(c)
    return acc


def _irreducible_factors(p: IntPoly) -> list[tuple[tuple[int, ...], int]]:
    t = sympy.Symbol("t")
    _, factors = sympy.factor_list(sympy.Poly(list(reversed(p.coeffs)), t))
    out = []
    for f, mult in factors:
        coeffs = [int(c) for c in reversed(f.all_coeffs())]
        if coeffs[-1] < 0:
            coeffs = [-c for c in coeffs]
        out.append((tuple(coeffs), mult))
    return sorted(out)


def invariant_factors(m) -> tuple[IntPoly, ...]:
    """Invariant factors f_1 | f_2 | ... of tI - M (trivial ones dropped)."""
    m = as_matrix(m)
    blocks: list[list[tuple[int, ...]]] = []
    for factor, mult in _irreducible_factors(char_poly(m)):
        deg = len(factor) - 1
        pm = _poly_at(factor, m)
        ranks = [m.n]
        power = IntMatrix.identity(m.n)
        for _ in range(mult):
            power = power @ pm
            ranks.append(rank(power.rows))
        # blocks of size >= k number (ranks[k-1] - ranks[k]) / deg
        at_least = [(ranks[k - 1] - ranks[k]) // deg for k in range(1, mult + 1)] + [0]
        sizes = []
        for k in range(mult, 0, -1):
            sizes += [k] * (at_least[k - 1] - at_least[k])
        blocks.append([_power(factor, k) for k in sizes])  # largest first
    count = max((len(b) for b in blocks), default=0)
    out = []
    for i in range(count):
        f: tuple[int, ...] = (1,)
        for b in blocks:
            if i < len(b):
                f = _pmul(f, b[i])
        out.append(IntPoly(f))
    return tuple(reversed(out))


def _pmul(a, b):
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            res[i + j] += x * y
    return tuple(res)


def _power(f, k):
    out = (1,)
    for _ in range(k):
        out = _pmul(out, f)
    return out


@dataclass(frozen=True)
class FrobeniusForm:
    """transform @ M @ transform^-1 == matrix, over Q."""

    factors: tuple[IntPoly, ...]
    matrix: IntMatrix
    transform: RationalMatrix


def _block_diag(blocks) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    at = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[at + i][at : at + len(row)] = row
        at += len(b)
    return out


def frobenius_form(m) -> FrobeniusForm:
    m = as_matrix(m)
    factors = invariant_factors(m)
    f = IntMatrix(_block_diag([_companion(p.coeffs) for p in factors]))
    t = _invertible_solution(m, f)
    assert t is not None
    return FrobeniusForm(factors, f, t)


def _commutation_rows(m: IntMatrix, n: IntMatrix) -> list[list[int]]:
    """Matrix of X -> X M - N X acting on row-major vec(X)."""
    size = m.n
    rows = []
    for i in range(size):
        for j in range(size):
            row = [0] * (size * size)
            for k in range(size):
                row[i * size + k] += m[k, j]
                row[k * size + j] -= n[i, k]
            rows.append(row)
    return rows


def _unvec(v, size):
    return tuple(tuple(v[i * size : (i + 1) * size]) for i in range(size))


def _invertible_solution(m: IntMatrix, n: IntMatrix, seed: int = 0) -> Optional[RationalMatrix]:
    """Some invertible rational X with X M = N X, if the space has one."""
    size = m.n
    basis = nullspace(_commutation_rows(m, n), size * size)
    if not basis:
        return None
    if len(basis) == 1:
        x = _unvec(basis[0], size)
        return x if rat_det(x) != 0 else None
    rng = random.Random(seed)
    # det is a nonzero polynomial of degree n in the coefficients when an
    # invertible solution exists; random points of a large box avoid its zeros
    spread = 4 * size
    for _ in range(40):
        coeffs = [rng.randint(-spread, spread) for _ in basis]
        x = _unvec([sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(size * size)], size)
        if rat_det(x) != 0:
            return x
        spread *= 2
    return None


def rational_conjugacy(m, n) -> Optional[RationalMatrix]:
    """Rational P with P M P^-1 = N, or None if M and N are not similar over Q."""
    m, n = as_matrix(m), as_matrix(n)
    _same_dim(m, n)
    if m == n:
        return tuple(tuple(Fraction(int(i == j)) for j in range(m.n)) for i in range(m.n))
    if char_poly(m) != char_poly(n) or invariant_factors(m) != invariant_factors(n):
        return None
    p = _invertible_solution(m, n)
    if p is None:
        raise AssertionError("equal invariant factors but no invertible solution found")
    assert rat_matmul(p, m.rows) == rat_matmul(n.rows, p)
    return p


# -- integral solution lattice ----------------------------------------------------


@dataclass(frozen=True)
class SolutionLattice:
    basis: tuple[IntMatrix, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)


def _clear_denominators(v) -> list[int]:
    den = 1
    for x in v:
        den = den * x.denominator // _gcd(den, x.denominator)
    return [int(x * den) for x in v]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def solution_lattice(m, n, reduce_basis: bool = True) -> SolutionLattice:
    """Saturated integer basis of {X : X M = N X}, LLL-reduced."""
    m, n = as_matrix(m), as_matrix(n)
    _same_dim(m, n)
    size = m.n
    rational = nullspace(_commutation_rows(m, n), size * size)
    if not rational:
        return SolutionLattice(())
    ints = [_clear_denominators(v) for v in rational]
    # rows of right^-1 span the same Q-space and form part of a unimodular
    # matrix, so the first d of them are a saturated basis
    diag, _, right = smith_rows(ints)
    d = sum(1 for x in diag if x)
    right_inv = IntMatrix(right).inverse()
    vectors = [list(right_inv.rows[i]) for i in range(d)]
    if reduce_basis and d > 1:
        dm = DomainMatrix([[sympy.ZZ(x) for x in v] for v in vectors], (d, size * size), sympy.ZZ)
        vectors = [[int(x) for x in row] for row in dm.lll().to_list()]
    basis = tuple(IntMatrix(_unvec(v, size)) for v in vectors)
    for b in basis:
        assert b @ m == n @ b
    return SolutionLattice(basis)


def graded_vectors(dim: int, bound: int) -> Iterator[tuple[int, ...]]:
    """All of [-bound, bound]^dim, by L1 norm and then lexicographically."""

    def level(d, total):
        if d == 1:
            if total == 0:
                yield (0,)
            elif total <= bound:
                yield (-total,)
                yield (total,)
            return
        top = min(total, bound)
        for c in range(-top, top + 1):
            rest = total - abs(c)
            if rest <= (d - 1) * bound:
                for tail in level(d - 1, rest):
                    yield (c,) + tail

    if dim == 0:
        yield ()
        return
    for total in range(dim * bound + 1):
        yield from level(dim, total)


def lattice_search(m, n, bound: int, cap: int = CANDIDATE_CAP) -> ConjugacyVerdict:
    """First unimodular X = sum c_i B_i with |c_i| <= bound, in graded order."""
    m, n = as_matrix(m), as_matrix(n)
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    lattice = solution_lattice(m, n)
    size = m.n
    flat = [[x for row in b.rows for x in row] for b in lattice.basis]
    seen = 0
    for coeffs in graded_vectors(lattice.rank, bound):
        seen += 1
        if seen > cap:
            return Undecided(bound, f"candidate cap {cap} reached")
        v = [0] * (size * size)
        for c, b in zip(coeffs, flat):
            if c:
                for i, x in enumerate(b):
                    v[i] += c * x
        rows = _unvec(v, size)
        if det_rows(rows) in (1, -1):
            p = IntMatrix(rows)
            assert verify_certificate(m, n, p)
            return Conjugate(p)
    return Undecided(bound)


# -- decision pipeline -----------------------------------------------------------------


def _same_dim(m: IntMatrix, n: IntMatrix):
    if m.n != n.n:
        raise ValueError(f"dimension mismatch: {m.n} vs {n.n}")


def exact_filters(m: IntMatrix, n: IntMatrix) -> Optional[NotConjugate]:
    """Similarity invariants, then similarity over Q."""
    witness = invariant_filter(m, n)
    if witness is not None:
        return witness
    if rational_conjugacy(m, n) is None:
        left = [str(f) for f in invariant_factors(m)]
        right = [str(f) for f in invariant_factors(n)]
        return mismatch("invariant_factors", left, right)
    return None


def _integral_conjugacy(m: IntMatrix, n: IntMatrix, bound: int) -> ConjugacyVerdict:
    if m == n:
        return Conjugate(IntMatrix.identity(m.n))
    witness = exact_filters(m, n)
    if witness is not None:
        return witness
    if m.n == 2:
        from .sl2 import conjugate_2x2

        return conjugate_2x2(m, n, bound)
    return lattice_search(m, n, bound)


def integral_conjugacy(m, n, bound: int = 30) -> ConjugacyVerdict:
    """Decide (or semi-decide, for n >= 3) GL(n, Z)-conjugacy of M and N."""
    m, n = as_matrix(m), as_matrix(n)
    _same_dim(m, n)
    for x, label in ((m, "first"), (n, "second")):
        d = x.det()
        if d not in (1, -1):
            raise ValueError(f"{label} matrix is not unimodular (det {d})")
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    if m.n > MAX_DIMENSION:
        return Undecided(bound, f"dimension {m.n} exceeds cap {MAX_DIMENSION}")
    verdict = symmetric(_integral_conjugacy)(m, n, bound)
    if isinstance(verdict, Conjugate) and not verify_certificate(m, n, verdict.certificate):
        raise AssertionError("certificate failed verification")
    return verdict


def recheck_witness(m, n, verdict: NotConjugate) -> bool:
    """Recompute the invariant named in a witness and confirm it differs."""
    m, n = as_matrix(m), as_matrix(n)
    name = verdict.invariant
    if name in INVARIANTS:
        return INVARIANTS[name](m) != INVARIANTS[name](n)
    if name == "invariant_factors":
        return invariant_factors(m) != invariant_factors(n)
    if name == "lls":
        from .sl2 import _twist, lls_period

        return lls_period(m) != lls_period(n) and lls_period(_twist(m)) != lls_period(n)
    from .sl2 import classify

    if name == "spectrum class":
        return type(classify(m)) is not type(classify(n))
    if name == "double root index":
        a, b = classify(m), classify(n)
        return (a.root_sign, a.n) != (b.root_sign, b.n)
    if name == "eigenvalue sign":
        return classify(m).eig_sign != classify(n).eig_sign
    raise ValueError(f"unknown invariant {name!r}")

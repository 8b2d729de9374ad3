"""Exact square integer matrices.

Everything here is integer or rational arithmetic; nothing is ever rounded.
Exterior powers index their rows/columns by the k-subsets of {0..n-1} in
lexicographic order (``itertools.combinations`` order).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .poly import IntPoly


class IntMatrix:
    """Immutable n x n matrix of Python ints, row-major."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix must be at least 1x1")
        for r in rows:
            if len(r) != n:
                raise ValueError("matrix must be square")
            for x in r:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise TypeError(f"matrix entries must be integers, got {x!r}")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_json(cls, text: str) -> "IntMatrix":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"matrix is not valid JSON: {exc}") from None
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("matrix JSON must be an array of arrays of integers")
        return cls(data)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self.rows[i][j]
        return self.rows[idx]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def to_json(self) -> str:
        return json.dumps(self.tolist(), separators=(",", ":"))

    def _check_same(self, other: "IntMatrix"):
        if not isinstance(other, IntMatrix):
            raise TypeError("expected IntMatrix")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same(other)
        cols = list(zip(*other.rows))
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same(other)
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same(other)
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self.rows])

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * a for a in r] for r in self.rows])

    def __pow__(self, e: int) -> "IntMatrix":
        if e < 0:
            return self.inverse() ** (-e)
        result = IntMatrix.identity(self.n)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(zip(*self.rows))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def det(self) -> int:
        return det(self)

    def inverse(self) -> "IntMatrix":
        """Inverse of a unimodular matrix (raises otherwise)."""
        d = det(self)
        if d not in (1, -1):
            raise ValueError(f"matrix is not unimodular (det {d})")
        if self.n == 2:
            (a, b), (c, e) = self.rows
            return IntMatrix([[e * d, -b * d], [-c * d, a * d]])
        inv = rat_inverse(self.rows)
        return IntMatrix([[int(x) for x in r] for r in inv])

    def conj(self, other: "IntMatrix") -> "IntMatrix":
        """self @ other @ self^-1 for unimodular self."""
        return self @ other @ self.inverse()

    def entry_bits(self) -> int:
        return sum(abs(x).bit_length() for r in self.rows for x in r)


def as_matrix(a) -> IntMatrix:
    return a if isinstance(a, IntMatrix) else IntMatrix(a)


def _bareiss_det(rows: list[list[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def det_rows(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return _bareiss_det(rows)


def det(a: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    return det_rows(as_matrix(a).rows)


def char_poly(a: IntMatrix) -> IntPoly:
    """det(tI - A) by Faddeev-LeVerrier; every division is exact over Z."""
    a = as_matrix(a)
    n = a.n
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    ident = IntMatrix.identity(n)
    m = IntMatrix([[0] * n for _ in range(n)])
    for k in range(1, n + 1):
        m = a @ m + ident.scale(coeffs[n - k + 1])
        am = a @ m
        tr = am.trace()
        assert tr % k == 0
        coeffs[n - k] = -tr // k
    return IntPoly(tuple(coeffs))


def exterior_power(a: IntMatrix, k: int) -> IntMatrix:
    """k-th exterior power: matrix of k x k minors, subsets in lex order."""
    a = as_matrix(a)
    if not 1 <= k <= a.n:
        raise ValueError(f"k must be in 1..{a.n}, got {k}")
    subsets = list(combinations(range(a.n), k))
    rows = a.rows
    return IntMatrix(
        [[det_rows([[rows[i][j] for j in cols] for i in rs]) for cols in subsets] for rs in subsets]
    )


def is_unimodular(a: IntMatrix) -> bool:
    return det(a) in (1, -1)


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix

    def diagonal_matrix(self) -> IntMatrix:
        return IntMatrix.diag(self.diagonal)


def smith_rows(a: Sequence[Sequence[int]]):
    """Smith form of an m x n integer matrix.

    Returns (diagonal, left, right) as lists with left * a * right = D,
    diagonal nonnegative, d_i | d_{i+1}, zeros last.
    """
    A = [list(r) for r in a]
    m = len(A)
    n = len(A[0]) if m else 0
    L = [[int(i == j) for j in range(m)] for i in range(m)]
    R = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        L[dst] = [x + f * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, f):
        for row in A:
            row[dst] += f * row[src]
        for row in R:
            row[dst] += f * row[src]

    diag = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: pull an offending row into row t
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            L[t] = [-x for x in L[t]]
        diag.append(A[t][t])
    diag += [0] * (min(m, n) - len(diag))
    return diag, L, R


def smith_normal_form(a: IntMatrix) -> SmithForm:
    a = as_matrix(a)
    diag, left, right = smith_rows(a.rows)
    return SmithForm(tuple(diag), IntMatrix(left), IntMatrix(right))


# -- exact rational linear algebra -------------------------------------------------


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (matrix, pivot columns)."""
    A = [[Fraction(x) for x in r] for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : rows @ v = 0} over Q."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def rat_matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple[tuple, ...]:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in cols) for r in a)


def rat_inverse(a: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(a)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(r[n:]) for r in R)


def rat_det(a: Sequence[Sequence]) -> Fraction:
    A = [[Fraction(x) for x in r] for r in a]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d

"""Monomial birational maps and their exponent matrices.

Coordinate i of f_M is the Laurent monomial whose exponent vector is row i
of M, so that f_M o f_N = f_{MN}.

Map expression grammar (whitespace ignored)::

    map   := coord ("," coord)+
    coord := term ("*" term)* | "1/" "(" coord ")" | "1/" term
    term  := var ("^" int)?
    var   := "x" | "y" | "z" | "w"        (n <= 4)
           | "x" digits                   (x1 .. xn)
    int   := "-"? digits                  (nonzero)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm

from .matrix import IntMatrix, as_matrix, char_poly, det
from .poly import cyclotomic_factorization

LETTERS = ("x", "y", "z", "w")


class INFINITE_TYPE:
    """Sentinel for maps of infinite order."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"


INFINITE = INFINITE_TYPE()


class MapSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class MapValueError(ValueError):
    """Well-formed expression that does not define a monomial birational map."""


@dataclass(frozen=True)
class MonomialMap:
    matrix: IntMatrix

    def __post_init__(self):
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if m.n < 2:
            raise MapValueError("monomial maps need dimension n >= 2")
        d = det(m)
        if d not in (1, -1):
            raise MapValueError(f"exponent matrix has determinant {d}; map is not birational")

    @property
    def n(self) -> int:
        return self.matrix.n

    def __str__(self):
        return print_map(self)


def variable_names(n: int) -> list[str]:
    if n <= len(LETTERS):
        return list(LETTERS[:n])
    return [f"x{i}" for i in range(1, n + 1)]


_TOKEN = re.compile(r"\s*(?:(?P<one>1\s*/)|(?P<var>[a-z]\d*)|(?P<int>-?\d+)|(?P<sym>[,*^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise MapSyntaxError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, value=None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] if tok[0] != "end" else "end of input"
            raise MapSyntaxError(f"expected {want!r}, got {got!r}", tok[2], self.text)
        self.i += 1
        return tok

    def parse_map(self):
        coords = [self.parse_coord()]
        while self.peek()[:2] == ("sym", ","):
            self.take("sym", ",")
            coords.append(self.parse_coord())
        tok = self.peek()
        if tok[0] != "end":
            raise MapSyntaxError(f"unexpected {tok[1]!r}", tok[2], self.text)
        if len(coords) < 2:
            raise MapSyntaxError("a map needs at least two coordinates", tok[2], self.text)
        return coords

    def parse_coord(self):
        if self.peek()[0] == "one":
            self.take("one")
            if self.peek()[:2] == ("sym", "("):
                self.take("sym", "(")
                inner = self.parse_coord()
                self.take("sym", ")")
            else:
                inner = self.parse_term()
            return {v: -e for v, e in inner.items()}
        out = self.parse_term()
        while self.peek()[:2] == ("sym", "*"):
            self.take("sym", "*")
            for v, e in self.parse_term().items():
                out[v] = out.get(v, 0) + e
        return out

    def parse_term(self):
        _, name, pos = self.take("var")
        exp = 1
        if self.peek()[:2] == ("sym", "^"):
            self.take("sym", "^")
            _, lit, ipos = self.take("int")
            exp = int(lit)
            if exp == 0:
                raise MapSyntaxError("exponent must be nonzero", ipos, self.text)
        return {(name, pos): exp}


def parse_map(text: str) -> MonomialMap:
    """Parse e.g. ``"x*y, 1/x"`` into the map with matrix [[1,1],[-1,0]]."""
    coords = _Parser(text).parse_map()
    n = len(coords)
    names = variable_names(n)
    indexed = [f"x{i}" for i in range(1, n + 1)]
    used = {name for c in coords for (name, _) in c}
    if used <= set(names):
        lookup = {v: j for j, v in enumerate(names)}
    elif used <= set(indexed):
        lookup = {v: j for j, v in enumerate(indexed)}
    else:
        allowed = ", ".join(names) if names == indexed else f"{', '.join(names)} or x1..x{n}"
        stray = sorted(used - set(names) - set(indexed)) or sorted(used)
        raise MapValueError(
            f"variables {stray} inconsistent with {n} coordinates (allowed: {allowed})"
        )
    rows = []
    for c in coords:
        row = [0] * n
        for (name, _), e in c.items():
            row[lookup[name]] += e
        rows.append(row)
    if any(all(x == 0 for x in r) for r in rows):
        raise MapValueError("a coordinate reduces to the constant 1")
    return MonomialMap(IntMatrix(rows))


def _monomial(names, row):
    parts = []
    for v, e in zip(names, row):
        if e == 1:
            parts.append(v)
        elif e != 0:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_row(row, names) -> str:
    nonzero = [e for e in row if e != 0]
    if all(e > 0 for e in nonzero):
        return _monomial(names, row)
    if all(e < 0 for e in nonzero):
        inner = _monomial(names, [-e for e in row])
        if len(nonzero) == 1:
            return f"1/{inner}"
        return f"1/({inner})"
    return _monomial(names, row)


def print_map(f) -> str:
    m = f.matrix if isinstance(f, MonomialMap) else as_matrix(f)
    names = variable_names(m.n)
    return ", ".join(format_row(r, names) for r in m.rows)


def _to_map(f) -> MonomialMap:
    return f if isinstance(f, MonomialMap) else MonomialMap(as_matrix(f))


def compose(f: MonomialMap, g: MonomialMap) -> MonomialMap:
    f, g = _to_map(f), _to_map(g)
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: {f.n} vs {g.n}")
    return MonomialMap(f.matrix @ g.matrix)


def inverse(f: MonomialMap) -> MonomialMap:
    return MonomialMap(_to_map(f).matrix.inverse())


def matrix_order(m: IntMatrix):
    """Order of m in GL(n, Z), or INFINITE."""
    factors = cyclotomic_factorization(char_poly(m))
    if factors is None:
        return INFINITE
    # a finite order must divide lcm of the k with Phi_k | char poly
    bound = lcm(*factors) if factors else 1
    ident = IntMatrix.identity(m.n)
    if m ** bound != ident:
        return INFINITE
    divisors = sorted(d for d in range(1, bound + 1) if bound % d == 0)
    return next(d for d in divisors if m ** d == ident)


def order(f: MonomialMap):
    return matrix_order(_to_map(f).matrix)


def matrix_projective_degree(m: IntMatrix) -> int:
    """Degree of f_M on P^n after homogenizing with x_0."""
    vectors = [[0] * (m.n + 1)]
    for row in m.rows:
        vectors.append([-sum(row)] + list(row))
    low = [min(col) for col in zip(*vectors)]
    return -sum(low)


def projective_degree(f: MonomialMap) -> int:
    return matrix_projective_degree(_to_map(f).matrix)

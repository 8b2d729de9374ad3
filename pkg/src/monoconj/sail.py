"""Sails of hyperbolic 2x2 matrices, computed from lattice points.

This route shares nothing with the reduction code: it finds the lattice
points inside one invariant cone, takes their convex hull, and reads the
integer lengths and sines along one period of the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .matrix import IntMatrix, as_matrix

DEFAULT_BOUND = 10**4


class SailBoundError(ValueError):
    """The search box does not contain a full period of the sail."""


@dataclass(frozen=True)
class Sail2D:
    vertices: tuple[tuple[int, int], ...]
    edge_lengths: tuple[int, ...]
    vertex_sines: tuple[int, ...]

    def lls(self) -> tuple[int, ...]:
        out = []
        for length, sine in zip(self.edge_lengths, self.vertex_sines):
            out += [length, sine]
        return tuple(out)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points):
    """Counter-clockwise hull vertices, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _cone(m: IntMatrix):
    """Membership test for one component of {v : det(v, M v) > 0}."""
    (p, r), (q, s) = m.rows

    def form(x, y):
        return q * x * x + (s - p) * x * y - r * y * y

    def polar(u, v):  # twice the symmetric bilinear form
        return 2 * q * u[0] * v[0] + (s - p) * (u[0] * v[1] + u[1] * v[0]) - 2 * r * u[1] * v[1]

    # a point of the open cone: F(2r, s-p) = r D, F(p-s, 2q) = -q D, F(1, 0) = q
    if r > 0:
        w0 = (2 * r, s - p)
    elif q < 0:
        w0 = (p - s, 2 * q)
    else:
        w0 = (1, 0)
    assert form(*w0) > 0
    return form, (lambda x, y: form(x, y) > 0 and polar(w0, (x, y)) > 0)


def _column_extremes(m: IntMatrix, inside, x: int, bound: int):
    (p, r), (q, s) = m.rows
    disc = (p + s) ** 2 - 4
    root = isqrt(disc * x * x)
    cands = {-bound, bound}
    for num in ((s - p) * x + root, (s - p) * x - root):
        centre = num // (2 * r)
        cands.update(range(centre - 2, centre + 3))
    ys = [y for y in cands if -bound <= y <= bound and inside(x, y)]
    return (min(ys), max(ys)) if ys else None


def sail(m, bound: int = DEFAULT_BOUND) -> Sail2D:
    """One period of the sail of M, from a vertex v0 to M v0."""
    m = as_matrix(m)
    if m.n != 2 or m.det() != 1:
        raise ValueError("sail needs a 2x2 matrix of determinant 1")
    if m.trace() <= 2:
        raise ValueError("sail needs real spectrum with positive eigenvalues")
    form, inside = _cone(m)
    points = []
    for x in range(-bound, bound + 1):
        ext = _column_extremes(m, inside, x, bound)
        if ext:
            points += [(x, ext[0]), (x, ext[1])]
    hull = convex_hull(points)

    def on_box(v):
        return max(abs(v[0]), abs(v[1])) >= bound

    def act(v):
        (a, b), (c, d) = m.rows
        return (a * v[0] + b * v[1], c * v[0] + d * v[1])

    start = min(range(len(hull)), key=lambda i: (max(map(abs, hull[i])), hull[i]))
    v0 = hull[start]
    if on_box(v0):
        raise SailBoundError(f"bound {bound} too small: no interior sail vertex")
    target = act(v0)
    walk = None
    for step in (1, -1):
        path = [v0]
        i = start
        while True:
            i = (i + step) % len(hull)
            v = hull[i]
            if on_box(v) or v == v0:
                break
            path.append(v)
            if v == target:
                walk = path
                break
        if walk:
            break
    if walk is None:
        raise SailBoundError(f"bound {bound} too small to contain a period of the sail")
    dirs, lengths = [], []
    for a, b in zip(walk, walk[1:]):
        dx, dy = b[0] - a[0], b[1] - a[1]
        g = gcd(dx, dy)
        lengths.append(g)
        dirs.append((dx // g, dy // g))
    dirs.append(act(dirs[0]))
    sines = [abs(u[0] * v[1] - u[1] * v[0]) for u, v in zip(dirs, dirs[1:])]
    return Sail2D(tuple(walk), tuple(lengths), tuple(sines))


def sail_lls_oracle(m, bound: int = DEFAULT_BOUND):
    """LLS period read off the sail geometry."""
    from .sl2 import LLSPeriod

    return LLSPeriod(sail(m, bound).lls())

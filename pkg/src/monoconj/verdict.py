"""Answers of the conjugacy deciders, with their evidence."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Union

from .matrix import IntMatrix, as_matrix


@dataclass(frozen=True)
class Conjugate:
    """certificate @ M @ certificate^-1 == N, certificate in GL(n, Z)."""

    certificate: IntMatrix

    def to_json(self) -> dict:
        return {"verdict": "conjugate", "certificate": self.certificate.tolist()}

    def inverted(self) -> "Conjugate":
        return Conjugate(self.certificate.inverse())


@dataclass(frozen=True)
class NotConjugate:
    """A named invariant that takes different values on M and N."""

    witness: str
    invariant: str = ""
    left: Any = field(default=None, compare=False)
    right: Any = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {"verdict": "not_conjugate", "witness": self.witness}

    def inverted(self) -> "NotConjugate":
        witness = self.witness
        if self.invariant:
            witness = f"{self.invariant}: {self.right} != {self.left}"
        return NotConjugate(witness, self.invariant, self.right, self.left)


@dataclass(frozen=True)
class Undecided:
    bound: int
    reason: str = ""

    def to_json(self) -> dict:
        out = {"verdict": "undecided", "bound": self.bound}
        if self.reason:
            out["witness"] = self.reason
        return out

    def inverted(self) -> "Undecided":
        return self


ConjugacyVerdict = Union[Conjugate, NotConjugate, Undecided]


def mismatch(invariant: str, left, right) -> NotConjugate:
    return NotConjugate(f"{invariant}: {left} != {right}", invariant, left, right)


def verify_certificate(m: IntMatrix, n: IntMatrix, p: IntMatrix) -> bool:
    """|det P| = 1 and P M = N P, checked exactly."""
    if not (m.n == n.n == p.n):
        raise ValueError("dimension mismatch")
    if p.det() not in (1, -1):
        return False
    return p @ m == n @ p


def symmetric(decide):
    """Run ``decide`` on the pair in a fixed order so verdicts do not depend on it."""

    def wrapper(m, n, *args, **kwargs):
        m, n = as_matrix(m), as_matrix(n)
        if n.rows < m.rows:
            return decide(n, m, *args, **kwargs).inverted()
        return decide(m, n, *args, **kwargs)

    wrapper.__name__ = decide.__name__
    wrapper.__doc__ = decide.__doc__
    return wrapper

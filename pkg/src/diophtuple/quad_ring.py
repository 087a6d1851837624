"""Exact arithmetic in Z[sqrt(D)] and square testing for D < 0."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError, UsageError


def isqrt(n: int) -> int:
    """Floor of the square root of a nonnegative integer, exact at any size."""
    if n < 0:
        raise DomainError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def squarefree_part(n: int) -> int:
    """Squarefree kernel of ``n`` up to sign: n = sign * f^2 * squarefree_part(n)."""
    if n == 0:
        raise DomainError("0 has no squarefree part")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
        p += 1 if p == 2 else 2
    return sign * out * n


def is_squarefree(n: int) -> bool:
    return n != 0 and abs(squarefree_part(n)) == abs(n)


@dataclass(frozen=True)
class QuadInt:
    """The element ``a + b*sqrt(D)`` of Z[sqrt(D)].

    ``D`` must be a nonzero non-square; the Pell solver works in orders
    Z[sqrt(D)] with D not squarefree, so squarefreeness is not enforced here.
    """

    a: int
    b: int
    D: int = field(default=-2)

    def __post_init__(self) -> None:
        if self.D == 0 or is_square(self.D):
            raise DomainError(f"D={self.D} must be a nonzero non-square")

    def _check(self, other: QuadInt) -> None:
        if not isinstance(other, QuadInt):
            raise TypeError(f"cannot combine QuadInt with {type(other).__name__}")
        if other.D != self.D:
            raise UsageError(f"mismatched rings: D={self.D} vs D={other.D}")

    def __add__(self, other: QuadInt) -> QuadInt:
        self._check(other)
        return QuadInt(self.a + other.a, self.b + other.b, self.D)

    def __sub__(self, other: QuadInt) -> QuadInt:
        self._check(other)
        return QuadInt(self.a - other.a, self.b - other.b, self.D)

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.a, -self.b, self.D)

    def __mul__(self, other: QuadInt | int) -> QuadInt:
        if isinstance(other, int):
            return QuadInt(self.a * other, self.b * other, self.D)
        return quad_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QuadInt:
        if n < 0:
            nrm = self.norm()
            if nrm not in (1, -1):
                raise DomainError(f"{self} is not a unit; negative powers undefined")
            # inverse of a unit is conj / norm
            return (self.conj() * nrm) ** (-n)
        result = QuadInt(1, 0, self.D)
        base = self
        while n:
            if n & 1:
                result = quad_mul(result, base)
            base = quad_mul(base, base)
            n >>= 1
        return result

    def conj(self) -> QuadInt:
        return QuadInt(self.a, -self.b, self.D)

    def norm(self) -> int:
        return self.a * self.a - self.D * self.b * self.b

    def __str__(self) -> str:
        sign = "-" if self.b < 0 else "+"
        return f"{self.a} {sign} {abs(self.b)}*sqrt({self.D})"


def quad_mul(x: QuadInt, y: QuadInt) -> QuadInt:
    x._check(y)
    return QuadInt(x.a * y.a + x.D * x.b * y.b, x.a * y.b + x.b * y.a, x.D)


@dataclass(frozen=True)
class SquareWitness:
    """``(u + v*sqrt(D))**2`` equals the tested element."""

    u: int
    v: int


def is_square_in_ring(n: int, D: int) -> SquareWitness | None:
    """Decide whether the rational integer ``n`` is a square in Z[sqrt(D)], D < 0.

    (u + v sqrt(D))^2 = u^2 + D v^2 + 2uv sqrt(D) lies in Z only when uv = 0,
    so n must be u^2 or D*v^2.
    """
    if D >= 0:
        raise DomainError(f"square testing supported only for D < 0 (got D={D})")
    if not is_squarefree(D):
        raise DomainError(f"D={D} is not squarefree")
    if n >= 0:
        r = math.isqrt(n)
        if r * r == n:
            return SquareWitness(r, 0)
        return None
    if n % D:
        return None
    q = n // D
    r = math.isqrt(q)
    if r * r == q:
        return SquareWitness(0, r)
    return None


@dataclass(frozen=True)
class PairResult:
    i: int
    j: int
    value: int
    witness: SquareWitness | None


@dataclass(frozen=True)
class TupleReport:
    elements: tuple[int, ...]
    ringD: int
    pairResults: tuple[PairResult, ...]
    valid: bool
    reasons: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "D": self.ringD,
            "valid": self.valid,
            "pairs": [
                {
                    "i": p.i,
                    "j": p.j,
                    "product_plus_one": p.value,
                    "witness": None if p.witness is None else [p.witness.u, p.witness.v],
                }
                for p in self.pairResults
            ],
            "reasons": list(self.reasons),
        }


def verify_tuple(elements: list[int], D: int = -2) -> TupleReport:
    """Check the Diophantine property of ``elements`` in Z[sqrt(D)]."""
    elements = tuple(int(e) for e in elements)
    if len(elements) < 2:
        raise UsageError("a tuple needs at least two elements")
    reasons = []
    if any(e == 0 for e in elements):
        reasons.append("contains 0")
    if len(set(elements)) != len(elements):
        reasons.append("repeated elements")
    pairs = []
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            value = elements[i] * elements[j] + 1
            w = is_square_in_ring(value, D)
            if w is None:
                reasons.append(f"{elements[i]}*{elements[j]}+1 = {value} is not a square")
            pairs.append(PairResult(i, j, value, w))
    return TupleReport(elements, D, tuple(pairs), not reasons, tuple(reasons))

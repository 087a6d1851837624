"""Generalized Pell equations z^2 - D x^2 = N.

Units come from the periodic continued fraction of sqrt(D); solution classes
are enumerated inside Nagell's bounds and collapsed under unit equivalence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .errors import DomainError
from .quad_ring import QuadInt, is_square
from . import sequences as seq


@dataclass(frozen=True)
class PellProblem:
    D: int
    N: int

    def __post_init__(self) -> None:
        if self.D <= 0 or is_square(self.D):
            raise DomainError(f"D={self.D} must be a positive non-square")
        if self.N == 0:
            raise DomainError("N must be nonzero")

    def holds(self, z: int, x: int) -> bool:
        return z * z - self.D * x * x == self.N


@dataclass(frozen=True)
class PellUnit:
    u: int
    v: int
    D: int

    def as_quad(self) -> QuadInt:
        return QuadInt(self.u, self.v, self.D)


@dataclass(frozen=True)
class PellClass:
    z0: int
    x0: int
    problem: PellProblem

    @property
    def sign(self) -> str:
        return "+" if self.x0 > 0 else "-" if self.x0 < 0 else "0"

    def as_quad(self) -> QuadInt:
        return QuadInt(self.z0, self.x0, self.problem.D)


def cf_sqrt(D: int) -> tuple[int, list[int]]:
    """Continued fraction of sqrt(D): (a0, one full period)."""
    if D <= 0 or is_square(D):
        raise DomainError(f"sqrt({D}) is not a quadratic irrational")
    a0 = math.isqrt(D)
    m, q, a = 0, 1, a0
    period = []
    while a != 2 * a0:
        m = a * q - m
        q = (D - m * m) // q
        a = (a0 + m) // q
        period.append(a)
    return a0, period


def fundamental_unit(D: int) -> PellUnit:
    """Least (u, v), u, v > 0, with u^2 - D v^2 = 1."""
    a0, period = cf_sqrt(D)
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    for a in period[:-1]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    if len(period) % 2:
        # p + q sqrt(D) has norm -1; square it
        p, q = p * p + D * q * q, 2 * p * q
    assert p * p - D * q * q == 1
    return PellUnit(p, q, D)


def _equivalent(p: PellProblem, a: tuple[int, int], b: tuple[int, int]) -> bool:
    (z1, x1), (z2, x2) = a, b
    n = abs(p.N)
    return (z1 * z2 - p.D * x1 * x2) % n == 0 and (x1 * z2 - z1 * x2) % n == 0


def class_bounds(p: PellProblem, unit: PellUnit | None = None) -> tuple[int, int]:
    """(x bound, |z| bound) within which every class has a representative."""
    unit = unit or fundamental_unit(p.D)
    u, D, N = unit.u, p.D, p.N
    if N > 0:
        return math.isqrt(N * (u - 1) // (2 * D)), math.isqrt(N * (u + 1) // 2)
    return math.isqrt(-N * (u + 1) // (2 * D)), math.isqrt(-N * (u - 1) // 2)


def fundamental_classes(p: PellProblem, unit: PellUnit | None = None) -> list[PellClass]:
    unit = unit or fundamental_unit(p.D)
    xb, zb = class_bounds(p, unit)
    cands: list[tuple[int, int]] = []
    for x in range(0 if p.N > 0 else 1, xb + 1):
        zz = p.N + p.D * x * x
        if zz < 0 or not is_square(zz):
            continue
        z = math.isqrt(zz)
        if z > zb:
            continue
        if p.N > 0:
            cands.append((z, x))
            if x:
                cands.append((z, -x))
        else:
            cands.append((z, x))
            if z:
                cands.append((-z, x))
    groups: list[list[tuple[int, int]]] = []
    for c in cands:
        for g in groups:
            if _equivalent(p, g[0], c):
                g.append(c)
                break
        else:
            groups.append([c])
    reps = [_canonical(g, p.N > 0) for g in groups]
    return sorted((PellClass(z, x, p) for z, x in reps), key=lambda c: (c.z0, c.x0))


def _canonical(group: list[tuple[int, int]], positive_n: bool) -> tuple[int, int]:
    if positive_n:
        nonneg = [c for c in group if c[1] >= 0]
        if nonneg:
            return min(nonneg)
        return max(group, key=lambda c: c[1])
    return max(group)


@dataclass(frozen=True)
class SolutionSeq:
    """Solutions (z0 + x0 sqrt(D)) * unit^m, m >= 0.

    ``scale`` divides the z-coordinate; the three-weighted equation is solved
    as (3z)^2 - D y^2 = 3N and reported back in z.
    """

    cls: PellClass
    unit: PellUnit
    scale: int = 1

    @property
    def sign(self) -> str:
        return self.cls.sign

    def pairs(self) -> Iterator[tuple[int, int]]:
        """Yield raw (Z, x) pairs with Z = scale * z."""
        u, v, D = self.unit.u, self.unit.v, self.unit.D
        z, x = self.cls.z0, self.cls.x0
        while True:
            yield z, x
            z, x = z * u + D * x * v, z * v + x * u

    def z_terms(self, count: int) -> list[int]:
        out = []
        for i, (z, _) in enumerate(self.pairs()):
            if i == count:
                break
            out.append(z // self.scale)
        return out

    def x_terms(self, count: int) -> list[int]:
        out = []
        for i, (_, x) in enumerate(self.pairs()):
            if i == count:
                break
            out.append(x)
        return out

    def z_iter(self) -> Iterator[int]:
        for z, _ in self.pairs():
            yield z // self.scale

    def x_iter(self) -> Iterator[int]:
        for _, x in self.pairs():
            yield x

    def recurrence(self) -> tuple[int, int]:
        """(z_0, z_1) for z_{m+2} = 2u z_{m+1} - z_m."""
        z0, z1 = self.z_terms(2)
        return z0, z1


def seq_term(s: SolutionSeq, m: int) -> int:
    """z-coordinate of the m-th solution, via the unit power (no iteration)."""
    if m < 0:
        raise DomainError("index must be nonnegative")
    w = s.cls.as_quad() * s.unit.as_quad() ** m
    return w.a // s.scale


def solve_below(p: PellProblem, zmax: int) -> list[tuple[int, int]]:
    """All (z, x) with z, x >= 0 and z <= zmax, by scanning x."""
    if zmax < 1:
        raise DomainError("zmax must be at least 1")
    out = []
    x = 0
    while True:
        zz = p.N + p.D * x * x
        if zz > zmax * zmax:
            break
        if zz >= 0 and is_square(zz):
            out.append((math.isqrt(zz), x))
        x += 1
    return sorted(out)


def sequences_for(p: PellProblem, scale: int = 1) -> list[SolutionSeq]:
    unit = fundamental_unit(p.D)
    classes = fundamental_classes(p, unit)
    if scale > 1:
        classes = [c for c in classes if c.z0 % scale == 0]
    return [SolutionSeq(c, unit, scale) for c in classes]


# --- the two equations attached to d_k -------------------------------------

def e120_problem(k: int) -> PellProblem:
    """z^2 - (-2 d_k) x^2 = 1 - d_k."""
    dk = seq.d(k)
    return PellProblem(-2 * dk, 1 - dk)


def e121_problem(k: int) -> tuple[PellProblem, int]:
    """3z^2 + 2 d_k y^2 = 3 - d_k as (problem, scale).

    When 3 | d_k the factor 3 clears and the problem is z^2 - (-2d_k/3) y^2 =
    (3 - d_k)/3 with scale 1.  Otherwise multiply through by 3 and solve for
    Z = 3z: Z^2 - (-6 d_k) y^2 = 9 - 3 d_k, scale 3.
    """
    dk = seq.d(k)
    if dk % 3 == 0:
        return PellProblem(-2 * dk // 3, (3 - dk) // 3), 1
    return PellProblem(-6 * dk, 9 - 3 * dk), 3


def e121_weighted_problem(k: int) -> PellProblem:
    """The three-weighted form as Z^2 - (-6 d_k) y^2 = 9 - 3 d_k (Z = 3z)."""
    dk = seq.d(k)
    return PellProblem(-6 * dk, 9 - 3 * dk)


def nu_sequences(k: int) -> list[SolutionSeq]:
    return sequences_for(e120_problem(k))


def omega_sequences(k: int) -> list[SolutionSeq]:
    """z-sequences of the three-weighted equation in the original z."""
    return sequences_for(e121_weighted_problem(k), scale=3)


def system_solutions(k: int, zmax: int) -> list[tuple[int, int, int, int]]:
    """(z, x, y, d) with d_k d + 1 = z^2, d + 1 = -2x^2, 3d + 1 = -2y^2, z <= zmax.

    Brute force over the positive solutions of the first equation.
    """
    dk = seq.d(k)
    out = []
    for z, x in solve_below(e120_problem(k), zmax):
        d = -2 * x * x - 1
        yy = -(3 * d + 1)
        if yy % 2 == 0 and is_square(yy // 2):
            out.append((z, x, math.isqrt(yy // 2), d))
    assert all(dk * d + 1 == z * z for z, _, _, d in out)
    return out

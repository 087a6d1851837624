"""Heights of quadratic surds and the Baker-Wustholz lower bound.

An ``AlgebraicSurd`` is sqrt(w) * (p + q sqrt(r)) with rational p, q and
squarefree w, r.  That covers the rational, quadratic and biquadratic numbers
that occur as logarithm arguments here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, PrecisionError
from .intervals import CertifiedReal, Enclosure, context, iv_fraction
from .quad_ring import squarefree_part


def _split_square(n: int) -> tuple[int, int]:
    """n = f^2 * g with g squarefree, n > 0: returns (f, g)."""
    g = squarefree_part(n)
    f = math.isqrt(n // g)
    assert f * f * g == n
    return f, g


@dataclass(frozen=True)
class AlgebraicSurd:
    """sqrt(w) * (p + q*sqrt(r)), normalized on construction."""

    p: Fraction
    q: Fraction = Fraction(0)
    r: int = 1
    w: int = 1

    def __post_init__(self) -> None:
        p, q, r, w = Fraction(self.p), Fraction(self.q), int(self.r), int(self.w)
        if r <= 0 or w <= 0:
            raise DomainError("radicands must be positive")
        fr, r = _split_square(r)
        q *= fr
        fw, w = _split_square(w)
        p, q = p * fw, q * fw
        if q == 0 or r == 1:
            p, q, r = p + q * (1 if r == 1 else 0), Fraction(0), 1
        if w > 1:
            if q == 0:
                # p sqrt(w)
                p, q, r, w = Fraction(0), p, w, 1
            elif p == 0:
                f, g = _split_square(w * r)
                p, q, r, w = Fraction(0), q * f, g, 1
                if g == 1:
                    p, q = q, Fraction(0)
            elif r == w:
                # sqrt(w)(p + q sqrt(w)) = q w + p sqrt(w)
                p, q, r, w = q * w, p, w, 1
        if q == 0:
            r = 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "w", w)

    @classmethod
    def quadratic(cls, p: Fraction | int, q: Fraction | int, r: int) -> AlgebraicSurd:
        return cls(Fraction(p), Fraction(q), r)

    @property
    def degree(self) -> int:
        if self.w > 1:
            return 4
        return 1 if self.q == 0 else 2

    def radicands(self) -> list[int]:
        out = []
        if self.q != 0 and self.r > 1:
            out.append(self.r)
        if self.w > 1:
            out.append(self.w)
        return out

    def min_poly(self) -> list[Fraction]:
        """Monic minimal polynomial, highest degree first."""
        p, q, r, w = self.p, self.q, self.r, self.w
        if self.degree == 1:
            return [Fraction(1), -p]
        if self.degree == 2:
            return [Fraction(1), -2 * p, p * p - q * q * r]
        return [Fraction(1), Fraction(0), -2 * w * (p * p + q * q * r), Fraction(0), (w * (p * p - q * q * r)) ** 2]

    def primitive_poly(self) -> list[int]:
        """Minimal polynomial scaled to coprime integer coefficients, positive leading term."""
        coeffs = self.min_poly()
        den = math.lcm(*(c.denominator for c in coeffs))
        ints = [int(c * den) for c in coeffs]
        g = math.gcd(*ints)
        return [c // g for c in ints]

    def verify_min_poly(self) -> bool:
        """Evaluate the minimal polynomial at the surd in exact arithmetic."""
        coeffs = self.min_poly()
        if self.degree < 4:
            val = (Fraction(0), Fraction(0))
            x = (self.p, self.q)
            for c in coeffs:
                val = _qmul(val, x, self.r)
                val = (val[0] + c, val[1])
            return val == (Fraction(0), Fraction(0))
        # even quartic: evaluate in alpha^2 = w(p^2 + q^2 r) + 2 w p q sqrt(r)
        a2 = (self.w * (self.p ** 2 + self.q ** 2 * self.r), 2 * self.w * self.p * self.q)
        even = coeffs[0::2]
        val = (Fraction(0), Fraction(0))
        for c in even:
            val = _qmul(val, a2, self.r)
            val = (val[0] + c, val[1])
        return val == (Fraction(0), Fraction(0))

    def conjugates_iv(self, ctx) -> list:
        p, q = iv_fraction(ctx, self.p), iv_fraction(ctx, self.q)
        sr = ctx.sqrt(iv_fraction(ctx, self.r))
        if self.degree == 1:
            return [p]
        if self.degree == 2:
            return [p + q * sr, p - q * sr]
        sw = ctx.sqrt(iv_fraction(ctx, self.w))
        return [sw * (p + q * sr), sw * (p - q * sr), -sw * (p + q * sr), -sw * (p - q * sr)]

    def value_iv(self, ctx):
        return self.conjugates_iv(ctx)[0]

    def certified(self) -> CertifiedReal:
        return CertifiedReal(self.value_iv, str(self))

    def log_certified(self) -> CertifiedReal:
        if not Enclosure.from_interval(self.value_iv(context(64))).certainly_gt(0):
            raise DomainError(f"log of non-positive number {self}")
        return CertifiedReal(lambda ctx: ctx.log(self.value_iv(ctx)), f"log({self})")

    def __str__(self) -> str:
        inner = _fmt(self.p)
        if self.q != 0:
            term = f"{_fmt(abs(self.q))}*sqrt({self.r})"
            if self.p == 0:
                inner = term if self.q > 0 else f"-{term}"
            else:
                inner = f"{inner}{'+' if self.q > 0 else '-'}{term}"
        if self.w > 1:
            return f"sqrt({self.w})*({inner})"
        return inner


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"({x.numerator}/{x.denominator})"


def _qmul(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction], r: int) -> tuple[Fraction, Fraction]:
    return a[0] * b[0] + r * a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def field_degree(surds: Sequence[AlgebraicSurd]) -> int:
    """Degree over Q of the field generated by the surds: 2^(rank of radicands mod squares)."""
    rows: list[int] = []
    primes: dict[int, int] = {}
    for s in surds:
        for rad in s.radicands():
            mask = 0
            n, pdiv = rad, 2
            while pdiv * pdiv <= n:
                while n % pdiv == 0:
                    mask ^= 1 << primes.setdefault(pdiv, len(primes))
                    n //= pdiv
                pdiv += 1
            if n > 1:
                mask ^= 1 << primes.setdefault(n, len(primes))
            rows.append(mask)
    rank = 0
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            rank += 1
    return 2 ** rank


def _log_max1_iv(ctx, c, prec: int):
    a = abs(c)
    enc = Enclosure.from_interval(a)
    if enc.certainly_gt(1):
        return ctx.log(a)
    if enc.certainly_lt(1) or enc.upper <= 1:
        return ctx.mpf(0)
    raise PrecisionError(f"|conjugate| not separated from 1 at {prec} bits")


def weil_height(s: AlgebraicSurd, prec: int = 128) -> Enclosure:
    """(1/deg) log(lead * prod max(1, |conjugate|)) from the primitive minimal polynomial."""
    return height_certified(s).refine(Fraction(1, 10 ** 30), prec)


def height_certified(s: AlgebraicSurd) -> CertifiedReal:
    lead = s.primitive_poly()[0]

    def recipe(ctx):
        total = ctx.log(ctx.mpf(lead))
        for c in s.conjugates_iv(ctx):
            total = total + _log_max1_iv(ctx, c, ctx.prec)
        return total / s.degree

    return CertifiedReal(recipe, f"h({s})")


def h_prime_certified(s: AlgebraicSurd, d: int, normalization: str = "scaled") -> CertifiedReal:
    """Modified height.  ``scaled``: max(h, |log a|, 1)/d; ``bw93``: max(h, |log a|/d, 1/d)."""
    if normalization not in ("scaled", "bw93"):
        raise DomainError(f"unknown normalization {normalization!r}")
    h = height_certified(s)
    lg = s.log_certified()

    def recipe(ctx):
        hv = h.interval(ctx)
        lv = abs(lg.interval(ctx))
        if normalization == "scaled":
            return _imax(ctx, hv, lv, ctx.mpf(1)) / d
        return _imax(ctx, hv, lv / d, ctx.mpf(1) / d)

    return CertifiedReal(recipe, f"h'({s})")


def _imax(ctx, *vals):
    # endpoint-wise maximum of intervals
    lo = max(vals, key=lambda v: Enclosure.from_interval(v).lower)
    hi = max(vals, key=lambda v: Enclosure.from_interval(v).upper)
    return ctx.mpf([lo.a, hi.b])


def h_prime(s: AlgebraicSurd, d: int, normalization: str = "scaled", prec: int = 128) -> Enclosure:
    return h_prime_certified(s, d, normalization).enclose(prec)


@dataclass(frozen=True)
class LinearFormSpec:
    """Lambda = sum b_i log(alpha_i), with b_i symbolic labels."""

    coefficients: tuple[str, ...]
    surds: tuple[AlgebraicSurd, ...]
    degree: int | None = None
    normalization: str = "scaled"

    def __post_init__(self) -> None:
        if len(self.surds) < 2:
            raise DomainError("a linear form needs at least two logarithms")
        if len(self.coefficients) != len(self.surds):
            raise DomainError("coefficient and surd counts differ")
        if self.degree is not None and self.degree < 1:
            raise DomainError("degree must be positive")

    @property
    def l(self) -> int:
        return len(self.surds)

    @property
    def field_degree(self) -> int:
        return self.degree if self.degree is not None else field_degree(self.surds)


def bw_prefactor(l: int, d: int) -> int:
    """18 (l+1)! l^(l+1) (32 d)^(l+2), an exact integer."""
    return 18 * math.factorial(l + 1) * l ** (l + 1) * (32 * d) ** (l + 2)


def bw_certified(spec: LinearFormSpec) -> CertifiedReal:
    d, l = spec.field_degree, spec.l
    hps = [h_prime_certified(s, d, spec.normalization) for s in spec.surds]
    pref = bw_prefactor(l, d)

    def recipe(ctx):
        out = ctx.mpf(pref) * ctx.log(ctx.mpf(2 * l * d))
        for h in hps:
            out = out * h.interval(ctx)
        return out

    return CertifiedReal(recipe, "C")


def bw_constant(spec: LinearFormSpec, prec: int = 128) -> Enclosure:
    """C with log|Lambda| >= -C log B."""
    return bw_certified(spec).enclose(prec)


@dataclass(frozen=True)
class MLogM:
    m0: int
    power_of_ten: int


def _holds(C: Enclosure, m: int, prec: int) -> bool:
    # m > C log m, decided conservatively (undecided counts as failing)
    ctx = context(prec)
    lg = Enclosure.from_interval(ctx.log(ctx.mpf(m)))
    return Fraction(m) > C.upper * lg.upper


def solve_m_logm(C: Enclosure | Fraction | int | float, prec: int = 128) -> MLogM:
    """Least M0 with m > C log m for every integer m >= M0."""
    if not isinstance(C, Enclosure):
        C = Enclosure.point(Fraction(C))
    if C.lower <= 0:
        raise DomainError("C must be positive")
    if C.upper < Fraction(271828, 100000):
        # m/log m >= e on m > 1, and m = 1 holds trivially
        return MLogM(1, 1)
    # beyond m = C the function m - C log m increases
    lo = max(1, math.ceil(C.upper))
    cu = float(C.upper)
    hi = max(lo + 1, math.ceil(2 * cu * math.log(cu)) + 2)
    while not _holds(C, hi, prec):
        hi *= 2
    if _holds(C, lo, prec):
        # C close to e: the failing stretch below C may be empty or short
        m0 = lo
        while m0 > 1 and _holds(C, m0 - 1, prec):
            m0 -= 1
    else:
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if _holds(C, mid, prec):
                hi = mid
            else:
                lo = mid
        m0 = hi
    p10 = 1
    while p10 < m0:
        p10 *= 10
    return MLogM(m0, p10)


# the three-logarithm form of the k = 1 case
K1_FORM = LinearFormSpec(
    ("-m", "n", "1"),
    (AlgebraicSurd.quadratic(2, 1, 3), AlgebraicSurd.quadratic(5, 2, 6), AlgebraicSurd.quadratic(0, 1, 2)),
)

"""Certified real enclosures built on mpmath's interval context.

Every transcendental quantity in the package is carried as an
``Enclosure`` (two exact rationals known to bracket the true value) or as a
``CertifiedReal`` (a recipe that can produce an enclosure at any working
precision).  Comparisons are only ever decided on enclosures.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Any, Callable

from mpmath.ctx_iv import MPIntervalContext
from mpmath.libmp import finf, fnan, fninf, to_rational

from .errors import PrecisionError

MAX_PRECISION = 1 << 15
MAX_DIGITS = 60


def context(prec: int) -> MPIntervalContext:
    """Fresh interval context; contexts are never shared between callers."""
    if prec < 16:
        raise ValueError(f"precision too small: {prec}")
    ctx = MPIntervalContext()
    ctx.prec = prec
    return ctx


def _raw_to_fraction(raw: tuple) -> Fraction:
    if raw in (finf, fninf, fnan):
        raise PrecisionError("interval endpoint is not finite")
    p, q = to_rational(raw)
    return Fraction(int(p), int(q))


def endpoints(x: Any) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints of an mpmath interval."""
    a, b = x._mpi_
    return _raw_to_fraction(a), _raw_to_fraction(b)


def iv_fraction(ctx: MPIntervalContext, value: Fraction | int):
    value = Fraction(value)
    return ctx.mpf(value.numerator) / value.denominator


def _round_sig(x: Fraction, digits: int) -> tuple[int, int]:
    """Round nonzero ``x`` to ``digits`` significant digits: (mantissa, exponent)."""
    ax = abs(x)
    exp = len(str(ax.numerator)) - len(str(ax.denominator))
    # exp is within one of floor(log10|x|); fix it exactly
    while Fraction(10) ** exp > ax:
        exp -= 1
    while Fraction(10) ** (exp + 1) <= ax:
        exp += 1
    shift = exp - digits + 1
    mant = round(x / Fraction(10) ** shift)
    return mant, shift


def _decimal_string(mant: int, exp: int) -> str:
    sign = 1 if mant < 0 else 0
    return str(Decimal((sign, tuple(int(c) for c in str(abs(mant))), exp)))


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lower, upper]`` with exact rational endpoints."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lower", Fraction(self.lower))
        object.__setattr__(self, "upper", Fraction(self.upper))
        if self.lower > self.upper:
            raise ValueError(f"empty enclosure [{self.lower}, {self.upper}]")

    @classmethod
    def point(cls, value: Fraction | int) -> Enclosure:
        return cls(Fraction(value), Fraction(value))

    @classmethod
    def from_interval(cls, x: Any) -> Enclosure:
        return cls(*endpoints(x))

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def __float__(self) -> float:
        return float(self.midpoint)

    def contains(self, value: Fraction | int | float) -> bool:
        return self.lower <= Fraction(value) <= self.upper

    def certainly_lt(self, other: Enclosure | Fraction | int | float) -> bool:
        other = _as_enclosure(other)
        return self.upper < other.lower

    def certainly_gt(self, other: Enclosure | Fraction | int | float) -> bool:
        other = _as_enclosure(other)
        return self.lower > other.upper

    def sign(self) -> int:
        """+1 or -1 when the sign is certain, 0 when the enclosure straddles 0."""
        if self.lower > 0:
            return 1
        if self.upper < 0:
            return -1
        return 0

    def certified_digits(self) -> int:
        if self.lower <= 0 <= self.upper and self.lower != self.upper:
            return 0
        if self.lower == self.upper == 0:
            return MAX_DIGITS
        n = 0
        while n < MAX_DIGITS and _round_sig(self.lower, n + 1) == _round_sig(self.upper, n + 1):
            n += 1
        return n

    def decimal(self) -> str:
        """Decimal string carrying exactly the certified digits."""
        n = self.certified_digits()
        if n == 0:
            return "0"
        if self.lower == self.upper == 0:
            return "0"
        text = _decimal_string(*_round_sig(self.lower, n))
        if self.lower == self.upper and "." in text and "E" not in text.upper():
            # exact value: drop zeros that only pad the digit count
            stripped = text.rstrip("0").rstrip(".")
            if Fraction(stripped) == self.lower:
                return stripped
        return text

    def as_json(self) -> dict:
        return {"decimal": self.decimal(), "certified_digits": self.certified_digits()}

    def __repr__(self) -> str:
        return f"Enclosure({self.decimal()}, digits={self.certified_digits()})"


def _as_enclosure(x: Enclosure | Fraction | int | float) -> Enclosure:
    if isinstance(x, Enclosure):
        return x
    return Enclosure.point(Fraction(x))


@dataclass(frozen=True)
class CertifiedReal:
    """A real number given by a recipe evaluable at any working precision.

    ``recipe`` maps an interval context to an interval in that context.
    """

    recipe: Callable[[MPIntervalContext], Any]
    label: str = ""

    @classmethod
    def exact(cls, value: Fraction | int, label: str = "") -> CertifiedReal:
        value = Fraction(value)
        return cls(lambda ctx: iv_fraction(ctx, value), label or str(value))

    def interval(self, ctx: MPIntervalContext):
        return self.recipe(ctx)

    def enclose(self, prec: int) -> Enclosure:
        return Enclosure.from_interval(self.recipe(context(prec)))

    def refine(self, max_width: Fraction, prec: int = 128) -> Enclosure:
        """Double the precision until the enclosure is narrower than ``max_width``."""
        while prec <= MAX_PRECISION:
            enc = self.enclose(prec)
            if enc.width < max_width:
                return enc
            prec *= 2
        raise PrecisionError(f"{self.label or 'value'}: width {max_width} unreachable")

    def __repr__(self) -> str:
        return f"CertifiedReal({self.label!r})"

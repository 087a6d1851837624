"""Growth estimates for the solution indices and the simultaneous-approximation chain.

Everything real-valued is carried as an ``Enclosure``.  The decimal
constants of the chain (coefficient, 0.425, 0.00059) are rounded in the safe
direction and each rounding is checked against the exact rational it relaxes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, PrecisionError
from .intervals import MAX_PRECISION, Enclosure, context, iv_fraction
from .congruence_sieve import PROPOSITION_CONSTANT
from . import sequences as seq


def bennett_gamma(a0: int, a1: int, a2: int) -> Fraction:
    if not (a0 < a1 < a2):
        raise DomainError(f"need a0 < a1 < a2, got {(a0, a1, a2)}")
    if 0 not in (a0, a1, a2):
        raise DomainError("one of a0, a1, a2 must be zero")
    if a2 - a1 >= a1 - a0:
        return Fraction((a2 - a0) ** 2 * (a2 - a1) ** 2, 2 * a2 - a0 - a1)
    return Fraction((a2 - a0) ** 2 * (a1 - a0) ** 2, a1 + a2 - 2 * a0)


@dataclass(frozen=True)
class BennettContext:
    a0: int
    a1: int
    a2: int
    N: int

    def __post_init__(self) -> None:
        bennett_gamma(self.a0, self.a1, self.a2)  # validates the triple
        if self.N <= self.M ** 9:
            raise DomainError(f"N={self.N} must exceed M^9={self.M ** 9}")

    @property
    def M(self) -> int:
        return max(abs(self.a0), abs(self.a1), abs(self.a2))

    @property
    def gamma(self) -> Fraction:
        return bennett_gamma(self.a0, self.a1, self.a2)

    @property
    def pair_product(self) -> int:
        a = (self.a0, self.a1, self.a2)
        out = 1
        for i in range(3):
            for j in range(i + 1, 3):
                out *= (a[i] - a[j]) ** 2
        return out

    @property
    def log_argument(self) -> Fraction:
        """1.7 N^2 prod (a_i - a_j)^-2."""
        return Fraction(17, 10) * self.N ** 2 / self.pair_product


@dataclass(frozen=True)
class LambdaResult:
    value: Enclosure
    below_two: bool


def _lambda_iv(ctx, bc: BennettContext):
    return 1 + ctx.log(iv_fraction(ctx, 33 * bc.N * bc.gamma)) / ctx.log(iv_fraction(ctx, bc.log_argument))


def bennett_lambda(bc: BennettContext, prec: int = 128) -> LambdaResult:
    if bc.log_argument <= 1:
        raise DomainError("1.7 N^2 prod (a_i-a_j)^-2 must exceed 1")
    while prec <= MAX_PRECISION:
        lam = Enclosure.from_interval(_lambda_iv(context(prec), bc))
        if lam.certainly_lt(2) or not lam.certainly_lt(2) and lam.lower >= 2:
            return LambdaResult(lam, lam.certainly_lt(2))
        prec *= 2
    raise PrecisionError("could not decide lambda < 2")


TRIPLE = (-3, -1, 0)


def bennett_context_for(k: int) -> BennettContext:
    return BennettContext(*TRIPLE, -3 * seq.d(k))


# --- approximation gap ------------------------------------------------------

def sqrt_enclosure(r: Fraction, bits: int) -> Enclosure:
    """[lo, hi] containing sqrt(r) with width 2^-bits, from exact isqrt."""
    if r < 0:
        raise DomainError("square root of a negative number")
    scale = 1 << (2 * bits)
    lo = math.isqrt(r.numerator * scale // r.denominator)
    return Enclosure(Fraction(lo, 1 << bits), Fraction(lo + 1, 1 << bits))


def _abs_enclosure(e: Enclosure) -> Enclosure:
    if e.lower >= 0:
        return e
    if e.upper <= 0:
        return Enclosure(-e.upper, -e.lower)
    return Enclosure(Fraction(0), max(-e.lower, e.upper))


def approx_gap(k: int, z: int, x: int, y: int, bits: int = 128) -> tuple[Enclosure, Enclosure]:
    """Enclosures of |theta_1 - 2 s_k x / z| and |theta_2 - 2 t_k y / (3z)|.

    theta_1 = sqrt(1 + 1/d_k), theta_2 = sqrt(1 + 1/(3 d_k)).  Both gaps are
    asserted to lie below (1 - d_k)/z^2.
    """
    dk, sk, tk = seq.d(k), seq.s(k), seq.t(k)
    if min(x, y, z) <= 0:
        raise DomainError("need a solution in positive integers")
    if z * z + 2 * dk * x * x != 1 - dk or 3 * z * z + 2 * dk * y * y != 3 - dk:
        raise DomainError(f"(x, y, z)=({x}, {y}, {z}) does not solve the system for k={k}")
    r1 = Fraction(dk + 1, dk)
    r2 = Fraction(3 * dk + 1, 3 * dk)
    p1 = Fraction(2 * sk * x, z)
    p2 = Fraction(2 * tk * y, 3 * z)
    bound = Fraction(1 - dk, z * z)
    while bits <= MAX_PRECISION:
        t1, t2 = sqrt_enclosure(r1, bits), sqrt_enclosure(r2, bits)
        g1 = _abs_enclosure(Enclosure(t1.lower - p1, t1.upper - p1))
        g2 = _abs_enclosure(Enclosure(t2.lower - p2, t2.upper - p2))
        if g1.lower > 0 and g2.lower > 0 and g1.width < g1.lower / 10**6 and g2.width < g2.lower / 10**6:
            assert g1.certainly_lt(bound) and g2.certainly_lt(bound), (g1, g2, bound)
            return g1, g2
        bits *= 2
    raise PrecisionError("approximation gap not resolved")


# --- index growth -----------------------------------------------------------

def _ratio_iv(ctx, k: int):
    dk, sk, tk = seq.d(k), seq.s(k), seq.t(k)
    num = ctx.log(-6 * dk - 1 + 2 * tk * ctx.sqrt(iv_fraction(ctx, -6 * dk)))
    den = ctx.log(-2 * dk - 1 + 2 * sk * ctx.sqrt(iv_fraction(ctx, -2 * dk)))
    return num / den


def index_ratio_bound(k: int, prec: int = 128) -> Enclosure:
    """Enclosure of log(omega unit) / log(nu unit), an upper bound for m/(n+1)."""
    if k < 1:
        raise DomainError("k must be at least 1")
    return Enclosure.from_interval(_ratio_iv(context(prec), k))


def m_below_n_sqrt3(ratio: Fraction, n: int) -> bool:
    """ratio*(n+1) < n*sqrt(3), decided exactly by squaring."""
    return ratio > 0 and (ratio * (n + 1)) ** 2 < 3 * n * n


def min_n_for_sqrt3(ratio: Fraction) -> int:
    """Least n >= 1 from which ratio*(n+1) < n sqrt(3) holds for every larger n."""
    # the inequality is n (sqrt3 - ratio) > ratio, monotone once it holds
    if ratio * ratio >= 3:
        raise DomainError("ratio must be below sqrt(3)")
    n = 1
    while not m_below_n_sqrt3(ratio, n):
        n += 1
    return n


# --- the chain --------------------------------------------------------------

def round_up(x: Fraction, decimals: int) -> Fraction:
    q = Fraction(10) ** decimals
    return Fraction(math.ceil(x * q)) / q


def round_down_sig(x: Fraction, digits: int) -> Fraction:
    if x <= 0:
        raise DomainError("expects a positive number")
    e = 0
    while x * Fraction(10) ** e < 10 ** (digits - 1):
        e += 1
    while x * Fraction(10) ** e >= 10 ** digits:
        e -= 1
    return Fraction(math.floor(x * Fraction(10) ** e)) / Fraction(10) ** e


@dataclass(frozen=True)
class ChainConstants:
    coefficient: Fraction  # in z^(2-lambda) < coefficient * d^2
    c2: Fraction  # 1/(2 - lambda) <= log(c2 d^2) / log(-c3 d)
    c3: Fraction


def exact_constants(k: int) -> ChainConstants:
    # the constants only involve the triple, so they exist even where N <= M^9
    gamma = bennett_gamma(*TRIPLE)
    a0, a1, a2 = TRIPLE
    pair_product = ((a0 - a1) * (a0 - a2) * (a1 - a2)) ** 2
    dk = seq.d(k)
    # (1-d)(130 N gamma) 3^lambda with N = -3d and 3^lambda < 9
    coef = Fraction(130 * 3 * 9) * gamma * Fraction(1 - dk, -dk)
    c2 = Fraction(17, 10) * 9 / pair_product
    c3 = c2 / (99 * gamma)
    return ChainConstants(coef, c2, c3)


def relaxed_constants(exact: ChainConstants) -> ChainConstants:
    """Decimal forms: coefficient up to 2 decimals, c3 down to 2 significant digits."""
    c2 = exact.c2
    if c2.denominator not in (1, 2, 4, 5, 8, 10, 20, 25, 40, 50, 100, 200, 1000):
        c2 = round_up(c2, 3)
    return ChainConstants(round_up(exact.coefficient, 2), c2, round_down_sig(exact.c3, 2))


def _threshold_iv(ctx, dk: int, c: ChainConstants):
    def lg(v: Fraction):
        return ctx.log(iv_fraction(ctx, v))

    d2 = dk * dk
    num = lg(c.coefficient * d2) * lg(c.c2 * d2)
    den = iv_fraction(ctx, Fraction(1, 2)) * lg(-c.c3 * dk) * lg(Fraction(-4 * dk - 3))
    return num / den


@dataclass
class ChainResult:
    k_probe: int
    gamma: Fraction
    lam: Enclosure
    lam_below_two: bool
    exact: ChainConstants
    relaxed: ChainConstants
    quartic_root_bound: Enclosure | None
    quartic_root_bound_exact: Enclosure | None
    dk_bound: int | None
    k_max: int | None
    decreasing: bool
    premises: dict[str, bool] = field(default_factory=dict)
    precision: int = 0

    @property
    def applicable(self) -> bool:
        return all(self.premises.values())

    def as_dict(self) -> dict:
        def fr(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)

        def enc(e):
            return None if e is None else e.as_json()

        return {
            "k_probe": self.k_probe,
            "gamma": fr(self.gamma),
            "lambda": enc(self.lam),
            "lambda_below_two": self.lam_below_two,
            "coefficient_exact": enc(Enclosure.point(self.exact.coefficient)),
            "coefficient": _dec(self.relaxed.coefficient),
            "c2": _dec(self.relaxed.c2),
            "c3_exact": fr(self.exact.c3),
            "c3": _dec(self.relaxed.c3),
            "quartic_root_bound": enc(self.quartic_root_bound),
            "quartic_root_bound_exact_constants": enc(self.quartic_root_bound_exact),
            "dk_bound": self.dk_bound,
            "k_max": self.k_max,
            "decreasing": self.decreasing,
            "premises": dict(self.premises),
            "applicable": self.applicable,
        }


def _dec(x: Fraction) -> str:
    # terminating decimals only; used for the rounded constants
    s = Enclosure.point(x)
    return s.decimal()


def chain(k_probe: int = 6, prec: int = 128, decrease_span: int = 10) -> ChainResult:
    """Evaluate the approximation chain at ``k_probe`` and derive the bound on -d_k."""
    if k_probe < 1:
        raise DomainError("k_probe must be at least 1")
    dk = seq.d(k_probe)
    sk = seq.s(k_probe)
    bc_ok = -3 * dk > 3 ** 9
    gamma = bennett_gamma(*TRIPLE)
    exact = exact_constants(k_probe)
    relaxed = relaxed_constants(exact)
    c = PROPOSITION_CONSTANT
    premises = {
        "N = -3 d_k > 3^9": bc_ok,
        "coefficient rounded up": relaxed.coefficient >= exact.coefficient,
        "c2 rounded up": relaxed.c2 >= exact.c2,
        "c3 rounded down": 0 < relaxed.c3 <= exact.c3,
        "-c3 d_k > 1": -relaxed.c3 * dk > 1,
        # 2 s_k sqrt(-2 d_k) > -2 d_k - 2
        "2 s_k sqrt(-2d_k) > -2d_k - 2": (2 * sk) ** 2 * (-2 * dk) > (-2 * dk - 2) ** 2,
        "(-4 d_k - 3)^-1 < 1/2": -4 * dk - 3 > 2,
        # (c - 1/2)(-d)^(1/4) > 1 turns m >= c(-d)^(1/4) into m - 1 > (-d)^(1/4)/2
        "(c - 1/2) (-d_k)^(1/4) > 1": (c - Fraction(1, 2)) ** 4 * (-dk) > 1,
    }
    # the coefficient bound must hold for every k >= k_probe; (1-d)/(-d) decreases in k
    premises["coefficient valid for all larger k"] = all(
        exact_constants(j).coefficient <= exact.coefficient for j in range(k_probe, k_probe + decrease_span)
    )

    while prec <= MAX_PRECISION:
        ctx = context(prec)
        lam = None
        if bc_ok:
            lam_res = bennett_lambda(bennett_context_for(k_probe), prec)
            lam, below = lam_res.value, lam_res.below_two
        else:
            below = False
        premises["lambda < 2"] = below
        thr = Enclosure.from_interval(_threshold_iv(ctx, dk, relaxed))
        thr_exact = Enclosure.from_interval(_threshold_iv(ctx, dk, exact))
        # right side at consecutive k
        vals = [Enclosure.from_interval(_threshold_iv(ctx, seq.d(j), relaxed_constants(exact_constants(j))))
                for j in range(k_probe, k_probe + decrease_span)]
        decreasing = all(a.certainly_gt(b) for a, b in zip(vals, vals[1:]))
        # also with the probe constants held fixed, which is what the argument uses
        fixed = [Enclosure.from_interval(_threshold_iv(ctx, seq.d(j), relaxed))
                 for j in range(k_probe, k_probe + decrease_span)]
        decreasing = decreasing and all(a.certainly_gt(b) for a, b in zip(fixed, fixed[1:]))
        fourth_lo, fourth_hi = thr.lower ** 4, thr.upper ** 4
        if math.floor(fourth_lo) == math.floor(fourth_hi) and fourth_hi != math.floor(fourth_hi):
            break
        prec *= 2
    else:
        raise PrecisionError("chain threshold not certified")

    # -d_k < T^4 strictly
    dk_bound = math.ceil(fourth_hi) - 1
    k_max = None
    if all(premises.values()) and decreasing:
        k_max = max(j for j in range(0, k_probe + 1) if -seq.d(j) <= dk_bound)
    return ChainResult(
        k_probe, gamma, lam if lam is not None else Enclosure.point(0), below, exact, relaxed,
        thr, thr_exact, dk_bound if all(premises.values()) else None, k_max, decreasing, premises, prec,
    )

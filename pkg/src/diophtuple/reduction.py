"""Baker-Davenport reduction with certified continued fractions.

For |m theta - n + beta| < alpha a^(-m) and a convergent p/q of theta with
q > 6M, eps = ||beta q|| - M ||theta q|| > 0 rules out every m with
log(alpha q / eps) / log a <= m <= M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import DomainError, PrecisionError, ReductionError
from .intervals import MAX_PRECISION, CertifiedReal, Enclosure, context, iv_fraction
from .linear_forms import AlgebraicSurd


def cf_quotients(x: Fraction) -> list[int]:
    out = []
    while True:
        a = math.floor(x)
        out.append(a)
        frac = x - a
        if frac == 0:
            return out
        x = 1 / frac


def certified_quotients(enc: Enclosure) -> list[int]:
    """Partial quotients shared by every real in the enclosure."""
    if enc.lower == enc.upper:
        raise DomainError("enclosure is a single rational; continued fraction is finite")
    a, b = cf_quotients(enc.lower), cf_quotients(enc.upper)
    # a terminal quotient is ambiguous ([.., n] = [.., n-1, 1]); drop it
    a, b = a[:-1], b[:-1]
    out = []
    for u, v in zip(a, b):
        if u != v:
            break
        out.append(u)
    return out


def convergents_from(quotients: list[int]) -> list[tuple[int, int]]:
    """(p_n, q_n) from partial quotients a_0, a_1, ...."""
    out = []
    h2, h1 = 0, 1
    k2, k1 = 1, 0
    for a in quotients:
        h = a * h1 + h2
        k = a * k1 + k2
        out.append((h, k))
        h2, h1, k2, k1 = h1, h, k1, k
    return out


def cf_convergents(x: CertifiedReal, count: int, prec: int = 128) -> list[tuple[int, int]]:
    """First ``count`` convergents (p, q) of x, each quotient certified."""
    if count < 1:
        raise DomainError("count must be positive")
    while prec <= MAX_PRECISION:
        quots = certified_quotients(x.enclose(prec))
        if len(quots) >= count:
            return convergents_from(quots[:count])
        prec *= 2
    raise PrecisionError(f"could not certify {count} partial quotients of {x.label or 'x'}")


@dataclass(frozen=True)
class ReductionProblem:
    """|m theta - n + beta| < alpha * a^(-m) for m <= M."""

    theta: CertifiedReal
    beta: CertifiedReal
    alpha: CertifiedReal
    a: CertifiedReal
    M: int
    label: str = ""

    def __post_init__(self) -> None:
        if self.M < 1:
            raise DomainError("M must be at least 1")
        enc = self.alpha.enclose(64)
        if not enc.certainly_gt(0):
            raise DomainError("alpha must be positive")
        if not self.a.enclose(64).certainly_gt(1):
            raise DomainError("a must exceed 1")

    def with_M(self, M: int) -> ReductionProblem:
        return replace(self, M=M)


@dataclass
class ReductionOutcome:
    q: int
    p: int
    eps: Enclosure
    new_M: int
    certified: bool
    precision: int
    rejected: list[int] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "q": str(self.q),
            "p": str(self.p),
            "eps": self.eps.as_json(),
            "new_M": self.new_M,
            "certified": self.certified,
            "rejected_q": [str(q) for q in self.rejected],
        }


def _nearest_distance(e: Enclosure) -> Enclosure | None:
    """||x|| over the enclosure, or None when a half-integer lies inside."""
    n_lo = math.floor(e.lower + Fraction(1, 2))
    n_hi = math.floor(e.upper + Fraction(1, 2))
    if n_lo != n_hi:
        return None
    n = n_lo
    lo_d, hi_d = abs(e.lower - n), abs(e.upper - n)
    if e.lower <= n <= e.upper:
        return Enclosure(Fraction(0), max(lo_d, hi_d))
    return Enclosure(min(lo_d, hi_d), max(lo_d, hi_d))


def initial_precision(M: int) -> int:
    return 2 * (6 * M).bit_length() + 128


def bd_reduce(prob: ReductionProblem, prec: int | None = None) -> ReductionOutcome:
    M = prob.M
    prec = prec or initial_precision(M)
    while prec <= MAX_PRECISION:
        ctx = context(prec)
        theta = Enclosure.from_interval(prob.theta.interval(ctx))
        beta = Enclosure.from_interval(prob.beta.interval(ctx))
        quots = certified_quotients(theta)
        convs = [c for c in convergents_from(quots) if c[1] > 6 * M]
        rejected: list[int] = []
        outcome = None
        undecided = False
        for p, q in convs:
            dt = _nearest_distance(Enclosure(theta.lower * q, theta.upper * q))
            db = _nearest_distance(Enclosure(beta.lower * q, beta.upper * q))
            if dt is None or db is None:
                undecided = True
                break
            eps = Enclosure(db.lower - M * dt.upper, db.upper - M * dt.lower)
            if eps.upper <= 0:
                rejected.append(q)
                continue
            if eps.lower <= 0:
                undecided = True
                break
            bound = prob.alpha.interval(ctx) * q / iv_fraction(ctx, eps.lower)
            val = Enclosure.from_interval(ctx.log(bound) / ctx.log(prob.a.interval(ctx)))
            if math.floor(val.lower) != math.floor(val.upper):
                undecided = True
                break
            outcome = ReductionOutcome(q, p, eps, math.floor(val.upper), True, prec, rejected)
            break
        if outcome is not None:
            return outcome
        if not undecided and len(rejected) >= 50:
            raise ReductionError(f"no convergent with eps > 0 among q = {rejected}")
        prec *= 2
    raise ReductionError(f"reduction of M={M} not certified up to {MAX_PRECISION} bits")


def bd_iterate(prob: ReductionProblem, floor: int = 1, prec: int | None = None,
               max_steps: int | None = None) -> list[int]:
    """Successive bounds, starting with prob.M, while they keep decreasing."""
    if floor < 1:
        raise DomainError("floor must be at least 1")
    traj = [prob.M]
    M = prob.M
    while M > floor and (max_steps is None or len(traj) <= max_steps):
        out = bd_reduce(prob.with_M(M), prec)
        if out.new_M >= M:
            break
        M = max(out.new_M, 0)
        traj.append(M)
        if M < 1:
            break
    return traj


def bd_iterate_outcomes(prob: ReductionProblem, floor: int = 1, prec: int | None = None) -> list[ReductionOutcome]:
    outs = []
    M = prob.M
    while M > floor:
        out = bd_reduce(prob.with_M(M), prec)
        if out.new_M >= M:
            break
        outs.append(out)
        M = out.new_M
        if M < 1:
            break
    return outs


def scan_inequality(prob: ReductionProblem, m_max: int, prec: int = 256) -> list[tuple[int, int]]:
    """All (m, n), 0 <= m <= m_max, with |m theta - n + beta| < alpha a^(-m)."""
    ctx = context(prec)
    theta, beta = prob.theta.interval(ctx), prob.beta.interval(ctx)
    alpha, a = prob.alpha.interval(ctx), prob.a.interval(ctx)
    out = []
    for m in range(m_max + 1):
        centre = Enclosure.from_interval(m * theta + beta)
        rhs = alpha * a ** (-m)
        for n in range(math.floor(centre.lower) - 1, math.ceil(centre.upper) + 2):
            lhs = Enclosure.from_interval(abs(m * theta - n + beta))
            r = Enclosure.from_interval(rhs)
            if lhs.certainly_lt(r):
                out.append((m, n))
            elif not lhs.certainly_gt(r):
                raise PrecisionError(f"(m, n)=({m}, {n}) undecided at {prec} bits")
    return out


def log_ratio(num: AlgebraicSurd, den: AlgebraicSurd, sign: int = 1) -> CertifiedReal:
    ln, ld = num.log_certified(), den.log_certified()
    return CertifiedReal(lambda ctx: sign * ln.interval(ctx) / ld.interval(ctx), f"{'-' if sign < 0 else ''}log({num})/log({den})")


def inverse_log(x: AlgebraicSurd) -> CertifiedReal:
    lx = x.log_certified()
    return CertifiedReal(lambda ctx: 1 / lx.interval(ctx), f"1/log({x})")


E = CertifiedReal(lambda ctx: ctx.e, "e")


def k1_problem(M: int = 10 ** 16, beta_sign: int = -1) -> ReductionProblem:
    """theta = log a1 / log a2, beta = -+log a3 / log a2, alpha = 1/log a2, a = e.

    With Lambda = -m log a1 + n log a2 + log a3 the inequality in the
    standard shape has beta = -log a3 / log a2; ``beta_sign=+1`` gives the
    other sign, which leaves ||beta q|| and so every outcome unchanged.
    """
    a1 = AlgebraicSurd.quadratic(2, 1, 3)
    a2 = AlgebraicSurd.quadratic(5, 2, 6)
    a3 = AlgebraicSurd.quadratic(0, 1, 2)
    return ReductionProblem(log_ratio(a1, a2), log_ratio(a3, a2, beta_sign), inverse_log(a2), E, M, "k=1")

"""Congruence filters for intersections nu_m = omega_n.

Residues of the solution sequences modulo -2d_k and 8d_k^2, the
compatibility and parity lemmas, descent to the fundamental solution, and
the exact chain that rules out small n.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, UsageError
from .pell import SolutionSeq, nu_sequences, omega_sequences
from . import sequences as seq

# lower bound n >= PROPOSITION_CONSTANT * (-d_k)^(1/4) established by the chain
PROPOSITION_CONSTANT = Fraction(2, 3)


@dataclass(frozen=True)
class SieveContext:
    k: int
    d: int
    s: int
    t: int
    s_prev: int
    t_prev: int
    z_fund: int  # c_{k-1} + 2

    @classmethod
    def from_k(cls, k: int) -> SieveContext:
        if k < 0:
            raise DomainError("k must be nonnegative")
        ctx = cls(k, seq.d(k), seq.s(k), seq.t(k), seq.s(k - 1), seq.t(k - 1), seq.c(k - 1) + 2)
        assert ctx.d % 2 != 0
        return ctx

    @property
    def mod_small(self) -> int:
        return -2 * self.d

    @property
    def mod_large(self) -> int:
        return 8 * self.d * self.d


def residue_pattern(s: SolutionSeq, modulus: int, count: int) -> list[int]:
    """Residues of the first ``count`` z-terms, by iterating the recurrence mod ``modulus``."""
    if modulus < 2:
        raise DomainError("modulus must be at least 2")
    if count <= 0:
        return []
    z0, z1 = s.recurrence()
    a = 2 * s.unit.u % modulus
    out = [z0 % modulus, z1 % modulus][:count]
    while len(out) < count:
        out.append((a * out[-1] - out[-2]) % modulus)
    return out


def lemma_small_prediction(z0: int, index: int, modulus: int) -> int:
    return (z0 if index % 2 == 0 else -z0) % modulus


def lemma_large_prediction_nu(ctx: SieveContext, z0: int, x0: int, m: int) -> int:
    val = z0 + 2 * ctx.d * m * m * z0 + 4 * ctx.d * ctx.s * m * x0
    return (val if m % 2 == 0 else -val) % ctx.mod_large


def lemma_large_prediction_omega(ctx: SieveContext, z1: int, y1: int, n: int) -> int:
    val = z1 + 6 * ctx.d * n * n * z1 + 4 * ctx.d * ctx.t * n * y1
    return (val if n % 2 == 0 else -val) % ctx.mod_large


class Verdict(enum.Enum):
    EQUAL = "equal"
    COMPLEMENTARY = "complementary"
    INCOMPATIBLE = "incompatible"
    ELIMINATED = "eliminated"
    SURVIVES = "survives"


def compatible_fundamentals(ctx: SieveContext, z0: int, z1: int) -> Verdict:
    d = ctx.d
    if not (1 <= z0 and z0 * z0 <= -d * (1 - d)):
        raise UsageError(f"z0={z0} outside 1 <= z0 <= sqrt(-d(1-d))")
    if not (1 <= z1 and z1 * z1 <= -d * (3 - d)):
        raise UsageError(f"z1={z1} outside 1 <= z1 <= sqrt(-d(3-d))")
    if z0 == z1:
        return Verdict.EQUAL
    if z0 + z1 == ctx.mod_small:
        return Verdict.COMPLEMENTARY
    return Verdict.INCOMPATIBLE


def parity_filter(m: int, n: int) -> bool:
    """True iff nu_m = omega_n is not excluded by parity."""
    return (m - n) % 2 == 0


def descend_fundamental(ctx: SieveContext, z0: int) -> int | None:
    """l with (z0^2 - 1)/d_k = d_l, or None."""
    if z0 < 1:
        raise UsageError("z0 must be positive")
    num = z0 * z0 - 1
    if num % ctx.d:
        return None
    return seq.d_index(num // ctx.d)


def fundamentals_even(k: int) -> list[tuple[str, int]]:
    """Fundamental z's of both equations that are odd (expected: none)."""
    bad = []
    for s in nu_sequences(k):
        if s.cls.z0 % 2:
            bad.append(("nu", s.cls.z0))
    for s in omega_sequences(k):
        z1 = s.cls.z0 // s.scale
        if z1 % 2:
            bad.append(("omega", z1))
    return bad


def small_n_bound_holds(ctx: SieveContext, n: int) -> bool:
    """n < (2/3)(-d_k)^(1/4), decided exactly as 81 n^4 < 16 (-d_k)."""
    c = PROPOSITION_CONSTANT
    return (n ** 4) * c.denominator ** 4 < c.numerator ** 4 * (-ctx.d)


@dataclass
class Elimination:
    verdict: Verdict
    step: str
    trace: list[str] = field(default_factory=list)

    @property
    def eliminated(self) -> bool:
        return self.verdict is Verdict.ELIMINATED


def eliminate_small_n(ctx: SieveContext, m: int, n: int, signs: tuple[int, int] = (1, 1)) -> Elimination:
    """Run the congruence chain for nu^sigma_m = omega^tau_n with n small.

    Lemma-3.3 residues give Z*A == B (mod -4d) with Z = c_{k-1}+2,
    A = m^2 + sigma m - 3n^2 - 3 tau n and B = 2(sigma m - tau n).  Squaring
    with Z^2 == 1 (mod -d) forces A^2 == B^2, and when both are below -4d this
    pins A = +-B.  Then (Z -+ 1) w == 0 (mod -2d), w = sigma m - tau n, which
    multiplied by s_k becomes F w == 0 (mod -2d) with F = 3s_k - s_{k-1} or
    s_k - s_{k-1}; a nonzero product below -2d is a contradiction.
    """
    sigma, tau = signs
    if sigma not in (1, -1) or tau not in (1, -1):
        raise UsageError("signs must be +1 or -1")
    if m < 0 or n < 0:
        raise UsageError("indices must be nonnegative")
    if not parity_filter(m, n):
        raise UsageError(f"m={m}, n={n} differ in parity")
    if not small_n_bound_holds(ctx, n):
        raise UsageError(f"n={n} is not below (2/3)(-d_k)^(1/4) for k={ctx.k}")
    Z, big, small = ctx.z_fund, -4 * ctx.d, -2 * ctx.d
    A = m * m + sigma * m - 3 * n * n - 3 * tau * n
    B = 2 * (sigma * m - tau * n)
    trace = [f"A={A}, B={B}, Z={Z}, mod={big}"]
    if (Z * A - B) % big:
        trace.append("Z*A != B (mod -4d)")
        return Elimination(Verdict.ELIMINATED, "residue", trace)
    # consequence of the line above, kept as an invariant check
    assert (A * A - B * B) % big == 0
    if not (A * A < big and B * B < big):
        trace.append("A^2 or B^2 not below -4d; chain inconclusive")
        return _survives(ctx, m, n, signs, "size", trace)
    if A * A != B * B:
        trace.append("A^2 != B^2 although both are reduced residues")
        return Elimination(Verdict.ELIMINATED, "square", trace)
    w = sigma * m - tau * n
    if w == 0:
        # A = B = 0 would need m = n = 0
        trace.append("w = 0 forces m = n = 0")
        return _survives(ctx, m, n, signs, "trivial", trace)
    factor = 3 * ctx.s - ctx.s_prev if A == -B else ctx.s - ctx.s_prev
    prod = factor * w
    # multiplying by s_k (a unit mod -d) turns (Z -+ 1) w into F w
    assert (((Z + 1) if A == -B else (Z - 1)) * w % small == 0) == (prod % small == 0)
    trace.append(f"A = {'-' if A == -B else '+'}B, F={factor}, F*w={prod}")
    if prod % small:
        return Elimination(Verdict.ELIMINATED, "final", trace)
    if 0 < abs(prod) < small:
        trace.append("0 < |F*w| < -2d yet -2d | F*w")
        return Elimination(Verdict.ELIMINATED, "final", trace)
    return _survives(ctx, m, n, signs, "final", trace)


def _survives(ctx, m, n, signs, step, trace) -> Elimination:
    warnings.warn(
        f"k={ctx.k}: (m, n, signs)=({m}, {n}, {signs}) survives the small-n chain at step {step}",
        RuntimeWarning,
        stacklevel=3,
    )
    return Elimination(Verdict.SURVIVES, step, trace)


def small_n_domain(ctx: SieveContext) -> list[tuple[int, int, tuple[int, int]]]:
    """All (m, n, signs) with 2 <= n below the bound, n <= m < n sqrt(3), same parity."""
    out = []
    n = 2
    while small_n_bound_holds(ctx, n):
        m = n
        while m * m < 3 * n * n:
            for signs in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                out.append((m, n, signs))
            m += 2
        n += 1
    return out


def scan_small_n(k: int) -> tuple[int, list[tuple[int, int, tuple[int, int], Elimination]]]:
    """(domain size, survivors) for the exhaustive small-n scan at index k."""
    ctx = SieveContext.from_k(k)
    dom = small_n_domain(ctx)
    survivors = []
    for m, n, signs in dom:
        res = eliminate_small_n(ctx, m, n, signs)
        if not res.eliminated:
            survivors.append((m, n, signs, res))
    return len(dom), survivors


def parity_on_solutions(k: int, zmax: int) -> list[tuple[int, int, int, str, str]]:
    """All nu_m = omega_n with value <= zmax: (m, n, value, sign_nu, sign_omega)."""
    hits = []
    nus = nu_sequences(k)
    omegas = omega_sequences(k)
    for a in nus:
        avals = _until(a, zmax)
        for b in omegas:
            bvals = _until(b, zmax)
            index = {v: i for i, v in enumerate(bvals)}
            for m, v in enumerate(avals):
                if v in index:
                    hits.append((m, index[v], v, a.sign, b.sign))
    return sorted(hits)


def _until(s: SolutionSeq, zmax: int) -> list[int]:
    out = []
    for z in s.z_iter():
        if z > zmax:
            break
        out.append(z)
    return out

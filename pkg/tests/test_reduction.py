import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from diophtuple.errors import DomainError, PrecisionError
from diophtuple.intervals import CertifiedReal, Enclosure
from diophtuple.reduction import (
    E,
    ReductionProblem,
    bd_iterate,
    bd_iterate_outcomes,
    bd_reduce,
    certified_quotients,
    cf_convergents,
    cf_quotients,
    convergents_from,
    k1_problem,
    scan_inequality,
)

GOLDEN = CertifiedReal(lambda ctx: (1 + ctx.sqrt(5)) / 2, "phi")
ROOT2 = CertifiedReal(lambda ctx: ctx.sqrt(2), "sqrt2")
HALF = CertifiedReal.exact(Fraction(1, 2))
ONE = CertifiedReal.exact(1)


def test_golden_ratio_convergents():
    convs = cf_convergents(GOLDEN, 8)
    assert convs == [(1, 1), (2, 1), (3, 2), (5, 3), (8, 5), (13, 8), (21, 13), (34, 21)]


def test_sqrt2_convergents():
    assert cf_convergents(ROOT2, 5) == [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)]


def test_convergent_properties_for_theta():
    prob = k1_problem()
    convs = cf_convergents(prob.theta, 40)
    assert any(q > 6 * 10**16 for _, q in convs)
    theta = prob.theta.enclose(1024)
    qs = [q for _, q in convs]
    assert all(a < b for a, b in zip(qs[1:], qs[2:]))
    for p, q in convs:
        assert math.gcd(p, q) == 1
        err = max(abs(theta.lower - Fraction(p, q)), abs(theta.upper - Fraction(p, q)))
        assert err < Fraction(1, q * q)


def test_rational_enclosure_is_refused():
    with pytest.raises(DomainError):
        certified_quotients(Enclosure.point(Fraction(3, 2)))


def test_precision_cap():
    # a rational disguised as a real never separates from itself
    with pytest.raises((PrecisionError, DomainError)):
        cf_convergents(CertifiedReal.exact(Fraction(7, 3)), 5)


@given(st.fractions(min_value=-100, max_value=100, max_denominator=10**6))
def test_cf_quotients_roundtrip(x):
    p, q = convergents_from(cf_quotients(x))[-1]
    assert Fraction(p, q) == x


def test_k1_reduction_steps():
    prob = k1_problem()
    first = bd_reduce(prob)
    assert first.certified and first.new_M == 38 and first.q > 6 * 10**16
    assert first.eps.certainly_gt(0)
    second = bd_reduce(prob.with_M(38))
    assert second.new_M == 7 and second.q == 1638


def test_k1_trajectory():
    prob = k1_problem()
    # a third application of the same lemma goes one step past 7
    assert bd_iterate(prob) == [10**16, 38, 7, 5]
    assert bd_iterate(prob, max_steps=2) == [10**16, 38, 7]


def test_beta_sign_does_not_matter():
    a = [o.new_M for o in bd_iterate_outcomes(k1_problem(beta_sign=-1))]
    b = [o.new_M for o in bd_iterate_outcomes(k1_problem(beta_sign=1))]
    assert a == b


@pytest.mark.parametrize("prec", [192, 384, 768])
def test_k1_precision_invariance(prec):
    outs = bd_iterate_outcomes(k1_problem(), prec=prec)
    assert [(o.q, o.new_M) for o in outs] == [(62030710650742880, 38), (1638, 7), (47, 5)]


def test_floor_stops_immediately():
    assert bd_iterate(k1_problem(5), floor=5) == [5]
    with pytest.raises(DomainError):
        bd_iterate(k1_problem(5), floor=0)


def test_golden_synthetic_matches_scan():
    prob = ReductionProblem(GOLDEN, HALF, ONE, E, 10)
    out = bd_reduce(prob)
    assert out.certified and out.q > 60
    # no solution can sit in [newM + 1, 10]; the scan confirms it
    sols = scan_inequality(prob, 10)
    assert all(m <= out.new_M for m, _ in sols)
    traj = bd_iterate(prob)
    assert all(a > b for a, b in zip(traj, traj[1:]))


def test_scan_k1_finds_known_intersections():
    assert scan_inequality(k1_problem(), 40) == [(0, 0), (2, 1)]


@pytest.mark.parametrize("kwargs", [dict(M=0), dict(alpha=CertifiedReal.exact(-1)), dict(a=ONE)])
def test_problem_validation(kwargs):
    base = dict(theta=GOLDEN, beta=HALF, alpha=ONE, a=E, M=10)
    base.update(kwargs)
    with pytest.raises(DomainError):
        ReductionProblem(**base)

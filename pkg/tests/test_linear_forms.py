import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from diophtuple.errors import DomainError
from diophtuple.intervals import Enclosure
from diophtuple.linear_forms import (
    AlgebraicSurd,
    LinearFormSpec,
    K1_FORM,
    bw_constant,
    bw_prefactor,
    field_degree,
    h_prime,
    solve_m_logm,
    weil_height,
)

A1 = AlgebraicSurd.quadratic(2, 1, 3)
A2 = AlgebraicSurd.quadratic(5, 2, 6)
A3 = AlgebraicSurd.quadratic(0, 1, 2)


@pytest.mark.parametrize("s, h", [
    (A1, 0.5 * math.log(2 + math.sqrt(3))),
    (A3, 0.5 * math.log(2)),
    (AlgebraicSurd(Fraction(1)), 0.0),
    (AlgebraicSurd(Fraction(1, 2)), math.log(2)),
    (AlgebraicSurd(Fraction(3, 2)), math.log(3)),
])
def test_weil_height(s, h):
    assert abs(float(weil_height(s)) - h) < 1e-12


def test_heights_of_examples():
    assert abs(float(weil_height(A1)) - 0.65848) < 1e-5
    assert abs(float(weil_height(A3)) - 0.34657) < 1e-5


def test_height_uses_leading_coefficient():
    # sqrt(3) (4 + (61/451) sqrt(902)) is not an algebraic integer
    s = AlgebraicSurd(Fraction(4), Fraction(61, 451), 902, 3)
    assert s.degree == 4
    assert s.primitive_poly()[0] == 203401
    assert abs(float(weil_height(s)) - 4.374) < 1e-3


@given(st.fractions(min_value=-50, max_value=50, max_denominator=30),
       st.fractions(min_value=-50, max_value=50, max_denominator=30).filter(lambda q: q != 0),
       st.sampled_from([2, 3, 5, 6, 7, 22, 902]),
       st.sampled_from([1, 2, 3, 5]))
@settings(max_examples=150)
def test_min_poly_annihilates(p, q, r, w):
    s = AlgebraicSurd(p, q, r, w)
    assert s.verify_min_poly()
    poly = s.primitive_poly()
    assert math.gcd(*poly) == 1 and poly[0] > 0


@pytest.mark.parametrize("args, normal", [
    ((0, 1, 8), (0, 2, 2)),
    ((1, 1, 1), (2, 0, 1)),
    ((0, 1, 2, 2), (2, 0, 1)),
    ((3, 0, 5, 2), (0, 3, 2)),
    ((1, 2, 3, 3), (6, 1, 3)),
])
def test_normalization(args, normal):
    p, q, r, *w = args
    s = AlgebraicSurd(Fraction(p), Fraction(q), r, *(w or [1]))
    assert (s.p, s.q, s.r) == tuple(map(Fraction, normal[:2])) + (normal[2],)
    assert s.w == 1


def test_rejects_bad_radicand():
    with pytest.raises(DomainError):
        AlgebraicSurd(Fraction(1), Fraction(1), -2)


def test_field_degree():
    assert field_degree([A1, A2, A3]) == 4
    assert field_degree([A1, AlgebraicSurd.quadratic(7, 4, 3)]) == 2
    assert field_degree([AlgebraicSurd(Fraction(2))]) == 1
    assert field_degree([A1, A3, AlgebraicSurd.quadratic(1, 1, 5)]) == 8


def test_h_prime_scaled_normalization():
    vals = [float(h_prime(s, 4)) for s in (A1, A2, A3)]
    assert [round(v, 4) for v in vals] == [0.3292, 0.5731, 0.25]


def test_h_prime_bw93_differs():
    assert float(h_prime(A3, 4, "bw93")) == pytest.approx(0.34657, abs=1e-5)
    with pytest.raises(DomainError):
        h_prime(A3, 4, "other")


def test_bw_constant_k1():
    C = bw_constant(K1_FORM)
    assert C.certainly_gt(10**14) and C.certainly_lt(4 * 10**14)
    assert abs(float(C) / 1.80247e14 - 1) < 1e-5


def test_bw_constant_scales_with_heights():
    # squaring each surd doubles every h' here (|log a| dominates on both sides)
    base = (A1, A2, AlgebraicSurd.quadratic(3, 2, 2))
    squared = (AlgebraicSurd.quadratic(7, 4, 3), AlgebraicSurd.quadratic(49, 20, 6), AlgebraicSurd.quadratic(17, 12, 2))
    c1 = bw_constant(LinearFormSpec(("b1", "b2", "b3"), base))
    c2 = bw_constant(LinearFormSpec(("b1", "b2", "b3"), squared))
    ratio = c2.midpoint / c1.midpoint
    assert abs(ratio - 8) < Fraction(1, 10**20)


def test_bw_constant_monotone_in_degree_and_length():
    c4 = bw_constant(LinearFormSpec(("b1", "b2", "b3"), (A1, A2, A3), 4))
    c8 = bw_constant(LinearFormSpec(("b1", "b2", "b3"), (A1, A2, A3), 8))
    assert c8.certainly_gt(c4)
    two = bw_constant(LinearFormSpec(("b1", "b2"), (A1, A2)))
    assert two.certainly_gt(0)
    assert bw_prefactor(3, 4) > bw_prefactor(2, 4)


def test_linear_form_spec_validation():
    with pytest.raises(DomainError):
        LinearFormSpec(("b1",), (A1,))
    with pytest.raises(DomainError):
        LinearFormSpec(("b1", "b2"), (A1, A2, A3))


@pytest.mark.parametrize("C, m0", [(1, 1), (math.e, 1), (3, 5)])
def test_solve_m_logm_small(C, m0):
    assert solve_m_logm(C).m0 == m0


def test_solve_m_logm_k1_constant():
    res = solve_m_logm(2 * 10**14)
    assert res.m0 <= 10**16
    assert res.power_of_ten == 10**16
    assert solve_m_logm(bw_constant(K1_FORM)).m0 == 6564684438101749


@pytest.mark.parametrize("C", [3, 10, 1000, 2.5e6, 2e14])
def test_solve_m_logm_fixed_point(C):
    m0 = solve_m_logm(C).m0
    with mpmath.workdps(50):
        C = mpmath.mpf(C)
        assert m0 > C * mpmath.log(m0)
        assert not (m0 - 1) > C * mpmath.log(m0 - 1)
        for m in range(m0, m0 + 100):
            assert m > C * mpmath.log(m)
        probe = int(mpmath.floor(C * mpmath.log(C)))
        if 1 < probe < m0:
            assert not probe > C * mpmath.log(probe)


def test_solve_m_logm_rejects_nonpositive():
    with pytest.raises(DomainError):
        solve_m_logm(0)
    assert solve_m_logm(Enclosure(Fraction(1), Fraction(2))).m0 == 1

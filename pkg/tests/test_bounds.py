from fractions import Fraction

import pytest

from diophtuple import sequences as sq
from diophtuple.bounds import (
    BennettContext,
    approx_gap,
    bennett_context_for,
    bennett_gamma,
    bennett_lambda,
    chain,
    exact_constants,
    index_ratio_bound,
    m_below_n_sqrt3,
    min_n_for_sqrt3,
    relaxed_constants,
    round_down_sig,
    round_up,
    sqrt_enclosure,
)
from diophtuple.errors import DomainError
from diophtuple.pell import system_solutions


@pytest.mark.parametrize("a, gamma", [
    ((-3, -1, 0), Fraction(36, 5)),
    ((0, 1, 2), Fraction(4, 3)),
    ((-1, 0, 1), Fraction(4, 3)),
    ((0, 1, 5), Fraction(25 * 16, 9)),
    ((-5, -1, 0), Fraction(25 * 16, 9)),
])
def test_bennett_gamma(a, gamma):
    assert bennett_gamma(*a) == gamma


@pytest.mark.parametrize("a", [(0, 0, 1), (2, 1, 0), (1, 2, 3)])
def test_bennett_gamma_rejects(a):
    with pytest.raises(DomainError):
        bennett_gamma(*a)


def test_lambda_at_k6():
    lam = bennett_lambda(bennett_context_for(6))
    assert lam.below_two
    assert lam.value.contains(Fraction(175754873, 10**8)) or abs(float(lam.value) - 1.75754873) < 1e-8


def test_lambda_decreases_toward_three_halves():
    vals = [bennett_lambda(BennettContext(-3, -1, 0, N)).value for N in (10**12, 10**18, 10**40)]
    assert all(a.certainly_gt(b) for a, b in zip(vals, vals[1:]))
    assert all(v.certainly_gt(Fraction(3, 2)) for v in vals)


def test_lambda_at_precondition_boundary():
    lam = bennett_lambda(BennettContext(-3, -1, 0, 3**10))
    assert lam.value.width < Fraction(1, 10**20)
    with pytest.raises(DomainError):
        BennettContext(-3, -1, 0, 3**9)


def test_approx_gap_small_solution():
    g1, g2 = approx_gap(1, 10, 4, 7)
    assert 0 < g1.lower and g1.upper < 1
    assert abs(float(g1) - 0.01650) < 1e-5
    assert abs(float(g2) - 0.00948) < 1e-5


def test_approx_gap_rejects_non_solution():
    with pytest.raises(DomainError):
        approx_gap(1, 2, 1, 2)


@pytest.mark.parametrize("k", range(1, 6))
def test_gap_bound_on_all_small_solutions(k):
    sols = [(z, x, y) for z, x, y, _ in system_solutions(k, 10**6) if x > 0 and y > 0]
    assert sols
    bound_num = 1 - sq.d(k)
    for z, x, y in sols:
        g1, g2 = approx_gap(k, z, x, y)
        assert g1.certainly_lt(Fraction(bound_num, z * z))
        assert g2.certainly_lt(Fraction(bound_num, z * z))


def test_sqrt_enclosure():
    e = sqrt_enclosure(Fraction(2), 64)
    assert e.lower ** 2 < 2 < e.upper ** 2


def test_index_ratio():
    r6 = index_ratio_bound(6)
    assert r6.certainly_lt(Fraction(1072, 1000))
    r20 = index_ratio_bound(20)
    assert r20.certainly_lt(r6)
    seq_vals = [index_ratio_bound(k) for k in range(6, 16)]
    assert all(a.certainly_gt(b) for a, b in zip(seq_vals, seq_vals[1:]))


def test_m_below_n_sqrt3():
    r = Fraction(1072, 1000)
    assert m_below_n_sqrt3(r, 2)  # 3.216 < 3.464
    assert all(m_below_n_sqrt3(r, n) for n in range(2, 500))
    assert not m_below_n_sqrt3(r, 1)
    assert min_n_for_sqrt3(index_ratio_bound(6).upper) == 2


def test_rounding_helpers():
    assert round_up(Fraction(252720207692, 10**7), 2) == Fraction(2527203, 100)
    assert round_down_sig(Fraction(17, 28512), 2) == Fraction(59, 100000)


def test_constants_at_k6():
    ex = exact_constants(6)
    assert abs(float(ex.coefficient) - 25272.0207692) < 1e-6
    assert ex.c3 == Fraction(17, 28512)
    rel = relaxed_constants(ex)
    assert (rel.coefficient, rel.c2, rel.c3) == (Fraction(2527203, 100), Fraction(17, 40), Fraction(59, 100000))


def test_chain_default():
    res = chain(6)
    assert res.applicable
    assert res.gamma == Fraction(36, 5)
    assert res.decreasing
    assert abs(float(res.quartic_root_bound) - 20.477) < 0.01
    assert 87363 <= res.dk_bound <= 175817
    assert res.k_max == 5
    assert -sq.d(5) <= res.dk_bound < -sq.d(6)


def test_chain_stable_across_precision():
    runs = [chain(6, prec) for prec in (128, 256, 512)]
    assert {(r.dk_bound, r.k_max, r.applicable) for r in runs} == {(175798, 5, True)}
    for a, b in zip(runs, runs[1:]):
        assert b.quartic_root_bound.width <= a.quartic_root_bound.width
        assert a.quartic_root_bound.lower <= b.quartic_root_bound.lower
        assert b.quartic_root_bound.upper <= a.quartic_root_bound.upper


def test_chain_probe_applicability():
    # -3 d_4 = 18819 < 3^9 = 19683 < -3 d_5 = 262089
    res = chain(4)
    assert not res.applicable
    assert not res.premises["N = -3 d_k > 3^9"]
    assert chain(5).premises["N = -3 d_k > 3^9"]

import math
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from diophtuple import sequences as sq
from diophtuple.errors import DomainError
from diophtuple.pell import (
    PellProblem,
    class_bounds,
    e120_problem,
    e121_problem,
    e121_weighted_problem,
    fundamental_classes,
    fundamental_unit,
    nu_sequences,
    omega_sequences,
    seq_term,
    sequences_for,
    solve_below,
    system_solutions,
)


@pytest.mark.parametrize("D, unit", [(6, (5, 2)), (3, (2, 1)), (58242, (524177, 2172)), (2, (3, 2)), (13, (649, 180))])
def test_fundamental_unit(D, unit):
    u = fundamental_unit(D)
    assert (u.u, u.v) == unit
    assert u.u ** 2 - D * u.v ** 2 == 1


@given(st.integers(2, 2000).filter(lambda n: math.isqrt(n) ** 2 != n))
@settings(max_examples=80)
def test_fundamental_unit_is_minimal(D):
    u = fundamental_unit(D)
    assert u.u ** 2 - D * u.v ** 2 == 1
    # no smaller v solves the unit equation (checked up to a cap)
    for v in range(1, min(u.v, 20_000)):
        uu = 1 + D * v * v
        assert math.isqrt(uu) ** 2 != uu


@pytest.mark.parametrize("D", [0, 4, 49, -2])
def test_unit_rejects_squares(D):
    with pytest.raises(DomainError):
        fundamental_unit(D)


@pytest.mark.parametrize("D, N, classes", [
    (902, 452, [(122, -4), (122, 4)]),
    (2, 2, [(2, 1)]),
    (58242, 29122, [(23410, -97), (23410, 97)]),
    (6, 4, [(2, 0)]),
    (6, 5, []),
])
def test_fundamental_classes(D, N, classes):
    got = [(c.z0, c.x0) for c in fundamental_classes(PellProblem(D, N))]
    assert got == classes


def test_ambiguous_class_reported_once():
    # (2, 1) and (2, -1) give the same solutions in z^2 - 2x^2 = 2
    (cls,) = fundamental_classes(PellProblem(2, 2))
    assert cls.sign == "+"


@pytest.mark.parametrize("D, N, zmax, member", [
    (22, 12, 10**4, (10, 2)),
    (6, 4, 3, (2, 0)),
    (4182, 2092, 10**5, (1682, 26)),
])
def test_solve_below_examples(D, N, zmax, member):
    assert member in solve_below(PellProblem(D, N), zmax)


def test_solve_below_tiny():
    assert solve_below(PellProblem(6, 4), 3) == [(2, 0)]


def test_seq_term_small_instance():
    # the (2, 1) class given for this instance is not a solution: 4 - 6 != 4
    assert not PellProblem(6, 4).holds(2, 1)
    (s,) = sequences_for(PellProblem(6, 4))
    assert [seq_term(s, m) for m in range(3)] == [2, 10, 98]
    assert [z for z, _ in solve_below(PellProblem(6, 4), 100)] == [2, 10, 98]


@pytest.mark.parametrize("k", range(1, 9))
def test_nu_first_step(k):
    dk, sk = sq.d(k), sq.s(k)
    for s in nu_sequences(k):
        z0, x0 = s.cls.z0, s.cls.x0
        assert seq_term(s, 1) == (-2 * dk - 1) * z0 - 4 * sk * dk * x0
        assert seq_term(s, 0) == z0


@pytest.mark.parametrize("k", range(1, 9))
def test_units_closed_forms(k):
    dk = sq.d(k)
    u = fundamental_unit(-2 * dk)
    assert (u.u, u.v) == (-2 * dk - 1, 2 * sq.s(k))
    w = fundamental_unit(-6 * dk)
    assert (w.u, w.v) == (-6 * dk - 1, 2 * sq.t(k))


@pytest.mark.parametrize("k", range(1, 9))
def test_recurrences(k):
    dk = sq.d(k)
    for s in nu_sequences(k):
        z = s.z_terms(6)
        assert all(z[i + 2] == (-4 * dk - 2) * z[i + 1] - z[i] for i in range(4))
        assert all(a < b for a, b in zip(z, z[1:]))
    for s in omega_sequences(k):
        z = s.z_terms(6)
        assert all(z[i + 2] == (-12 * dk - 2) * z[i + 1] - z[i] for i in range(4))
        assert all(a < b for a, b in zip(z, z[1:]))


@pytest.mark.parametrize("k", range(1, 9))
def test_fundamentals_match_closed_forms(k):
    z = sq.c(k - 1) + 2
    # s_0 = 0 makes the two nu classes coincide at k = 1
    assert sorted((s.cls.z0, s.cls.x0) for s in nu_sequences(k)) == sorted({(z, -sq.s(k - 1)), (z, sq.s(k - 1))})
    assert sorted((s.cls.z0 // 3, s.cls.x0) for s in omega_sequences(k)) == [(z, -sq.t(k - 1)), (z, sq.t(k - 1))]


@pytest.mark.parametrize("k", range(1, 9))
def test_class_bounds_respected(k):
    for p in (e120_problem(k), e121_weighted_problem(k)):
        xb, zb = class_bounds(p)
        for c in fundamental_classes(p):
            assert abs(c.x0) <= xb and 1 <= c.z0 <= zb
    # the instance-specific bound for the first equation
    dk = sq.d(k)
    for c in fundamental_classes(e120_problem(k)):
        assert c.z0 ** 2 <= -dk * (1 - dk)


@pytest.mark.parametrize("k", range(0, 6))
def test_classes_are_exhaustive(k):
    """Class orbits cover every positive solution; only a +/- pair shares its start."""
    for p in (e120_problem(k), e121_problem(k)[0]):
        zmax = 10**6 if k < 5 else 10**7
        brute = solve_below(p, zmax)
        seqs = sequences_for(p)
        generated = Counter()
        for s in seqs:
            for z, x in s.pairs():
                if z > zmax:
                    break
                generated[(z, abs(x))] += 1
        assert sorted(generated) == brute
        shared = {(s.cls.z0, abs(s.cls.x0)) for s in seqs if s.sign != "0"}
        for key, count in generated.items():
            assert count == (2 if key in shared and len(seqs) == 2 else 1), key


@pytest.mark.parametrize("k", [2, 4])
def test_cleared_form_when_three_divides(k):
    p, scale = e121_problem(k)
    assert scale == 1 and p.D == -2 * sq.d(k) // 3


def test_system_solutions_k3():
    assert system_solutions(3, 10**4) == [(122, 4, 7, -33), (1682, 56, 97, -6273)]

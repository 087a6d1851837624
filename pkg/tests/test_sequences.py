import pytest
from hypothesis import given, strategies as st

from diophtuple import sequences as sq
from diophtuple.errors import DomainError
from diophtuple.quad_ring import is_square


@pytest.mark.parametrize("name, values", [
    ("d", [-1, -3, -33, -451, -6273, -87363]),
    ("c", [0, 8, 120, 1680, 23408, 326040]),
    ("s", [0, 1, 4, 15, 56, 209]),
    ("t", [1, 2, 7, 26, 97, 362, 1351]),
    ("xprime", [0, 1, 4, 15, 56]),
    ("yprime", [1, 2, 7, 26, 97]),
])
def test_first_terms(name, values):
    assert [sq.term(name, i) for i in range(len(values))] == values


def test_backward_terms():
    # the k = 0 cases read c_{-1}, s_{-1}, t_{-1}
    assert (sq.c(-1), sq.s(-1), sq.t(-1)) == (0, -1, 2)
    assert sq.d(-1) == sq.d(1)


@pytest.mark.parametrize("name", sorted(sq.FAMILIES))
def test_recurrence_matches_closed_form(name):
    fam = sq.family(name)
    assert fam.rec.terms(201) == [fam.closed_form(i) for i in range(201)]


def test_printed_c_constant_disagrees():
    # +6 gives 118, which is not even a candidate: 1*118 + 1 is not a square
    assert sq.PRINTED_C_RECURRENCE.terms(3) == [0, 8, 118]
    assert not is_square(118 + 1)
    assert is_square(120 + 1) and is_square(3 * 120 + 1)


def test_identities_to_100():
    rep = sq.check_identities(100)
    assert rep.ok, rep.first_failure
    assert len(rep.checked) == 13
    assert any("118" in n for n in rep.notes)


@pytest.mark.parametrize("l", range(0, 6))
def test_identity_spot_values(l):
    assert sq.d(l) * sq.d(l + 1) + 1 == (sq.c(l) + 2) ** 2


def test_identity_examples():
    assert sq.d(1) * sq.d(2) + 1 == 100 == (sq.c(1) + 2) ** 2
    assert 2 * sq.s(2) * sq.s(1) == 8 == sq.c(1)
    assert 3 * sq.d(1) + 1 == -8 == -2 * sq.t(1) ** 2


def test_monotone_to_200():
    cs = sq.family("c").rec.terms(201)
    ds = sq.family("d").rec.terms(201)
    assert all(a < b for a, b in zip(cs, cs[1:]))
    assert all(a > b for a, b in zip(ds, ds[1:]))


@given(st.integers(0, 200))
def test_pell_relation(k):
    assert sq.t(k) ** 2 - 3 * sq.s(k) ** 2 == 1


@given(st.integers(1, 60))
def test_d_index_roundtrip(l):
    assert sq.d_index(sq.d(l)) == l


@pytest.mark.parametrize("value", [-2, -34, 5, 0])
def test_d_index_misses(value):
    assert sq.d_index(value) is None


def test_unknown_family():
    with pytest.raises(DomainError):
        sq.family("e")


def test_check_identities_rejects_zero():
    with pytest.raises(DomainError):
        sq.check_identities(0)

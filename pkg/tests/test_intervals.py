from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from diophtuple.errors import PrecisionError
from diophtuple.intervals import CertifiedReal, Enclosure, context

PI = CertifiedReal(lambda ctx: ctx.pi, "pi")


def test_enclosure_brackets_pi():
    e = PI.enclose(128)
    assert e.contains(Fraction("3.14159265358979323846264338327950288419716939937510"))
    assert e.decimal().startswith("3.14159265358979323846")


def test_doubling_precision_shrinks_and_nests():
    encs = [PI.enclose(p) for p in (64, 128, 256, 512)]
    for a, b in zip(encs, encs[1:]):
        assert a.lower <= b.lower <= b.upper <= a.upper
        assert b.width < a.width


def test_decimal_only_prints_certified_digits():
    e = Enclosure(Fraction(12344, 1000), Fraction(12346, 1000))
    assert e.certified_digits() == 3
    assert e.decimal() == "12.3"
    assert Enclosure(Fraction(-1), Fraction(1)).decimal() == "0"


@pytest.mark.parametrize("value, text", [(Fraction(17, 40), "0.425"), (Fraction(7), "7"), (Fraction(2527203, 100), "25272.03")])
def test_exact_values_print_plainly(value, text):
    assert Enclosure.point(value).decimal() == text


def test_comparisons_are_strict():
    a = Enclosure(Fraction(1), Fraction(2))
    b = Enclosure(Fraction(2), Fraction(3))
    assert not a.certainly_lt(b)
    assert a.certainly_lt(Fraction(5, 2))
    assert b.certainly_gt(1)
    assert a.sign() == 1 and Enclosure(Fraction(-1), Fraction(1)).sign() == 0


def test_empty_enclosure_rejected():
    with pytest.raises(ValueError):
        Enclosure(Fraction(2), Fraction(1))


def test_refine():
    e = PI.refine(Fraction(1, 10**40))
    assert e.width < Fraction(1, 10**40)
    with pytest.raises(PrecisionError):
        CertifiedReal(lambda ctx: ctx.mpf([0, 1]), "wide").refine(Fraction(1, 2))


def test_context_rejects_tiny_precision():
    with pytest.raises(ValueError):
        context(8)


@given(st.fractions(min_value=-10**6, max_value=10**6))
def test_exact_real(x):
    e = CertifiedReal.exact(x).enclose(256)
    assert e.contains(x)
    assert e.width <= abs(x) / 2**250 + Fraction(1, 2**250)


def test_json_shape():
    j = PI.enclose(128).as_json()
    assert set(j) == {"decimal", "certified_digits"}
    assert j["certified_digits"] == len(j["decimal"].replace(".", ""))

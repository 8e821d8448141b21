from fractions import Fraction

import pytest

from adequate.algreal import algreal_new, real_add, real_mul
from adequate.backends import (
    AmbiguousEquality,
    PadicBackend,
    RatBackend,
    RealBackend,
    dedup,
    parse_backend,
)
from adequate.exactnum import Interval, Poly
from adequate.padic import padic_from_rat


def test_real_index_exact_matches():
    B = RealBackend()
    r = algreal_new(Poly((-2, 0, 1)), Interval(1, 2))
    vals = [r, Fraction(2), real_add(r, Fraction(1)), real_mul(r, Fraction(3))]
    idx = B.index(vals)
    assert idx.match("*", 0, 0) == 1
    assert idx.find(real_add(Fraction(1), r)) == 2
    assert idx.find(Fraction(3, 2)) is None
    # a near miss: 99/70 is within 1e-4 of sqrt(2) but not equal
    assert idx.find(Fraction(99, 70)) is None


def test_dedup_keeps_first():
    B = RatBackend()
    assert dedup(B, [Fraction(3), Fraction(1), Fraction(6, 2), Fraction(1)]) == [3, 1]


def test_padic_guarded_equality():
    B = PadicBackend(5, 32)
    a = padic_from_rat(Fraction(1, 3), 5, 32)
    assert B.eq(a, padic_from_rat(Fraction(1, 3), 5, 32))
    assert not B.eq(a, padic_from_rat(Fraction(2, 3), 5, 32))
    short = padic_from_rat(Fraction(1, 3), 5, 8)
    with pytest.raises(AmbiguousEquality):
        B.eq(a, short)


@pytest.mark.parametrize("text", ["rat", "real", "ff{p=3;k=2}", "padic{p=5;N=32}"])
def test_descriptor_round_trip(text):
    assert parse_backend(text).descriptor() == text


def test_unknown_backend():
    with pytest.raises(ValueError):
        parse_backend("complex")

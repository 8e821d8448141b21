import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adequate.algreal import (
    AlgReal,
    NegativeRadicandError,
    Ordering,
    ZeroOrMultipleRootsError,
    algreal_compare,
    algreal_new,
    algreal_sqrt,
    format_algreal,
    mobius_squash,
    parse_algreal,
    real_add,
    real_eq,
    real_inv,
    real_mul,
    span_value,
    vanishes_at,
)
from adequate.exactnum import Interval, Poly, isolate_real_roots

X2M2 = Poly((-2, 0, 1))


def sqrt2():
    return algreal_new(X2M2, Interval(1, 2))


def test_new():
    assert sqrt2().rational is None
    with pytest.raises(ZeroOrMultipleRootsError):
        algreal_new(X2M2, Interval(-2, 2))
    assert algreal_new(Poly((-1, 1)), Interval(0, 2)).rational == 1


def test_compare():
    r = sqrt2()
    assert algreal_compare(r, AlgReal.from_rational(Fraction(3, 2))) == Ordering.LT
    tight = algreal_new(X2M2, Interval(Fraction(7, 5), Fraction(3, 2)))
    assert algreal_compare(r, tight) == Ordering.EQ
    assert algreal_compare(r, algreal_new(X2M2, Interval(-2, -1))) == Ordering.GT


def test_vanishes_at():
    r = sqrt2()
    assert vanishes_at(r, X2M2)
    assert not vanishes_at(r, Poly((-1, 1)))
    assert vanishes_at(r, Poly((0, -2, 0, 1)))


def test_span_value():
    r = sqrt2()
    assert span_value(r, (0, 0, 1)).residue == Poly((2,))
    assert span_value(r, (1, 1)).residue == Poly((1, 1))
    assert span_value(r, (2, 0, -1)).is_zero()


def test_sqrt():
    assert real_eq(algreal_sqrt(AlgReal.from_rational(2)), sqrt2())
    assert algreal_sqrt(AlgReal.from_rational(0)).rational == 0
    q = algreal_sqrt(sqrt2())
    assert vanishes_at(q, Poly((-2, 0, 0, 0, 1)))
    assert real_eq(real_mul(q, q), sqrt2())
    with pytest.raises(NegativeRadicandError):
        algreal_sqrt(algreal_new(X2M2, Interval(-2, -1)))


def test_mobius():
    S = mobius_squash(Poly((-1, 1)), 0, 2)
    assert S(1) == 0 and len(isolate_real_roots(S)) == 2
    with pytest.raises(ValueError):
        mobius_squash(X2M2, 0, 1)
    S = mobius_squash(X2M2, 1, 2)
    isos = isolate_real_roots(S)
    assert len(isos) == 2
    x0 = algreal_new(S, isos[1])
    r = real_add(Fraction(1), real_inv(real_add(Fraction(1), real_mul(x0, x0))))
    assert real_eq(r, sqrt2())


def test_text_round_trip():
    r = sqrt2()
    assert real_eq(parse_algreal(format_algreal(r)), r)


def _random_algreal(rng):
    while True:
        P = Poly([rng.randint(-6, 6) for _ in range(rng.randint(2, 4))] + [1])
        isos = isolate_real_roots(P)
        if isos:
            return algreal_new(P, rng.choice(isos))


def test_total_order():
    rng = random.Random(3)
    for _ in range(40):
        a, b, c = (_random_algreal(rng) for _ in range(3))
        ab, ba = algreal_compare(a, b), algreal_compare(b, a)
        assert int(ab) == -int(ba)
        if ab == Ordering.LT and algreal_compare(b, c) == Ordering.LT:
            assert algreal_compare(a, c) == Ordering.LT
        assert vanishes_at(a, a.defining)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 50), st.integers(1, 50))
def test_sqrt_squares_back(n, d):
    a = AlgReal.from_rational(Fraction(n, d))
    s = algreal_sqrt(a)
    assert real_eq(real_mul(s, s), Fraction(n, d))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=4).filter(lambda c: c[-1] != 0))
def test_mobius_two_roots(cs):
    T = Poly(cs)
    isos = isolate_real_roots(T)
    for I in isos:
        if I.lo < I.hi and T(I.lo) != 0 and T(I.hi) != 0:
            S = mobius_squash(T, I.lo, I.hi)
            assert len(isolate_real_roots(S)) == 2

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adequate.exactnum import Poly
from adequate.padic import (
    HypothesisViolated,
    Indistinguishable,
    PadicApprox,
    PrecisionExhausted,
    format_padic,
    hensel_lift,
    is_cube_2adic,
    is_square,
    lemma2_witness,
    nth_roots,
    padic_add,
    padic_from_rat,
    padic_mul,
    padic_norm,
    padic_roots,
    parse_padic,
    separate,
)


def test_from_rat():
    a = padic_from_rat(Fraction(1, 3), 5, 4)
    assert a.val == 0 and a.digits == [2, 3, 1, 3]
    assert (3 * a.to_int_mod(4) - 1) % 5**4 == 0
    b = padic_from_rat(5, 5, 3)
    assert b.val == 1 and b.digits == [1, 0, 0]
    assert padic_from_rat(0, 7, 10).is_zero()


def test_cancellation_never_lies():
    a = padic_from_rat(Fraction(7, 9), 5, 10)
    try:
        s = padic_add(a, -a)
    except PrecisionExhausted:
        return
    assert s.is_zero()


def test_ultrametric_sum():
    a = padic_from_rat(3, 5, 8)
    b = padic_from_rat(50, 5, 8)
    s = padic_add(a, b)
    assert s.val == 0 and s.digits[:2] == a.digits[:2]


def test_norm():
    assert padic_norm(padic_from_rat(Fraction(1, 25), 5)) == 25
    assert padic_norm(PadicApprox.zero(5)) == 0
    assert padic_norm(padic_from_rat(2, 5)) == 1


rats = st.fractions(min_value=-1000, max_value=1000, max_denominator=1000).filter(lambda q: q != 0)


@settings(max_examples=100, deadline=None)
@given(rats, rats, st.sampled_from([2, 3, 5, 7]))
def test_norm_multiplicative(x, y, p):
    a, b = padic_from_rat(x, p), padic_from_rat(y, p)
    assert padic_norm(padic_mul(a, b)) == padic_norm(a) * padic_norm(b)


def test_hensel():
    y = hensel_lift(Poly((-6, 0, 1)), 1, 5, 6)
    assert (y.to_int_mod(6) ** 2 - 6) % 5**6 == 0
    i = hensel_lift(Poly((1, 0, 1)), 2, 5, 8)
    v = i.to_int_mod(8)
    assert i.digits[0] == 2 and (v * v + 1) % 5**8 == 0
    with pytest.raises(HypothesisViolated):
        hensel_lift(Poly((1, 0, 1)), 1, 5)


def test_roots():
    roots = padic_roots(Poly((1, 0, 1)), 5, 6)
    assert sorted(r.digits[0] for r in roots) == [2, 3]
    assert padic_roots(Poly((1, 0, 1)), 7) == []
    assert padic_roots(Poly((-5, 0, 1)), 5) == []


def test_roots_deep_valuation():
    roots = padic_roots(Poly((-6 * 5**8, 0, 1)), 5, 12)
    assert len(roots) == 2 and all(r.val == 4 for r in roots)


def test_squares():
    assert is_square(padic_from_rat(4, 5))
    assert not is_square(padic_from_rat(5, 5))
    rng = random.Random(1)
    for _ in range(50):
        x = Fraction(rng.randint(1, 999), rng.randint(1, 999))
        for p in (2, 3, 5):
            assert is_square(padic_from_rat(x * x, p))


def test_cubes():
    assert is_cube_2adic(padic_from_rat(8, 2))
    assert not is_cube_2adic(padic_from_rat(2, 2))
    for u in (1, 3, 5, 7, 11, Fraction(5, 3)):
        w = padic_from_rat(u, 2)
        assert is_cube_2adic(w)
        (y,) = nth_roots(w, 3)
        assert (y * y * y - w).is_zero()


def test_lemma2_witness():
    y = lemma2_witness(padic_from_rat(1, 3))
    assert (y * y - 4).is_zero()
    assert y.to_int_mod(1) == 1  # the -2 branch, lifted from 1
    for p in (2, 3, 5):
        assert (lemma2_witness(padic_from_rat(0, p)) - 1).is_zero()
    y = lemma2_witness(padic_from_rat(1, 2))
    assert (y * y * y - 3).is_zero()


def test_separate():
    i2, i3 = sorted(padic_roots(Poly((1, 0, 1)), 5), key=lambda r: r.digits[0])
    assert separate(i2, i3) == (0, 2)
    assert separate(padic_from_rat(1, 5), padic_from_rat(26, 5)) == (2, 1)
    with pytest.raises(Indistinguishable):
        separate(padic_from_rat(3, 5, 6), padic_from_rat(3 + 5**7, 5, 6))


def test_text_round_trip():
    for q, p in ((Fraction(1, 3), 5), (Fraction(-7, 4), 2), (Fraction(10), 5)):
        a = padic_from_rat(q, p, 12)
        b = parse_padic(format_padic(a))
        assert b.p == p and b.val == a.val and b.digits == a.digits


@settings(max_examples=80, deadline=None)
@given(rats, rats, st.sampled_from([2, 3, 5]))
def test_ultrametric(x, y, p):
    a, b = padic_from_rat(x, p), padic_from_rat(y, p)
    if x + y == 0:
        return
    na, nb, ns = padic_norm(a), padic_norm(b), padic_norm(padic_add(a, b))
    assert ns <= max(na, nb)
    if na != nb:
        assert ns == max(na, nb)


def test_hensel_stable_under_precision():
    for F, a0, p in ((Poly((-6, 0, 1)), 1, 5), (Poly((1, 0, 1)), 3, 5), (Poly((-2, 0, 0, 1)), 3, 5)):
        lo, hi = hensel_lift(F, a0, p, 8), hensel_lift(F, a0, p, 20)
        assert hi.digits[:8] == lo.digits[:8]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=1, max_size=3), st.sampled_from([3, 5, 7]))
def test_root_count_matches_brute_force(low, p):
    """Simple roots in Z_p correspond to residues mod p with F(a) = 0 and F'(a) != 0."""
    P = Poly(low + [1])
    disc_ok = all((P.derivative()(a) % p) != 0 for a in range(p) if P(a) % p == 0)
    if not disc_ok:
        return
    roots = padic_roots(P, p, 12)
    integral = [r for r in roots if r.val >= 0]
    brute = sorted(a for a in range(p) if P(a) % p == 0)
    assert sorted(r.to_int_mod(1) for r in integral) == brute
    for r in roots:
        v = r.to_int_mod(6) if r.val >= 0 else None
        if v is not None:
            assert P(v) % p**6 == 0

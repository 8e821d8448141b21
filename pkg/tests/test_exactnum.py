from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adequate.exactnum import (
    Interval,
    Poly,
    cauchy_root_bound,
    format_poly,
    isolate_real_roots,
    parse_poly,
    poly_derivative,
    poly_eval,
    poly_gcd,
    rational_roots,
    refine_interval,
    squarefree_part,
    sturm_count,
)

X2M2 = Poly((-2, 0, 1))
X2P1 = Poly((1, 0, 1))


def test_eval():
    assert poly_eval(X2M2, Fraction(3, 2)) == Fraction(1, 4)
    assert poly_eval(Poly(), 5) == 0
    assert poly_eval(X2P1, 0) == 1


def test_derivative():
    assert poly_derivative(X2P1) == Poly((0, 2))
    assert poly_derivative(Poly((7,))) == Poly()
    # y^3 - 1 - 2x^3 at x = 1, viewed in y: derivative 3y^2, equal to 3 at y = 1
    F = Poly((-3, 0, 0, 1))
    assert poly_derivative(F) == Poly((0, 0, 3))
    assert poly_eval(poly_derivative(F), 1) == 3


def test_gcd():
    assert poly_gcd(X2M2, Poly((0, -2, 0, 1))) == X2M2
    assert poly_gcd(X2P1, X2M2) == Poly((1,))
    P = Poly((4, 0, -2))
    assert poly_gcd(P, P) == P.primitive() or poly_gcd(P, P) == -P.primitive()


def test_squarefree():
    assert squarefree_part(Poly((1, -2, 1))) == Poly((-1, 1))
    assert squarefree_part(X2M2) == X2M2
    P = X2M2 * Poly((1, -2, 1))
    assert squarefree_part(P) == X2M2 * Poly((-1, 1))


def test_sturm():
    assert sturm_count(X2M2, Interval(1, 2)) == 1
    assert sturm_count(X2P1, Interval(-10, 10)) == 0
    assert sturm_count(X2M2, Interval(-2, 2)) == 2


def test_isolate():
    isos = isolate_real_roots(X2M2)
    assert len(isos) == 2
    assert -2 <= isos[0].lo and isos[0].hi <= -1
    assert 1 <= isos[1].lo and isos[1].hi <= 2
    assert isolate_real_roots(X2P1) == []
    cubic = Poly((0, -1, 0, 1))
    isos = isolate_real_roots(cubic)
    assert len(isos) == 3
    for I, r in zip(isos, (-1, 0, 1)):
        assert I.lo <= r <= I.hi
    assert isos[0].hi < isos[1].lo and isos[1].hi < isos[2].lo


def test_cauchy():
    assert cauchy_root_bound(X2M2) == 3
    assert cauchy_root_bound(X2P1) == 2
    assert cauchy_root_bound(Poly((-1, 0, 2))) == Fraction(3, 2)


def test_refine():
    I = refine_interval(X2M2, Interval(1, 2), Fraction(1, 8))
    assert I.width <= Fraction(1, 8) and I.lo * I.lo <= 2 <= I.hi * I.hi
    I = refine_interval(Poly((-1, 1)), Interval(0, 2), Fraction(1, 4))
    assert I.lo <= 1 <= I.hi
    J = Interval(1, 2)
    assert refine_interval(X2M2, J, 5) == J


def test_text_round_trip():
    for s in ("[-2,0,1]", "[1/2,0,-3]", "[0]"):
        P = parse_poly(s)
        assert parse_poly(format_poly(P)) == P


def test_rational_roots():
    P = Poly((-1, 1)) * Poly((3, -2)) * X2P1
    assert sorted(rational_roots(P)) == [1, Fraction(3, 2)]


coeff_lists = st.lists(st.integers(-20, 20), min_size=2, max_size=6).filter(lambda c: c[-1] != 0)


@settings(max_examples=80, deadline=None)
@given(coeff_lists)
def test_isolation_matches_sturm(cs):
    P = Poly(cs)
    isos = isolate_real_roots(P)
    B = cauchy_root_bound(P)
    assert len(isos) == sturm_count(squarefree_part(P), Interval(-B, B))
    for I in isos:
        assert sturm_count(squarefree_part(P), I) == 1


@settings(max_examples=80, deadline=None)
@given(coeff_lists, coeff_lists)
def test_gcd_divides(a, b):
    A, B = Poly(a), Poly(b)
    G = poly_gcd(A, B)
    for P in (A, B):
        assert not P % G


def test_bad_poly_text():
    with pytest.raises(ValueError):
        parse_poly("[1,,2]")

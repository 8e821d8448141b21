from fractions import Fraction
from itertools import combinations

import pytest

from adequate.algreal import algreal_new, real_eq, real_neg
from adequate.backends import FFBackend, RatBackend, RealBackend
from adequate.certificate import Certificate, construct_padic, construct_real, select_root
from adequate.exactnum import Interval, Poly
from adequate.finitefield import ff_prime_subfield, field
from adequate.padic import padic_roots, parse_padic
from adequate.verify import (
    ADEQUATE,
    INCONCLUSIVE,
    NOT_ADEQUATE,
    NoDerivation,
    enumerate_Kn_ff,
    extract_target_poly,
    satisfies,
    verify,
    verify_ff,
    verify_padic,
    verify_rat,
    verify_real,
)

SQRT2_POLY = Poly((-2, 0, 1))


def ff_cert(p, k, codes):
    F = field(p, k)
    return Certificate.build(FFBackend(F), [F.elem(c) for c in codes])


def test_verify_ff_examples():
    assert verify_ff(ff_cert(2, 1, [0])).outcome == ADEQUATE
    assert verify_ff(ff_cert(5, 1, [2, 1])).outcome == ADEQUATE
    res = verify_ff(ff_cert(2, 2, [2]))
    assert res.outcome == NOT_ADEQUATE and res.witness[1].code != 2


def test_enumerate_Kn():
    codes = lambda F, n: {e.code for e in enumerate_Kn_ff(F, n)}
    assert codes(field(2), 1) == {0, 1}
    assert codes(field(2, 2), 3) == {0, 1}
    assert codes(field(5), 1) == {0, 1}


@pytest.mark.parametrize("p,k,n", [(2, 2, 2), (2, 3, 2), (3, 2, 2), (5, 1, 2)])
def test_Kn_within_prime_subfield(p, k, n):
    F = field(p, k)
    assert {e.code for e in enumerate_Kn_ff(F, n)} <= {e.code for e in ff_prime_subfield(F)}


def test_witnesses_replay():
    F = field(2, 3)
    B = FFBackend(F)
    for t in range(F.q):
        for rest in combinations([c for c in range(F.q) if c != t], 2):
            c = Certificate.build(B, [F.elem(t)] + [F.elem(r) for r in rest])
            res = verify_ff(c)
            if res.outcome == NOT_ADEQUATE:
                assert satisfies(B, c.relations, res.witness)
                assert res.witness[1] != c.target


def test_extract_target_poly():
    c = construct_real(algreal_new(SQRT2_POLY, Interval(1, 2)))
    T = extract_target_poly(c)
    assert T.degree == 2 and T.primitive() in (SQRT2_POLY, -SQRT2_POLY)
    T = extract_target_poly(Certificate.build(RatBackend(), [Fraction(2), Fraction(1)]))
    assert T.primitive() in (Poly((-2, 1)), Poly((2, -1)))
    r = algreal_new(Poly((-2, 0, 0, 1)), Interval(1, 2))
    with pytest.raises(NoDerivation):
        extract_target_poly(Certificate.build(RealBackend(), [r]))


def test_verify_real():
    c = construct_real(algreal_new(SQRT2_POLY, Interval(1, 2)))
    res = verify_real(c)
    assert res.outcome == ADEQUATE
    assert any(ex.kind == "square" and real_eq(ex.candidate, real_neg(c.target)) for ex in res.exclusions)
    lone = algreal_new(Poly((-2, 0, 0, 1)), Interval(1, 2))
    assert verify_real(Certificate.build(RealBackend(), [lone])).outcome == INCONCLUSIVE


def test_verify_padic():
    P = Poly((1, 0, 1))
    r = select_root(padic_roots(P, 5), 2, 5)
    c = construct_padic(P, r)
    assert verify_padic(c).outcome == ADEQUATE
    single = construct_padic(Poly((-3, 1)), select_root(padic_roots(Poly((-3, 1)), 5), 3, 5))
    res = verify_padic(single)
    assert res.outcome == ADEQUATE and not res.exclusions
    y = parse_padic(c.trace["gadget2"].split("y:", 1)[1])
    drop = [c.index_of(y), c.index_of(y * y)]
    assert None not in drop
    stripped = c.without(drop)
    res = verify_padic(stripped)
    assert res.outcome == NOT_ADEQUATE
    assert res.witness[1].to_int_mod(1) == 3
    assert satisfies(c.backend, stripped.relations, res.witness)


def test_verify_rat():
    Q = RatBackend()
    assert verify_rat(Certificate.build(Q, [Fraction(2), Fraction(1)])).outcome == ADEQUATE
    half = Certificate.build(Q, [Fraction(1, 2), Fraction(1), Fraction(2)])
    assert verify_rat(half).outcome == ADEQUATE
    assert verify_rat(Certificate.build(Q, [Fraction(5)])).outcome == INCONCLUSIVE


def test_dispatch_and_exit_codes():
    res = verify(ff_cert(2, 2, [2]))
    assert res.exit_code == 1
    assert verify(ff_cert(2, 1, [1])).exit_code == 0
    assert verify(Certificate.build(RatBackend(), [Fraction(5)])).exit_code == 2


def test_deletion_fuzz_and_determinism():
    import random

    c = construct_real(algreal_new(SQRT2_POLY, Interval(1, 2)))
    rng = random.Random(11)
    for _ in range(25):
        drop = rng.sample(range(2, c.n + 1), rng.randint(1, 3))
        d = c.without(drop)
        res = verify(d)
        again = verify(d)
        assert res.outcome == again.outcome
        if res.outcome == NOT_ADEQUATE:
            assert satisfies(d.backend, d.relations, res.witness)
            assert not real_eq(res.witness[1], d.target)
            assert all(real_eq(res.witness[i], again.witness[i]) for i in res.witness)

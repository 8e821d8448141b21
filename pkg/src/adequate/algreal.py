"""Exact real algebraic numbers.

An :class:`AlgReal` is a square-free primitive integer polynomial together
with a rational interval in which it has exactly one real root.  Order and
equality are decided exactly: intervals are refined until disjoint, and an
overlap is settled by looking for a root of the gcd of the two defining
polynomials.

Two value kinds sit on top of it:

* :class:`AlgExpr` is a polynomial expression in a fixed algebraic number,
  stored as its residue modulo the defining polynomial.  Arithmetic inside
  one such field is plain residue arithmetic, which keeps large span sets
  cheap.
* Mixed arithmetic between unrelated numbers goes through resultants
  (``alg_add``, ``alg_mul`` and friends).  Nothing here computes minimal
  polynomials; every equality test is gcd plus Sturm localization.

The ``real_*`` helpers accept any of ``Fraction``, ``AlgExpr`` or
``AlgReal`` and return the simplest kind that represents the result.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

from .exactnum import (
    EndpointRootError,
    Interval,
    Poly,
    eliminate,
    format_poly,
    parse_poly,
    parse_rat,
    poly_gcd,
    squarefree_part,
    sturm_count,
)


class ZeroOrMultipleRootsError(ValueError):
    pass


class NegativeRadicandError(ValueError):
    pass


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _sign(v) -> int:
    return (v > 0) - (v < 0)


class AlgReal:
    """A real root of ``defining`` isolated by ``iso``.

    ``iso`` is the interval the number was built with and is what gets
    written to files.  Refinements are cached privately; they narrow the
    enclosure but never change the value.
    """

    __slots__ = ("defining", "iso", "_lo", "_hi", "_rational")

    def __init__(self, defining: Poly, iso: Interval):
        self.defining = defining
        self.iso = iso
        self._lo, self._hi = iso.lo, iso.hi
        self._rational = None
        if defining.degree == 1:
            self._rational = Fraction(-defining.coeffs[0], defining.coeffs[1])
            self._lo = self._hi = self._rational

    @classmethod
    def from_rational(cls, q) -> "AlgReal":
        q = Fraction(q)
        return cls(Poly((-q.numerator, q.denominator)), Interval(q - 1, q + 1))

    @property
    def rational(self):
        """The value as a Fraction when it is rational, else None."""
        return self._rational

    def __repr__(self):
        return format_algreal(self)

    def enclosure(self, width=None) -> tuple:
        """(lo, hi) with lo <= value <= hi, at most ``width`` wide."""
        if self._rational is not None:
            return self._rational, self._rational
        if width is not None:
            width = Fraction(width)
            P = self.defining
            lo, hi = self._lo, self._hi
            slo = _sign(P(lo))
            while hi - lo > width:
                m = (lo + hi) / 2
                sm = _sign(P(m))
                if sm == 0:
                    self._lo = self._hi = m
                    self._rational = m
                    return m, m
                if sm == slo:
                    lo = m
                else:
                    hi = m
            self._lo, self._hi = lo, hi
        return self._lo, self._hi

    def _halve(self):
        lo, hi = self.enclosure()
        self.enclosure((hi - lo) / 2)

    def __neg__(self):
        return alg_neg(self)


def algreal_new(P: Poly, I: Interval) -> AlgReal:
    if not P or P.degree < 1:
        raise ZeroOrMultipleRootsError("defining polynomial must have degree >= 1")
    Q = squarefree_part(P)
    if Q(I.lo) == 0 or Q(I.hi) == 0:
        raise EndpointRootError(f"endpoint of {I} is a root of {format_poly(P)}")
    n = sturm_count(Q, I)
    if n != 1:
        raise ZeroOrMultipleRootsError(f"{format_poly(P)} has {n} roots in {I}, expected 1")
    return AlgReal(Q, I)


def format_algreal(a: AlgReal) -> str:
    return f"alg{{poly={format_poly(a.defining)};iso={a.iso}}}"


def parse_algreal(text: str) -> AlgReal:
    s = text.strip()
    if not (s.startswith("alg{") and s.endswith("}")):
        raise ValueError(f"malformed algebraic number {text!r}")
    fields = dict(part.split("=", 1) for part in s[4:-1].split(";"))
    P = parse_poly(fields["poly"])
    iso = fields["iso"].strip()
    if not (iso.startswith("[") and iso.endswith("]")) or iso.count(",") != 1:
        raise ValueError(f"malformed isolating interval {iso!r}")
    lo, hi = iso[1:-1].split(",")
    return algreal_new(P, Interval(parse_rat(lo), parse_rat(hi)))


# ordering -----------------------------------------------------------------

def algreal_compare(a: AlgReal, b: AlgReal) -> Ordering:
    if a is b:
        return Ordering.EQ
    if a._rational is not None and b._rational is not None:
        return Ordering(_sign(a._rational - b._rational))
    g = None
    while True:
        al, ah = a.enclosure()
        bl, bh = b.enclosure()
        if ah < bl or (ah == bl and (a._rational is None or b._rational is None)):
            return Ordering.LT
        if bh < al or (bh == al and (a._rational is None or b._rational is None)):
            return Ordering.GT
        if g is None:
            g = poly_gcd(a.defining, b.defining)
        if g.degree >= 1:
            lo, hi = max(al, bl), min(ah, bh)
            if lo == hi:
                if g(lo) == 0:
                    return Ordering.EQ
            elif g(lo) != 0 and g(hi) != 0 and sturm_count(g, Interval(lo, hi)) >= 1:
                return Ordering.EQ
        a._halve()
        b._halve()


def algreal_sign(a: AlgReal) -> int:
    if a._rational is not None:
        return _sign(a._rational)
    if a.defining(0) == 0:
        lo, hi = a.enclosure()
        if lo < 0 < hi:
            return 0
    while True:
        lo, hi = a.enclosure()
        if lo >= 0:
            return 1
        if hi <= 0:
            return -1
        a._halve()


def vanishes_at(a: AlgReal, c: Poly) -> bool:
    """Exactly decide c(a) == 0."""
    if not c:
        return True
    if a._rational is not None:
        return c(a._rational) == 0
    g = poly_gcd(c, a.defining)
    if g.degree < 1:
        return False
    lo, hi = a.enclosure()
    return sturm_count(g, Interval(lo, hi)) >= 1


# resultant arithmetic -----------------------------------------------------

def _strip_x(P: Poly) -> Poly:
    c = list(P.coeffs)
    while c and c[0] == 0:
        c.pop(0)
    return Poly(c)


def _locate(S: Poly, bounds, refine) -> AlgReal:
    """Isolate the root of S inside ``bounds()``, refining inputs as needed."""
    S = squarefree_part(S)
    while True:
        lo, hi = bounds()
        if lo == hi:
            if S(lo) == 0:
                return AlgReal.from_rational(lo)
        elif S(lo) != 0 and S(hi) != 0 and sturm_count(S, Interval(lo, hi)) == 1:
            out = AlgReal(S, _coarsen(S, lo, hi))
            if out._rational is None:
                out._lo, out._hi = lo, hi
            return out
        refine()


def _coarsen(S: Poly, lo: Fraction, hi: Fraction) -> Interval:
    """The widest dyadic interval of the form [m/2^k, (m+j)/2^k] around
    [lo, hi] that still isolates the same root; keeps text forms short."""
    for k in range(0, 160):
        d = 2**k
        L = Fraction(math.floor(lo * d), d)
        H = Fraction(math.ceil(hi * d), d)
        if S(L) != 0 and S(H) != 0 and sturm_count(S, Interval(L, H)) == 1:
            return Interval(L, H)
    return Interval(lo, hi)


def alg_neg(a: AlgReal) -> AlgReal:
    out = AlgReal(a.defining.negate_x().primitive(), Interval(-a.iso.hi, -a.iso.lo))
    lo, hi = a.enclosure()
    if out._rational is None:
        out._lo, out._hi = -hi, -lo
    return out


def _shift(a: AlgReal, q: Fraction) -> AlgReal:
    S = a.defining.compose(Poly((-q, 1))).primitive()
    out = AlgReal(S, Interval(a.iso.lo + q, a.iso.hi + q))
    lo, hi = a.enclosure()
    if out._rational is None:
        out._lo, out._hi = lo + q, hi + q
    return out


def _scale(a: AlgReal, q: Fraction) -> AlgReal:
    """q * a for a nonzero rational q."""
    S = Poly(c / q**i for i, c in enumerate(a.defining.coeffs)).primitive()
    lo, hi = sorted((a.iso.lo * q, a.iso.hi * q))
    out = AlgReal(S, Interval(lo, hi))
    elo, ehi = sorted((a.enclosure()[0] * q, a.enclosure()[1] * q))
    if out._rational is None:
        out._lo, out._hi = elo, ehi
    return out


def alg_add(a: AlgReal, b: AlgReal) -> AlgReal:
    if a._rational is not None and b._rational is not None:
        return AlgReal.from_rational(a._rational + b._rational)
    if a._rational is not None:
        return _shift(b, a._rational)
    if b._rational is not None:
        return _shift(a, b._rational)
    A, B = a.defining, b.defining

    def inner(x0):
        return B.compose(Poly((x0, -1))).coeffs

    S = eliminate(A, inner, A.degree * B.degree)

    def bounds():
        al, ah = a.enclosure()
        bl, bh = b.enclosure()
        return al + bl, ah + bh

    def refine():
        a._halve()
        b._halve()

    return _locate(S, bounds, refine)


def _imul(x, y):
    p = (x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1])
    return min(p), max(p)


def alg_mul(a: AlgReal, b: AlgReal) -> AlgReal:
    if a._rational is not None and b._rational is not None:
        return AlgReal.from_rational(a._rational * b._rational)
    for u, v in ((a, b), (b, a)):
        if u._rational is not None:
            if u._rational == 0:
                return AlgReal.from_rational(0)
            return _scale(v, u._rational)
    if algreal_sign(a) == 0 or algreal_sign(b) == 0:
        return AlgReal.from_rational(0)
    A, B = _strip_x(a.defining), _strip_x(b.defining)
    dB = B.degree

    def inner(x0):
        return [B.coeffs[dB - k] * x0 ** (dB - k) for k in range(dB + 1)]

    S = eliminate(A, inner, A.degree * dB)

    def bounds():
        return _imul(a.enclosure(), b.enclosure())

    def refine():
        a._halve()
        b._halve()

    return _locate(S, bounds, refine)


def alg_square(a: AlgReal) -> AlgReal:
    if a._rational is not None:
        return AlgReal.from_rational(a._rational**2)
    S = eliminate(a.defining, lambda x0: (x0, 0, -1), a.defining.degree)

    def bounds():
        lo, hi = a.enclosure()
        if lo >= 0:
            return lo * lo, hi * hi
        if hi <= 0:
            return hi * hi, lo * lo
        return Fraction(0), max(lo * lo, hi * hi)

    return _locate(S, bounds, a._halve)


def alg_inv(a: AlgReal) -> AlgReal:
    if a._rational is not None:
        if a._rational == 0:
            raise ZeroDivisionError("inverse of zero")
        return AlgReal.from_rational(1 / a._rational)
    if algreal_sign(a) == 0:
        raise ZeroDivisionError("inverse of zero")
    S = _strip_x(a.defining).reverse()

    def bounds():
        lo, hi = a.enclosure()
        while lo <= 0 <= hi:
            a._halve()
            lo, hi = a.enclosure()
        return 1 / hi, 1 / lo

    return _locate(S, bounds, a._halve)


def _iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def _root_down(v: Fraction, k: int, bits: int) -> Fraction:
    if v < 0:
        return -_root_up(-v, k, bits)
    scale = 1 << (k * bits)
    return Fraction(_iroot(math.floor(v * scale), k), 1 << bits)


def _root_up(v: Fraction, k: int, bits: int) -> Fraction:
    if v < 0:
        return -_root_down(-v, k, bits)
    scale = 1 << (k * bits)
    return Fraction(_iroot(math.ceil(v * scale), k) + 1, 1 << bits)


def _exact_root(q: Fraction, k: int):
    if q < 0 and k % 2 == 0:
        return None
    s = -1 if q < 0 else 1
    n, d = abs(q.numerator), q.denominator
    rn, rd = _iroot(n, k), _iroot(d, k)
    if rn**k == n and rd**k == d:
        return Fraction(s * rn, rd)
    return None


def alg_root(a: AlgReal, k: int) -> AlgReal:
    """The real k-th root (k = 2: the nonnegative square root)."""
    sgn = algreal_sign(a)
    if k % 2 == 0 and sgn < 0:
        raise NegativeRadicandError("square root of a negative number")
    if sgn == 0:
        return AlgReal.from_rational(0)
    if a._rational is not None:
        r = _exact_root(a._rational, k)
        if r is not None:
            return AlgReal.from_rational(r)
    S = a.defining.substitute_power(k)
    bits = [8]

    def bounds():
        lo, hi = a.enclosure()
        while sgn > 0 and lo <= 0 or sgn < 0 and hi >= 0:
            a._halve()
            lo, hi = a.enclosure()
        return _root_down(lo, k, bits[0]), _root_up(hi, k, bits[0])

    def refine():
        a._halve()
        bits[0] += 4

    return _locate(S, bounds, refine)


def algreal_sqrt(a: AlgReal) -> AlgReal:
    return alg_root(a, 2)


# expressions in a fixed algebraic number ----------------------------------

def _poly_enclosure(P: Poly, lo, hi) -> tuple:
    """Interval Horner evaluation of P over [lo, hi]."""
    acc = (Fraction(0), Fraction(0))
    for c in reversed(P.coeffs):
        acc = _imul(acc, (lo, hi))
        acc = (acc[0] + c, acc[1] + c)
    return acc


class AlgExpr:
    """A polynomial expression in ``base``, kept reduced modulo its
    defining polynomial."""

    __slots__ = ("base", "residue")

    def __init__(self, base: AlgReal, residue: Poly):
        self.base = base
        if residue.degree >= base.defining.degree:
            residue = residue % base.defining
        self.residue = residue

    def __repr__(self):
        return f"AlgExpr({format_poly(self.residue)} @ {format_algreal(self.base)})"

    def same_field(self, other: "AlgExpr") -> bool:
        return self.base is other.base or (
            self.base.defining == other.base.defining and self.base.iso == other.base.iso
        )

    def is_zero(self) -> bool:
        return vanishes_at(self.base, self.residue)

    def enclosure(self, width=None) -> tuple:
        lo, hi = _poly_enclosure(self.residue, *self.base.enclosure())
        if width is None:
            return lo, hi
        width = Fraction(width)
        while hi - lo > width:
            self.base._halve()
            lo, hi = _poly_enclosure(self.residue, *self.base.enclosure())
        return lo, hi

    def inverse_residue(self):
        """Residue of 1/self if the residue is a unit modulo the defining
        polynomial, else None."""
        A, B = self.base.defining, self.residue
        r0, r1 = A, B
        s0, s1 = Poly(), Poly.const(1)
        while r1:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        if r0.degree != 0:
            return None
        return s0 * (1 / Fraction(r0.coeffs[0]))

    def to_algreal(self) -> AlgReal:
        R = self.residue
        if R.degree <= 0:
            return AlgReal.from_rational(R[0])
        den = R.content().denominator
        N = Poly(c * den for c in R.coeffs)
        base = self.base

        def inner(x0):
            return [den * x0 - N.coeffs[0]] + [-c for c in N.coeffs[1:]]

        S = eliminate(base.defining, inner, base.defining.degree)
        return _locate(S, self.enclosure, base._halve)


def span_value(r: AlgReal, b) -> AlgExpr:
    """sum_i b_i r^i in residue form."""
    return AlgExpr(r, Poly(b))


# mixed real arithmetic ------------------------------------------------------
#
# A "real" here is a Fraction, an AlgExpr, or an AlgReal.

def real_simplify(v):
    if isinstance(v, AlgExpr):
        if v.residue.degree <= 0:
            return Fraction(v.residue[0])
        return v
    if isinstance(v, AlgReal):
        if v.rational is not None:
            return v.rational
        return v
    return Fraction(v)


def to_algreal(v) -> AlgReal:
    if isinstance(v, AlgReal):
        return v
    if isinstance(v, AlgExpr):
        return v.to_algreal()
    return AlgReal.from_rational(v)


def real_enclosure(v, width=None) -> tuple:
    if isinstance(v, (AlgReal, AlgExpr)):
        return v.enclosure(width)
    q = Fraction(v)
    return q, q


def _as_expr(v, base: AlgReal):
    if isinstance(v, AlgExpr):
        return v.residue
    return Poly.const(Fraction(v))


def _common_base(a, b):
    ea = a if isinstance(a, AlgExpr) else None
    eb = b if isinstance(b, AlgExpr) else None
    if isinstance(a, AlgReal) or isinstance(b, AlgReal):
        return None
    if ea is not None and eb is not None:
        return ea.base if ea.same_field(eb) else None
    return (ea or eb).base if (ea or eb) is not None else None


def real_add(a, b):
    if not isinstance(a, (AlgExpr, AlgReal)) and not isinstance(b, (AlgExpr, AlgReal)):
        return Fraction(a) + Fraction(b)
    base = _common_base(a, b)
    if base is not None:
        return real_simplify(AlgExpr(base, _as_expr(a, base) + _as_expr(b, base)))
    a, b = real_simplify(a), real_simplify(b)
    if isinstance(b, Fraction):
        a, b = b, a
    if isinstance(a, Fraction):
        return b if a == 0 else real_simplify(_shift(to_algreal(b), a))
    return real_simplify(alg_add(to_algreal(a), to_algreal(b)))


def real_neg(a):
    if isinstance(a, AlgExpr):
        return AlgExpr(a.base, -a.residue)
    if isinstance(a, AlgReal):
        return real_simplify(alg_neg(a))
    return -Fraction(a)


def real_sub(a, b):
    return real_add(a, real_neg(b))


def real_mul(a, b):
    if not isinstance(a, (AlgExpr, AlgReal)) and not isinstance(b, (AlgExpr, AlgReal)):
        return Fraction(a) * Fraction(b)
    base = _common_base(a, b)
    if base is not None:
        return real_simplify(AlgExpr(base, _as_expr(a, base) * _as_expr(b, base)))
    if a is b:
        return real_simplify(alg_square(to_algreal(a)))
    a, b = real_simplify(a), real_simplify(b)
    if isinstance(b, Fraction):
        a, b = b, a
    if isinstance(a, Fraction):
        if a == 0:
            return Fraction(0)
        return b if a == 1 else real_simplify(_scale(to_algreal(b), a))
    return real_simplify(alg_mul(to_algreal(a), to_algreal(b)))


def real_inv(a):
    if isinstance(a, AlgExpr):
        inv = a.inverse_residue()
        if inv is not None:
            return real_simplify(AlgExpr(a.base, inv))
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return real_simplify(alg_inv(a.to_algreal()))
    if isinstance(a, AlgReal):
        return real_simplify(alg_inv(a))
    return 1 / Fraction(a)


def real_div(a, b):
    return real_mul(a, real_inv(b))


def real_sign(a) -> int:
    if isinstance(a, AlgExpr):
        if a.is_zero():
            return 0
        while True:
            lo, hi = a.enclosure()
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            a.base._halve()
    if isinstance(a, AlgReal):
        return algreal_sign(a)
    return _sign(Fraction(a))


def real_is_zero(a) -> bool:
    return real_sign(a) == 0


def real_eq(a, b) -> bool:
    if not isinstance(a, (AlgExpr, AlgReal)) and not isinstance(b, (AlgExpr, AlgReal)):
        return Fraction(a) == Fraction(b)
    base = _common_base(a, b)
    if base is not None:
        return AlgExpr(base, _as_expr(a, base) - _as_expr(b, base)).is_zero()
    # cheap separation before any exact work
    al, ah = real_enclosure(a)
    bl, bh = real_enclosure(b)
    if ah < bl or bh < al:
        return False
    return algreal_compare(to_algreal(a), to_algreal(b)) == Ordering.EQ


def real_cmp(a, b) -> Ordering:
    plain = not isinstance(a, (AlgExpr, AlgReal)) and not isinstance(b, (AlgExpr, AlgReal))
    if plain or _common_base(a, b) is not None:
        return Ordering(real_sign(real_sub(a, b)))
    return algreal_compare(to_algreal(a), to_algreal(b))


def real_roots_of(w, k: int) -> list:
    """All real y with y**k == w, positive root first (k = 2 or 3)."""
    s = real_sign(w)
    if s == 0:
        return [Fraction(0)]
    if k % 2 == 0 and s < 0:
        return []
    if not isinstance(w, (AlgExpr, AlgReal)):
        r = _exact_root(Fraction(w), k)
        if r is not None:
            return [r, -r] if k % 2 == 0 else [r]
    y = real_simplify(alg_root(to_algreal(w), k))
    return [y, real_neg(y)] if k % 2 == 0 else [y]


# the second construction: a rational substitution with two real roots -------

def mobius_squash(T: Poly, alpha, beta) -> Poly:
    """(1 + x^2)^deg(T) * T(alpha + (beta - alpha) / (1 + x^2)), cleared to
    a primitive integer polynomial.

    When T has exactly one root r in [alpha, beta] the output has exactly
    the two real roots +-x0 with r = alpha + (beta - alpha) / (1 + x0^2).
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if not T:
        raise ValueError("T must be nonzero")
    if not alpha < beta:
        raise ValueError("need alpha < beta")
    if T(alpha) == 0 or T(beta) == 0:
        raise EndpointRootError("T vanishes at an endpoint of [alpha, beta]")
    n = sturm_count(T, Interval(alpha, beta))
    if n != 1:
        raise ZeroOrMultipleRootsError(f"T has {n} roots in [{alpha}, {beta}], expected exactly 1")
    d = T.degree
    u = Poly((1, 0, 1))
    lin = u * alpha + (beta - alpha)
    out = Poly()
    for i, t in enumerate(T.coeffs):
        if t:
            out = out + (lin**i) * (u ** (d - i)) * t
    return out.primitive()

"""Exact univariate polynomial algebra over the integers and rationals.

Polynomials are coefficient tuples, lowest degree first, so ``[-2, 0, 1]``
is x^2 - 2.  Coefficients are Python ints or ``fractions.Fraction``; a
fraction with denominator one is stored as an int.

Besides ring arithmetic the module provides primitive-PRS gcds, square-free
parts, Sturm root counting, certified real-root isolation by dyadic
bisection, and resultant-based elimination used by the algebraic number
layer.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence


class EndpointRootError(ValueError):
    """An interval endpoint is a root where a non-root endpoint is required."""


def _norm(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return int(c)
    raise TypeError(f"unsupported coefficient {c!r}")


class Poly:
    """Immutable univariate polynomial with rational coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        c = [_norm(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)
        self._hash = None

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"Poly({format_poly(self)})"

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __divmod__(self, other: "Poly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        dq = other.degree
        lc = Fraction(other.lc)
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            q = rem[i] / lc
            if q:
                quot[i - dq] = q
                for j, c in enumerate(other.coeffs):
                    rem[i - dq + j] -= q * c
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def reverse(self) -> "Poly":
        """x^d P(1/x) for d = deg P (trailing zero coefficients drop off)."""
        return Poly(reversed(self.coeffs))

    def substitute_power(self, k: int) -> "Poly":
        """P(x^k)."""
        out = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return Poly(out)

    def negate_x(self) -> "Poly":
        """P(-x)."""
        return Poly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def content(self) -> Fraction:
        """Positive rational c with P / c primitive integral."""
        if not self.coeffs:
            return Fraction(0)
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, int(c * den))
        return Fraction(g, den)

    def primitive(self) -> "Poly":
        """Primitive integer polynomial with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return Poly(x / c for x in self.coeffs)


IntPoly = Poly


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self):
        return f"[{format_rat(self.lo)},{format_rat(self.hi)}]"


# text forms ---------------------------------------------------------------

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rat(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational {text!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rat(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_poly(text: str) -> Poly:
    """Parse ``[c0,c1,...]`` (lowest degree first)."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"polynomial must be a bracketed coefficient list: {text!r}")
    body = s[1:-1].strip()
    if not body:
        return Poly()
    return Poly(parse_rat(part) for part in body.split(","))


def format_poly(P: Poly) -> str:
    return "[" + ",".join(format_rat(c) for c in P.coeffs) + "]"


# gcd and square-free part -------------------------------------------------

def poly_eval(P: Poly, x):
    return P(x)


def poly_derivative(P: Poly) -> Poly:
    return P.derivative()


def pseudo_rem(A: Poly, B: Poly) -> Poly:
    """lc(B)^(deg A - deg B + 1) * A mod B, kept over the integers."""
    if not B:
        raise ZeroDivisionError("pseudo-remainder by zero")
    r = list(A.coeffs)
    db = B.degree
    lb = B.lc
    if len(r) - 1 < db:
        return A
    e = len(r) - 1 - db + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, c in enumerate(B.coeffs):
            r[shift + j] -= lr * c
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    return Poly(c * lb**e for c in r)


def poly_gcd(P: Poly, Q: Poly) -> Poly:
    """Primitive gcd over Q with positive leading coefficient."""
    A, B = P.primitive(), Q.primitive()
    if not A and not B:
        raise ValueError("gcd of two zero polynomials")
    if A.degree < B.degree:
        A, B = B, A
    while B:
        A, B = B, pseudo_rem(A, B).primitive()
    return A.primitive()


def poly_exact_div(P: Poly, D: Poly) -> Poly:
    q, r = divmod(P, D)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def squarefree_part(P: Poly) -> Poly:
    if not P:
        raise ValueError("square-free part of the zero polynomial")
    if P.degree == 0:
        return Poly.const(1)
    g = poly_gcd(P, P.derivative())
    return poly_exact_div(P, g).primitive()


# Sturm sequences and real roots ------------------------------------------

@functools.lru_cache(maxsize=4096)
def sturm_sequence(P: Poly) -> tuple:
    """Sturm chain of a square-free P built from sign-corrected primitive
    pseudo-remainders."""
    head = P.primitive()
    seq = [head, head.derivative().primitive()]
    while seq[-1].degree > 0:
        A, B = seq[-2], seq[-1]
        d = A.degree - B.degree + 1
        r = pseudo_rem(A, B)
        if not r:
            break
        scale_sign = 1 if (B.lc > 0 or d % 2 == 0) else -1
        r = r.primitive() if r.lc > 0 else -r.primitive()
        seq.append(-r if scale_sign > 0 else r)
    return tuple(seq)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _variations(seq, x) -> int:
    count = 0
    prev = 0
    for S in seq:
        s = _sign(S(x))
        if s:
            if prev and s != prev:
                count += 1
            prev = s
    return count


def sturm_count(P: Poly, I: Interval) -> int:
    """Number of distinct real roots of P in (lo, hi]."""
    if not P:
        raise ValueError("Sturm count of the zero polynomial")
    if P(I.lo) == 0 or P(I.hi) == 0:
        raise EndpointRootError(f"interval endpoint of {I} is a root")
    if P.degree <= 0 or I.lo == I.hi:
        return 0
    seq = sturm_sequence(squarefree_part(P))
    return _variations(seq, I.lo) - _variations(seq, I.hi)


def cauchy_root_bound(P: Poly) -> Fraction:
    if P.degree < 1:
        raise ValueError("root bound needs degree >= 1")
    an = abs(Fraction(P.lc))
    return 1 + max(abs(Fraction(c)) for c in P.coeffs[:-1]) / an


def _dyadic_ceiling(b: Fraction) -> Fraction:
    d = Fraction(1)
    while d < b:
        d *= 2
    return d


def _split_point(P: Poly, lo: Fraction, hi: Fraction) -> Fraction:
    """Midpoint of (lo, hi), nudged off any root of P."""
    m = (lo + hi) / 2
    if P(m) != 0:
        return m
    step = (hi - lo) / 8
    while True:
        for cand in (m + step, m - step):
            if lo < cand < hi and P(cand) != 0:
                return cand
        step /= 2


def isolate_real_roots(P: Poly) -> list:
    """Disjoint dyadic intervals, each holding exactly one real root of P."""
    if not P:
        raise ValueError("cannot isolate roots of the zero polynomial")
    Q = squarefree_part(P)
    if Q.degree < 1:
        return []
    D = _dyadic_ceiling(cauchy_root_bound(Q))
    seq = sturm_sequence(Q)
    out = []
    stack = [(-D, D, _variations(seq, -D), _variations(seq, D))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append(Interval(lo, hi))
            continue
        m = _split_point(Q, lo, hi)
        vm = _variations(seq, m)
        stack.append((m, hi, vm, vhi))
        stack.append((lo, m, vlo, vm))
    out.sort(key=lambda I: I.lo)
    # closed intervals from a shared split point touch; shrink until apart
    out = [refine_interval(Q, I, 1) for I in out]
    i = 0
    while i + 1 < len(out):
        a, b = out[i], out[i + 1]
        if a.hi < b.lo:
            i += 1
            continue
        out[i] = refine_interval(Q, a, a.width / 2)
        out[i + 1] = refine_interval(Q, b, b.width / 2)
    return out


def refine_interval(P: Poly, I: Interval, width) -> Interval:
    """Shrink an isolating interval of a simple root to width <= ``width``."""
    width = Fraction(width)
    lo, hi = I.lo, I.hi
    if hi - lo <= width:
        return I
    Q = squarefree_part(P)
    slo = _sign(Q(lo))
    while hi - lo > width:
        m = _split_point(Q, lo, hi)
        sm = _sign(Q(m))
        if sm == slo:
            lo = m
        else:
            hi = m
    return Interval(lo, hi)


def rational_roots(P: Poly) -> list:
    """All rational roots of P (rational root theorem), sorted."""
    if not P:
        raise ValueError("rational roots of the zero polynomial")
    Q = squarefree_part(P.primitive()) if P.degree > 0 else P
    roots = []
    coeffs = list(Q.coeffs)
    if coeffs and coeffs[0] == 0:
        roots.append(Fraction(0))
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
        Q = Poly(coeffs)
    if Q.degree < 1:
        return roots
    for num in _divisors(abs(Q.coeffs[0])):
        for den in _divisors(abs(Q.lc)):
            for s in (1, -1):
                q = Fraction(s * num, den)
                if q.denominator == den and Q(q) == 0 and q not in roots:
                    roots.append(q)
    return sorted(roots)


def _divisors(n: int) -> list:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# resultants ---------------------------------------------------------------

def _bareiss_det(M: list) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    n = len(M)
    if n == 0:
        return 1
    M = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def sylvester_resultant(a: Sequence[int], b: Sequence[int]) -> int:
    """Resultant from coefficient lists (lowest first) of nominal length.

    Leading zeros are kept so that the value is the specialization of the
    generic resultant at the nominal degrees.
    """
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    if size == 0:
        return 1
    ah = list(reversed(a))
    bh = list(reversed(b))
    rows = []
    for i in range(n):
        rows.append([0] * i + ah + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + bh + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> Poly:
    """Newton interpolation through integer nodes."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    P = Poly.const(coef[-1])
    for i in range(n - 2, -1, -1):
        P = P * Poly((-xs[i], 1)) + coef[i]
    return P


def eliminate(A: Poly, inner: Callable[[int], Sequence[int]], deg_bound: int) -> Poly:
    """Res_y(A(y), C(x, y)) as a polynomial in x.

    ``inner(x0)`` returns the integer coefficients of C(x0, y) in y, always
    with the same nominal length.  The result is recovered by evaluating at
    ``deg_bound + 1`` integer points and interpolating.
    """
    a = list(A.primitive().coeffs)
    xs = list(range(deg_bound + 1))
    ys = [sylvester_resultant(a, list(inner(x0))) for x0 in xs]
    return _interpolate(xs, ys)

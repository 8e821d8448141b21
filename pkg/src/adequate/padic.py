"""Truncated p-adic numbers with tracked precision.

A nonzero :class:`PadicApprox` is ``p**val * unit`` where ``unit`` is known
modulo ``p**N``.  Zero carries an absolute precision instead: it is "known
to be divisible by p**prec", and exact when ``prec`` is infinite.  Every
operation propagates precision soundly; cancellation shows up as lost
digits, never as wrong ones.

Root finding, square/cube tests and digit separation are built on integer
Newton iteration (generalized Hensel lifting).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import Poly, rational_roots, squarefree_part

DEFAULT_PREC = 32
DEFAULT_DEPTH = 6
INF = math.inf


class PadicError(ArithmeticError):
    pass


class PrecisionExhausted(PadicError):
    pass


class HypothesisViolated(PadicError):
    pass


class Unresolved(PadicError):
    def __init__(self, depth):
        super().__init__(f"roots not separated after searching modulo p^{depth}")
        self.depth = depth


class NormTooLarge(PadicError):
    pass


class Indistinguishable(PadicError):
    pass


class WrongPrime(PadicError):
    pass


def vp(x: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of 0")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PadicApprox:
    __slots__ = ("p", "val", "unit", "N", "_zprec")

    def __init__(self, p: int, val, unit: int, N: int, zprec=INF):
        self.p = p
        self.val = val
        self.unit = unit
        self.N = N
        self._zprec = zprec

    # construction ------------------------------------------------------

    @classmethod
    def zero(cls, p: int, prec=INF) -> "PadicApprox":
        return cls(p, INF, 0, 0, prec)

    @classmethod
    def from_int(cls, p: int, x: int, prec) -> "PadicApprox":
        """The integer x, known modulo p**prec."""
        return _make(p, x, 0, prec)

    def is_zero(self) -> bool:
        """True when no nonzero digit is known (exact or approximate zero)."""
        return self.val == INF

    def is_exact_zero(self) -> bool:
        return self.val == INF and self._zprec == INF

    @property
    def prec(self):
        """Absolute precision: the value is known modulo p**prec."""
        return self._zprec if self.val == INF else self.val + self.N

    @property
    def digits(self) -> list:
        out, u = [], self.unit
        for _ in range(self.N):
            out.append(u % self.p)
            u //= self.p
        return out

    def __repr__(self):
        return format_padic(self)

    def __eq__(self, other):
        if not isinstance(other, PadicApprox):
            return NotImplemented
        return (self.p, self.val, self.unit, self.N, self._zprec) == (
            other.p, other.val, other.unit, other.N, other._zprec)

    def __hash__(self):
        return hash((self.p, self.val, self.unit, self.N))

    def to_int_mod(self, k: int) -> int:
        """Integer representative modulo p**k (requires val >= 0, prec >= k)."""
        if self.prec < k:
            raise PrecisionExhausted(f"need {k} digits, have {self.prec}")
        if self.val == INF:
            return 0
        if self.val < 0:
            raise ValueError("not a p-adic integer")
        return (self.unit * self.p**self.val) % self.p**k

    def with_rel_prec(self, N: int) -> "PadicApprox":
        if self.val == INF or N >= self.N:
            return self
        return PadicApprox(self.p, self.val, self.unit % self.p**N, N)

    # arithmetic ----------------------------------------------------------

    def _coerce(self, other, mode):
        if isinstance(other, PadicApprox):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        q = Fraction(other)
        if q == 0:
            return PadicApprox.zero(self.p)
        if mode == "abs":
            prec = self.prec if self.prec != INF else DEFAULT_PREC
            v = vp(q.numerator, self.p) - vp(q.denominator, self.p)
            return padic_from_rat(q, self.p, max(int(prec - v), 1))
        n = self.N if self.val != INF else DEFAULT_PREC
        return padic_from_rat(q, self.p, max(n, 1))

    def __add__(self, other):
        return padic_add(self, self._coerce(other, "abs"))

    __radd__ = __add__

    def __sub__(self, other):
        return padic_add(self, -self._coerce(other, "abs"))

    def __rsub__(self, other):
        return padic_add(-self, self._coerce(other, "abs"))

    def __neg__(self):
        if self.val == INF:
            return self
        return PadicApprox(self.p, self.val, (-self.unit) % self.p**self.N, self.N)

    def __mul__(self, other):
        return padic_mul(self, self._coerce(other, "rel"))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return padic_div(self, self._coerce(other, "rel"))

    def __rtruediv__(self, other):
        return padic_div(self._coerce(other, "rel"), self)

    def __pow__(self, e: int):
        out = self._coerce(1, "rel")
        for _ in range(e):
            out = out * self
        return out


def _make(p: int, x: int, v: int, prec) -> PadicApprox:
    """x * p**v known modulo p**prec."""
    if prec != INF:
        if prec <= v:
            return PadicApprox.zero(p, prec)
        x %= p ** (prec - v)
    if x == 0:
        if prec == INF:
            return PadicApprox.zero(p)
        return PadicApprox.zero(p, prec)
    while x % p == 0:
        x //= p
        v += 1
    if prec == INF:
        raise ValueError("nonzero values need finite precision")
    N = prec - v
    return PadicApprox(p, v, x % p**N, N)


def padic_from_rat(q, p: int, N: int = DEFAULT_PREC) -> PadicApprox:
    """Expansion of a rational to N digits (relative precision)."""
    q = Fraction(q)
    if q == 0:
        return PadicApprox.zero(p)
    num, den = q.numerator, q.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    mod = p**N
    return PadicApprox(p, v, num * pow(den, -1, mod) % mod, N)


def padic_add(a: PadicApprox, b: PadicApprox) -> PadicApprox:
    prec = min(a.prec, b.prec)
    if a.val == INF and b.val == INF:
        return PadicApprox.zero(a.p, prec)
    if a.val == INF:
        return _make(b.p, b.unit, b.val, prec)
    if b.val == INF:
        return _make(a.p, a.unit, a.val, prec)
    p = a.p
    v = min(a.val, b.val)
    x = a.unit * p ** (a.val - v) + b.unit * p ** (b.val - v)
    return _make(p, x, v, prec)


def padic_sub(a: PadicApprox, b: PadicApprox) -> PadicApprox:
    return padic_add(a, -b)


def padic_mul(a: PadicApprox, b: PadicApprox) -> PadicApprox:
    p = a.p
    if a.val == INF and b.val == INF:
        return PadicApprox.zero(p, a.prec + b.prec)
    if a.val == INF:
        return PadicApprox.zero(p, a.prec + b.val)
    if b.val == INF:
        return PadicApprox.zero(p, b.prec + a.val)
    N = min(a.N, b.N)
    mod = p**N
    return PadicApprox(p, a.val + b.val, a.unit * b.unit % mod, N)


def padic_div(a: PadicApprox, b: PadicApprox) -> PadicApprox:
    p = a.p
    if b.val == INF:
        if b.is_exact_zero():
            raise ZeroDivisionError("p-adic division by zero")
        raise PrecisionExhausted("divisor is zero to its tracked precision")
    if a.val == INF:
        return PadicApprox.zero(p, a.prec - b.val)
    N = min(a.N, b.N)
    mod = p**N
    return PadicApprox(p, a.val - b.val, a.unit * pow(b.unit, -1, mod) % mod, N)


def padic_norm(a: PadicApprox) -> Fraction:
    """|a|_p = p**(-val); zero maps to 0."""
    if a.val == INF:
        if a.is_exact_zero():
            return Fraction(0)
        raise PrecisionExhausted("norm of a value known only to be small")
    return Fraction(a.p) ** (-a.val)


def format_padic(a: PadicApprox) -> str:
    if a.val == INF:
        extra = "" if a._zprec == INF else f";prec={a._zprec}"
        return f"padic{{p={a.p};val=inf;digits=[]{extra}}}"
    return f"padic{{p={a.p};val={a.val};digits=[{','.join(map(str, a.digits))}]}}"


def parse_padic(text: str) -> PadicApprox:
    s = text.strip()
    if not (s.startswith("padic{") and s.endswith("}")):
        raise ValueError(f"malformed p-adic literal {text!r}")
    fields = dict(part.split("=", 1) for part in s[6:-1].split(";"))
    p = int(fields["p"])
    body = fields["digits"].strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"malformed digit list {body!r}")
    digits = [int(d) for d in body[1:-1].split(",") if d.strip()]
    if fields["val"].strip() == "inf":
        prec = int(fields["prec"]) if "prec" in fields else INF
        return PadicApprox.zero(p, prec)
    if not digits or digits[0] == 0 or any(not 0 <= d < p for d in digits):
        raise ValueError(f"bad digits in {text!r}")
    unit = sum(d * p**i for i, d in enumerate(digits))
    return PadicApprox(p, int(fields["val"]), unit, len(digits))


# Newton lifting -----------------------------------------------------------

def _int_coeffs(F, p: int, k: int):
    """Integer coefficients of F modulo p**k plus their common precision."""
    out, prec = [], k
    for c in F:
        if isinstance(c, PadicApprox):
            if c.val != INF and c.val < 0:
                raise HypothesisViolated("coefficient is not a p-adic integer")
            prec = min(prec, c.prec)
        else:
            c = Fraction(c)
            if c.denominator % p == 0:
                raise HypothesisViolated("coefficient is not a p-adic integer")
    mod = p**prec
    for c in F:
        if isinstance(c, PadicApprox):
            out.append(c.to_int_mod(prec) if c.val != INF else 0)
        else:
            c = Fraction(c)
            out.append(c.numerator * pow(c.denominator, -1, mod) % mod)
    return out, prec


def _ev(coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _ev_deriv(coeffs, x: int) -> int:
    acc = 0
    for i in range(len(coeffs) - 1, 0, -1):
        acc = acc * x + i * coeffs[i]
    return acc


def _taylor(coeffs, a: int) -> list:
    """Coefficients of F(a + t) in t."""
    c = list(coeffs)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += a * c[j + 1]
    return c


def _class_may_hold_root(coeffs, a: int, k: int, p: int) -> bool:
    """False when F has no root in a + p^k Z_p (ultrametric domination)."""
    t = _taylor(coeffs, a)
    if t[0] == 0:
        return True
    v0 = vp(t[0], p)
    rest = [vp(c, p) + i * k for i, c in enumerate(t) if i and c]
    return not rest or v0 >= min(rest)


def _lift(coeffs, a: int, p: int, M: int, cprec=INF):
    """Newton iteration from a with v(F(a)) > 2 v(F'(a)).

    Returns (b, k): the unique root near a, correct modulo p**k with
    k = min(M, cprec - e) where e = v(F'(a)).
    """
    e = vp(_ev_deriv(coeffs, a), p)
    target = min(M, cprec - e) if cprec != INF else M
    if target <= 0:
        raise PrecisionExhausted("coefficients too imprecise to lift")
    mod = p ** (target + e)
    check = p ** (target + e) if cprec == INF else p ** min(target + e, cprec)
    for _ in range(4 * (target.bit_length() if isinstance(target, int) else 8) + 8):
        fa = _ev(coeffs, a)
        if fa % check == 0:
            return a % p**target, target
        da = _ev_deriv(coeffs, a)
        pe = p**e
        step = (fa // pe) * pow(da // pe, -1, mod) % mod
        a = (a - step) % mod
    raise PadicError("Newton iteration failed to converge")


def hensel_lift(F: Poly, a0, p: int, N: int = DEFAULT_PREC) -> PadicApprox:
    """The unique root of F congruent to a0 modulo p, to N digits.

    Requires the hypotheses of Hensel's lemma: a0 integral, F(a0) = 0 and
    F'(a0) != 0 modulo p.
    """
    coeffs_src = F.coeffs if isinstance(F, Poly) else tuple(F)
    if isinstance(a0, PadicApprox):
        if a0.val != INF and a0.val < 0:
            raise HypothesisViolated("a0 is not in Z_p")
        a = a0.to_int_mod(min(a0.prec, N)) if a0.prec != INF else 0
    else:
        q = Fraction(a0)
        if q.denominator % p == 0:
            raise HypothesisViolated("a0 is not in Z_p")
        a = q.numerator * pow(q.denominator, -1, p**N) % p**N
    coeffs, cprec = _int_coeffs(coeffs_src, p, N)
    if _ev(coeffs, a) % p != 0:
        raise HypothesisViolated(f"F(a0) = {_ev(coeffs, a) % p} is not 0 modulo {p}")
    if _ev_deriv(coeffs, a) % p == 0:
        raise HypothesisViolated(f"F'(a0) is 0 modulo {p}")
    b, k = _lift(coeffs, a, p, N, cprec)
    return PadicApprox.from_int(p, b, k)


# roots of integer polynomials --------------------------------------------

def _integral_roots(Q: Poly, p: int, M: int, depth: int, positive_val=False) -> list:
    """Roots of Q in Z_p (Q square-free, no rational roots) as integers
    modulo p**M, paired with their precision."""
    coeffs = [int(c) for c in Q.coeffs]
    found = []
    stack = [(a, 1) for a in (range(p - 1, -1, -1) if not positive_val else (0,))]
    while stack:
        a, k = stack.pop()
        fa = _ev(coeffs, a)
        if not _class_may_hold_root(coeffs, a, k, p):
            continue
        da = _ev_deriv(coeffs, a)
        e = vp(da, p) if da else INF
        if e != INF and k > e and vp(fa, p) > 2 * e:
            b, prec = _lift(coeffs, a, p, max(M, k + 1))
            if (b - a) % p**k == 0:
                found.append((b, prec))
            continue
        if k >= depth:
            raise Unresolved(depth)
        for t in range(p - 1, -1, -1):
            stack.append((a + t * p**k, k + 1))
    return found


def padic_roots(P: Poly, p: int, N: int = DEFAULT_PREC, depth: int = DEFAULT_DEPTH) -> list:
    """All roots of P in Q_p, each to N significant digits, sorted by
    (valuation, digits)."""
    if not P:
        raise ValueError("roots of the zero polynomial")
    roots = [padic_from_rat(q, p, N) for q in rational_roots(P)] if P.degree > 0 else []
    Q = squarefree_part(P) if P.degree > 0 else P
    for q in rational_roots(P) if P.degree > 0 else []:
        Q = Q // Poly((-q.numerator, q.denominator))
    Q = Q.primitive()
    if Q.degree >= 1:
        M = N
        while True:
            ints = _integral_roots(Q, p, M, depth)
            vals = [vp(b, p) if b else INF for b, _ in ints]
            need = max([v for v in vals if v != INF] + [0])
            if M >= N + need:
                break
            M = N + need
        for b, prec in ints:
            roots.append(PadicApprox.from_int(p, b, prec).with_rel_prec(N))
        R = Q.reverse().primitive()
        M = N
        while True:
            small = [(b, k) for b, k in _integral_roots(R, p, M, depth, positive_val=True) if b % p == 0]
            vals = [vp(b, p) for b, _ in small]
            need = max(vals + [0])
            if M >= N + 2 * need:
                break
            M = N + 2 * need
        for b, prec in small:
            x = PadicApprox.from_int(p, b, prec)
            roots.append((1 / x).with_rel_prec(N))
    roots.sort(key=lambda r: (r.val, r.digits))
    return roots


# squares, cubes, roots of elements ------------------------------------------

def is_square(a: PadicApprox) -> bool:
    if a.val == INF:
        raise PrecisionExhausted("square test of a value known only to be small")
    if a.val % 2:
        return False
    if a.p == 2:
        if a.N < 3:
            raise PrecisionExhausted("2-adic square test needs three unit digits")
        return a.unit % 8 == 1
    return pow(a.unit, (a.p - 1) // 2, a.p) == 1


def is_cube_2adic(a: PadicApprox) -> bool:
    if a.p != 2:
        raise WrongPrime(f"cube criterion is for p = 2, got p = {a.p}")
    if a.val == INF:
        raise PrecisionExhausted("cube test of a value known only to be small")
    return a.val % 3 == 0


def nth_roots(w: PadicApprox, n: int) -> list:
    """All y in Q_p with y**n == w, at the precision w allows."""
    p = w.p
    if w.val == INF:
        if w.is_exact_zero():
            return [w]
        raise PrecisionExhausted("root of a value known only to be small")
    if w.val % n:
        return []
    e = vp(n, p) if n % p == 0 else 0
    k = 2 * e + 1
    if w.N < k:
        raise PrecisionExhausted(f"need {k} unit digits to extract {n}-th roots")
    mod = p**k
    u = w.unit % mod
    coeffs = [-w.unit] + [0] * (n - 1) + [1]
    classes = {}
    for a in range(mod):
        if a % p and pow(a, n, mod) == u:
            classes.setdefault(a % p ** (e + 1), a)
    out = []
    for a in sorted(classes.values()):
        b, prec = _lift(coeffs, a, p, w.N, cprec=w.N)
        out.append(PadicApprox.from_int(p, b, prec) * padic_from_rat(Fraction(p) ** (w.val // n), p, prec))
    out.sort(key=lambda r: r.digits)
    return out


def lemma2_witness(x: PadicApprox) -> PadicApprox:
    """y with y^2 = 1 + p x^2 (p odd) or y^3 = 1 + 2 x^3 (p = 2), lifted from 1."""
    p = x.p
    if x.val != INF and x.val < 0:
        raise NormTooLarge(f"|x|_{p} = {p}^{-x.val} > 1")
    if p == 2:
        c = 1 + 2 * x * x * x
        F = (-c, 0, 0, 1)
    else:
        c = 1 + p * x * x
        F = (-c, 0, 1)
    prec = c.prec if c.prec != INF else DEFAULT_PREC
    return hensel_lift(F, 1, p, int(prec))


# digit separation -----------------------------------------------------------

@dataclass(frozen=True)
class SeparationGadget:
    m: int
    u: Fraction
    witness_y: PadicApprox


def _scaled_int(a: PadicApprox, s: int, P: int) -> int:
    """a * p**(-s) as an integer modulo p**(P - s)."""
    if a.val == INF:
        return 0
    return a.unit * a.p ** (a.val - s) % a.p ** (P - s)


def separate(c: PadicApprox, d: PadicApprox):
    """(m, u) with |(c - u)/p^(m+1)| <= 1 < |(d - u)/p^(m+1)|.

    m is the first digit position where c and d differ and u is c truncated
    after that position.
    """
    if c.p != d.p:
        raise ValueError("mixed primes")
    p = c.p
    if c.val == INF and d.val == INF:
        raise Indistinguishable("both values are zero to tracked precision")
    s = min(c.val, d.val)
    P = min(c.prec, d.prec)
    if P == INF:
        P = s + DEFAULT_PREC
    ci, di = _scaled_int(c, s, P), _scaled_int(d, s, P)
    diff = ci - di
    if diff % p ** (P - s) == 0:
        raise Indistinguishable(f"values agree to all {P - s} tracked digits")
    m = s + vp(diff, p)
    trunc = ci % p ** (m - s + 1)
    return m, Fraction(trunc) * Fraction(p) ** s


def separation_gadget(r: PadicApprox, other: PadicApprox) -> SeparationGadget:
    m, u = separate(r, other)
    p = r.p
    z = (r - u) / padic_from_rat(Fraction(p) ** (m + 1), p)
    return SeparationGadget(m, u, lemma2_witness(z))

"""Field backends: arithmetic, equality, text forms and fast lookup.

A backend knows how to compare and combine the values of one ambient
field.  Relation extraction asks an :class:`Index` whether ``x_i op x_j``
lands on some ``x_k``; the index answers with exact (or guarded, for
p-adics) equality.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from fractions import Fraction

from .algreal import (
    _exact_root,
    format_algreal,
    parse_algreal,
    real_add,
    real_enclosure,
    real_eq,
    real_inv,
    real_mul,
    real_neg,
    real_roots_of,
    real_sign,
    real_simplify,
    real_sub,
    to_algreal,
)
from .exactnum import format_rat, parse_rat
from .finitefield import FFElem, FiniteField, format_field, format_ffelem, parse_ffelem
from .padic import (
    DEFAULT_PREC,
    INF,
    PadicApprox,
    format_padic,
    is_cube_2adic,
    is_square,
    nth_roots,
    padic_from_rat,
    parse_padic,
)

GUARD = 20
ENCLOSURE_WIDTH = Fraction(1, 2**80)


class BackendMismatch(ValueError):
    pass


class AmbiguousEquality(ArithmeticError):
    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class Backend:
    """Interface; concrete backends override the arithmetic."""

    name = "abstract"

    def descriptor(self) -> str:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(self.descriptor())

    def __repr__(self):
        return self.descriptor()

    def const(self, q):
        raise NotImplementedError

    def zero(self):
        return self.const(0)

    def one(self):
        return self.const(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero())

    def roots(self, w, k: int) -> list:
        """All y with y**k == w (k = 2, 3)."""
        raise NotImplementedError

    def format(self, v) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def index(self, values=()) -> "Index":
        return HashIndex(self, values)

    def op(self, op: str, a, b):
        return self.add(a, b) if op == "+" else self.mul(a, b)


class Index:
    """Incremental lookup of values by backend equality."""

    def __init__(self, backend: Backend, values=()):
        self.backend = backend
        self.values = []
        for v in values:
            self.append(v)

    def append(self, v) -> int:
        self.values.append(v)
        return len(self.values) - 1

    def find(self, v):
        raise NotImplementedError

    def match(self, op: str, i: int, j: int):
        """Index k with values[i] op values[j] == values[k], else None."""
        return self.find(self.backend.op(op, self.values[i], self.values[j]))


class HashIndex(Index):
    def __init__(self, backend, values=()):
        self._map = {}
        super().__init__(backend, values)

    def append(self, v) -> int:
        k = super().append(v)
        self._map.setdefault(self.backend.key(v), k)
        return k

    def find(self, v):
        return self._map.get(self.backend.key(v))


# finite fields ----------------------------------------------------------------

class FFBackend(Backend):
    name = "ff"

    def __init__(self, field: FiniteField):
        self.field = field

    def descriptor(self) -> str:
        return format_field(self.field)

    def const(self, q):
        q = Fraction(q)
        return self.field.elem(q.numerator) / self.field.elem(q.denominator)

    def inv(self, a: FFElem):
        return a.inverse()

    def key(self, v):
        return v.code

    def roots(self, w, k):
        return [y for y in self.field.elements() if y**k == w]

    def format(self, v) -> str:
        return format_ffelem(v)

    def parse(self, text: str):
        return parse_ffelem(self.field, text)


# rationals --------------------------------------------------------------------

class RatBackend(Backend):
    name = "rat"

    def descriptor(self) -> str:
        return "rat"

    def const(self, q):
        return Fraction(q)

    def key(self, v):
        return v

    def roots(self, w, k):
        w = Fraction(w)
        if w == 0:
            return [w]
        sgn = 1 if w > 0 else -1
        if k % 2 == 0 and sgn < 0:
            return []
        y = _exact_root(abs(w), k)
        if y is None:
            return []
        if k % 2 == 0:
            return [y, -y]
        return [sgn * y]

    def format(self, v) -> str:
        return format_rat(v)

    def parse(self, text: str):
        return parse_rat(text)


# real algebraic numbers -------------------------------------------------------

def _iadd(a, b):
    return a[0] + b[0], a[1] + b[1]


def _imul(a, b):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(ps), max(ps)


class RealBackend(Backend):
    name = "real"

    def descriptor(self) -> str:
        return "real"

    def const(self, q):
        return Fraction(q)

    def add(self, a, b):
        return real_add(a, b)

    def sub(self, a, b):
        return real_sub(a, b)

    def mul(self, a, b):
        return real_mul(a, b)

    def neg(self, a):
        return real_neg(a)

    def inv(self, a):
        return real_inv(a)

    def eq(self, a, b) -> bool:
        return real_eq(a, b)

    def sign(self, a) -> int:
        return real_sign(a)

    def roots(self, w, k):
        return real_roots_of(w, k)

    def format(self, v) -> str:
        v = real_simplify(v)
        if isinstance(v, Fraction):
            return format_rat(v)
        return format_algreal(to_algreal(v))

    def parse(self, text: str):
        s = text.strip()
        if s.startswith("alg{"):
            return real_simplify(parse_algreal(s))
        return parse_rat(s)

    def enclosure(self, v):
        return real_enclosure(v, ENCLOSURE_WIDTH)

    def index(self, values=()):
        return RealIndex(self, values)


class RealIndex(Index):
    """Values sorted by a tight rational enclosure; exact checks only on
    overlap."""

    def __init__(self, backend, values=()):
        self._encl = []
        self._los = []
        self._order = []
        self._wmax = Fraction(0)
        super().__init__(backend, values)

    def append(self, v) -> int:
        k = super().append(v)
        lo, hi = self.backend.enclosure(v)
        self._encl.append((lo, hi))
        self._wmax = max(self._wmax, hi - lo)
        pos = bisect_right(self._los, lo)
        self._los.insert(pos, lo)
        self._order.insert(pos, k)
        return k

    def _overlapping(self, lo, hi):
        a = bisect_left(self._los, lo - self._wmax)
        b = bisect_right(self._los, hi)
        out = [self._order[t] for t in range(a, b) if self._encl[self._order[t]][1] >= lo]
        return sorted(out)

    def find(self, v):
        lo, hi = self.backend.enclosure(v)
        for k in self._overlapping(lo, hi):
            if real_eq(v, self.values[k]):
                return k
        return None

    def match(self, op, i, j):
        ea, eb = self._encl[i], self._encl[j]
        lo, hi = _iadd(ea, eb) if op == "+" else _imul(ea, eb)
        cands = self._overlapping(lo, hi)
        if not cands:
            return None
        a, b = self.values[i], self.values[j]
        v = real_add(a, b) if op == "+" else real_mul(a, b)
        for k in cands:
            if real_eq(v, self.values[k]):
                return k
        return None


# p-adic numbers ---------------------------------------------------------------

class PadicBackend(Backend):
    name = "padic"

    def __init__(self, p: int, N: int = DEFAULT_PREC, guard: int = GUARD):
        self.p, self.N, self.guard = p, N, guard

    def descriptor(self) -> str:
        return f"padic{{p={self.p};N={self.N}}}"

    def const(self, q):
        return padic_from_rat(q, self.p, self.N)

    def eq(self, a: PadicApprox, b: PadicApprox) -> bool:
        """Equal when the values agree on at least ``guard`` digits from
        their common leading position; unequal when some known digit
        differs."""
        if a.is_exact_zero() and b.is_exact_zero():
            return True
        d = a - b
        if not d.is_zero():
            return False
        s = min(a.val, b.val)
        if s == INF:
            s = 0
        if d.prec - s >= self.guard:
            return True
        raise AmbiguousEquality(
            f"{format_padic(a)} and {format_padic(b)} agree on all {d.prec - s} known digits"
        )

    def key(self, v: PadicApprox):
        if v.is_zero():
            return ("zero",)
        if v.N < self.guard:
            return None
        return (v.val, v.unit % self.p**self.guard)

    def roots(self, w, k):
        return nth_roots(w, k)

    def is_square(self, w):
        return is_square(w)

    def is_cube(self, w):
        return is_cube_2adic(w)

    def format(self, v) -> str:
        return format_padic(v)

    def parse(self, text: str):
        v = parse_padic(text)
        if v.p != self.p:
            raise ValueError(f"element prime {v.p} differs from backend prime {self.p}")
        return v

    def index(self, values=()):
        return PadicIndex(self, values)


class PadicIndex(Index):
    def __init__(self, backend, values=()):
        self._map = {}
        self._short = []
        super().__init__(backend, values)

    def append(self, v) -> int:
        k = super().append(v)
        key = self.backend.key(v)
        if key is None:
            self._short.append(k)
        else:
            self._map.setdefault(key, k)
        return k

    def find(self, v):
        key = self.backend.key(v)
        cands = list(self._short)
        if key is not None and key[0] != "zero":
            if key in self._map:
                cands.append(self._map[key])
        else:
            # zero-ish or short values can only be settled by a scan
            cands = range(len(self.values))
        for k in sorted(set(cands)):
            try:
                if self.backend.eq(v, self.values[k]):
                    return k
            except AmbiguousEquality as e:
                raise AmbiguousEquality(str(e), pair=(k + 1,)) from None
        return None


# dispatch --------------------------------------------------------------------

def parse_backend(text: str) -> Backend:
    from .finitefield import parse_field

    s = text.strip()
    if s == "rat":
        return RatBackend()
    if s == "real":
        return RealBackend()
    if s.startswith("ff{"):
        return FFBackend(parse_field(s))
    if s.startswith("padic{") and s.endswith("}"):
        fields = dict(part.split("=", 1) for part in s[6:-1].split(";"))
        return PadicBackend(int(fields["p"]), int(fields.get("N", DEFAULT_PREC)))
    raise ValueError(f"unknown backend {text!r}")


def dedup(backend: Backend, values) -> list:
    """Distinct values in first-occurrence order."""
    idx = backend.index()
    for v in values:
        if idx.find(v) is None:
            idx.append(v)
    return idx.values


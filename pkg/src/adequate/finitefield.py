"""Small finite fields GF(p^k) with precomputed tables.

Elements are encoded as integers 0..q-1: the coefficient vector
(c0, ..., c_{k-1}) of the residue polynomial maps to sum c_i p^i.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .padic import is_prime

FIELD_CAP = 64

# Moduli fixed so element codes are stable across runs and documents.
FIXED_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (1, 0, 1),
}


class CapExceeded(ValueError):
    pass


def _polymod(a: list, m: tuple, p: int) -> list:
    a = [c % p for c in a]
    k = len(m) - 1
    inv_lc = pow(m[-1], -1, p)
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i] * inv_lc % p
        if c:
            for j in range(k + 1):
                a[i - k + j] = (a[i - k + j] - c * m[j]) % p
    a = a[:k] + [0] * (k - len(a[:k]))
    return a


def _is_irreducible(m: tuple, p: int) -> bool:
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            divisor = tuple(low) + (1,)
            r = _polymod(list(m), divisor, p)
            if not any(r[:d]):
                return False
    return True


def _first_irreducible(p: int, k: int) -> tuple:
    # lexicographic on (c_{k-1}, ..., c_0), monic
    for tail in product(range(p), repeat=k):
        m = tuple(reversed(tail)) + (1,)
        if m[0] and _is_irreducible(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    def __init__(self, p: int, k: int = 1):
        if not is_prime(p) or k < 1:
            raise ValueError(f"GF({p}^{k}) is not a field")
        q = p**k
        if q > FIELD_CAP:
            raise CapExceeded(f"field size {q} exceeds cap {FIELD_CAP}")
        self.p, self.k, self.q = p, k, q
        if k == 1:
            self.modulus = (0, 1)
        else:
            self.modulus = FIXED_MODULI.get((p, k)) or _first_irreducible(p, k)
        self._vecs = [self._vec(c) for c in range(q)]
        self.add_table = [[self._code([(x + y) % p for x, y in zip(self._vecs[a], self._vecs[b])])
                           for b in range(q)] for a in range(q)]
        self.mul_table = [[self._mul_codes(a, b) for b in range(q)] for a in range(q)]
        self.neg_table = [self.add_table[a].index(0) for a in range(q)]
        self.inv_table = [None] + [self.mul_table[a].index(1) for a in range(1, q)]

    def _vec(self, code: int) -> list:
        out = []
        for _ in range(self.k):
            out.append(code % self.p)
            code //= self.p
        return out

    def _code(self, vec) -> int:
        return sum(c * self.p**i for i, c in enumerate(vec))

    def _mul_codes(self, a: int, b: int) -> int:
        va, vb = self._vecs[a], self._vecs[b]
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(va):
            for j, y in enumerate(vb):
                prod[i + j] += x * y
        if self.k == 1:
            return prod[0] % self.p
        return self._code(_polymod(prod, self.modulus, self.p))

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return format_field(self)

    def elem(self, code: int) -> "FFElem":
        return FFElem(self, code % self.q if self.k == 1 else code)

    def elements(self) -> list:
        return [FFElem(self, c) for c in range(self.q)]

    def from_vec(self, vec) -> "FFElem":
        vec = list(vec) + [0] * (self.k - len(vec))
        if len(vec) != self.k or any(not 0 <= c < self.p for c in vec):
            raise ValueError(f"bad coefficient vector for {self}")
        return FFElem(self, self._code(vec))


class FFElem:
    __slots__ = ("field", "code")

    def __init__(self, field: FiniteField, code: int):
        if not 0 <= code < field.q:
            raise ValueError(f"code {code} out of range for {field}")
        self.field = field
        self.code = code

    def _other(self, o):
        if isinstance(o, FFElem):
            if o.field != self.field:
                raise ValueError("elements of different fields")
            return o.code
        return int(o) % self.field.p  # prime-field integer

    def __add__(self, o):
        return FFElem(self.field, self.field.add_table[self.code][self._other(o)])

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.field, self.field.neg_table[self.code])

    def __sub__(self, o):
        return self + (-FFElem(self.field, self._other(o)))

    def __rsub__(self, o):
        return FFElem(self.field, self._other(o)) - self

    def __mul__(self, o):
        return FFElem(self.field, self.field.mul_table[self.code][self._other(o)])

    __rmul__ = __mul__

    def inverse(self) -> "FFElem":
        if self.code == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return FFElem(self.field, self.field.inv_table[self.code])

    def __truediv__(self, o):
        return self * FFElem(self.field, self._other(o)).inverse()

    def __pow__(self, e: int):
        out = FFElem(self.field, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, o):
        return isinstance(o, FFElem) and o.field == self.field and o.code == self.code

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.code))

    def __lt__(self, o):
        return self.code < o.code

    @property
    def vec(self) -> list:
        return self.field._vecs[self.code]

    def __repr__(self):
        return format_ffelem(self)


def frobenius(a: FFElem) -> FFElem:
    return a ** a.field.p


def ff_prime_subfield(F: FiniteField) -> list:
    """Elements fixed by Frobenius, listed by code."""
    return [a for a in F.elements() if frobenius(a) == a]


@lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> FiniteField:
    return FiniteField(p, k)


def format_field(F: FiniteField) -> str:
    return f"ff{{p={F.p};k={F.k}}}"


def parse_field(text: str) -> FiniteField:
    s = text.strip()
    if not (s.startswith("ff{") and s.endswith("}")):
        raise ValueError(f"malformed field descriptor {text!r}")
    fields = dict(part.split("=", 1) for part in s[3:-1].split(";"))
    return field(int(fields["p"]), int(fields.get("k", 1)))


def format_ffelem(a: FFElem) -> str:
    return "(" + ",".join(map(str, a.vec)) + ")"


def parse_ffelem(F: FiniteField, text: str) -> FFElem:
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        return F.from_vec([int(c) for c in s[1:-1].split(",")])
    n = int(s)
    if F.k == 1:
        return F.elem(n)
    if not 0 <= n < F.p:
        raise ValueError(f"bare integer {n} is not a prime-field element")
    return F.elem(n)


def ff_enumerate(F: FiniteField) -> list:
    return F.elements()

"""Certificates: finite element sets with a target, their relation table,
the formula Phi, combinators, constructors and the single-polynomial
encoding."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algreal import (
    AlgReal,
    Ordering,
    algreal_compare,
    real_roots_of,
    real_simplify,
    real_sub,
    span_value,
)
from .backends import (
    AmbiguousEquality,
    Backend,
    BackendMismatch,
    FFBackend,
    PadicBackend,
    RatBackend,
    RealBackend,
    dedup,
    parse_backend,
)
from .exactnum import Poly, format_poly, format_rat, isolate_real_roots
from .padic import (
    DEFAULT_PREC,
    PadicApprox,
    format_padic,
    lemma2_witness,
    padic_from_rat,
    padic_roots,
    separate,
)

SIZE_CAP = 5000


class ZeroTarget(ValueError):
    pass


class SizeCapExceeded(ValueError):
    pass


class NotARoot(ValueError):
    pass


class DegreeTooSmall(ValueError):
    pass


class EncodingTooLarge(ValueError):
    pass


class TargetNotInV(UserWarning):
    pass


# relation tables -------------------------------------------------------------

@dataclass(frozen=True)
class RelTable:
    n: int
    ones: tuple = ()
    sums: tuple = ()
    prods: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ones", tuple(sorted(set(self.ones))))
        object.__setattr__(self, "sums", tuple(sorted(set(self.sums))))
        object.__setattr__(self, "prods", tuple(sorted(set(self.prods))))
        for t in self.sums + self.prods:
            if not (1 <= t[0] <= t[1] <= self.n and 1 <= t[2] <= self.n):
                raise ValueError(f"bad triple {t} for n = {self.n}")
        for i in self.ones:
            if not 1 <= i <= self.n:
                raise ValueError(f"bad index {i} for n = {self.n}")

    def atoms(self) -> list:
        return ([("1", i) for i in self.ones] + [("+",) + t for t in self.sums]
                + [("*",) + t for t in self.prods])


def extract_relations(backend: Backend, elements) -> RelTable:
    """Every satisfied atom among the elements (1-based indices)."""
    idx = backend.index(elements)
    n = len(elements)
    k1 = idx.find(backend.one())
    ones = [k1 + 1] if k1 is not None else []
    sums, prods = [], []
    for i in range(n):
        for j in range(i, n):
            for op, out in (("+", sums), ("*", prods)):
                try:
                    k = idx.match(op, i, j)
                except AmbiguousEquality as e:
                    raise AmbiguousEquality(f"x{i + 1} {op} x{j + 1}: {e}", pair=(i + 1, j + 1)) from None
                if k is not None:
                    out.append((i + 1, j + 1, k + 1))
    return RelTable(n, ones, sums, prods)


# certificates -----------------------------------------------------------------

@dataclass
class Certificate:
    backend: Backend
    elements: list
    relations: RelTable
    trace: dict = field(default_factory=dict)

    @classmethod
    def build(cls, backend: Backend, elements, trace=None) -> "Certificate":
        """Deduplicate (the first element is the target and stays first)
        and extract relations."""
        elems = dedup(backend, elements)
        return cls(backend, elems, extract_relations(backend, elems), dict(trace or {}))

    @property
    def target(self):
        return self.elements[0]

    @property
    def n(self) -> int:
        return len(self.elements)

    def without(self, indices) -> "Certificate":
        drop = set(indices)
        if 1 in drop:
            raise ValueError("the target cannot be removed")
        elems = [v for i, v in enumerate(self.elements, 1) if i not in drop]
        return Certificate(self.backend, elems, extract_relations(self.backend, elems), dict(self.trace))

    def index_of(self, value):
        k = self.backend.index(self.elements).find(value)
        return None if k is None else k + 1

    def __eq__(self, other):
        if not isinstance(other, Certificate):
            return NotImplemented
        if self.backend != other.backend or self.n != other.n:
            return False
        return (self.relations == other.relations
                and all(self.backend.eq(a, b) for a, b in zip(self.elements, other.elements)))


# the formula Phi ------------------------------------------------------------

@dataclass(frozen=True)
class Formula:
    atoms: tuple
    V: frozenset
    target_in_V: bool

    def sexpr(self) -> str:
        parts = []
        for a in self.atoms:
            if a[0] == "1":
                parts.append(f"(= x{a[1]} 1)")
            else:
                parts.append(f"(= ({a[0]} x{a[1]} x{a[2]}) x{a[3]})")
        return "(and" + "".join(" " + p for p in parts) + ")"

    def __str__(self):
        return self.sexpr()


def build_formula(rt: RelTable) -> Formula:
    atoms = tuple(rt.atoms())
    V = frozenset(i for a in atoms for i in a[1:])
    f = Formula(atoms, V, 1 in V)
    if not f.target_in_V:
        warnings.warn("x1 occurs in no atom; the set cannot be adequate", TargetNotInV, stacklevel=2)
    return f


# combinators ------------------------------------------------------------------

def _same_backend(c1: Certificate, c2: Certificate):
    if c1.backend != c2.backend:
        raise BackendMismatch(f"{c1.backend.descriptor()} vs {c2.backend.descriptor()}")


def _combined(backend, target, parts, op, trace_src):
    elems = [target]
    for c in parts:
        elems.extend(c.elements)
    trace = {"op": op}
    for k, v in trace_src.items():
        trace.setdefault(k, v)
    return Certificate.build(backend, elems, trace)


def combine_neg(c: Certificate) -> Certificate:
    b = c.backend
    return _combined(b, b.neg(c.target), [Certificate(b, [b.zero()], None), c], "neg", c.trace)


def combine_inv(c: Certificate) -> Certificate:
    b = c.backend
    if b.is_zero(c.target):
        raise ZeroTarget("cannot invert a certificate for 0")
    return _combined(b, b.inv(c.target), [Certificate(b, [b.one()], None), c], "inv", c.trace)


def combine_add(c1: Certificate, c2: Certificate) -> Certificate:
    _same_backend(c1, c2)
    b = c1.backend
    return _combined(b, b.add(c1.target, c2.target), [c1, c2], "add", c1.trace)


def combine_mul(c1: Certificate, c2: Certificate) -> Certificate:
    _same_backend(c1, c2)
    b = c1.backend
    return _combined(b, b.mul(c1.target, c2.target), [c1, c2], "mul", c1.trace)


# integer chains -----------------------------------------------------------

def binary_chain(n: int) -> list:
    """Positive integers from which n is reachable from 1 by sums
    (halving when even, subtracting one when odd)."""
    out = []
    while n >= 1:
        out.append(n)
        n = n // 2 if n % 2 == 0 else n - 1
    return out[::-1]


def integer_support(linear_to: int, others) -> list:
    """1..linear_to by +1 steps, plus binary chains for larger integers."""
    vals = list(range(1, linear_to + 1))
    seen = set(vals)
    for m in others:
        for v in binary_chain(abs(int(m))):
            if v not in seen:
                seen.add(v)
                vals.append(v)
    return vals


def rational_support(q: Fraction) -> list:
    """Rationals so that q is derivable: numerator/denominator chains,
    the quotient, and its negative via 0 when q < 0."""
    q = Fraction(q)
    a, b = abs(q.numerator), q.denominator
    out = [Fraction(v) for v in integer_support(0, [a, b])]
    out.append(Fraction(a, b))
    if q < 0:
        out += [Fraction(0), q]
    return out


# constructions over the rationals and reals --------------------------------

def construct_rational(q) -> Certificate:
    q = Fraction(q)
    elems = [q, Fraction(0), Fraction(1)] + rational_support(q)
    return Certificate.build(RatBackend(), elems, {"mode": "chain"})


def _iso_bounds(r: AlgReal):
    return Fraction(r.iso.lo), Fraction(r.iso.hi)


def _gadgets(rv, alpha, beta) -> list:
    """alpha, r - alpha, sqrt(r - alpha), beta, beta - r, sqrt(beta - r)."""
    ra = real_sub(rv, alpha)
    br = real_sub(beta, rv)
    return [alpha, ra, real_roots_of(ra, 2)[0], beta, br, real_roots_of(br, 2)[0]]


def _horner(backend, coeffs, rv) -> list:
    """Evaluation chain for sum a_i r^i = 0, highest coefficient first."""
    out = []
    h = backend.const(coeffs[-1])
    for a in reversed(coeffs[:-1]):
        p = backend.mul(h, rv)
        out.append(p)
        h = backend.add(p, backend.const(a))
        out.append(h)
    return out


def construct_real(r: AlgReal, mode: str = "chain", cap: int = SIZE_CAP) -> Certificate:
    """Adequate set for the real algebraic number r."""
    if mode not in ("chain", "paper"):
        raise ValueError(f"unknown mode {mode!r}")
    backend = RealBackend()
    if algreal_compare(r, AlgReal.from_rational(0)) == Ordering.LT:
        inner = construct_real(-r, mode, cap)
        out = combine_neg(inner)
        out.trace = {k: v for k, v in inner.trace.items() if k != "op"}
        out.trace["case"] = "2"
        return out

    P = r.defining
    coeffs = [int(c) for c in P.coeffs]
    alpha, beta = _iso_bounds(r)
    rv = real_simplify(span_value(r, (0, 1))) if r.rational is None else r.rational
    ends = [alpha.numerator, alpha.denominator, beta.numerator, beta.denominator]
    a = max([abs(c) for c in coeffs] + [abs(e) for e in ends])
    trace = {"mode": mode, "alpha": format_rat(alpha), "beta": format_rat(beta),
             "a": str(a), "case": "1", "poly": format_poly(P)}

    if mode == "paper":
        n = P.degree
        size = (2 * a + 1) ** (n + 1)
        if size > cap:
            raise SizeCapExceeded(f"span has (2*{a}+1)^{n + 1} = {size} elements, cap is {cap}")
        span = []
        for b in product(range(-a, a + 1), repeat=n + 1):
            if r.rational is not None:
                span.append(sum(Fraction(bi) * r.rational**i for i, bi in enumerate(b)))
            else:
                span.append(real_simplify(span_value(r, b)))
        elems = [rv] + span + _gadgets(rv, alpha, beta)
        return Certificate.build(backend, elems, trace)

    A = max(abs(c) for c in coeffs)
    ints = [Fraction(v) for v in integer_support(A, [])]
    elems = [rv, Fraction(0), Fraction(1)] + ints + _horner(backend, coeffs, rv)
    for q in (alpha, beta):
        elems += rational_support(q)
    elems += _gadgets(rv, alpha, beta)
    return Certificate.build(backend, elems, trace)


# p-adic construction ----------------------------------------------------------

def select_root(roots, residue: int, p: int):
    """The unique root congruent to ``residue`` modulo p**k, where p**k is
    the least power of p exceeding the residue."""
    if residue < 0:
        raise NotARoot("residue must be nonnegative")
    k = 1
    while p**k <= residue:
        k += 1
    hits = [x for x in roots if x.val >= 0 and x.prec >= k and x.to_int_mod(k) == residue]
    if not hits:
        raise NotARoot(f"no root is congruent to {residue} modulo {p}^{k}")
    if len(hits) > 1:
        raise NotARoot(f"{len(hits)} roots are congruent to {residue} modulo {p}^{k}; "
                       f"give a residue modulo a higher power of {p}")
    return hits[0]


def _padic_support(backend, q) -> list:
    return [backend.const(v) for v in rational_support(q)]


def construct_padic(P: Poly, r: PadicApprox, mode: str = "chain", cap: int = SIZE_CAP,
                    N: int = DEFAULT_PREC) -> Certificate:
    if mode not in ("chain", "paper"):
        raise ValueError(f"unknown mode {mode!r}")
    p = r.p
    backend = PadicBackend(p, N)
    P = P.primitive()
    roots = padic_roots(P, p, N)
    own = [x for x in roots if _padic_near(backend, x, r)]
    if not own:
        raise NotARoot(f"{format_padic(r)} is not a root of {format_poly(P)} in Q_{p}")
    r = own[0]
    others = [x for x in roots if x is not r]
    coeffs = [int(c) for c in P.coeffs]

    gadgets, seps = [], []
    for rj in others:
        m, u = separate(r, rj)
        pm = padic_from_rat(Fraction(p) ** (m + 1), p, N)
        z = (r - u) / pm
        y = lemma2_witness(z)
        seps.append((m, u, y))
        z2 = z * z
        z3 = z2 * z
        y2 = y * y
        if mode == "paper":
            gadgets += [backend.const(u), r - u, z, z2, p * z2, z3, p * z3, y, y2, y2 * y]
        elif p == 2:
            gadgets += [backend.const(u), r - u, pm, z, z2, z3, 2 * z3, y, y2, y2 * y]
        else:
            gadgets += [backend.const(u), r - u, pm, z, z2, p * z2, y, y2]

    trace = {"mode": mode, "p": str(p), "N": str(N), "poly": format_poly(P),
             "roots": ",".join(format_padic(x) for x in roots)}
    for j, (m, u, y) in enumerate(seps, 2):
        trace[f"gadget{j}"] = f"m:{m},u:{format_rat(u)},y:{format_padic(y)}"

    if mode == "paper":
        a = max([p] + [abs(c) for c in coeffs]
                + [max(abs(u.numerator), u.denominator, abs(m + 1)) for m, u, _ in seps])
        n = P.degree
        size = (2 * a + 1) ** (n + 1)
        if size > cap:
            raise SizeCapExceeded(f"span has (2*{a}+1)^{n + 1} = {size} elements, cap is {cap}")
        trace["a"] = str(a)
        powers = [r**i for i in range(n + 1)]
        span = []
        for b in product(range(-a, a + 1), repeat=n + 1):
            acc = backend.zero()
            for bi, ri in zip(b, powers):
                if bi:
                    acc = acc + bi * ri
            span.append(acc)
        pw = [padic_from_rat(Fraction(p) ** w, p, N) for w in range(-a, a + 1)]
        return Certificate.build(backend, [r] + span + pw + gadgets, trace)

    A = max(abs(c) for c in coeffs)
    elems = [r, backend.zero(), backend.one()]
    elems += [backend.const(v) for v in integer_support(A, [p])]
    elems += _horner(backend, coeffs, r)
    for m, u, _ in seps:
        elems += _padic_support(backend, u)
        elems += _padic_support(backend, Fraction(p) ** abs(m + 1))
        if m + 1 < 0:
            elems.append(backend.const(Fraction(p) ** (m + 1)))
    elems += gadgets
    return Certificate.build(backend, elems, trace)


def _padic_near(backend: PadicBackend, x: PadicApprox, r: PadicApprox) -> bool:
    """x agrees with r on all digits r carries."""
    d = x - r
    return d.is_zero() or d.val >= r.prec


# counting bound ---------------------------------------------------------------

def bound_Kn(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return (n + 1) ** (n * n + n + 1)


def syntactic_tables(n: int):
    """Every relation table the counting argument allows: one choice for
    the index equal to 1 (or none), and per unordered cell i <= j an
    outcome k (or none) for the sum and for the product."""
    cells = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    opts = range(n + 1)  # 0 means "no atom"
    for one in opts:
        for s in product(opts, repeat=len(cells)):
            for m in product(opts, repeat=len(cells)):
                yield RelTable(
                    n,
                    (one,) if one else (),
                    tuple(c + (k,) for c, k in zip(cells, s) if k),
                    tuple(c + (k,) for c, k in zip(cells, m) if k),
                )


# single-polynomial encoding ---------------------------------------------------

def _sympy():
    import sympy

    return sympy


def relation_atoms(rt: RelTable):
    """Atoms as sympy expressions equal to zero, with their symbols."""
    sp = _sympy()
    xs = sp.symbols(f"x1:{rt.n + 1}")
    out = []
    for a in rt.atoms():
        if a[0] == "1":
            out.append(xs[a[1] - 1] - 1)
        elif a[0] == "+":
            out.append(xs[a[1] - 1] + xs[a[2] - 1] - xs[a[3] - 1])
        else:
            out.append(xs[a[1] - 1] * xs[a[2] - 1] - xs[a[3] - 1])
    return out, xs


def single_poly_encode(atoms, nonroot: Poly, max_degree: int = 256):
    """One polynomial vanishing exactly where all atoms vanish.

    B(u, v) = sum a_i u^i v^(n-i) is the homogenization of ``nonroot``; the
    atoms are folded from the left, T <- B(T, atom).
    """
    sp = _sympy()
    n = nonroot.degree
    if n < 2:
        raise DegreeTooSmall(f"nonroot must have degree >= 2, got {n}")
    atoms = [sp.sympify(a) for a in atoms]
    if not atoms:
        return sp.Integer(0)
    coeffs = [sp.Rational(c.numerator, c.denominator) for c in nonroot.primitive().coeffs]

    deg = sp.Poly(atoms[0]).total_degree() if atoms[0].free_symbols else 0
    for a in atoms[1:]:
        da = sp.Poly(a).total_degree() if a.free_symbols else 0
        deg = n * max(deg, da)
        if deg > max_degree:
            raise EncodingTooLarge(
                f"folding {len(atoms)} atoms through a degree-{n} form exceeds total degree {max_degree}")

    T = atoms[0]
    for a in atoms[1:]:
        T = sp.expand(sum(c * T**i * a ** (n - i) for i, c in enumerate(coeffs)))
    return sp.expand(T)


def format_multipoly(T, gens) -> str:
    """Expanded form, monomials in descending graded-lex order."""
    sp = _sympy()
    if T == 0:
        return "0"
    poly = sp.Poly(T, *gens)
    terms = poly.terms(order="grlex")
    parts = []
    for mon, c in terms:
        factors = []
        for g, e in zip(gens, mon):
            if e == 1:
                factors.append(str(g))
            elif e > 1:
                factors.append(f"{g}^{e}")
        c = sp.Integer(c) if c == int(c) else c
        mag = abs(c)
        body = "*".join(factors)
        if not body:
            term = str(mag)
        elif mag == 1:
            term = body
        else:
            term = f"{mag}*{body}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, term))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def least_nonresidue(p: int) -> int:
    for c in range(2, p):
        if pow(c, (p - 1) // 2, p) == p - 1:
            return c
    raise ValueError(f"no non-residue modulo {p}")


def default_nonroot(backend: Backend) -> Poly:
    if isinstance(backend, (RealBackend, RatBackend)):
        return Poly((1, 0, 1))
    if isinstance(backend, PadicBackend):
        if backend.p == 2:
            return Poly((1, 0, 1))
        return Poly((-least_nonresidue(backend.p), 0, 1))
    if isinstance(backend, FFBackend):
        F = backend.field
        for d in range(2, 8):
            for low in product(range(F.p), repeat=d):
                P = Poly(tuple(low) + (1,))
                if all(_ff_eval(P, x) != F.elem(0) for x in F.elements()):
                    return P
    raise ValueError(f"no default nonroot for {backend.descriptor()}")


def _ff_eval(P: Poly, x):
    acc = x.field.elem(0)
    for c in reversed(P.coeffs):
        acc = acc * x + int(c)
    return acc


def check_nonroot(backend: Backend, P: Poly) -> None:
    """Raise ValueError when P has a root in the ambient field."""
    if isinstance(backend, (RealBackend, RatBackend)):
        if isinstance(backend, RealBackend) and isolate_real_roots(P):
            raise ValueError(f"{format_poly(P)} has a real root")
        from .exactnum import rational_roots

        if rational_roots(P):
            raise ValueError(f"{format_poly(P)} has a rational root")
    elif isinstance(backend, PadicBackend):
        if padic_roots(P, backend.p, 8):
            raise ValueError(f"{format_poly(P)} has a root in Q_{backend.p}")
    elif isinstance(backend, FFBackend):
        if any(_ff_eval(P, x) == backend.field.elem(0) for x in backend.field.elements()):
            raise ValueError(f"{format_poly(P)} has a root in {backend.descriptor()}")


def certificate_polynomial(c: Certificate, nonroot: Poly = None) -> str:
    nonroot = nonroot if nonroot is not None else default_nonroot(c.backend)
    check_nonroot(c.backend, nonroot)
    atoms, xs = relation_atoms(c.relations)
    return format_multipoly(single_poly_encode(atoms, nonroot), xs)


# certificate files --------------------------------------------------------------

def write_certificate(c: Certificate) -> str:
    lines = [f"backend {c.backend.descriptor()}"]
    for i, v in enumerate(c.elements, 1):
        lines.append(f"elem {i} {c.backend.format(v)}")
    lines.append("target 1")
    for k, v in c.trace.items():
        lines.append(f"trace {k}={v}")
    return "\n".join(lines) + "\n"


def read_certificate(text: str) -> Certificate:
    backend, elems, trace, target = None, {}, {}, None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "backend":
            backend = parse_backend(rest)
        elif head == "elem":
            if backend is None:
                raise ValueError(f"line {lineno}: elem before backend")
            idx, _, lit = rest.partition(" ")
            i = int(idx)
            if i in elems:
                raise ValueError(f"line {lineno}: duplicate index {i}")
            elems[i] = backend.parse(lit)
        elif head == "target":
            target = int(rest)
        elif head == "trace":
            k, sep, v = rest.partition("=")
            if not sep:
                raise ValueError(f"line {lineno}: trace entry needs key=value")
            trace[k] = v
        else:
            raise ValueError(f"line {lineno}: unknown record {head!r}")
    if backend is None:
        raise ValueError("missing backend line")
    if sorted(elems) != list(range(1, len(elems) + 1)) or not elems:
        raise ValueError("element indices must be 1..n")
    if target != 1:
        raise ValueError("target must be 1")
    values = [elems[i] for i in range(1, len(elems) + 1)]
    idx = backend.index()
    for i, v in enumerate(values, 1):
        if idx.find(v) is not None:
            raise ValueError(f"element {i} duplicates an earlier element")
        idx.append(v)
    return Certificate(backend, values, extract_relations(backend, values), trace)

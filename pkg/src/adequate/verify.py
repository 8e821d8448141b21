"""Adequacy verification.

Over a finite field every map is enumerated (with pruning).  Over the
infinite fields the relation table is read as a derivation graph: the
values reachable from a seed element by sums and products become
polynomials in the seed, which pins the seed to the roots of one
polynomial T.  Each root is then propagated through the relations
concretely, branching on square (and cube) roots where a relation has that
shape.  A candidate that survives with the target moved yields a witness,
which is replayed against the table before it is reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .algreal import AlgExpr, algreal_new, real_simplify
from .backends import AmbiguousEquality, FFBackend, PadicBackend, RatBackend, RealBackend
from .certificate import Certificate, RelTable, extract_relations
from .exactnum import Poly, isolate_real_roots, poly_gcd, rational_roots
from .finitefield import FFElem, FiniteField
from .padic import PadicError, padic_roots

FF_BUDGET = 10**8

ADEQUATE = "ADEQUATE"
NOT_ADEQUATE = "NOT_ADEQUATE"
INCONCLUSIVE = "INCONCLUSIVE"
EXIT_CODES = {ADEQUATE: 0, NOT_ADEQUATE: 1, INCONCLUSIVE: 2}


class BudgetExceeded(RuntimeError):
    pass


class NoDerivation(ValueError):
    pass


@dataclass(frozen=True)
class Exclusion:
    """Why a candidate value for the seed was ruled out."""

    candidate: object
    index: int  # the variable whose constraint failed
    kind: str  # "square", "cube" or "relation"
    value: object  # the radicand, or None for a violated relation


@dataclass
class VerifyResult:
    outcome: str
    witness: dict = None
    reason: str = ""
    exclusions: list = field(default_factory=list)
    backend: object = None

    @property
    def adequate(self) -> bool:
        return self.outcome == ADEQUATE

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.outcome]

    def report(self) -> str:
        head = self.outcome if self.outcome != INCONCLUSIVE else f"{INCONCLUSIVE} {self.reason}"
        lines = [head]
        if self.witness:
            for i in sorted(self.witness):
                lines.append(f"witness {i} {self.backend.format(self.witness[i])}")
        return "\n".join(lines) + "\n"


# witness replay -------------------------------------------------------------

def satisfies(backend, rt: RelTable, f: dict) -> bool:
    """Does the map f (index -> value) satisfy conditions (1)-(3)?"""
    one = backend.one()
    try:
        if any(not backend.eq(f[i], one) for i in rt.ones):
            return False
        for i, j, k in rt.sums:
            if not backend.eq(backend.add(f[i], f[j]), f[k]):
                return False
        for i, j, k in rt.prods:
            if not backend.eq(backend.mul(f[i], f[j]), f[k]):
                return False
    except AmbiguousEquality:
        return False
    return True


# finite fields ----------------------------------------------------------------

def _components(n: int, rt: RelTable) -> list:
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j, k in rt.sums + rt.prods:
        for a in (j, k):
            ra, rb = find(i), find(a)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups = {}
    for i in range(1, n + 1):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def _ff_lexmin(F: FiniteField, rt: RelTable, comp: list, forbid=None):
    """Lexicographically least assignment of the variables in comp that
    satisfies the relations inside comp; position comp[0] avoids the code
    ``forbid``.  None if there is none."""
    pos = {v: t for t, v in enumerate(comp)}
    inside = set(comp)
    checks = [[] for _ in comp]
    for op, rel in (("+", rt.sums), ("*", rt.prods)):
        for i, j, k in rel:
            if i in inside:
                checks[max(pos[i], pos[j], pos[k])].append((op, pos[i], pos[j], pos[k]))
    ones = set(rt.ones)
    add, mul = F.add_table, F.mul_table
    vals = [0] * len(comp)

    def domain(t):
        if comp[t] in ones:
            return (1,) if (t or forbid != 1) else ()
        return [c for c in range(F.q) if not (t == 0 and c == forbid)]

    def rec(t):
        if t == len(comp):
            return True
        for c in domain(t):
            vals[t] = c
            ok = True
            for op, a, b, k in checks[t]:
                table = add if op == "+" else mul
                if table[vals[a]][vals[b]] != vals[k]:
                    ok = False
                    break
            if ok and rec(t + 1):
                return True
        return False

    return {comp[t]: vals[t] for t in range(len(comp))} if rec(0) else None


_FF_CACHE = {}


def verify_ff(c: Certificate, budget: int = FF_BUDGET) -> VerifyResult:
    """Exhaustive search for a map satisfying (1)-(3) that moves the target."""
    F = c.backend.field
    n = c.n
    if F.q**n > budget:
        raise BudgetExceeded(f"{F.q}^{n} maps exceed the budget of {budget}")
    codes = tuple(v.code for v in c.elements)
    key = (F.p, F.k, frozenset(codes), codes[0])
    if key in _FF_CACHE and _FF_CACHE[key]:
        return VerifyResult(ADEQUATE, backend=c.backend)
    rt = c.relations
    comps = _components(n, rt)
    first = next(comp for comp in comps if comp[0] == 1)
    bad = _ff_lexmin(F, rt, first, forbid=codes[0])
    _FF_CACHE[key] = bad is None
    if bad is None:
        return VerifyResult(ADEQUATE, backend=c.backend)
    f = dict(bad)
    for comp in comps:
        if comp is not first:
            f.update(_ff_lexmin(F, rt, comp))
    witness = {i: FFElem(F, f[i]) for i in range(1, n + 1)}
    assert satisfies(c.backend, rt, witness) and witness[1] != c.target
    return VerifyResult(NOT_ADEQUATE, witness=witness, backend=c.backend)


def kn_budget(q: int, n: int) -> int:
    return sum(comb(q, m) * q**m for m in range(1, n + 1))


def enumerate_Kn_ff(F: FiniteField, n: int, budget: int = FF_BUDGET) -> list:
    """Elements admitting an adequate set of size at most n."""
    if kn_budget(F.q, n) > budget:
        raise BudgetExceeded(f"enumeration over {F} with n = {n} exceeds the budget of {budget}")
    backend = FFBackend(F)
    elems = F.elements()
    out = []
    for r in elems:
        others = [e for e in elems if e != r]
        found = False
        for m in range(0, n):
            for rest in combinations(others, m):
                values = [r, *rest]
                cert = Certificate(backend, values, extract_relations(backend, values))
                if verify_ff(cert).adequate:
                    found = True
                    break
            if found:
                break
        if found:
            out.append(r)
    return out


# symbolic derivation -----------------------------------------------------------

class _Derivation:
    """Polynomials in the seed for every derivable variable, reduced modulo
    the accumulated constraint T."""

    def __init__(self, rt: RelTable, seed: int):
        self.rt = rt
        self.seed = seed
        self.T = None
        self.known = {}
        self._run()

    def _reduce(self, P: Poly) -> Poly:
        return P % self.T if self.T is not None and P.degree >= self.T.degree else P

    def _constrain(self, c: Poly) -> bool:
        c = self._reduce(c)
        if not c:
            return False
        self.T = (c if self.T is None else poly_gcd(self.T, c)).primitive()
        if self.T.degree > 0:
            self.known = {i: self._reduce(P) for i, P in self.known.items()}
        return True

    def _assign(self, i: int, P: Poly) -> bool:
        if self.T is not None and self.T.degree == 0:
            return False
        if i in self.known:
            return self._constrain(self.known[i] - P)
        self.known[i] = self._reduce(P)
        return True

    def _run(self):
        rt = self.rt
        self._assign(self.seed, Poly((0, 1)))
        for i in rt.ones:
            self._assign(i, Poly.const(1))
        for i, j, k in rt.sums:
            if i == j == k:
                self._assign(i, Poly())
        changed = True
        while changed and not (self.T is not None and self.T.degree == 0):
            changed = False
            K = self.known
            for i, j, k in rt.sums:
                have = (i in K, j in K, k in K)
                if all(have):
                    changed |= self._constrain(K[i] + K[j] - K[k])
                elif have[0] and have[1]:
                    changed |= self._assign(k, K[i] + K[j])
                elif i == j and have[2]:
                    changed |= self._assign(i, K[k] * Fraction(1, 2))
                elif have[0] and have[2]:
                    changed |= self._assign(j, K[k] - K[i])
                elif have[1] and have[2]:
                    changed |= self._assign(i, K[k] - K[j])
            for i, j, k in rt.prods:
                have = (i in K, j in K, k in K)
                if have[0] and have[1]:
                    if have[2]:
                        changed |= self._constrain(K[i] * K[j] - K[k])
                    else:
                        changed |= self._assign(k, self._reduce(K[i] * K[j]))
                    continue
                for a, b in ((i, j), (j, i)):
                    if a in K and K[a].degree <= 0:
                        ca = K[a][0] if K[a] else Fraction(0)
                        if ca == 0:
                            changed |= self._assign(k, Poly())
                        elif k in K and b not in K:
                            changed |= self._assign(b, K[k] * (1 / Fraction(ca)))
                        break


def extract_target_poly(c, seed: int = 1) -> Poly:
    """Polynomial T with T(f(x_seed)) = 0 for every map satisfying (1)-(3)."""
    rt = c.relations if isinstance(c, Certificate) else c
    d = _Derivation(rt, seed)
    if d.T is None or d.T.degree < 1:
        raise NoDerivation(f"no polynomial constraint on x{seed} is derivable")
    return d.T


# candidate propagation -----------------------------------------------------------

class _Undetermined(Exception):
    pass


class _Propagator:
    def __init__(self, backend, c: Certificate, comp: set):
        self.b = backend
        self.c = c
        self.rt = c.relations
        self.comp = comp
        self.exclusion = None

    def run(self, values: dict):
        """A full satisfying assignment extending ``values``, or None if
        every branch fails.  Raises _Undetermined when stuck."""
        values = dict(values)
        undetermined = None
        try:
            ok = self._close(values)
        except (AmbiguousEquality, PadicError, ZeroDivisionError) as e:
            raise _Undetermined(str(e)) from None
        if not ok:
            return None
        missing = [i for i in sorted(self.comp) if i not in values]
        if not missing:
            return values
        branch = self._branch(values, missing)
        if branch is None:
            raise _Undetermined(f"x{missing[0]} is constrained but not derivable")
        var, kind, w, options = branch
        if not options:
            self.exclusion = (var, kind, w)
            return None
        for y in options:
            trial = dict(values)
            trial[var] = y
            try:
                out = self.run(trial)
            except _Undetermined as e:
                undetermined = e
                continue
            if out is not None:
                return out
        if undetermined is not None:
            raise undetermined
        return None

    def _close(self, v: dict) -> bool:
        b, rt = self.b, self.rt
        changed = True
        while changed:
            changed = False
            for i, j, k in rt.sums:
                have = (i in v, j in v, k in v)
                if all(have):
                    if not b.eq(b.add(v[i], v[j]), v[k]):
                        self.exclusion = (k, "relation", None)
                        return False
                elif have[0] and have[1]:
                    v[k] = b.add(v[i], v[j])
                    changed = True
                elif i == j and have[2]:
                    v[i] = b.div(v[k], b.const(2))
                    changed = True
                elif have[0] and have[2]:
                    v[j] = b.sub(v[k], v[i])
                    changed = True
                elif have[1] and have[2]:
                    v[i] = b.sub(v[k], v[j])
                    changed = True
            for i, j, k in rt.prods:
                have = (i in v, j in v, k in v)
                if have[0] and have[1]:
                    if have[2]:
                        if not b.eq(b.mul(v[i], v[j]), v[k]):
                            self.exclusion = (k, "relation", None)
                            return False
                    else:
                        v[k] = b.mul(v[i], v[j])
                        changed = True
                    continue
                for a, o in ((i, j), (j, i)):
                    if a in v and a != o:
                        if b.is_zero(v[a]):
                            if k in v:
                                if not b.is_zero(v[k]):
                                    self.exclusion = (k, "relation", None)
                                    return False
                            else:
                                v[k] = b.zero()
                                changed = True
                        elif k in v and o not in v:
                            v[o] = b.div(v[k], v[a])
                            changed = True
                        break
        return True

    def _branch(self, v: dict, missing: list):
        rt, b = self.rt, self.b
        miss = set(missing)
        for y in missing:
            for i, j, k in rt.prods:
                if i == j == y and k == y:
                    return y, "idempotent", None, [b.zero(), b.one()]
                if i == j == y and k in v:
                    return y, "square", v[k], b.roots(v[k], 2)
            for i, j, t in rt.prods:
                if i == j == y and t in miss and t != y:
                    for a, c2, w in rt.prods:
                        if {a, c2} == {y, t} and a != c2 and w in v:
                            return y, "cube", v[w], b.roots(v[w], 3)
        return None


def _seed_component(rt: RelTable, n: int, seed: int) -> set:
    for comp in _components(n, rt):
        if seed in comp:
            return set(comp)
    return {seed}


def _candidates(backend, T: Poly):
    if isinstance(backend, RealBackend):
        return [real_simplify(algreal_new(T, I)) for I in isolate_real_roots(T)]
    if isinstance(backend, RatBackend):
        return sorted(rational_roots(T))
    if isinstance(backend, PadicBackend):
        return padic_roots(T, backend.p, backend.N)
    raise TypeError(f"no candidate enumeration for {backend.descriptor()}")


def _evaluate(backend, P: Poly, rho):
    """P(rho) in the backend, keeping reals inside Q(rho)."""
    if isinstance(backend, RealBackend):
        if isinstance(rho, Fraction):
            return P(rho)
        return real_simplify(AlgExpr(rho, P))
    if isinstance(backend, PadicBackend):
        acc = backend.zero()
        for coef in reversed(P.coeffs):
            acc = acc * rho + backend.const(coef)
        return acc
    return P(rho)


def verify_derivation(c: Certificate) -> VerifyResult:
    """Candidate propagation for the characteristic-zero backends."""
    b = c.backend
    rt = c.relations
    n = c.n
    deriv = None
    for seed in range(1, n + 1):
        d = _Derivation(rt, seed)
        if d.T is not None and d.T.degree >= 1:
            deriv = d
            break
    if deriv is None:
        return VerifyResult(INCONCLUSIVE, reason="no polynomial constraint is derivable", backend=b)
    seed = deriv.seed
    comp = _seed_component(rt, n, seed)
    if 1 not in comp:
        return VerifyResult(INCONCLUSIVE, reason="target is not linked to any derivation", backend=b)
    try:
        cands = _candidates(b, deriv.T)
    except PadicError as e:
        return VerifyResult(INCONCLUSIVE, reason=f"root finding failed: {e}", backend=b)

    exclusions, stuck = [], None
    for rho in cands:
        try:
            if seed == 1 and b.eq(rho, c.target):
                continue
            values = {i: _evaluate(b, P, rho) for i, P in deriv.known.items()}
        except (AmbiguousEquality, PadicError) as e:
            stuck = stuck or f"candidate comparison failed: {e}"
            continue
        prop = _Propagator(b, c, comp)
        try:
            f = prop.run(values)
        except _Undetermined as e:
            stuck = stuck or str(e)
            continue
        if f is None:
            if prop.exclusion is not None:
                exclusions.append(Exclusion(rho, *prop.exclusion))
            continue
        try:
            moved = not b.eq(f[1], c.target)
        except AmbiguousEquality as e:
            stuck = stuck or str(e)
            continue
        if not moved:
            continue
        for i in range(1, n + 1):
            f.setdefault(i, c.elements[i - 1])
        if satisfies(b, rt, f):
            return VerifyResult(NOT_ADEQUATE, witness=f, exclusions=exclusions, backend=b)
        stuck = stuck or "a candidate witness failed replay"
    if stuck is not None:
        return VerifyResult(INCONCLUSIVE, reason=stuck, exclusions=exclusions, backend=b)
    return VerifyResult(ADEQUATE, exclusions=exclusions, backend=b)


def verify_real(c: Certificate) -> VerifyResult:
    return verify_derivation(c)


def verify_padic(c: Certificate) -> VerifyResult:
    return verify_derivation(c)


def verify_rat(c: Certificate) -> VerifyResult:
    return verify_derivation(c)


def verify(c: Certificate) -> VerifyResult:
    if isinstance(c.backend, FFBackend):
        return verify_ff(c)
    return verify_derivation(c)

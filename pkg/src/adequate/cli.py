"""Command-line entry point.

Exit codes: 0 adequate / success, 1 not adequate, 2 inconclusive,
3 malformed input or a failed precondition.
"""

from __future__ import annotations

import argparse
import sys
import warnings

from .algreal import algreal_new
from .certificate import (
    TargetNotInV,
    bound_Kn,
    build_formula,
    certificate_polynomial,
    combine_add,
    combine_inv,
    combine_mul,
    combine_neg,
    construct_padic,
    construct_real,
    read_certificate,
    select_root,
    write_certificate,
)
from .exactnum import Interval, parse_poly, parse_rat
from .finitefield import ff_prime_subfield, field, format_ffelem
from .padic import DEFAULT_PREC, format_padic, hensel_lift, is_prime, padic_from_rat, padic_roots, separate
from .verify import enumerate_Kn_ff, verify

EXIT_INPUT = 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _prime(text: str) -> int:
    p = int(text)
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    return p


def _iso(text: str) -> Interval:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"--iso needs lo,hi, got {text!r}")
    lo, hi = (parse_rat(x) for x in parts)
    if lo > hi:
        raise InputError("--iso needs lo <= hi")
    return Interval(lo, hi)


def _ff_text(x) -> str:
    return str(x.vec[0]) if not any(x.vec[1:]) else format_ffelem(x)


def _set_text(xs) -> str:
    return "{" + ", ".join(_ff_text(x) for x in xs) + "}"


# subcommands ------------------------------------------------------------------

def cmd_construct_real(a) -> int:
    r = algreal_new(parse_poly(a.poly), _iso(a.iso))
    _write(a.out, write_certificate(construct_real(r, a.mode)))
    return 0


def cmd_construct_padic(a) -> int:
    p = _prime(a.p)
    P = parse_poly(a.poly)
    r = select_root(padic_roots(P, p, a.prec), a.root_residue, p)
    _write(a.out, write_certificate(construct_padic(P, r, a.mode, N=a.prec)))
    return 0


def cmd_verify(a) -> int:
    res = verify(read_certificate(_read(a.cert)))
    sys.stdout.write(res.report())
    return res.exit_code


def cmd_combine(a) -> int:
    c1 = read_certificate(_read(a.cert))
    if a.op in ("add", "mul"):
        if not a.cert2:
            raise InputError(f"--op {a.op} needs --cert2")
        c2 = read_certificate(_read(a.cert2))
        out = (combine_add if a.op == "add" else combine_mul)(c1, c2)
    else:
        out = (combine_neg if a.op == "neg" else combine_inv)(c1)
    _write(a.out, write_certificate(out))
    return 0


def cmd_formula(a) -> int:
    c = read_certificate(_read(a.cert))
    if a.single_poly:
        nonroot = parse_poly(a.nonroot) if a.nonroot else None
        print(certificate_polynomial(c, nonroot))
        return 0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TargetNotInV)
        f = build_formula(c.relations)
    print(f.sexpr())
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return 0


def cmd_ff_enum(a) -> int:
    F = field(_prime(a.p), a.k)
    print(_set_text(enumerate_Kn_ff(F, a.n)))
    print(f"prime subfield {_set_text(ff_prime_subfield(F))}")
    return 0


def cmd_bound(a) -> int:
    print(bound_Kn(a.n))
    return 0


def cmd_padic_roots(a) -> int:
    for x in padic_roots(parse_poly(a.poly), _prime(a.p), a.prec):
        print(format_padic(x))
    return 0


def cmd_hensel(a) -> int:
    p = _prime(a.p)
    print(format_padic(hensel_lift(parse_poly(a.poly), parse_rat(a.a0), p, a.prec)))
    return 0


def cmd_separate(a) -> int:
    p = _prime(a.p)
    c = padic_from_rat(parse_rat(a.c), p, a.prec)
    d = padic_from_rat(parse_rat(a.d), p, a.prec)
    m, u = separate(c, d)
    print(f"m={m} u={u.numerator}" + (f"/{u.denominator}" if u.denominator != 1 else ""))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="adequate", description="Adequate-set certificates for field rigidity.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("construct-real", help="certificate for a real algebraic number")
    s.add_argument("--poly", required=True)
    s.add_argument("--iso", required=True, help="isolating interval lo,hi")
    s.add_argument("--mode", choices=("chain", "paper"), default="chain")
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_construct_real)

    s = sub.add_parser("construct-padic", help="certificate for a p-adic algebraic number")
    s.add_argument("--poly", required=True)
    s.add_argument("--p", required=True)
    s.add_argument("--root-residue", type=int, required=True)
    s.add_argument("--mode", choices=("chain", "paper"), default="chain")
    s.add_argument("--prec", type=int, default=DEFAULT_PREC)
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_construct_padic)

    s = sub.add_parser("verify", help="decide adequacy of a certificate")
    s.add_argument("--cert", default="-")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("combine", help="subfield combinators")
    s.add_argument("--op", choices=("neg", "inv", "add", "mul"), required=True)
    s.add_argument("--cert", required=True)
    s.add_argument("--cert2")
    s.add_argument("--out", default="-")
    s.set_defaults(fn=cmd_combine)

    s = sub.add_parser("formula", help="export the conjunction of satisfied atoms")
    s.add_argument("--cert", default="-")
    s.add_argument("--single-poly", action="store_true")
    s.add_argument("--nonroot")
    s.set_defaults(fn=cmd_formula)

    s = sub.add_parser("ff-enum", help="elements with an adequate set of size <= n")
    s.add_argument("--p", required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(fn=cmd_ff_enum)

    s = sub.add_parser("bound", help="(n+1)^(n^2+n+1)")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(fn=cmd_bound)

    s = sub.add_parser("padic-roots")
    s.add_argument("--poly", required=True)
    s.add_argument("--p", required=True)
    s.add_argument("--prec", type=int, default=DEFAULT_PREC)
    s.set_defaults(fn=cmd_padic_roots)

    s = sub.add_parser("hensel")
    s.add_argument("--poly", required=True)
    s.add_argument("--p", required=True)
    s.add_argument("--a0", required=True)
    s.add_argument("--prec", type=int, default=DEFAULT_PREC)
    s.set_defaults(fn=cmd_hensel)

    s = sub.add_parser("separate")
    s.add_argument("--p", required=True)
    s.add_argument("--c", required=True)
    s.add_argument("--d", required=True)
    s.add_argument("--prec", type=int, default=DEFAULT_PREC)
    s.set_defaults(fn=cmd_separate)
    return ap


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except (InputError, ValueError, ArithmeticError, OSError, KeyError) as e:
        msg = str(e).splitlines()[0] if str(e) else type(e).__name__
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

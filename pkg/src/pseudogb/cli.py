"""Command-line front end: parse a problem file, run the requested
computation, print a deterministic canonical report.

Problem files are sectioned line-oriented text::

    [field]
    minpoly = -10 0 1          # coefficients, ascending degree
    basis = 1 0 ; 0 1          # optional integral basis rows (rationals)

    [ring]
    vars = x y
    order = degrevlex          # lex | degrevlex | elim:<k>

    [generators]
    poly = y^2 - x^3 + (1728*a + 3348)*x + (44928*a - 324432)
    ideal = 1                  # optional generators of the coefficient ideal

    [scheme]                   # optional, for bad-primes
    dim = 1

    [options]                  # optional
    product_criterion = on
    conductor = auto           # auto | off | <element>
    factor_bound = 10

Unknown sections or keys are rejected.  Exit codes: 0 success, 1 domain
error, 2 parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .apps import (
    AffineScheme,
    bad_primes,
    find_conductor_ideal,
    ideal_intersection,
    ideal_membership,
    intersect_with_R,
)
from .mpoly import MonomialOrder, PolyRing
from .numberfield import FracIdeal, NumberField, factor_ideal, ideal_from_generators
from .pseudo import PseudoBasis, PseudoPoly, buchberger, strong_basis
from .textio import PolyParseError, format_element, format_ideal, format_poly, parse_element, parse_poly


class ProblemFileError(ValueError):
    pass


@dataclass
class ProblemFile:
    field: NumberField
    ring: PolyRing
    generators: PseudoBasis
    scheme_dim: int | None = None
    product_criterion: bool = True
    conductor_mode: str = "auto"
    factor_bound: int = 100


_KNOWN = {
    "field": {"minpoly", "basis"},
    "ring": {"vars", "order"},
    "generators": {"poly", "ideal"},
    "scheme": {"dim"},
    "options": {"product_criterion", "conductor", "factor_bound"},
}


def _parse_fraction(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except ValueError as exc:
        raise ProblemFileError(f"bad rational literal {tok!r}") from exc


def _parse_order(spec: str) -> MonomialOrder:
    if spec == "lex":
        return MonomialOrder.lex()
    if spec == "degrevlex":
        return MonomialOrder.degrevlex()
    if spec.startswith("elim:"):
        try:
            return MonomialOrder.elim(int(spec[5:]))
        except ValueError as exc:
            raise ProblemFileError(f"bad order spec {spec!r}") from exc
    raise ProblemFileError(f"unknown order {spec!r}")


def parse_problem_file(path: str, order_override: str | None = None) -> ProblemFile:
    sections: dict[str, list[tuple[str, str]]] = {}
    current = None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in _KNOWN:
                raise ProblemFileError(f"line {lineno}: unknown section [{current}]")
            sections.setdefault(current, [])
            continue
        if current is None or "=" not in line:
            raise ProblemFileError(f"line {lineno}: expected 'key = value' inside a section")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KNOWN[current]:
            raise ProblemFileError(f"line {lineno}: unknown key {key!r} in [{current}]")
        sections[current].append((key, value))

    for required in ("field", "ring", "generators"):
        if required not in sections:
            raise ProblemFileError(f"missing required section [{required}]")

    fielddata = dict(sections["field"])
    if "minpoly" not in fielddata:
        raise ProblemFileError("missing minpoly in [field]")
    minpoly = [int(t) for t in fielddata["minpoly"].split()]
    basis = None
    if "basis" in fielddata:
        basis = [
            [_parse_fraction(t) for t in row.split()]
            for row in fielddata["basis"].split(";")
        ]
    try:
        field = NumberField(minpoly, basis)
    except ValueError as exc:
        raise ProblemFileError(str(exc)) from exc

    ringdata = dict(sections["ring"])
    if "vars" not in ringdata:
        raise ProblemFileError("missing vars in [ring]")
    names = tuple(ringdata["vars"].split())
    if len(set(names)) != len(names):
        raise ProblemFileError("duplicate variable names")
    order = _parse_order(order_override or ringdata.get("order", "degrevlex"))
    if order.kind == "block" and not 0 <= order.k <= len(names):
        raise ProblemFileError("elimination block size out of range")
    ring = PolyRing(field, names, order)

    gens: list[PseudoPoly] = []
    try:
        for key, value in sections["generators"]:
            if key == "poly":
                poly = parse_poly(value, ring)
                if poly.is_zero():
                    raise ProblemFileError("zero generator polynomial")
                gens.append(PseudoPoly(poly, field.unit_ideal()))
            else:
                if not gens:
                    raise ProblemFileError("ideal line before any poly line")
                elems = [parse_element(t.strip(), field) for t in value.split(",")]
                ideal = ideal_from_generators(field, elems)
                gens[-1] = PseudoPoly(gens[-1].f, ideal)
    except PolyParseError as exc:
        raise ProblemFileError(str(exc)) from exc
    if not gens:
        raise ProblemFileError("no generators given")

    pf = ProblemFile(field=field, ring=ring, generators=PseudoBasis(tuple(gens)))
    if "scheme" in sections:
        schemedata = dict(sections["scheme"])
        if "dim" not in schemedata:
            raise ProblemFileError("missing dim in [scheme]")
        pf.scheme_dim = int(schemedata["dim"])
    if "options" in sections:
        opts = dict(sections["options"])
        if "product_criterion" in opts:
            flag = opts["product_criterion"].lower()
            if flag not in ("on", "off"):
                raise ProblemFileError("product_criterion must be on or off")
            pf.product_criterion = flag == "on"
        if "conductor" in opts:
            pf.conductor_mode = opts["conductor"]
        if "factor_bound" in opts:
            pf.factor_bound = int(opts["factor_bound"])
    return pf


def _resolve_conductor(pf: ProblemFile, mode: str | None) -> FracIdeal | None:
    mode = mode if mode is not None else pf.conductor_mode
    if mode == "off":
        return None
    if mode == "auto":
        return find_conductor_ideal(pf.generators)
    elem = parse_element(mode, pf.field)
    if elem.is_zero():
        raise ProblemFileError("explicit conductor element must be non-zero")
    return ideal_from_generators(pf.field, [elem])


def _trace_fn():
    if os.environ.get("PSEUDOGB_VERBOSE") == "1":
        return lambda msg: print(msg, file=sys.stderr)
    return None


def _print_basis(G: PseudoBasis, out):
    for i, p in enumerate(G, 1):
        print(f"element {i}:", file=out)
        print(f"  poly: {format_poly(p.f)}", file=out)
        print(f"  ideal: {format_ideal(p.ideal)}", file=out)


def _gb_opts(pf: ProblemFile, args) -> dict:
    use_pc = pf.product_criterion and not args.no_product_criterion
    conductor = _resolve_conductor(pf, args.conductor)
    return {
        "use_product_criterion": use_pc,
        "conductor": conductor,
        "canonical": args.canonical,
        "trace": _trace_fn(),
    }


def cmd_groebner(args, out) -> int:
    pf = parse_problem_file(args.file, args.order)
    G = buchberger(pf.generators, **_gb_opts(pf, args))
    _print_basis(G, out)
    return 0


def cmd_strong(args, out) -> int:
    pf = parse_problem_file(args.file, args.order)
    G = buchberger(pf.generators, **_gb_opts(pf, args))
    _print_basis(strong_basis(G), out)
    return 0


def cmd_member(args, out) -> int:
    pf = parse_problem_file(args.file, args.order)
    poly = parse_poly(args.poly, pf.ring)
    if args.ideal:
        elems = [parse_element(t.strip(), pf.field) for t in args.ideal.split(",")]
        candidate = PseudoPoly(poly, ideal_from_generators(pf.field, elems))
    else:
        candidate = PseudoPoly(poly, pf.field.unit_ideal())
    verdict = ideal_membership(candidate, pf.generators)
    print("member: " + ("true" if verdict else "false"), file=out)
    return 0


def cmd_intersect(args, out) -> int:
    pf1 = parse_problem_file(args.file1, args.order)
    pf2 = parse_problem_file(args.file2, args.order)
    if pf1.ring != pf2.ring:
        raise ProblemFileError("the two problem files use different rings")
    G = ideal_intersection(pf1.generators, pf2.generators, canonical=args.canonical)
    _print_basis(G, out)
    return 0


def cmd_contract(args, out) -> int:
    pf = parse_problem_file(args.file, args.order)
    N = intersect_with_R(pf.generators, **_gb_opts(pf, args))
    if N is None:
        print("contraction: zero", file=out)
        return 0
    print(f"contraction: {format_ideal(N)}", file=out)
    print(f"norm: {N.norm()}", file=out)
    return 0


def _print_factorization(pairs, out):
    print("factorization:", file=out)
    for P, e in pairs:
        print(
            f"  prime (p={P.p}, e={P.e}, f={P.f}) {format_ideal(P.ideal)} exponent {e}",
            file=out,
        )


def cmd_bad_primes(args, out) -> int:
    pf = parse_problem_file(args.file, args.order)
    if pf.scheme_dim is None:
        raise ProblemFileError("bad-primes needs a [scheme] section with dim")
    X = AffineScheme(tuple(pf.generators), pf.scheme_dim)
    bound = args.bound if args.bound is not None else pf.factor_bound
    report = bad_primes(
        X,
        bound,
        use_product_criterion=pf.product_criterion and not args.no_product_criterion,
        canonical=args.canonical,
        trace=_trace_fn(),
    )
    print(f"conductor ideal: {format_ideal(report.conductor_like_ideal)}", file=out)
    print(f"norm: {report.conductor_like_ideal.norm()}", file=out)
    _print_factorization(report.factorization, out)
    return 0


def cmd_factor_ideal(args, out) -> int:
    pf = parse_problem_file(args.file, args.order)
    if not args.ideal:
        raise ProblemFileError("factor-ideal needs --ideal with generators")
    elems = [parse_element(t.strip(), pf.field) for t in args.ideal.split(",")]
    ideal = ideal_from_generators(pf.field, elems)
    bound = args.bound if args.bound is not None else pf.factor_bound
    print(f"ideal: {format_ideal(ideal)}", file=out)
    print(f"norm: {ideal.norm()}", file=out)
    _print_factorization(factor_ideal(ideal, bound), out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudogb",
        description="pseudo-Groebner bases over rings of integers of number fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, files=("file",)):
        for f in files:
            p.add_argument(f)
        p.add_argument("--order", choices=None, default=None, help="lex | degrevlex | elim:<k>")
        p.add_argument("--no-product-criterion", action="store_true")
        p.add_argument("--conductor", default=None, help="auto | off | <element>")
        p.add_argument("--bound", type=int, default=None)
        canon = p.add_mutually_exclusive_group()
        canon.add_argument("--canonical", dest="canonical", action="store_true", default=True)
        canon.add_argument("--no-canonical", dest="canonical", action="store_false")

    common(sub.add_parser("groebner", help="print a pseudo-Groebner basis"))
    common(sub.add_parser("strong-groebner", help="print a strong pseudo-Groebner basis"))
    p_member = sub.add_parser("member", help="decide ideal membership")
    common(p_member)
    p_member.add_argument("--poly", required=True)
    p_member.add_argument("--ideal", default=None, help="coefficient ideal generators")
    common(sub.add_parser("intersect", help="intersect two ideals"), files=("file1", "file2"))
    common(sub.add_parser("contract", help="contract the ideal to R"))
    common(sub.add_parser("bad-primes", help="primes of bad reduction"))
    p_fi = sub.add_parser("factor-ideal", help="factor an ideal of R into primes")
    common(p_fi)
    p_fi.add_argument("--ideal", default=None, help="ideal generators")
    return parser


_DISPATCH = {
    "groebner": cmd_groebner,
    "strong-groebner": cmd_strong,
    "member": cmd_member,
    "intersect": cmd_intersect,
    "contract": cmd_contract,
    "bad-primes": cmd_bad_primes,
    "factor-ideal": cmd_factor_ideal,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    start = time.monotonic()
    echo = args.command + (
        f" {getattr(args, 'file', '')}" if hasattr(args, "file") else ""
    )
    print(f"# command: {echo.strip()}", file=out)
    try:
        rc = _DISPATCH[args.command](args, out)
    except (ProblemFileError, PolyParseError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(f"# time: {time.monotonic() - start:.3f}s", file=out)
    return rc


if __name__ == "__main__":
    sys.exit(main())

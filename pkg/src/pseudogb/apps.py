"""Applications of pseudo-Groebner bases: conductor-style moduli, ideal
membership, intersections by elimination, contraction to the coefficient
ring, and primes of bad reduction of affine schemes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .mpoly import (
    MonomialOrder,
    Poly,
    PolyRing,
    NotUnitIdealError,
    _det_poly,
    lift_one,
    partial_derivative,
)
from .numberfield import FracIdeal, PrimeIdeal, factor_ideal, ideal_from_generators
from .pseudo import PseudoBasis, PseudoPoly, buchberger, reduce_full
from .zlinalg import IntMat, lattice_intersect


class WrongOrderError(ValueError):
    pass


class ZeroIntersectionError(ValueError):
    pass


def find_conductor_ideal(F: PseudoBasis) -> FracIdeal | None:
    """A non-zero principal ideal of R inside the ideal generated by F, or
    None when the generators do not span the unit ideal over K.

    Writes 1 as a K[x]-combination of the polynomials, then clears all
    cofactor coefficients into the respective coefficient ideals with a
    single rational integer d; d itself then lies in the ideal.
    """
    field = F.ring.field
    try:
        cofactors = lift_one([p.f for p in F])
    except NotUnitIdealError:
        return None
    clearing = field.unit_ideal()
    for p, a in zip(F, cofactors):
        for c, _ in a.terms:
            if not c.is_zero():
                clearing = clearing.intersect(p.ideal.scale(c.inverse()))
    # smallest positive rational integer in the clearing ideal
    d = field.degree
    line = IntMat.from_rows([[1 if k == 0 else 0 for k in range(d)]], d)
    inter = lattice_intersect(clearing.num, line)
    n = inter.data[0][0]
    return ideal_from_generators(field, [field.from_rational(n)])


def groebner_basis(F: PseudoBasis, cache: dict | None = None, **opts) -> PseudoBasis:
    """Pseudo-Groebner basis of F, optionally memoized in a caller-owned
    dict keyed by the basis value."""
    if cache is not None and F in cache:
        return cache[F]
    gb = buchberger(F, **opts)
    if cache is not None:
        cache[F] = gb
    return gb


def ideal_membership(p, F: PseudoBasis, cache: dict | None = None) -> bool:
    """Whether the module of p lies in the ideal generated by F.  A plain
    polynomial is wrapped with coefficient ideal R."""
    if isinstance(p, Poly):
        p = PseudoPoly(p, F.ring.field.unit_ideal())
    gb = groebner_basis(F, cache)
    return reduce_full(p, gb).is_zero()


def eliminate(G: PseudoBasis, keep) -> PseudoBasis:
    """Sub-basis of elements using only the kept variables.

    Needs a basis computed under a block order whose greater block is
    exactly the complement of `keep`; with nothing to eliminate any order
    is accepted.
    """
    n = G.ring.nvars
    keep = sorted(keep)
    drop = [i for i in range(n) if i not in keep]
    if drop:
        order = G.ring.order
        if order.kind != "block" or keep != list(range(order.k)):
            raise WrongOrderError(
                "basis order does not eliminate the complement of the kept variables"
            )
    out = [p for p in G if p.f.variables_used() <= set(keep)]
    if not out:
        raise ZeroIntersectionError("no basis element survives elimination")
    return PseudoBasis(tuple(out))


def _lift_poly(p: Poly, ring: PolyRing, extra: int) -> Poly:
    return ring.from_terms([(c, exp + (0,) * extra) for c, exp in p.terms])


def _drop_last_var(p: Poly, ring: PolyRing) -> Poly:
    return ring.from_terms([(c, exp[:-1]) for c, exp in p.terms])


def ideal_intersection(F1: PseudoBasis, F2: PseudoBasis, **opts) -> PseudoBasis:
    """Generators of the intersection of two ideals via the auxiliary
    variable trick: w*F1 and (1-w)*F2 in a block order with w greatest,
    then elimination of w."""
    if F1.ring != F2.ring:
        raise ValueError("bases live in different rings")
    ring = F1.ring
    n = ring.nvars
    wname = "w"
    while wname in ring.names:
        wname += "_"
    ext = PolyRing(ring.field, ring.names + (wname,), MonomialOrder.elim(n))
    w = ext.var(n)
    one = ext.one()
    gens = []
    for p in F1:
        gens.append(PseudoPoly(w * _lift_poly(p.f, ext, 1), p.ideal))
    for p in F2:
        gens.append(PseudoPoly((one - w) * _lift_poly(p.f, ext, 1), p.ideal))
    gb = buchberger(PseudoBasis(tuple(gens)), **opts)
    kept = [p for p in gb if n not in p.f.variables_used()]
    if not kept:
        raise ZeroIntersectionError("intersection has no generators free of the auxiliary variable")
    return PseudoBasis(tuple(PseudoPoly(_drop_last_var(p.f, ring), p.ideal) for p in kept))


def intersect_with_R(F: PseudoBasis, **opts) -> FracIdeal | None:
    """Contraction to the coefficient ring: the sum of coefficient ideals
    scaled by the constant polynomials of a pseudo-Groebner basis.  None
    when the contraction is the zero ideal."""
    gb = buchberger(F, **opts)
    total = None
    for p in gb:
        if p.f.is_constant():
            part = p.ideal.scale(p.f.constant_coeff())
            total = part if total is None else total + part
    return total


@dataclass(frozen=True)
class AffineScheme:
    """Affine scheme cut out by pseudo-polynomial generators, expected to
    be flat with smooth generic fiber, pure of dimension dim (caller
    assertions, not verified here)."""

    generators: tuple[PseudoPoly, ...]
    dim: int

    def __post_init__(self):
        if not self.generators:
            raise ValueError("scheme needs at least one defining polynomial")
        n = self.generators[0].f.ring.nvars
        if not 0 <= self.dim < n:
            raise ValueError("fiber dimension must satisfy 0 <= dim < nvars")
        for g in self.generators:
            if g.is_zero():
                raise ValueError("zero defining polynomial")


@dataclass(frozen=True)
class BadPrimesReport:
    """Contraction of the singular ideal together with its factorization."""

    conductor_like_ideal: FracIdeal
    factorization: tuple[tuple[PrimeIdeal, int], ...]


def singular_ideal(X: AffineScheme) -> PseudoBasis:
    """Generators of X plus the (n - dim)-minors of the Jacobian.  A minor
    built from rows S carries the product of the coefficient ideals over S,
    which degenerates to R for plain polynomial generators."""
    ring = X.generators[0].f.ring
    n = ring.nvars
    r = n - X.dim
    out = list(X.generators)
    polys = [g.f for g in X.generators]
    J = [[partial_derivative(f, j) for j in range(n)] for f in polys]
    for rows in combinations(range(len(polys)), r):
        ideal_prod = X.generators[rows[0]].ideal
        for i in rows[1:]:
            ideal_prod = ideal_prod * X.generators[i].ideal
        for cols in combinations(range(n), r):
            sub = [[J[i][j] for j in cols] for i in rows]
            minor = _det_poly(sub)
            if not minor.is_zero():
                out.append(PseudoPoly(minor, ideal_prod))
    return PseudoBasis(tuple(out))


def bad_primes(X: AffineScheme, bound: int, **opts) -> BadPrimesReport:
    """Primes where the special fiber fails to be smooth: the primes
    dividing the contraction of the singular ideal to R."""
    sing = singular_ideal(X)
    if "conductor" not in opts:
        opts["conductor"] = find_conductor_ideal(sing)
    N = intersect_with_R(sing, **opts)
    if N is None:
        raise ZeroIntersectionError(
            "singular ideal meets R trivially: generic fiber singular or flatness violated"
        )
    return BadPrimesReport(N, tuple(factor_ideal(N, bound)))

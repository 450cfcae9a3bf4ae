"""Pseudo-polynomials over the ring of integers R of a number field:
reduction, S-polynomials, Buchberger's algorithm with the product
criterion and conductor-style coefficient reduction, strong bases.

A pseudo-polynomial is a pair (f, I) of a polynomial f over K and a
fractional ideal I with I*f inside R[x]; it represents the R[x]-module
I[x]*f.  A basis of such pairs plays the role a set of polynomials plays
over a principal ideal ring: reducibility is governed by sums of leading
coefficient ideals rather than by single leading coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from heapq import heappush, heappop

from .mpoly import Poly, exp_divides, exp_gcd, exp_lcm, exp_sub
from .numberfield import FracIdeal, FieldElem, express_in_ideal_sum, reduce_elem_mod_ideal


class NotReducibleError(ValueError):
    pass


class TooManySubsetsError(ValueError):
    pass


@dataclass(frozen=True)
class PseudoPoly:
    """Pair (f, ideal) with ideal * f contained in R[x]."""

    f: Poly
    ideal: FracIdeal

    def __post_init__(self):
        if self.f.ring.field != self.ideal.field:
            raise ValueError("polynomial and ideal over different number fields")
        for base in self.ideal.basis_elements():
            for c, _ in self.f.terms:
                if not (base * c).is_integral_coords():
                    raise ValueError("ideal times polynomial does not lie in R[x]")

    def is_zero(self) -> bool:
        return self.f.is_zero()

    def lc_ideal(self) -> FracIdeal:
        """The integral ideal (coefficient ideal) * LC(f)."""
        if self.f.is_zero():
            raise ValueError("zero pseudo-polynomial has no leading coefficient")
        return self.ideal.scale(self.f.lc())

    def __repr__(self):
        return f"PseudoPoly({self.f!r}, {self.ideal!r})"


def lc_ideal(p: PseudoPoly) -> FracIdeal:
    return p.lc_ideal()


@dataclass(frozen=True)
class PseudoBasis:
    """Ordered list of non-zero pseudo-polynomials with cached leading data."""

    elems: tuple[PseudoPoly, ...]
    _lms: tuple[tuple[int, ...], ...] = dc_field(default=None, repr=False, compare=False)
    _lcs: tuple[FracIdeal, ...] = dc_field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not self.elems:
            raise ValueError("empty pseudo-basis")
        ring = self.elems[0].f.ring
        for p in self.elems:
            if p.is_zero():
                raise ValueError("zero element in pseudo-basis")
            if p.f.ring != ring:
                raise ValueError("pseudo-basis elements from different rings")
        object.__setattr__(self, "_lms", tuple(p.f.lm() for p in self.elems))
        object.__setattr__(self, "_lcs", tuple(p.lc_ideal() for p in self.elems))

    @property
    def ring(self):
        return self.elems[0].f.ring

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __getitem__(self, i):
        return self.elems[i]

    def lm(self, i) -> tuple[int, ...]:
        return self._lms[i]

    def lc_ideal(self, i) -> FracIdeal:
        return self._lcs[i]


def can_reduce(p: PseudoPoly, G: PseudoBasis) -> tuple[bool, tuple[int, ...]]:
    """Reducibility of p modulo G, with the index set of leading-monomial
    divisors.  p is reducible iff its leading coefficient ideal lies in the
    sum of those of the applicable basis elements."""
    if p.is_zero():
        raise ValueError("zero pseudo-polynomial")
    lm = p.f.lm()
    J = tuple(i for i in range(len(G)) if exp_divides(G.lm(i), lm))
    if not J:
        return False, J
    total = G.lc_ideal(J[0])
    for i in J[1:]:
        total = total + G.lc_ideal(i)
    return total.contains(p.lc_ideal()), J


def lt_ideal_member(p: PseudoPoly, G: PseudoBasis) -> bool:
    """Whether the leading-term module of p lies in the leading-term ideal
    of G; equivalent to reducibility of p modulo G."""
    ok, _ = can_reduce(p, G)
    return ok


def _reduce_step_with_cofactors(p: PseudoPoly, G: PseudoBasis):
    ok, J = can_reduce(p, G)
    if not ok:
        raise NotReducibleError("pseudo-polynomial is not reducible modulo the basis")
    f_inv = p.ideal.inverse()
    parts = [(G[i].ideal * f_inv, G[i].f.lc()) for i in J]
    coeffs = express_in_ideal_sum(p.f.lc(), parts)
    h = p.f
    cofactors = {}
    lm = p.f.lm()
    for i, a in zip(J, coeffs):
        if a.is_zero():
            continue
        shift = exp_sub(lm, G.lm(i))
        h = h - G[i].f.mul_term(a, shift)
        cofactors[i] = (a, shift)
    return PseudoPoly(h, p.ideal), cofactors


def reduce_step(p: PseudoPoly, G: PseudoBasis) -> PseudoPoly:
    """One reduction step; the leading monomial strictly drops and the
    coefficient ideal is unchanged."""
    out, _ = _reduce_step_with_cofactors(p, G)
    return out


def reduce_full(p: PseudoPoly, G: PseudoBasis) -> PseudoPoly:
    """Full normal form: head-reduce to minimality, then recurse on the
    tail.  Terminates because each step strictly lowers a monomial under a
    well-order."""
    ring = p.f.ring
    rem_terms = []
    cur = p
    while not cur.f.is_zero():
        ok, _ = can_reduce(cur, G)
        if ok:
            cur = reduce_step(cur, G)
        else:
            rem_terms.append(cur.f.lt())
            cur = PseudoPoly(Poly(ring, cur.f.terms[1:]), cur.ideal)
    return PseudoPoly(ring.from_terms(rem_terms), p.ideal)


def spoly(p: PseudoPoly, q: PseudoPoly) -> PseudoPoly:
    """S-polynomial: monic lcm-matched difference with coefficient ideal
    the intersection of the two leading coefficient ideals."""
    if p.is_zero() or q.is_zero():
        raise ValueError("S-polynomial of a zero pseudo-polynomial")
    l = exp_lcm(p.f.lm(), q.f.lm())
    sp = p.f.mul_term(p.f.lc().inverse(), exp_sub(l, p.f.lm()))
    sq = q.f.mul_term(q.f.lc().inverse(), exp_sub(l, q.f.lm()))
    c_ideal = p.lc_ideal().intersect(q.lc_ideal())
    return PseudoPoly(sp - sq, c_ideal)


def product_criterion_applies(p: PseudoPoly, q: PseudoPoly) -> bool:
    """Coprime leading monomials and coprime leading coefficient ideals:
    the S-polynomial of such a pair reduces to zero modulo the pair."""
    if p.is_zero() or q.is_zero():
        raise ValueError("zero pseudo-polynomial")
    if any(exp_gcd(p.f.lm(), q.f.lm())):
        return False
    unit = p.ideal.field.unit_ideal()
    return (p.lc_ideal() + q.lc_ideal()) == unit


def canonicalize(p: PseudoPoly) -> PseudoPoly:
    """Canonical representative (monic polynomial, integral coefficient
    ideal) of the module generated by p; idempotent."""
    if p.is_zero():
        raise ValueError("cannot canonicalize the zero pseudo-polynomial")
    c = p.f.lc()
    return PseudoPoly(p.f.scale(c.inverse()), p.ideal.scale(c))


def coeff_reduce(p: PseudoPoly, modulus: FracIdeal) -> PseudoPoly:
    """Reduce coefficients modulo a non-zero integral ideal contained in
    the target ideal: canonicalize, then replace every coefficient by its
    symmetric residue against modulus * ideal^{-1}.  May return zero."""
    can = canonicalize(p)
    residue_ideal = modulus * can.ideal.inverse()
    pairs = []
    for c, exp in can.f.terms:
        beta = reduce_elem_mod_ideal(c, residue_ideal)
        if not beta.is_zero():
            pairs.append((beta, exp))
    return PseudoPoly(can.f.ring.from_terms(pairs), can.ideal)


@dataclass
class BuchbergerStats:
    """Run log of a basis computation; full_basis keeps every inserted
    element so skipped pair indices stay resolvable."""

    pairs_processed: int = 0
    zero_reductions: int = 0
    skipped_pairs: list[tuple[int, int]] = dc_field(default_factory=list)
    full_basis: list[PseudoPoly] = dc_field(default_factory=list)


def buchberger(
    F: PseudoBasis,
    *,
    use_product_criterion: bool = True,
    conductor: FracIdeal | None = None,
    canonical: bool = True,
    stats: BuchbergerStats | None = None,
    trace=None,
) -> PseudoBasis:
    """Pseudo-Groebner basis of the ideal generated by F.

    Pairs are processed in normal-strategy order (ascending lcm total
    degree, then indices).  With a conductor ideal, (1, conductor) joins
    the generators and every inserted remainder gets its coefficients
    reduced, which keeps intermediate growth bounded.  The final basis is
    auto-reduced by discarding elements whose leading data the rest
    already covers.
    """
    work = [canonicalize(p) if canonical else p for p in F.elems]
    if conductor is not None:
        if not conductor.is_integral():
            raise ValueError("conductor ideal must be integral")
        work.append(PseudoPoly(F.ring.one(), conductor))
    heap: list[tuple[int, int, int]] = []

    def push_pairs(upper):
        for i in range(upper):
            heappush(heap, (sum(exp_lcm(work[i].f.lm(), work[upper].f.lm())), i, upper))

    for m in range(1, len(work)):
        push_pairs(m)
    basis = PseudoBasis(tuple(work))
    while heap:
        _, i, j = heappop(heap)
        if stats is not None:
            stats.pairs_processed += 1
        if use_product_criterion and product_criterion_applies(work[i], work[j]):
            if stats is not None:
                stats.skipped_pairs.append((i, j))
            if trace is not None:
                trace(f"pair ({i},{j}): skipped by product criterion")
            continue
        s = spoly(work[i], work[j])
        if s.is_zero():
            continue
        r = reduce_full(s, basis)
        if r.is_zero():
            if stats is not None:
                stats.zero_reductions += 1
            if trace is not None:
                trace(f"pair ({i},{j}): reduced to zero")
            continue
        if conductor is not None:
            r = coeff_reduce(r, conductor)
            if r.is_zero():
                continue
            if canonical:
                r = canonicalize(r)
        elif canonical:
            r = canonicalize(r)
        work.append(r)
        if trace is not None:
            trace(f"pair ({i},{j}): new element #{len(work) - 1}")
        push_pairs(len(work) - 1)
        basis = PseudoBasis(tuple(work))
    if stats is not None:
        stats.full_basis = list(work)
    return _autoreduce(work)


def _autoreduce(elems: list[PseudoPoly]) -> PseudoBasis:
    """Drop elements whose leading data is covered by the others."""
    cur = list(elems)
    while len(cur) > 1:
        for i in range(len(cur)):
            rest = cur[:i] + cur[i + 1:]
            if lt_ideal_member(cur[i], PseudoBasis(tuple(rest))):
                cur = rest
                break
        else:
            break
    return PseudoBasis(tuple(cur))


def is_groebner(G: PseudoBasis) -> bool:
    """Buchberger criterion: every pairwise S-polynomial reduces to zero."""
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            s = spoly(G[i], G[j])
            if s.is_zero():
                continue
            if not reduce_full(s, G).is_zero():
                return False
    return True


def expand_to_classical(G: PseudoBasis) -> list[Poly]:
    """Polynomials over R generating the same ideal: each basis pair is
    expanded through a Z-basis of its coefficient ideal."""
    out = []
    for p in G:
        for base in p.ideal.basis_elements():
            out.append(p.f.scale(base))
    return out


def is_pseudo_syzygy(h: list[Poly], h_ideal: FracIdeal, G: PseudoBasis) -> bool:
    """Check sum h_i * g_i = 0 together with h_ideal * h_i inside the
    coefficient ideal of g_i, coefficient by coefficient."""
    if len(h) != len(G):
        raise ValueError("syzygy vector length does not match the basis")
    ring = G.ring
    total = ring.zero()
    for hi, gi in zip(h, G):
        total = total + hi * gi.f
    if not total.is_zero():
        return False
    for hi, gi in zip(h, G):
        for c, _ in hi.terms:
            if c.is_zero():
                continue
            if not gi.ideal.contains(h_ideal.scale(c)):
                return False
    return True


def strong_basis(G: PseudoBasis, max_subsets: int = 1 << 16) -> PseudoBasis:
    """Strong pseudo-Groebner basis from a pseudo-Groebner basis.

    Every saturated index subset J contributes one element whose leading
    term is the lcm monomial of J with coefficient ideal the sum of the
    leading coefficient ideals over J; any pseudo-polynomial of the ideal
    is then divisible by one of these.
    """
    l = len(G)
    if 1 << l > max_subsets:
        raise TooManySubsetsError(f"2^{l} subsets exceed the cap of {max_subsets}")
    ring = G.ring
    unit = G[0].ideal.field.unit_ideal()
    seen = set()
    saturated = []
    for mask in range(1, 1 << l):
        members = [i for i in range(l) if mask >> i & 1]
        x_J = G.lm(members[0])
        for i in members[1:]:
            x_J = exp_lcm(x_J, G.lm(i))
        sat = tuple(i for i in range(l) if exp_divides(G.lm(i), x_J))
        if sat not in seen:
            seen.add(sat)
            saturated.append((x_J, sat))
    saturated.sort(key=lambda t: (ring.order.key(t[0]), t[1]))
    out = []
    one = G[0].f.ring.field.one()
    for x_J, sat in saturated:
        c_J = G.lc_ideal(sat[0])
        for i in sat[1:]:
            c_J = c_J + G.lc_ideal(i)
        c_inv = c_J.inverse()
        parts = [(c_inv * G[i].ideal, G[i].f.lc()) for i in sat]
        coeffs = express_in_ideal_sum(one, parts)
        f_J = ring.zero()
        for i, a in zip(sat, coeffs):
            if not a.is_zero():
                f_J = f_J + G[i].f.mul_term(a, exp_sub(x_J, G.lm(i)))
        out.append(PseudoPoly(f_J, c_J))
    return PseudoBasis(tuple(out))


def divides(p: PseudoPoly, q: PseudoPoly) -> bool:
    """Leading-data divisibility: LM(p) | LM(q) and the leading coefficient
    ideal of q inside that of p."""
    if p.is_zero() or q.is_zero():
        raise ValueError("zero pseudo-polynomial")
    return exp_divides(p.f.lm(), q.f.lm()) and p.lc_ideal().contains(q.lc_ideal())

"""Sparse multivariate polynomials over a number field K, monomial orders,
and a classical Buchberger engine over K with cofactor tracking.

The field-coefficient engine serves two jobs: discovering a non-zero
constant inside an ideal (via cofactors of 1) and acting as an independent
cross-check for the pseudo-polynomial machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from heapq import heappush, heappop
from itertools import combinations

from .numberfield import FieldElem, NumberField


class NotUnitIdealError(ValueError):
    pass


def exp_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """True when the monomial with exponents a divides the one with b."""
    if len(a) != len(b):
        raise ValueError("exponent vectors of different lengths")
    return all(x <= y for x, y in zip(a, b))


def exp_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) != len(b):
        raise ValueError("exponent vectors of different lengths")
    return tuple(max(x, y) for x, y in zip(a, b))


def exp_gcd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) != len(b):
        raise ValueError("exponent vectors of different lengths")
    return tuple(min(x, y) for x, y in zip(a, b))


def exp_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in out):
        raise ValueError("monomial does not divide")
    return out


def _drl_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


@dataclass(frozen=True)
class MonomialOrder:
    """Total multiplicative well-order on monomials.

    kinds: 'lex', 'degrevlex', and 'block' where the last nvars-k
    variables form the greater block (compared first, degrevlex within
    blocks) and the first k variables the lesser block.
    """

    kind: str
    k: int = 0

    def key(self, exp: tuple[int, ...]):
        if self.kind == "lex":
            return exp
        if self.kind == "degrevlex":
            return _drl_key(exp)
        if self.kind == "block":
            return (_drl_key(exp[self.k:]), _drl_key(exp[: self.k]))
        raise ValueError(f"unknown monomial order kind {self.kind!r}")

    @staticmethod
    def lex() -> "MonomialOrder":
        return MonomialOrder("lex")

    @staticmethod
    def degrevlex() -> "MonomialOrder":
        return MonomialOrder("degrevlex")

    @staticmethod
    def elim(k: int) -> "MonomialOrder":
        """Eliminate all variables past the first k."""
        return MonomialOrder("block", k)


@dataclass(frozen=True)
class PolyRing:
    """Ambient polynomial ring: coefficient field, variable names, order."""

    field: NumberField
    names: tuple[str, ...]
    order: MonomialOrder

    @staticmethod
    def make(field: NumberField, names, order: MonomialOrder | None = None) -> "PolyRing":
        return PolyRing(field, tuple(names), order or MonomialOrder.degrevlex())

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero(self) -> "Poly":
        return Poly(self, ())

    def constant(self, c) -> "Poly":
        c = self._coeff(c)
        if c.is_zero():
            return self.zero()
        return Poly(self, ((c, (0,) * self.nvars),))

    def one(self) -> "Poly":
        return self.constant(1)

    def var(self, i: int) -> "Poly":
        exp = tuple(int(j == i) for j in range(self.nvars))
        return Poly(self, ((self.field.one(), exp),))

    def _coeff(self, c) -> FieldElem:
        if isinstance(c, FieldElem):
            if c.field != self.field:
                raise ValueError("coefficient from a different number field")
            return c
        if isinstance(c, (int, Fraction)):
            return self.field.from_rational(c)
        raise TypeError(f"cannot use {type(c).__name__} as a coefficient")

    def from_terms(self, pairs) -> "Poly":
        """Build a polynomial from (coeff, exponent) pairs, merging
        duplicates and dropping zeros."""
        acc: dict[tuple[int, ...], FieldElem] = {}
        for c, exp in pairs:
            c = self._coeff(c)
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.nvars:
                raise ValueError("exponent vector length mismatch")
            if exp in acc:
                acc[exp] = acc[exp] + c
            else:
                acc[exp] = c
        terms = tuple(
            (c, exp)
            for exp, c in sorted(acc.items(), key=lambda kv: self.order.key(kv[0]), reverse=True)
            if not c.is_zero()
        )
        return Poly(self, terms)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.names, order)


@dataclass(frozen=True)
class Poly:
    """Sparse polynomial; terms strictly descending under the ring order."""

    ring: PolyRing
    terms: tuple[tuple[FieldElem, tuple[int, ...]], ...]

    def is_zero(self) -> bool:
        return not self.terms

    def lt(self) -> tuple[FieldElem, tuple[int, ...]]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def lm(self) -> tuple[int, ...]:
        return self.lt()[1]

    def lc(self) -> FieldElem:
        return self.lt()[0]

    def total_degree(self) -> int:
        return max(sum(exp) for _, exp in self.terms) if self.terms else -1

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for _, exp in self.terms)

    def constant_coeff(self) -> FieldElem:
        zero_exp = (0,) * self.ring.nvars
        for c, exp in self.terms:
            if exp == zero_exp:
                return c
        return self.ring.field.zero()

    def variables_used(self) -> set[int]:
        used = set()
        for _, exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(i)
        return used

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise ValueError("polynomials from different rings")

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        return self.ring.from_terms(self.terms + other.terms)

    def __sub__(self, other):
        other = self._coerce(other)
        self._check(other)
        return self.ring.from_terms(self.terms + (-other).terms)

    def __neg__(self):
        return Poly(self.ring, tuple((-c, e) for c, e in self.terms))

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return self.ring.constant(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            return self.scale(other)
        self._check(other)
        pairs = []
        for c1, e1 in self.terms:
            for c2, e2 in other.terms:
                pairs.append((c1 * c2, exp_mul(e1, e2)))
        return self.ring.from_terms(pairs)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = self.ring._coeff(c)
        if c.is_zero():
            return self.ring.zero()
        return Poly(self.ring, tuple((t * c, e) for t, e in self.terms))

    def mul_term(self, c, exp) -> "Poly":
        c = self.ring._coeff(c)
        if c.is_zero():
            return self.ring.zero()
        exp = tuple(exp)
        return Poly(self.ring, tuple((t * c, exp_mul(e, exp)) for t, e in self.terms))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.lc().inverse())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            other = self.ring.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        from .textio import format_poly

        return f"Poly({format_poly(self)})"


def leading_data(f: Poly):
    """(LM, LC, LT) of a non-zero polynomial."""
    c, e = f.lt()
    return e, c, (c, e)


def field_divmod(f: Poly, reducers: list[Poly]):
    """Multivariate division over K: (quotients, remainder) with
    f = sum q_i * g_i + r and no remainder term divisible by any LM(g_i)."""
    ring = f.ring
    quots = [ring.zero() for _ in reducers]
    rem_terms: list[tuple[FieldElem, tuple[int, ...]]] = []
    cur = f
    while not cur.is_zero():
        c, e = cur.lt()
        hit = None
        for idx, g in enumerate(reducers):
            if not g.is_zero() and exp_divides(g.lm(), e):
                hit = idx
                break
        if hit is None:
            rem_terms.append((c, e))
            cur = Poly(ring, cur.terms[1:])
        else:
            g = reducers[hit]
            qc = c / g.lc()
            qe = exp_sub(e, g.lm())
            quots[hit] = quots[hit] + ring.from_terms([(qc, qe)])
            cur = cur - g.mul_term(qc, qe)
    return quots, ring.from_terms(rem_terms)


@dataclass(frozen=True)
class FieldGB:
    """Reduced Groebner basis over K; transform rows express each basis
    element in the original generators when tracking was requested."""

    basis: tuple[Poly, ...]
    transform: tuple[tuple[Poly, ...], ...] | None = None


def _spoly_field(f: Poly, g: Poly):
    l = exp_lcm(f.lm(), g.lm())
    mf = f.mul_term(f.lc().inverse(), exp_sub(l, f.lm()))
    mg = g.mul_term(g.lc().inverse(), exp_sub(l, g.lm()))
    return mf - mg


def field_buchberger(F: list[Poly], track: bool = False) -> FieldGB:
    """Reduced Groebner basis over the field K.

    Pair selection is the normal strategy (minimal lcm total degree, then
    insertion indices), which keeps runs deterministic.
    """
    F = [f for f in F]
    if not F or any(f.is_zero() for f in F):
        raise ValueError("generators must be non-empty and non-zero")
    ring = F[0].ring
    W: list[Poly] = []
    rows: list[list[Poly]] = []
    l = len(F)

    def unit_row(i):
        return [ring.one() if j == i else ring.zero() for j in range(l)]

    for i, f in enumerate(F):
        W.append(f)
        rows.append(unit_row(i))
    heap: list[tuple[int, int, int]] = []
    for i in range(len(W)):
        for j in range(i + 1, len(W)):
            heappush(heap, (sum(exp_lcm(W[i].lm(), W[j].lm())), i, j))
    while heap:
        _, i, j = heappop(heap)
        s = _spoly_field(W[i], W[j])
        li = exp_sub(exp_lcm(W[i].lm(), W[j].lm()), W[i].lm())
        lj = exp_sub(exp_lcm(W[i].lm(), W[j].lm()), W[j].lm())
        quots, r = field_divmod(s, W)
        if r.is_zero():
            continue
        if track:
            srow = [
                a.mul_term(W[i].lc().inverse(), li) - b.mul_term(W[j].lc().inverse(), lj)
                for a, b in zip(rows[i], rows[j])
            ]
            rrow = [
                sr - sum((q * wr[k] for q, wr in zip(quots, rows)), ring.zero())
                for k, sr in enumerate(srow)
            ]
        else:
            rrow = unit_row(0)
        m = len(W)
        W.append(r)
        rows.append(rrow)
        for i2 in range(m):
            heappush(heap, (sum(exp_lcm(W[i2].lm(), r.lm())), i2, m))

    # minimalize: drop elements whose LM is divisible by another kept LM
    order_idx = sorted(range(len(W)), key=lambda i: ring.order.key(W[i].lm()))
    kept: list[int] = []
    for i in order_idx:
        if not any(exp_divides(W[k].lm(), W[i].lm()) for k in kept):
            kept.append(i)
    basis = [W[i] for i in kept]
    brows = [rows[i] for i in kept]

    # interreduce to the unique reduced basis, updating cofactors
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            others = basis[:i] + basis[i + 1:]
            quots, r = field_divmod(basis[i], others)
            if r != basis[i]:
                changed = True
                if track:
                    orows = brows[:i] + brows[i + 1:]
                    new_row = [
                        br - sum((q * orow[k] for q, orow in zip(quots, orows)), ring.zero())
                        for k, br in enumerate(brows[i])
                    ]
                    brows[i] = new_row
                basis[i] = r
        basis2 = []
        brows2 = []
        for b, br in zip(basis, brows):
            if not b.is_zero():
                basis2.append(b)
                brows2.append(br)
        basis, brows = basis2, brows2
    final = []
    frows = []
    for b, br in zip(basis, brows):
        c = b.lc().inverse()
        final.append(b.scale(c))
        frows.append(tuple(q.scale(c) for q in br))
    pairs = sorted(zip(final, frows), key=lambda p: p[0].ring.order.key(p[0].lm()), reverse=True)
    final = tuple(p[0] for p in pairs)
    frows = tuple(p[1] for p in pairs)
    return FieldGB(final, frows if track else None)


def field_normal_form(f: Poly, G: FieldGB) -> Poly:
    """Remainder of f on division by the basis of G."""
    _, r = field_divmod(f, list(G.basis))
    return r


def lift_one(F: list[Poly]) -> list[Poly]:
    """Cofactors a_i with 1 = sum a_i f_i, when the f_i generate K[x]."""
    gb = field_buchberger(F, track=True)
    ring = F[0].ring
    if len(gb.basis) != 1 or not gb.basis[0].is_constant():
        raise NotUnitIdealError("generators do not generate the unit ideal over K")
    g = gb.basis[0]
    c = g.constant_coeff().inverse()
    return [q.scale(c) for q in gb.transform[0]]


def partial_derivative(f: Poly, i: int) -> Poly:
    if not 0 <= i < f.ring.nvars:
        raise ValueError("variable index out of range")
    pairs = []
    for c, exp in f.terms:
        if exp[i]:
            new_exp = exp[:i] + (exp[i] - 1,) + exp[i + 1:]
            pairs.append((c * exp[i], new_exp))
    return f.ring.from_terms(pairs)


def _det_poly(rows: list[list[Poly]]) -> Poly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    ring = rows[0][0].ring
    out = ring.zero()
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det_poly(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def jacobian_minors(F: list[Poly], r: int) -> list[Poly]:
    """All r x r minors of the Jacobian matrix of F, by cofactor expansion."""
    if not F:
        raise ValueError("need at least one polynomial")
    n = F[0].ring.nvars
    if not 0 < r <= min(len(F), n):
        raise ValueError("minor size out of range")
    J = [[partial_derivative(f, j) for j in range(n)] for f in F]
    out = []
    for rows in combinations(range(len(F)), r):
        for cols in combinations(range(n), r):
            sub = [[J[i][j] for j in cols] for i in rows]
            out.append(_det_poly(sub))
    return out

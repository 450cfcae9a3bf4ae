"""Arithmetic in a number field K = Q(theta), its ring of integers R, and
fractional ideals of R.

Elements are coordinate vectors over a fixed integral basis of R; ideals
are full-rank integer lattices in those coordinates, stored as a canonical
HNF numerator together with a positive denominator.  All operations are
exact and return canonical values, so equality of ideals is structural
equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

import sympy

from .zlinalg import IntMat, hnf, kernel, lattice_intersect, solve_in_rowspace


class FieldMismatchError(ValueError):
    pass


class IndexDivisorError(ValueError):
    pass


class NormNotSmoothError(ValueError):
    pass


class NotInIdealSumError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an integer or Fraction, got {type(x).__name__}")


def _mat_inverse(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Inverse of a square rational matrix by Gauss-Jordan elimination."""
    d = len(rows)
    aug = [list(r) + [Fraction(int(i == k)) for k in range(d)] for i, r in enumerate(rows)]
    for col in range(d):
        piv = next((i for i in range(col, d) if aug[i][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [e * inv for e in aug[col]]
        for i in range(d):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [e - f * p for e, p in zip(aug[i], aug[col])]
    return [r[d:] for r in aug]


def _det_rational(rows) -> Fraction:
    d = len(rows)
    rows = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(d):
        piv = next((i for i in range(col, d) if rows[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for i in range(col + 1, d):
            if rows[i][col] != 0:
                f = rows[i][col] * inv
                rows[i] = [e - f * p for e, p in zip(rows[i], rows[col])]
    return det


class NumberField:
    """K = Q(theta) for a monic integer minimal polynomial, with a
    multiplicatively closed integral basis of its ring of integers R.

    The basis matrix expresses the integral basis in the power basis
    1, theta, ..., theta^(d-1); the default identity means R = Z[theta].
    Structure constants of basis products are precomputed and must be
    integral, which is exactly closure of the basis lattice under
    multiplication.
    """

    def __init__(self, minpoly, basis=None):
        mp = tuple(int(c) for c in minpoly)
        if len(mp) < 2 or mp[-1] != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 1")
        self.minpoly = mp
        self.degree = d = len(mp) - 1
        if basis is None:
            bm = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
        else:
            bm = [[_frac(e) for e in row] for row in basis]
            if len(bm) != d or any(len(r) != d for r in bm):
                raise ValueError("basis matrix must be d x d")
        if bm[0] != [Fraction(int(j == 0)) for j in range(d)]:
            raise ValueError("first basis element must be 1")
        self.basis_matrix = tuple(tuple(r) for r in bm)
        self._basis_inv = tuple(tuple(r) for r in _mat_inverse(bm))
        self._theta_powers = self._power_table()
        self.mult_table = self._build_mult_table()
        self._unit_ideal = None

    def _power_table(self):
        # theta^k in power coordinates for k = 0 .. 2d-2
        d = self.degree
        pows = [[0] * d for _ in range(max(2 * d - 1, 1))]
        for k in range(d):
            pows[k][k] = 1
        red = [-c for c in self.minpoly[:-1]]  # theta^d over the power basis
        for k in range(d, 2 * d - 1):
            prev = pows[k - 1]
            cur = [0] * d
            for i in range(d - 1):
                cur[i + 1] += prev[i]
            if prev[d - 1]:
                for i in range(d):
                    cur[i] += prev[d - 1] * red[i]
            pows[k] = cur
        return tuple(tuple(r) for r in pows)

    def _mul_power_coords(self, u, v):
        d = self.degree
        conv = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b:
                    conv[i + j] += a * b
        out = [Fraction(0)] * d
        for k, c in enumerate(conv):
            if c:
                for i in range(d):
                    if self._theta_powers[k][i]:
                        out[i] += c * self._theta_powers[k][i]
        return out

    def _build_mult_table(self):
        d = self.degree
        table = []
        for i in range(d):
            row = []
            for j in range(d):
                pc = self._mul_power_coords(self.basis_matrix[i], self.basis_matrix[j])
                coords = self._power_to_coords(pc)
                if any(c.denominator != 1 for c in coords):
                    raise ValueError("integral basis is not closed under multiplication")
                row.append(tuple(int(c) for c in coords))
            table.append(tuple(row))
        return tuple(table)

    def _power_to_coords(self, pc):
        d = self.degree
        return [sum((pc[i] * self._basis_inv[i][k] for i in range(d)), Fraction(0)) for k in range(d)]

    def _coords_to_power(self, coords):
        d = self.degree
        return [sum((coords[i] * self.basis_matrix[i][k] for i in range(d)), Fraction(0)) for k in range(d)]

    @classmethod
    def rationals(cls) -> "NumberField":
        """The degree-1 field Q with R = Z."""
        return cls((0, 1))

    def elem(self, coords) -> "FieldElem":
        return FieldElem(self, tuple(_frac(c) for c in coords))

    def basis_elem(self, i: int) -> "FieldElem":
        return self.elem([Fraction(int(j == i)) for j in range(self.degree)])

    def from_rational(self, q) -> "FieldElem":
        return self.elem([_frac(q)] + [Fraction(0)] * (self.degree - 1))

    def from_power_coords(self, pc) -> "FieldElem":
        return self.elem(self._power_to_coords([_frac(c) for c in pc]))

    def zero(self) -> "FieldElem":
        return self.from_rational(0)

    def one(self) -> "FieldElem":
        return self.from_rational(1)

    def gen(self) -> "FieldElem":
        """theta as a field element."""
        if self.degree == 1:
            return self.from_rational(-self.minpoly[0])
        return self.from_power_coords([0, 1] + [0] * (self.degree - 2))

    def unit_ideal(self) -> "FracIdeal":
        if self._unit_ideal is None:
            self._unit_ideal = FracIdeal._make(self, IntMat.identity(self.degree).data, 1)
        return self._unit_ideal

    def ideal(self, *gens) -> "FracIdeal":
        return ideal_from_generators(self, gens)

    def index_in_equation_order(self) -> Fraction:
        """[R : Z[theta]] as a rational (integral when Z[theta] <= R)."""
        return 1 / abs(_det_rational([list(r) for r in self.basis_matrix]))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, NumberField)
            and self.minpoly == other.minpoly
            and self.basis_matrix == other.basis_matrix
        )

    def __hash__(self):
        return hash((self.minpoly, self.basis_matrix))

    def __repr__(self):
        return f"NumberField(minpoly={self.minpoly})"


@dataclass(frozen=True)
class FieldElem:
    """Element of K as coordinates over the integral basis of R."""

    field: NumberField
    coords: tuple[Fraction, ...]

    def _check(self, other: "FieldElem"):
        if self.field != other.field:
            raise FieldMismatchError("elements of different number fields")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def is_integral_coords(self) -> bool:
        """True when the element lies in R."""
        return all(c.denominator == 1 for c in self.coords)

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        return FieldElem(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        return FieldElem(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return FieldElem(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        d = self.field.degree
        T = self.field.mult_table
        out = [Fraction(0)] * d
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(other.coords):
                if b == 0:
                    continue
                ab = a * b
                trow = T[i][j]
                for k in range(d):
                    if trow[k]:
                        out[k] += ab * trow[k]
        return FieldElem(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        """Multiplicative inverse via the linear system y * M_x = 1."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        d = self.field.degree
        M = [list((self.field.basis_elem(i) * self).coords) for i in range(d)]
        target = [Fraction(int(k == 0)) for k in range(d)]
        return FieldElem(self.field, tuple(_solve_rational(M, target)))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"FieldElem({self.coords})"


def _solve_rational(M, b):
    """Solve y * M = b over the rationals (M square, invertible)."""
    d = len(M)
    aug = [[M[j][i] for j in range(d)] + [b[i]] for i in range(d)]
    for col in range(d):
        piv = next((i for i in range(col, d) if aug[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular multiplication matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [e * inv for e in aug[col]]
        for i in range(d):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [e - f * p for e, p in zip(aug[i], aug[col])]
    return [aug[i][d] for i in range(d)]


@dataclass(frozen=True)
class FracIdeal:
    """Fractional ideal of R: canonical HNF numerator lattice over the
    integral basis, divided by a positive integer denominator."""

    field: NumberField
    num: IntMat
    den: int

    @staticmethod
    def _make(field: NumberField, rows, den: int) -> "FracIdeal":
        """Canonicalize: HNF the rows, require full rank, cancel common
        content against the denominator, verify the R-module property."""
        if den <= 0:
            raise ValueError("denominator must be positive")
        H = hnf(IntMat.from_rows(rows, field.degree))
        if H.rank != field.degree:
            raise ValueError("ideal lattice does not have full rank")
        num = H.H
        g = gcd(num.content(), den)
        if g > 1:
            num = IntMat.from_rows([[e // g for e in r] for r in num.data], field.degree)
            den //= g
        ideal = FracIdeal(field, num, den)
        ideal._validate_module()
        return ideal

    def _validate_module(self):
        d = self.field.degree
        for row in self.num.data:
            elem = self.field.elem(row)
            for i in range(1, d):
                prod = elem * self.field.basis_elem(i)
                # products of integral rows stay integral (mult table is integral)
                if solve_in_rowspace(self.num, [int(c) for c in prod.coords]) is None:
                    raise ValueError("lattice is not an R-module")

    def _check(self, other: "FracIdeal"):
        if self.field != other.field:
            raise FieldMismatchError("ideals of different number fields")

    def is_integral(self) -> bool:
        return self.den == 1

    def basis_elements(self) -> list[FieldElem]:
        """Z-basis of the ideal as field elements."""
        return [self.field.elem([Fraction(e, self.den) for e in row]) for row in self.num.data]

    def __add__(self, other: "FracIdeal") -> "FracIdeal":
        self._check(other)
        D = lcm(self.den, other.den)
        rows = [[e * (D // self.den) for e in r] for r in self.num.data]
        rows += [[e * (D // other.den) for e in r] for r in other.num.data]
        return FracIdeal._make(self.field, rows, D)

    def __mul__(self, other):
        if isinstance(other, FracIdeal):
            self._check(other)
            rows = []
            for r1 in self.num.data:
                e1 = self.field.elem(r1)
                for r2 in other.num.data:
                    prod = e1 * self.field.elem(r2)
                    rows.append([int(c) for c in prod.coords])
            return FracIdeal._make(self.field, rows, self.den * other.den)
        if isinstance(other, (int, Fraction, FieldElem)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, x) -> "FracIdeal":
        """The ideal x * self for a non-zero field element x."""
        if isinstance(x, (int, Fraction)):
            x = self.field.from_rational(x)
        if x.is_zero():
            raise ValueError("cannot scale an ideal by zero")
        rows = [(b * x).coords for b in self.basis_elements()]
        return _ideal_from_rational_rows(self.field, rows)

    def inverse(self) -> "FracIdeal":
        """The transporter (R : self) = {x in K : x * self <= R}.

        For the integral part A (the numerator lattice), every element of
        A^{-1} can be written z/q with q = |det(num)| and z integral; the
        valid z form the lattice {z : z * M_w = 0 mod q} over the
        multiplication matrices M_w of the HNF basis rows w.
        """
        d = self.field.degree
        q = 1
        for i in range(d):
            q *= self.num.data[i][i]
        w_elems = [self.field.elem(r) for r in self.num.data]
        ncols = d * d
        # row i: coordinates of e_i * w, concatenated over all w
        cond_rows = []
        for i in range(d):
            e_i = self.field.basis_elem(i)
            row = []
            for w in w_elems:
                row.extend(int(c) for c in (e_i * w).coords)
            cond_rows.append(row)
        mod_rows = [[q if k == j else 0 for k in range(ncols)] for j in range(ncols)]
        K = kernel(IntMat.from_rows(cond_rows + mod_rows, ncols))
        sol_rows = [z[:d] for z in K.data]
        inv_of_integral_part = FracIdeal._make(self.field, sol_rows, q)
        if self.den == 1:
            return inv_of_integral_part
        return inv_of_integral_part.scale(self.den)

    def intersect(self, other: "FracIdeal") -> "FracIdeal":
        self._check(other)
        D = lcm(self.den, other.den)
        A = IntMat.from_rows(
            [[e * (D // self.den) for e in r] for r in self.num.data], self.field.degree
        )
        B = IntMat.from_rows(
            [[e * (D // other.den) for e in r] for r in other.num.data], self.field.degree
        )
        return FracIdeal._make(self.field, lattice_intersect(A, B).data, D)

    def contains(self, other: "FracIdeal") -> bool:
        """True when other is a subset of self."""
        self._check(other)
        D = lcm(self.den, other.den)
        A = IntMat.from_rows(
            [[e * (D // self.den) for e in r] for r in self.num.data], self.field.degree
        )
        for r in other.num.data:
            if solve_in_rowspace(A, [e * (D // other.den) for e in r]) is None:
                return False
        return True

    def __contains__(self, x) -> bool:
        if isinstance(x, (int, Fraction)):
            x = self.field.from_rational(x)
        if x.field != self.field:
            raise FieldMismatchError("element of a different number field")
        coords = [c * self.den for c in x.coords]
        if any(c.denominator != 1 for c in coords):
            return False
        return solve_in_rowspace(self.num, [int(c) for c in coords]) is not None

    def norm(self) -> Fraction:
        det = 1
        for i in range(self.field.degree):
            det *= self.num.data[i][i]
        return Fraction(abs(det), self.den ** self.field.degree)

    def __eq__(self, other):
        if not isinstance(other, FracIdeal):
            return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"FracIdeal(den={self.den}, num={self.num})"


def _ideal_from_rational_rows(field: NumberField, rows) -> FracIdeal:
    """Canonical ideal from rational coordinate generators of the module."""
    D = 1
    for r in rows:
        for c in r:
            D = lcm(D, _frac(c).denominator)
    int_rows = [[int(_frac(c) * D) for c in r] for r in rows]
    return FracIdeal._make(field, int_rows, D)


def ideal_from_generators(field: NumberField, gens) -> FracIdeal:
    """Canonical HNF of the R-module generated by the given field elements."""
    gens = [g if isinstance(g, FieldElem) else field.from_rational(g) for g in gens]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("at least one non-zero generator is required")
    rows = []
    for g in gens:
        for i in range(field.degree):
            rows.append((g * field.basis_elem(i)).coords)
    return _ideal_from_rational_rows(field, rows)


def express_in_ideal_sum(c: FieldElem, parts) -> list[FieldElem]:
    """Given c in the module sum of ideal_i * c_i, return elements
    a_i in ideal_i with c = sum a_i * c_i."""
    field = c.field
    d = field.degree
    rows = []
    owners = []  # (part index, ideal basis element)
    for idx, (ideal, ci) in enumerate(parts):
        if ci.field != field or ideal.field != field:
            raise FieldMismatchError("mixed number fields in ideal sum")
        for base in ideal.basis_elements():
            rows.append((base * ci).coords)
            owners.append((idx, base))
    D = 1
    for r in rows:
        for e in r:
            D = lcm(D, e.denominator)
    for e in c.coords:
        D = lcm(D, e.denominator)
    A = IntMat.from_rows([[int(e * D) for e in r] for r in rows], d)
    sol = solve_in_rowspace(A, [int(e * D) for e in c.coords])
    if sol is None:
        raise NotInIdealSumError("element does not lie in the ideal sum")
    out = [field.zero() for _ in parts]
    for coef, (idx, base) in zip(sol, owners):
        if coef:
            out[idx] = out[idx] + base * coef
    return out


def reduce_elem_mod_ideal(alpha: FieldElem, m: FracIdeal) -> FieldElem:
    """Symmetric residue of alpha against the HNF basis of m.

    The result beta satisfies alpha - beta in m; each coordinate is
    reduced into (-pivot/2, pivot/2], from the last pivot upward.
    """
    if alpha.field != m.field:
        raise FieldMismatchError("element of a different number field")
    d = m.field.degree
    v = [c * m.den for c in alpha.coords]
    half = Fraction(1, 2)
    for i in reversed(range(d)):
        p = m.num.data[i][i]
        q = math.ceil(v[i] / p - half)
        if q:
            for j in range(i, d):
                if m.num.data[i][j]:
                    v[j] -= q * m.num.data[i][j]
    return m.field.elem([c / m.den for c in v])


def ideal_small_rep(v_ideal: FracIdeal) -> tuple[FieldElem, FracIdeal]:
    """Heuristic rescaling (gamma, g) with gamma * g = v_ideal exactly.

    Factors out the largest rational scalar, then divides by the shortest
    HNF basis row if that strictly shrinks a bit-size score; falls back to
    the scalar step alone.  Exact module equality always holds; smallness
    is best-effort only.
    """
    field = v_ideal.field
    c = v_ideal.num.content()
    if c > 1 or v_ideal.den > 1:
        gamma = field.from_rational(Fraction(c, v_ideal.den))
        reduced = FracIdeal._make(field, [[e // c for e in r] for r in v_ideal.num.data], 1)
    else:
        gamma = field.one()
        reduced = v_ideal

    def score(I: FracIdeal) -> int:
        return sum(abs(e).bit_length() for e in I.num.entries) + I.den.bit_length()

    rows = sorted(reduced.num.data, key=lambda r: (sum(e * e for e in r), r))
    candidate = field.elem(rows[0])
    divided = reduced.scale(candidate.inverse())
    if score(divided) < score(reduced):
        return gamma * candidate, divided
    return gamma, reduced


@dataclass(frozen=True)
class PrimeIdeal:
    """Prime of R above a rational prime p, with ramification index e and
    residue degree f."""

    p: int
    ideal: FracIdeal
    e: int
    f: int

    def __repr__(self):
        return f"PrimeIdeal(p={self.p}, e={self.e}, f={self.f})"


def _factor_minpoly_mod_p(field: NumberField, p: int):
    """Monic irreducible factors (ascending coefficient tuples, lifted into
    [0, p)) of the minimal polynomial mod p, with multiplicities."""
    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed(field.minpoly)), t, modulus=p)
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        coeffs = [int(cc) % p for cc in fac.all_coeffs()]  # descending
        out.append((tuple(reversed(coeffs)), int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return out


def prime_decompose(p: int, field: NumberField) -> list[PrimeIdeal]:
    """Primes of R above p, by factoring the minimal polynomial mod p.

    Requires p coprime to the index [R : Z[theta]]; index divisors are a
    hard error rather than a silently wrong answer.
    """
    if p < 2 or any(p % k == 0 for k in range(2, isqrt(p) + 1)):
        raise ValueError(f"{p} is not a prime")
    idx = field.index_in_equation_order()
    if idx.numerator % p == 0 or idx.denominator % p == 0:
        raise IndexDivisorError(f"{p} divides the index of Z[theta] in R")
    theta = field.gen()
    out = []
    for coeffs, mult in _factor_minpoly_mod_p(field, p):
        deg = len(coeffs) - 1
        if deg == field.degree:
            ideal = ideal_from_generators(field, [field.from_rational(p)])
        else:
            g_theta = field.zero()
            power = field.one()
            for c in coeffs:
                if c:
                    g_theta = g_theta + power * c
                power = power * theta
            ideal = ideal_from_generators(field, [field.from_rational(p), g_theta])
        if ideal.norm() != Fraction(p) ** deg:
            raise ArithmeticError("prime ideal norm mismatch")
        out.append(PrimeIdeal(p=p, ideal=ideal, e=mult, f=deg))
    out.sort(key=lambda P: (P.f, P.ideal.num.data))
    return out


def _small_prime_factors(n: int, bound: int):
    """Trial division by primes <= bound.  A leftover cofactor is accepted
    only when it is at most bound^2 (and hence prime)."""
    factors: dict[int, int] = {}
    m = n
    k = 2
    while k <= bound and k * k <= m:
        while m % k == 0:
            factors[k] = factors.get(k, 0) + 1
            m //= k
        k += 1 if k == 2 else 2
    if m > 1:
        if m > bound * bound:
            raise NormNotSmoothError(f"cofactor {m} exceeds bound^2 = {bound * bound}")
        factors[m] = factors.get(m, 0) + 1
    return sorted(factors.items())


def factor_ideal(a: FracIdeal, bound: int) -> list[tuple[PrimeIdeal, int]]:
    """Factor an integral ideal into primes, trial-dividing its norm by
    primes up to the given bound."""
    if not a.is_integral():
        raise ValueError("can only factor integral ideals")
    n = a.norm().numerator
    if n == 1:
        return []
    out = []
    check = a.field.unit_ideal()
    for p, _ in _small_prime_factors(n, bound):
        for P in prime_decompose(p, a.field):
            e = 0
            power = P.ideal
            while power.contains(a):
                e += 1
                power = power * P.ideal
            if e:
                out.append((P, e))
                for _ in range(e):
                    check = check * P.ideal
    if check != a:
        raise ArithmeticError("prime factorization does not multiply back to the ideal")
    return out

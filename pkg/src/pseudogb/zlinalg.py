"""Exact linear algebra over the integers.

Everything downstream (ideal arithmetic, coefficient ideals, lattice
intersections) reduces to operations on row lattices of integer matrices.
The canonical form used throughout is the row-style Hermite normal form:
pivots positive, entries above each pivot reduced into ``[0, pivot)``,
zero rows dropped.  Canonical forms make lattice equality a plain ``==``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class DimensionMismatchError(ValueError):
    pass


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, v) with u*a + v*b = g = gcd(a, b) and g >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


@dataclass(frozen=True)
class IntMat:
    """Immutable integer matrix whose rows generate a lattice in Z^cols."""

    data: tuple[tuple[int, ...], ...]
    cols: int

    def __post_init__(self):
        for row in self.data:
            if len(row) != self.cols:
                raise DimensionMismatchError(
                    f"row of length {len(row)} in matrix with {self.cols} columns"
                )

    @staticmethod
    def from_rows(rows, cols: int | None = None) -> "IntMat":
        data = tuple(tuple(int(e) for e in row) for row in rows)
        if cols is None:
            if not data:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(data[0])
        return IntMat(data, cols)

    @staticmethod
    def identity(n: int) -> "IntMat":
        return IntMat(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n)

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(e for row in self.data for e in row)

    def content(self) -> int:
        """gcd of all entries (0 for an empty or zero matrix)."""
        g = 0
        for row in self.data:
            for e in row:
                g = gcd(g, e)
        return g

    def scaled(self, c: int) -> "IntMat":
        return IntMat(tuple(tuple(e * c for e in row) for row in self.data), self.cols)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.data) + "]"


@dataclass(frozen=True)
class HnfResult:
    """Canonical row HNF of the input's row lattice; zero rows dropped."""

    H: IntMat
    rank: int


def _hnf_core(rows, cols, want_u):
    """Row HNF by xgcd elimination.

    Returns (H, U, rank) as lists; U is a unimodular matrix with
    U * input = H (including the trailing zero rows of H), or None
    when not requested.
    """
    m = len(rows)
    H = [list(r) for r in rows]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if want_u else None
    r = 0
    for j in range(cols):
        piv = None
        for i in range(r, m):
            if H[i][j] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            H[r], H[piv] = H[piv], H[r]
            if want_u:
                U[r], U[piv] = U[piv], U[r]
        for i in range(r + 1, m):
            if H[i][j] == 0:
                continue
            a, b = H[r][j], H[i][j]
            if b % a == 0:
                q = b // a
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                if want_u:
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
            else:
                g, u, v = xgcd(a, b)
                ag, bg = a // g, b // g
                H[r], H[i] = (
                    [u * x + v * y for x, y in zip(H[r], H[i])],
                    [-bg * x + ag * y for x, y in zip(H[r], H[i])],
                )
                if want_u:
                    U[r], U[i] = (
                        [u * x + v * y for x, y in zip(U[r], U[i])],
                        [-bg * x + ag * y for x, y in zip(U[r], U[i])],
                    )
        if H[r][j] < 0:
            H[r] = [-x for x in H[r]]
            if want_u:
                U[r] = [-x for x in U[r]]
        p = H[r][j]
        for i in range(r):
            q = H[i][j] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                if want_u:
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U, r


def hnf(A: IntMat) -> HnfResult:
    """Canonical HNF of the row lattice of A."""
    H, _, r = _hnf_core(A.data, A.cols, want_u=False)
    return HnfResult(IntMat.from_rows(H[:r], A.cols), r)


def _pivot_col(row):
    for j, e in enumerate(row):
        if e:
            return j
    return None


def solve_in_rowspace(A: IntMat, b) -> tuple[int, ...] | None:
    """Integer x with x*A = b, or None when b is not in the row lattice."""
    b = tuple(int(e) for e in b)
    if len(b) != A.cols:
        raise DimensionMismatchError(f"vector of length {len(b)} against {A.cols} columns")
    H, U, r = _hnf_core(A.data, A.cols, want_u=True)
    rest = list(b)
    x = [0] * A.rows
    for i in range(r):
        j = _pivot_col(H[i])
        q, rem = divmod(rest[j], H[i][j])
        if rem:
            return None
        if q:
            rest = [e - q * h for e, h in zip(rest, H[i])]
            x = [e + q * u for e, u in zip(x, U[i])]
    if any(rest):
        return None
    return tuple(x)


def kernel(A: IntMat) -> IntMat:
    """HNF basis of the left integer kernel {x : x*A = 0}."""
    H, U, r = _hnf_core(A.data, A.cols, want_u=True)
    ker_rows = U[r:]
    KH, _, kr = _hnf_core(ker_rows, A.rows, want_u=False)
    return IntMat.from_rows(KH[:kr], A.rows)


def lattice_intersect(A: IntMat, B: IntMat) -> IntMat:
    """HNF basis of the intersection of the two row lattices.

    Uses the kernel of the stacked matrix: (x, y) with x*A = -y*B gives
    exactly the vectors x*A lying in both lattices.
    """
    if A.cols != B.cols:
        raise DimensionMismatchError(f"{A.cols} vs {B.cols} columns")
    stacked = IntMat.from_rows(A.data + B.data, A.cols)
    K = kernel(stacked)
    ma = A.rows
    rows = []
    for z in K.data:
        v = [0] * A.cols
        for i in range(ma):
            if z[i]:
                v = [e + z[i] * a for e, a in zip(v, A.data[i])]
        rows.append(v)
    H, _, r = _hnf_core(rows, A.cols, want_u=False)
    return IntMat.from_rows(H[:r], A.cols)

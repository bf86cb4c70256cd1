"""Exact dense linear algebra.

:class:`ExactMatrix` holds small matrices of :class:`~scheme_forge.exactnum.Scalar`
(parameter matrices such as P, Q and intersection matrices).  :class:`RelationMatrix`
holds large 0-1 vertex-by-vertex matrices as Python-int bitsets, so that
counting products reduce to ``(row_x & row_y).bit_count()``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import gcd, lcm

from sympy import Poly, symbols

from .errors import (
    EigenspaceDimensionNotOne,
    IrreducibleCubicOrHigher,
    NotAnEigenvalue,
    SingularMatrix,
)
from .exactnum import ONE, ZERO, Scalar, as_scalar, compare, sqrt_integer

__all__ = [
    "ExactMatrix",
    "RelationMatrix",
    "characteristic_polynomial",
    "eigenvalues_quadratic",
    "left_eigenvector_for",
    "solve_left_nullspace",
]


class ExactMatrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        rows = tuple(tuple(as_scalar(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "ExactMatrix":
        return cls([[ZERO] * c for _ in range(r)])

    @classmethod
    def diagonal(cls, values) -> "ExactMatrix":
        values = list(values)
        n = len(values)
        return cls([[values[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.rows[i]

    def col(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"ExactMatrix([{body}])"

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self.rows))

    T = property(transpose)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_rational(self) -> bool:
        return all(x.is_rational() for r in self.rows for x in r)

    def trace(self) -> Scalar:
        return sum((self.rows[i][i] for i in range(self.nrows)), ZERO)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "ExactMatrix":
        c = as_scalar(c)
        return ExactMatrix([[c * x for x in r] for r in self.rows])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return multiply(self, other)

    def vecmul(self, v) -> tuple[Scalar, ...]:
        """Row vector times matrix."""
        v = [as_scalar(x) for x in v]
        if len(v) != self.nrows:
            raise ValueError("shape mismatch")
        return tuple(
            sum((v[i] * self.rows[i][j] for i in range(self.nrows) if v[i]), ZERO)
            for j in range(self.ncols)
        )

    def permuted(self, row_order=None, col_order=None) -> "ExactMatrix":
        ro = range(self.nrows) if row_order is None else row_order
        co = range(self.ncols) if col_order is None else col_order
        return ExactMatrix([[self.rows[i][j] for j in co] for i in ro])

    def inverse(self) -> "ExactMatrix":
        return inverse(self)

    def determinant(self) -> Scalar:
        return determinant(self)

    def rank(self) -> int:
        return rank(self)


def multiply(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    if A.ncols != B.nrows:
        raise ValueError(f"cannot multiply {A.shape} by {B.shape}")
    cols = B.transpose().rows
    return ExactMatrix(
        [[sum((x * y for x, y in zip(r, c) if x and y), ZERO) for c in cols] for r in A.rows]
    )


def _cleared(A: ExactMatrix):
    """Rows as Python ints when A is rational (times a common denominator), else Scalars."""
    if A.is_rational():
        den = lcm(*(x.a.denominator for r in A.rows for x in r))
        return [[int(x.a * den) for x in r] for r in A.rows], den
    return [list(r) for r in A.rows], 1


def _bareiss(M, ncols_pivot: int):
    """Fraction-free forward elimination in place; returns (pivot columns, sign, last pivot)."""
    n = len(M)
    width = len(M[0])
    prev = 1
    sign = 1
    pivots = []
    r = 0
    for c in range(ncols_pivot):
        p = next((i for i in range(r, n) if M[i][c]), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            sign = -sign
        piv = M[r][c]
        for i in range(r + 1, n):
            f = M[i][c]
            Mi, Mr = M[i], M[r]
            for j in range(width):
                val = piv * Mi[j] - f * Mr[j]
                Mi[j] = _exact_div(val, prev)
        prev = piv
        pivots.append(c)
        r += 1
        if r == n:
            break
    return pivots, sign, prev


def _exact_div(x, y):
    if isinstance(x, int) and isinstance(y, int):
        q, rem = divmod(x, y)
        assert rem == 0, "Bareiss division must be exact"
        return q
    return as_scalar(x) / as_scalar(y)


def rank(A: ExactMatrix) -> int:
    M, _ = _cleared(A)
    pivots, _, _ = _bareiss(M, A.ncols)
    return len(pivots)


def determinant(A: ExactMatrix) -> Scalar:
    if not A.is_square():
        raise ValueError("determinant of non-square matrix")
    M, den = _cleared(A)
    pivots, sign, last = _bareiss(M, A.ncols)
    if len(pivots) < A.nrows:
        return ZERO
    return as_scalar(last) * sign / (as_scalar(den) ** A.nrows)


def inverse(A: ExactMatrix) -> ExactMatrix:
    """Inverse via fraction-free elimination on ``[A | I]``.

    Rational input is scaled to an integer matrix first so every intermediate
    division is an exact integer division.
    """
    if not A.is_square():
        raise SingularMatrix("non-square matrix has no inverse")
    n = A.nrows
    M, den = _cleared(A)
    zero, one = (0, 1) if isinstance(M[0][0], int) else (ZERO, ONE)
    for i in range(n):
        M[i] = M[i] + [one if j == i else zero for j in range(n)]
    # forward Bareiss, then back substitution in the field
    pivots, _, _ = _bareiss(M, n)
    if len(pivots) < n:
        raise SingularMatrix("matrix is singular")
    X = [[None] * n for _ in range(n)]
    for i in range(n - 1, -1, -1):
        piv = as_scalar(M[i][i])
        for j in range(n):
            acc = as_scalar(M[i][n + j])
            for k in range(i + 1, n):
                if M[i][k]:
                    acc = acc - as_scalar(M[i][k]) * X[k][j]
            X[i][j] = acc / piv
    return ExactMatrix(X).scale(den)


def characteristic_polynomial(A: ExactMatrix) -> list[int]:
    """Integer coefficients (highest degree first) of det(xI - A), made primitive.

    Faddeev-LeVerrier over Q, then denominators are cleared and the content
    removed; the leading coefficient is positive.
    """
    if not A.is_square():
        raise ValueError("characteristic polynomial of non-square matrix")
    if not A.is_rational():
        raise ValueError("characteristic_polynomial needs rational entries")
    n = A.nrows
    a = [[x.a for x in r] for r in A.rows]
    coeffs = [Fraction(1)]
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        # M_k = A M_{k-1} + c_{n-k+1} I
        AM = [[sum(a[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            AM[i][i] += c_prev
        M = AM
        tr = sum(sum(a[i][t] * M[t][i] for t in range(n)) for i in range(n))
        coeffs.append(-tr / k)
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[0] < 0:
        ints = [-c for c in ints]
    return ints


def _desc(x: Scalar, y: Scalar) -> int:
    try:
        return -compare(x, y)
    except Exception:
        # distinct discriminants: ordering only, never used for equality
        return -((float(x) > float(y)) - (float(x) < float(y)))


def polynomial_roots_quadratic(coeffs: list[int]) -> list[Scalar]:
    """Roots (with multiplicity) of an integer polynomial whose irreducible factors have degree <= 2."""
    x = symbols("x")
    poly = Poly(coeffs, x, domain="ZZ")
    _, factors = poly.factor_list()
    roots: list[Scalar] = []
    for f, mult in factors:
        c = [int(v) for v in f.all_coeffs()]
        if len(c) == 2:
            roots += [Scalar(Fraction(-c[1], c[0]))] * mult
        elif len(c) == 3:
            a, b, cc = c
            disc = b * b - 4 * a * cc
            if disc < 0:
                raise IrreducibleCubicOrHigher(f"complex roots in factor {f.as_expr()}")
            r = sqrt_integer(disc)
            roots += [(Scalar(-b) + r) / (2 * a), (Scalar(-b) - r) / (2 * a)] * mult
        elif len(c) > 3:
            raise IrreducibleCubicOrHigher(f"irreducible factor of degree {len(c) - 1}: {f.as_expr()}")
    return sorted(roots, key=cmp_to_key(_desc))


def eigenvalues_quadratic(A: ExactMatrix) -> list[Scalar]:
    """All eigenvalues of a rational matrix, in decreasing order, with multiplicity."""
    return polynomial_roots_quadratic(characteristic_polynomial(A))


def solve_left_nullspace(A: ExactMatrix) -> list[tuple[Scalar, ...]]:
    """Basis of ``{v : v A = 0}`` by Gauss-Jordan over the scalar field."""
    # v A = 0  <=>  A^T v^T = 0
    M = [list(r) for r in A.transpose().rows]
    nr, nc = len(M), len(M[0])
    pivcols = []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(nr):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivcols.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(nc) if c not in pivcols]
    basis = []
    for fc in free:
        v = [ZERO] * nc
        v[fc] = ONE
        for row, pc in enumerate(pivcols):
            v[pc] = -M[row][fc]
        basis.append(tuple(v))
    return basis


def left_eigenvector_for(A: ExactMatrix, lam) -> tuple[Scalar, ...]:
    """The left eigenvector for a simple eigenvalue, scaled so its first entry is 1."""
    lam = as_scalar(lam)
    n = A.nrows
    shifted = A - ExactMatrix.identity(n).scale(lam)
    basis = solve_left_nullspace(shifted)
    if not basis:
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue")
    if len(basis) > 1:
        raise EigenspaceDimensionNotOne(f"eigenspace of {lam} has dimension {len(basis)}")
    v = basis[0]
    if not v[0]:
        raise EigenspaceDimensionNotOne(f"eigenvector for {lam} has zero first entry")
    inv = v[0].inverse()
    return tuple(x * inv for x in v)


class RelationMatrix:
    """Square 0-1 matrix stored as one Python-int bitset per row (bit y of row x)."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows):
        self.n = n
        self.rows = tuple(int(r) for r in rows)
        if len(self.rows) != n:
            raise ValueError("wrong number of rows")
        limit = 1 << n
        if any(r < 0 or r >= limit for r in self.rows):
            raise ValueError("row has bits outside 0..n-1")

    @classmethod
    def from_dense(cls, dense) -> "RelationMatrix":
        dense = [list(r) for r in dense]
        n = len(dense)
        rows = []
        for r in dense:
            if len(r) != n:
                raise ValueError("relation matrix must be square")
            v = 0
            for y, e in enumerate(r):
                if e not in (0, 1, True, False):
                    raise ValueError("relation matrix entries must be 0 or 1")
                if e:
                    v |= 1 << y
            rows.append(v)
        return cls(n, rows)

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "RelationMatrix":
        rows = [0] * n
        for x, y in pairs:
            rows[x] |= 1 << y
        return cls(n, rows)

    @classmethod
    def from_hex(cls, hex_rows: list[str]) -> "RelationMatrix":
        n = len(hex_rows)
        return cls(n, [int(h, 16) if h else 0 for h in hex_rows])

    def to_hex(self) -> list[str]:
        return [format(r, "x") for r in self.rows]

    def __getitem__(self, idx):
        x, y = idx
        return (self.rows[x] >> y) & 1

    def __eq__(self, other):
        return isinstance(other, RelationMatrix) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def valency_of(self, x: int) -> int:
        return self.rows[x].bit_count()

    def nnz(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def is_symmetric(self) -> tuple[int, int] | None:
        """None if symmetric, else a witness pair (x, y) with x~y but not y~x."""
        for x, r in enumerate(self.rows):
            v = r
            while v:
                low = v & -v
                y = low.bit_length() - 1
                if not (self.rows[y] >> x) & 1:
                    return (x, y)
                v ^= low
        return None

    def to_dense(self) -> list[list[int]]:
        return [[(r >> y) & 1 for y in range(self.n)] for r in self.rows]

    def count_common(self, x: int, other: "RelationMatrix", y: int) -> int:
        """``(self @ other)[x, y]`` for symmetric other: |{z : x R z, z S y}|."""
        return (self.rows[x] & other.rows[y]).bit_count()

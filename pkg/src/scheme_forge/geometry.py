"""Elliptic quadrics over prime fields and the generalised Penttila-Williford relations.

Points of ``PG(2n-1, p)`` are coordinate tuples normalised so the first nonzero
coordinate is 1.  The elliptic quadric is

    Q(x) = x0 x1 + x2 x3 + ... + f(x_{2n-2}, x_{2n-1})

with ``f`` an irreducible binary quadratic form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from sympy import isprime

from .errors import (
    DegenerateParameters,
    EnumerationTooLarge,
    NoSecondPoint,
    SingularBasePoint,
    UnsupportedDimension,
)
from .linalg import RelationMatrix

__all__ = [
    "PrimeField",
    "EllipticQuadric",
    "AmbientSplit",
    "quadric_points",
    "ambient_split",
    "sigma",
    "genpw_relations",
    "quadric_lines",
    "generators_off_hyperplane",
    "projective_points",
    "normalize",
]

ENUMERATION_CAP = 10**8


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def inv(self, x: int) -> int:
        x %= self.p
        if not x:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(x, -1, self.p)

    def is_square(self, x: int) -> bool:
        x %= self.p
        return x == 0 or self.p == 2 or pow(x, (self.p - 1) // 2, self.p) == 1

    def smallest_nonsquare(self) -> int:
        return next(e for e in range(2, self.p) if not self.is_square(e))


def normalize(v, p: int) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    v = [x % p for x in v]
    lead = next((x for x in v if x), None)
    if lead is None:
        raise ValueError("zero vector is not a projective point")
    inv = pow(lead, -1, p)
    return tuple(x * inv % p for x in v)


def projective_points(dim: int, p: int):
    """All points of PG(dim-1, p), lexicographic in their normalised coordinates."""
    if p**dim > ENUMERATION_CAP:
        raise EnumerationTooLarge(f"{p}^{dim} vectors exceeds the enumeration cap")
    for lead in range(dim):
        for tail in product(range(p), repeat=dim - lead - 1):
            yield (0,) * lead + (1,) + tail


@dataclass(frozen=True)
class EllipticQuadric:
    """``Q^-(2n-1, p)`` with a fixed irreducible binary form in the last two coordinates."""

    n: int
    p: int
    # f(x, y) = fa x^2 + fb x y + fc y^2
    f: tuple[int, int, int] = field(init=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        F = PrimeField(self.p)
        if self.p == 2:
            f = (1, 1, 1)
        else:
            f = (1, 0, (-F.smallest_nonsquare()) % self.p)
        fa, fb, fc = f
        # irreducible: no root of f(x, 1), and fa != 0
        if any((fa * x * x + fb * x + fc) % self.p == 0 for x in range(self.p)):
            raise ValueError("binary form is not irreducible")
        object.__setattr__(self, "f", f)

    @property
    def dim(self) -> int:
        return 2 * self.n

    def Q(self, x) -> int:
        p, n = self.p, self.n
        s = 0
        for i in range(n - 1):
            s += x[2 * i] * x[2 * i + 1]
        u, v = x[2 * n - 2], x[2 * n - 1]
        fa, fb, fc = self.f
        return (s + fa * u * u + fb * u * v + fc * v * v) % p

    def B(self, x, y) -> int:
        p, n = self.p, self.n
        s = 0
        for i in range(n - 1):
            s += x[2 * i] * y[2 * i + 1] + x[2 * i + 1] * y[2 * i]
        u1, v1, u2, v2 = x[2 * n - 2], x[2 * n - 1], y[2 * n - 2], y[2 * n - 1]
        fa, fb, fc = self.f
        return (s + 2 * fa * u1 * u2 + fb * (u1 * v2 + v1 * u2) + 2 * fc * v1 * v2) % p

    def expected_point_count(self) -> int:
        q, n = self.p, self.n
        return (q**n + 1) * (q ** (n - 1) - 1) // (q - 1)


def quadric_points(Q: EllipticQuadric) -> list[tuple[int, ...]]:
    return [x for x in projective_points(Q.dim, Q.p) if Q.Q(x) == 0]


@dataclass
class AmbientSplit:
    base_point: tuple[int, ...]  # Pi^perp
    pi_points: list  # quadric points on the hyperplane Pi = base_point^perp
    omega: list  # quadric points off Pi

    @property
    def pi_perp(self):
        return self.base_point


def ambient_split(Q: EllipticQuadric, base_point=None, points=None) -> AmbientSplit:
    if base_point is None:
        base_point = next(x for x in projective_points(Q.dim, Q.p) if Q.Q(x) != 0)
    base_point = normalize(base_point, Q.p)
    if Q.Q(base_point) == 0:
        raise SingularBasePoint(f"{base_point} lies on the quadric")
    pts = quadric_points(Q) if points is None else points
    pi = [x for x in pts if Q.B(x, base_point) == 0]
    omega = [x for x in pts if Q.B(x, base_point) != 0]
    return AmbientSplit(base_point, pi, omega)


def sigma(Q: EllipticQuadric, pi_perp, X) -> tuple[int, ...]:
    """Second quadric point on the line joining ``pi_perp`` and ``X``."""
    p = Q.p
    bxp = Q.B(X, pi_perp)
    if bxp == 0:
        raise NoSecondPoint(f"{X} lies in the hyperplane")
    # Q(X + lam P) = lam (B(X,P) + lam Q(P)) = 0
    lam = (-bxp) * pow(Q.Q(pi_perp), -1, p) % p
    Y = normalize([x + lam * y for x, y in zip(X, pi_perp)], p)
    if Q.Q(Y) != 0 or Y == tuple(X):
        raise NoSecondPoint(f"no second point on the line through {X}")
    return Y


def genpw_relations(Q: EllipticQuadric, split: AmbientSplit) -> list[RelationMatrix]:
    """The five relations R_0..R_4 on Omega.

    ``X ~ Y`` means collinear and distinct; ``R_1: Y !~ X ~ Y^s``,
    ``R_2: Y !~ X !~ Y^s``, ``R_3: Y ~ X !~ Y^s``, ``R_4: X = Y^s``.
    """
    if Q.p == 2:
        raise DegenerateParameters("q = 2: relation R_2 is empty")
    omega = split.omega
    idx = {x: i for i, x in enumerate(omega)}
    N = len(omega)
    sig = [idx[sigma(Q, split.base_point, x)] for x in omega]
    rows = [[0] * N for _ in range(5)]
    for a, X in enumerate(omega):
        for b, Y in enumerate(omega):
            if a == b:
                r = 0
            elif a == sig[b]:
                r = 4
            else:
                x_y = Q.B(X, Y) == 0
                x_ys = Q.B(X, omega[sig[b]]) == 0
                if x_y and x_ys:
                    raise DegenerateParameters(f"{X} is collinear with both {Y} and its image")
                r = 3 if x_y else 1 if x_ys else 2
            rows[r][a] |= 1 << b
    return [RelationMatrix(N, r) for r in rows]


def quadric_lines(Q: EllipticQuadric, points=None) -> list[frozenset]:
    """All totally singular lines, each as a frozenset of its points."""
    p = Q.p
    pts = quadric_points(Q) if points is None else points
    lines = set()
    for a, X in enumerate(pts):
        for Y in pts[a + 1:]:
            if Q.B(X, Y):
                continue
            line = frozenset(
                normalize([s * x + t * y for x, y in zip(X, Y)], p)
                for s, t in ((0, 1),) + tuple((1, t) for t in range(p))
            )
            lines.add(line)
    return sorted(lines, key=sorted)


def generators_off_hyperplane(Q: EllipticQuadric, split: AmbientSplit) -> list[tuple[int, ...]]:
    """For each generator (line, n = 3) not inside Pi, the indices of its points in Omega."""
    if Q.n != 3:
        raise UnsupportedDimension("generators are enumerated only for n = 3 (lines of Q^-(5, q))")
    idx = {x: i for i, x in enumerate(split.omega)}
    out = []
    for line in quadric_lines(Q, split.pi_points + split.omega):
        inside = sorted(idx[x] for x in line if x in idx)
        if inside:
            out.append(tuple(inside))
    return out

"""Named scheme families, closed-form parameter tables and the partial-geometry scan."""

from __future__ import annotations

import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from sympy import isprime, primefactors

from .errors import (
    DegenerateParameters,
    FormulaMismatch,
    InadmissibleParameters,
    InfeasibleParameters,
    OutOfRange,
    ParseError,
    TooLarge,
)
from .exactnum import Scalar, sqrt_integer
from .geometry import EllipticQuadric, ambient_split, genpw_relations
from .linalg import ExactMatrix, RelationMatrix
from .scheme import AXIOM_CAP, Scheme, find_cometric_orderings, is_Q_bipartite, krein_parameter

__all__ = [
    "PgParameters",
    "PgScanEntry",
    "johnson",
    "johnson_vertices",
    "pg_scheme",
    "srg_scheme",
    "dual_polar_scheme",
    "octagon_scheme",
    "octagon_eigenvalues",
    "genpw_param",
    "genpw_explicit",
    "genpw_eigenmatrix",
    "genpw_intersection_matrices",
    "genpw_dual_intersection_matrices",
    "GENPW_ERRATA",
    "taylor_scheme",
    "alpha_for_vanishing",
    "pg_scan",
    "parse_descriptor",
    "CATALOG",
]


# ---------------------------------------------------------------------------
# Johnson
# ---------------------------------------------------------------------------

def johnson_vertices(v: int, k: int) -> list[tuple[int, ...]]:
    """k-subsets of {1..v} in lexicographic order; index i is vertex i."""
    return list(combinations(range(1, v + 1), k))


def johnson(v: int, k: int) -> Scheme:
    if not 2 <= k <= v // 2:
        raise InadmissibleParameters(f"J({v},{k}) needs 2 <= k <= v/2")
    N = comb(v, k)
    if N > AXIOM_CAP:
        raise TooLarge(f"J({v},{k}) has {N} vertices")
    masks = [sum(1 << (x - 1) for x in S) for S in johnson_vertices(v, k)]
    rows = [[0] * N for _ in range(k + 1)]
    for a, x in enumerate(masks):
        for b, y in enumerate(masks):
            rows[k - (x & y).bit_count()][a] |= 1 << b
    rels = [RelationMatrix(N, r) for r in rows]
    return Scheme.from_relations(rels, name=f"J({v},{k})", meta={"family": "johnson", "v": v, "k": k})


# ---------------------------------------------------------------------------
# Strongly regular graphs and partial geometries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PgParameters:
    s: int
    t: int
    alpha: int

    def __post_init__(self):
        s, t, a = self.s, self.t, self.alpha
        if min(s, t, a) < 1:
            raise InadmissibleParameters("s, t, alpha must be positive")
        if a > min(s + 1, t + 1):
            raise InadmissibleParameters(f"alpha = {a} exceeds min(s+1, t+1)")
        if (s + 1) * (s * t + a) % a:
            raise InadmissibleParameters("point count (s+1)(st+alpha)/alpha is not integral")

    @property
    def points(self) -> int:
        return (self.s + 1) * (self.s * self.t + self.alpha) // self.alpha


def pg_scheme(params, t=None, alpha=None) -> Scheme:
    """Collinearity scheme of a partial geometry; accepts ``PgParameters`` or ``(s, t, alpha)``."""
    if not isinstance(params, PgParameters):
        params = PgParameters(params, t, alpha)
    s, t, a = params.s, params.t, params.alpha
    if a == s + 1:
        raise InadmissibleParameters("alpha = s+1: the collinearity graph is complete")
    P = [
        [1, s * (t + 1), Fraction(s * t * (s + 1 - a), a)],
        [1, s - a, a - s - 1],
        [1, -t - 1, t],
    ]
    return Scheme.from_eigenmatrix(P, name=f"pg({s},{t},{a})",
                                   meta={"family": "pg", "s": s, "t": t, "alpha": a})


def srg_scheme(v: int, k: int, lam: int, mu: int) -> Scheme:
    """2-class scheme of an SRG; eigenspace 1 belongs to the positive restricted eigenvalue."""
    if not (0 < k < v - 1) or k * (k - lam - 1) != (v - k - 1) * mu:
        raise InfeasibleParameters(f"({v},{k},{lam},{mu}) fails k(k-l-1) = (v-k-1)mu")
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    root = sqrt_integer(disc)
    r = (Scalar(lam - mu) + root) / 2
    s = (Scalar(lam - mu) - root) / 2
    spec = Scheme.from_eigenmatrix([[1, k, v - k - 1], [1, r, -r - 1], [1, s, -s - 1]],
                                   name=f"srg({v},{k},{lam},{mu})",
                                   meta={"family": "srg", "params": [v, k, lam, mu]})
    if not all(x.is_integer() and x > 0 for x in spec.spectral.m):
        raise InfeasibleParameters(f"non-integral multiplicities {[str(x) for x in spec.spectral.m]}")
    return spec


# ---------------------------------------------------------------------------
# Dual polar spaces
# ---------------------------------------------------------------------------

def _dual_polar_P(family: str, q: int):
    if family == "DH5":
        return [
            [1, q * (q**4 + q**2 + 1), q**4 * (q**4 + q**2 + 1), q**9],
            [1, q**3 + q - 1, q * (q**3 - q**2 - 1), -(q**4)],
            [1, -(q**2) + q - 1, -q * (q**2 - q + 1), q**3],
            [1, -(q**4) - q**2 - 1, q**2 * (q**4 + q**2 + 1), -(q**6)],
        ]
    if family in ("DQ6", "DW5"):
        return [
            [1, q * (q**2 + q + 1), q**3 * (q**2 + q + 1), q**6],
            [1, q**2 + q - 1, q * (q**2 - q - 1), -(q**3)],
            [1, -1, -(q**2), q**2],
            [1, -(q**2) - q - 1, q * (q**2 + q + 1), -(q**3)],
        ]
    raise ParseError(f"unknown dual polar family {family!r}")


def dual_polar_scheme(family: str, q: int) -> Scheme:
    """Rank-3 dual polar scheme; ``q`` is formal (no prime-power check), as flagged in ``meta``."""
    family = family.upper()
    if q < 2:
        raise InadmissibleParameters("q must be at least 2")
    return Scheme.from_eigenmatrix(
        _dual_polar_P(family, q), name=f"{family}(q={q})",
        meta={"family": "dualpolar", "type": family, "q": q, "q_formal": True,
              "prime_power": len(primefactors(q)) == 1},
    )


# ---------------------------------------------------------------------------
# Generalised octagons
# ---------------------------------------------------------------------------

def octagon_eigenvalues(s: int, t: int) -> list[Scalar]:
    """Eigenvalues in the pinned eigenspace order 0..4."""
    r = sqrt_integer(2 * s * t)
    return [Scalar(s * (t + 1)), Scalar(s - 1), Scalar(-(t + 1)), s - 1 + r, s - 1 - r]


def _pin_by_eigenvalue(scheme: Scheme, thetas) -> Scheme:
    col = [scheme.spectral.P[r, 1] for r in range(scheme.d + 1)]
    try:
        order = [col.index(th) for th in thetas]
    except ValueError as exc:
        raise FormulaMismatch(f"eigenvalues {col} do not match {thetas}") from exc
    return scheme.with_eigenspace_order(order)


def octagon_scheme(s: int, t: int) -> Scheme:
    if s < 1 or t < 1:
        raise InadmissibleParameters("octagon order needs s, t >= 1")
    b = [s * (t + 1), s * t, s * t, s * t]
    c = [1, 1, 1, t + 1]
    sch = Scheme.from_intersection_array(b, c, name=f"octagon({s},{t})",
                                         meta={"family": "octagon", "s": s, "t": t})
    return _pin_by_eigenvalue(sch, octagon_eigenvalues(s, t))


# ---------------------------------------------------------------------------
# Taylor graphs
# ---------------------------------------------------------------------------

def taylor_scheme(k: int, mu: int) -> Scheme:
    """Antipodal double cover ``{k, mu, 1; 1, mu, k}``, pinned to a Q-bipartite cometric ordering."""
    if not 1 <= mu < k:
        raise InadmissibleParameters("Taylor parameters need 1 <= mu < k")
    sch = Scheme.from_intersection_array([k, mu, 1], [1, mu, k], name=f"taylor({k},{mu})",
                                         meta={"family": "taylor", "k": k, "mu": mu})
    for order in find_cometric_orderings(sch.krein):
        if is_Q_bipartite(sch.krein, order):
            return sch.with_eigenspace_order(order)
    return sch


# ---------------------------------------------------------------------------
# Generalised Penttila-Williford scheme
# ---------------------------------------------------------------------------

def _genpw_check(q: int, n: int) -> None:
    if n < 3:
        raise InadmissibleParameters("need n >= 3")
    if q == 2:
        raise DegenerateParameters("q = 2: relation R_2 is empty")
    if q < 2:
        raise InadmissibleParameters("need q >= 3")


def genpw_eigenmatrix(q: int, n: int) -> ExactMatrix:
    a, b = q ** (n - 2), q ** (n - 1)
    return ExactMatrix([
        [1, (a - 1) * (b + 1), a * (q - 2) * (b + 1), (a - 1) * (b + 1), 1],
        [1, b + 1, 0, -(b + 1), -1],
        [1, a - 1, -2 * a, a - 1, 1],
        [1, -(a - 1), 0, a - 1, -1],
        [1, -a * (q - 2) - 1, 2 * a * (q - 2), -a * (q - 2) - 1, 1],
    ])


# Entries whose printed closed form disagrees with the scheme: (table, i, row h, col j).
GENPW_ERRATA = {
    ("A", 1, 1, 2): "printed q^(n+1) - 2q^n; row sums force (q-2) q^(2n-4) (equal only at n = 4)",
    ("A", 1, 3, 2): "printed q^(n+1) - 2q^n; row sums force (q-2) q^(2n-4) (equal only at n = 4)",
    ("B", 3, 4, 1): "printed (q^(n-1)-1)^2 / (2(q+1)^2); missing the factor q present in q_13^4",
}


def genpw_intersection_matrices(q: int, n: int, printed: bool = False) -> list[ExactMatrix]:
    """Closed-form ``L_1..L_4`` (with ``L_0 = I``), ``L_i[h][j] = p_ij^h``.

    ``printed=True`` reproduces the published table verbatim, including the
    entries listed in ``GENPW_ERRATA``.
    """
    q = Fraction(q)
    a = q ** (n - 2)
    a2 = q ** (2 * (n - 2))
    k = (a - 1) * (q ** (n - 1) + 1)
    x = a * (a - q + 1) - 2
    y = q ** (n + 1) - 2 * q**n if printed else (q - 2) * a2
    u = a * (a - 1)
    w = (a - 1) * ((q - 2) * a + 1)
    L1 = [
        [0, k, 0, 0, 0],
        [1, a2, y, x, 0],
        [0, u, w, u, 0],
        [0, x, y, a2, 1],
        [0, 0, 0, k, 0],
    ]
    k2 = (q - 2) * a * (q ** (n - 1) + 1)
    e = (q - 2) * a2
    f = (q - 2) * a * ((q - 2) * a + 1)
    L2 = [
        [0, 0, k2, 0, 0],
        [0, e, f, e, 0],
        [1, w, a * ((q - 2) ** 2 * a + 3 * q - 8), w, 1],
        [0, e, f, e, 0],
        [0, 0, k2, 0, 0],
    ]
    z = q ** (n - 4) * (q**n - q**3 + q**2) - 2
    L3 = [
        [0, 0, 0, k, 0],
        [0, z, e, a2, 1],
        [0, u, w, u, 0],
        [1, a2, e, z, 0],
        [0, k, 0, 0, 0],
    ]
    L4 = [[1 if i + j == 4 else 0 for j in range(5)] for i in range(5)]
    return [ExactMatrix.identity(5)] + [ExactMatrix(M) for M in (L1, L2, L3, L4)]


def genpw_dual_intersection_matrices(q: int, n: int, printed: bool = False) -> list[ExactMatrix]:
    """Closed-form ``L*_1..L*_4`` (with ``L*_0 = I``), ``L*_i[h][j] = q_ij^h``; see ``GENPW_ERRATA``."""
    q = Fraction(q)
    qn, qn1, qn2 = q**n, q ** (n - 1), q ** (n - 2)
    q2n1, q2n2 = q ** (2 * n - 1), q ** (2 * n - 2)
    p1, m1, m1sq = q + 1, q - 1, q * q - 1
    L1 = [
        [0, (qn - q) * (qn2 - 1) / (2 * p1), 0, 0, 0],
        [1, 0, (q - 2) * (q2n2 - 1) / (2 * m1sq), 0, (qn + q) * (qn2 - q) / (2 * m1sq)],
        [0, (qn - q) * (qn2 - 1) / (2 * p1**2), 0, (qn - q) * (qn1 - q) / (2 * p1**2), 0],
        [0, 0, (q - 2) * (qn - q) * (qn2 - 1) / (2 * m1sq), 0, (qn - q) * (qn2 - 1) / (2 * m1sq)],
        [0, (qn - q) * (qn2 - q) / (2 * p1**2), 0, q * (qn1 - 1) ** 2 / (2 * p1**2), 0],
    ]
    L2 = [
        [0, 0, (q - 2) * (q2n2 - 1) / (2 * m1), 0, 0],
        [0, (q - 2) * (q2n2 - 1) / (2 * m1sq), 0, (q - 2) * (q2n1 - q) / (2 * m1sq), 0],
        [1, 0, ((q - 2) ** 2 * q2n2 + (q - 3) * qn - 2 * q**2 + 7 * q - 4) / (2 * m1**2), 0,
         (qn - q**2) * ((q - 2) * qn2 + 1) / (2 * m1**2)],
        [0, (q - 2) * (qn - q) * (qn2 - 1) / (2 * m1sq), 0, (q - 2) * (qn1 - 1) * (qn + 2 * q + 1) / (2 * m1sq), 0],
        [0, 0, (q - 2) * (qn - q) * ((q - 2) * qn2 + 1) / (2 * m1**2), 0, (q - 2) * (qn1 - 1) ** 2 / (2 * m1**2)],
    ]
    L3 = [
        [0, 0, 0, (q2n1 - q) / (2 * p1), 0],
        [0, 0, (q - 2) * (q2n1 - q) / (2 * m1sq), 0, (q2n1 - q) / (2 * m1sq)],
        [0, (qn - q) * (qn1 - q) / (2 * p1**2), 0, (qn - q) * (qn + 2 * q + 1) / (2 * p1**2), 0],
        [1, 0, (q - 2) * (qn1 - 1) * (qn + 2 * q + 1) / (2 * m1sq), 0, (qn + q + 2) * (qn1 - q) / (2 * m1sq)],
        [0, (1 if printed else q) * (qn1 - 1) ** 2 / (2 * p1**2), 0, (qn - q) * (qn + q + 2) / (2 * p1**2), 0],
    ]
    L4 = [
        [0, 0, 0, 0, (qn + q) * (qn2 - 1) / (2 * m1)],
        [0, (qn + q) * (qn2 - q) / (2 * m1sq), 0, (q2n1 - q) / (2 * m1sq), 0],
        [0, 0, (qn2 - 1) * (q ** (n + 1) - 2 * qn + q**2) / (2 * m1**2), 0, (qn - q) * (qn2 - 1) / (2 * m1**2)],
        [0, (qn - q) * (qn2 - 1) / (2 * m1sq), 0, (qn + q + 2) * (qn1 - q) / (2 * m1sq), 0],
        [1, 0, (q - 2) * (qn1 - 1) ** 2 / (2 * m1**2), 0,
         (q2n2 - (q**2 - 4 * q + 5) * qn1 + (4 - 3 * q) * q) / (2 * m1**2)],
    ]
    return [ExactMatrix.identity(5)] + [ExactMatrix(M) for M in (L1, L2, L3, L4)]


def genpw_param(q: int, n: int) -> Scheme:
    _genpw_check(q, n)
    return Scheme.from_eigenmatrix(genpw_eigenmatrix(q, n), name=f"genpw({q},{n})",
                                   meta={"family": "genpw", "q": q, "n": n})


def genpw_explicit(q: int, n: int) -> Scheme:
    """Build the scheme on Omega from the quadric, with eigenspaces pinned to the parametric order."""
    _genpw_check(q, n)
    if not isprime(q):
        raise InadmissibleParameters("the explicit construction needs q prime")
    size = q ** (n - 1) * (q ** (n - 1) - 1)
    if size > AXIOM_CAP:
        raise TooLarge(f"|Omega| = {size} exceeds {AXIOM_CAP}")
    Q = EllipticQuadric(n, q)
    split = ambient_split(Q)
    rels = genpw_relations(Q, split)
    sch = Scheme.from_relations(rels, name=f"genpw({q},{n},explicit)",
                                meta={"family": "genpw", "q": q, "n": n, "explicit": True})
    sch.geometry = (Q, split)
    target = genpw_eigenmatrix(q, n)
    rows = [sch.spectral.P.row(r) for r in range(5)]
    try:
        order = [rows.index(target.row(r)) for r in range(5)]
    except ValueError as exc:
        raise FormulaMismatch("explicit eigenmatrix does not match the parametric one") from exc
    pinned = sch.with_eigenspace_order(order)
    pinned.geometry = sch.geometry
    return pinned


# ---------------------------------------------------------------------------
# Partial geometries with a vanishing Krein parameter
# ---------------------------------------------------------------------------

def alpha_for_vanishing(s: int, t: int) -> Scalar:
    """The alpha for which ``q_22^2`` of ``pg(s, t, alpha)`` vanishes."""
    if s < 2:
        raise OutOfRange("need s >= 2")
    if t < s * s:
        raise OutOfRange(f"t = {t} < s^2 = {s * s}")
    return (Scalar(s * s - t - 1) + sqrt_integer(t * (t + 1 - s * s))) / (s - 1)


# Parameter sets the scan finds whose geometry is known not to exist.
KNOWN_NONEXISTENT = {
    (4, 27, 2): "does not exist (exhaustive computer search)",
    (5, 32, 2): "does not exist",
    (6, 80, 3): "does not exist (a point neighbourhood would give pg(5,32,2))",
}


@dataclass(frozen=True)
class PgScanEntry:
    s: int
    t: int
    alpha: int
    points: int
    status: str

    def as_tuple(self) -> tuple[int, int, int]:
        return self.s, self.t, self.alpha


def _is_prime_power(x: int) -> bool:
    return x > 1 and len(primefactors(x)) == 1


def _scan_row(args) -> list[PgScanEntry]:
    s, t_max = args
    out = []
    for t in range(s * s, t_max + 1):
        alpha = alpha_for_vanishing(s, t)
        if not alpha.is_integer():
            continue
        a = int(alpha.to_fraction())
        if not 1 <= a <= min(s + 1, t + 1) or (s + 1) * (s * t + a) % a:
            continue
        sch = pg_scheme(s, t, a)
        if not krein_parameter(sch.spectral, 2, 2, 2).is_zero():
            raise FormulaMismatch(f"pg({s},{t},{a}): q_22^2 does not vanish")
        if (s, t, a) in KNOWN_NONEXISTENT:
            status = KNOWN_NONEXISTENT[(s, t, a)]
        elif a == 1 and _is_prime_power(s):
            status = "exists (classical GQ from Q-(5,s))"
        else:
            status = "open"
        out.append(PgScanEntry(s, t, a, PgParameters(s, t, a).points, status))
    return out


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("SCHEME_FORGE_THREADS", "1")))
    except ValueError:
        return 1


def pg_scan(s_max: int, t_max: int, workers: int | None = None) -> list[PgScanEntry]:
    """Admissible ``pg(s, t, alpha)`` with ``2 <= s <= s_max``, ``t <= t_max`` and ``q_22^2 = 0``."""
    if not (2 <= s_max <= 500 and 1 <= t_max <= 500):
        raise OutOfRange("scan bounds must lie in [2, 500] x [1, 500]")
    jobs = [(s, t_max) for s in range(2, s_max + 1) if s * s <= t_max]
    workers = _workers() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_scan_row, jobs))
    else:
        rows = [_scan_row(j) for j in jobs]
    return sorted((e for r in rows for e in r), key=PgScanEntry.as_tuple)


# ---------------------------------------------------------------------------
# Descriptor grammar
# ---------------------------------------------------------------------------

CATALOG = {
    "johnson": ("johnson:v,k", "Johnson scheme J(v,k) on k-subsets (explicit)"),
    "pg": ("pg:s,t,a", "collinearity scheme of a partial geometry pg(s,t,alpha)"),
    "srg": ("srg:v,k,l,m", "2-class scheme of a strongly regular graph"),
    "dualpolar": ("dualpolar:DH5|DQ6|DW5,q", "rank-3 dual polar space schemes"),
    "octagon": ("octagon:s,t", "collinearity scheme of a generalised octagon of order (s,t)"),
    "genpw": ("genpw:q,n[,explicit]", "generalised Penttila-Williford scheme on Q-(2n-1,q) off a hyperplane"),
    "taylor": ("taylor:k,mu", "Taylor graph {k,mu,1;1,mu,k}"),
}

_DESC_RE = re.compile(r"^\s*([a-z]+)\s*:\s*(.*?)\s*$")


def _ints(parts, count, name):
    if len(parts) != count:
        raise ParseError(f"{name} takes {count} parameters, got {len(parts)}")
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise ParseError(f"non-integer parameter in {name}: {parts}") from exc


def parse_descriptor(text: str) -> Scheme:
    """Build a catalog scheme from ``name:params``."""
    m = _DESC_RE.match(text)
    if not m:
        raise ParseError(f"malformed catalog descriptor {text!r}")
    name, rest = m.groups()
    parts = [p.strip() for p in rest.split(",")] if rest else []
    if name == "johnson":
        return johnson(*_ints(parts, 2, name))
    if name == "pg":
        return pg_scheme(*_ints(parts, 3, name))
    if name == "srg":
        return srg_scheme(*_ints(parts, 4, name))
    if name == "dualpolar":
        if len(parts) != 2 or parts[0].upper() not in ("DH5", "DQ6", "DW5"):
            raise ParseError("dualpolar takes DH5|DQ6|DW5,q")
        return dual_polar_scheme(parts[0], _ints(parts[1:], 1, name)[0])
    if name == "octagon":
        return octagon_scheme(*_ints(parts, 2, name))
    if name == "genpw":
        if len(parts) == 3:
            if parts[2] != "explicit":
                raise ParseError("third genpw parameter must be 'explicit'")
            return genpw_explicit(*_ints(parts[:2], 2, name))
        return genpw_param(*_ints(parts, 2, name))
    if name == "taylor":
        return taylor_scheme(*_ints(parts, 2, name))
    raise ParseError(f"unknown catalog family {name!r}")

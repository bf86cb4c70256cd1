"""Symmetric association schemes and their spectral data.

A :class:`Scheme` can be given by explicit 0-1 relation matrices, by its
intersection matrices ``L_i`` (with ``L_i[h][j] = p_ij^h``), by an eigenmatrix
``P`` or, for distance-regular graphs, by an intersection array.  Everything
downstream (``P``, ``Q``, Krein parameters, intersection numbers) is exact.

Indexing conventions
--------------------
``P[l][i]`` is the eigenvalue of ``A_i`` on eigenspace ``V_l``; ``Q = n P^{-1}``;
tensors are indexed ``t[i, j, h]`` for ``q_ij^h`` (resp. ``p_ij^h``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, cmp_to_key
from math import lcm

import numpy as np

from .errors import (
    AxiomViolation,
    DegenerateSplitting,
    FormulaMismatch,
    PreconditionViolated,
)
from .exactnum import ONE, ZERO, Scalar, as_scalar, compare
from .linalg import ExactMatrix, RelationMatrix, eigenvalues_quadratic, left_eigenvector_for

__all__ = [
    "Scheme",
    "SpectralData",
    "KreinTensor",
    "IntersectionTensor",
    "KreinArray",
    "ValidationReport",
    "validate_axioms",
    "spectral_from_eigenmatrix",
    "spectral_from_intersection_matrices",
    "spectral_from_intersection_array",
    "krein_parameters",
    "krein_parameter",
    "intersection_tensor",
    "vanishing_krein",
    "find_cometric_orderings",
    "find_metric_orderings",
    "is_Q_bipartite",
    "is_Q_antipodal",
    "krein_array",
    "schur_projection_check",
    "triple_intersection_check",
    "invariant_failures",
]

AXIOM_CAP = 500
TRIPLE_EXHAUSTIVE_CAP = 100
SPLITTING_POWERS = 6


# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralData:
    P: ExactMatrix
    Q: ExactMatrix
    k: tuple
    m: tuple
    n: int
    flags: dict = field(default_factory=dict, compare=False)

    @property
    def d(self) -> int:
        return self.P.nrows - 1

    def reordered(self, order) -> "SpectralData":
        """Re-index eigenspaces: new eigenspace ``r`` is old eigenspace ``order[r]``."""
        order = _full_order(order, self.d)
        P = self.P.permuted(row_order=order)
        Q = self.Q.permuted(col_order=order)
        m = tuple(self.m[o] for o in order)
        return SpectralData(P, Q, self.k, m, self.n, dict(self.flags))


def _full_order(order, d: int) -> tuple[int, ...]:
    order = tuple(order)
    if len(order) == d:
        order = (0,) + order
    if sorted(order) != list(range(d + 1)) or order[0] != 0:
        raise ValueError(f"{order} is not an ordering of 1..{d}")
    return order


class Tensor3:
    """Three-index array ``t[i, j, h]`` of Scalars over ``{0..d}^3``."""

    kind = "tensor"

    def __init__(self, values):
        self.values = tuple(tuple(tuple(as_scalar(x) for x in r) for r in s) for s in values)
        self.d = len(self.values) - 1

    def __getitem__(self, idx) -> Scalar:
        i, j, h = idx
        return self.values[i][j][h]

    def __eq__(self, other):
        return isinstance(other, Tensor3) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def matrix(self, i: int) -> ExactMatrix:
        """``L_i`` with ``L_i[h][j] = t[i, j, h]``."""
        r = range(self.d + 1)
        return ExactMatrix([[self.values[i][j][h] for j in r] for h in r])

    def permuted(self, order) -> "Tensor3":
        o = _full_order(order, self.d)
        r = range(self.d + 1)
        return type(self)([[[self.values[o[i]][o[j]][o[h]] for h in r] for j in r] for i in r])

    def zero_mask(self) -> list:
        return [[[x.is_zero() for x in r] for r in s] for s in self.values]

    def zero_triples(self) -> list[tuple[int, int, int]]:
        r = range(1, self.d + 1)
        return [(i, j, h) for i in r for j in r for h in r if self.values[i][j][h].is_zero()]

    def to_strings(self) -> list:
        return [[[str(x) for x in r] for r in s] for s in self.values]


class KreinTensor(Tensor3):
    kind = "krein"


class IntersectionTensor(Tensor3):
    kind = "intersection"


@dataclass(frozen=True)
class KreinArray:
    a: tuple
    b: tuple
    c: tuple

    def as_array(self) -> tuple[tuple, tuple]:
        """``({b*_0..b*_{d-1}}, {c*_1..c*_d})``."""
        return self.b[:-1], self.c[1:]


@dataclass
class ValidationReport:
    n: int
    d: int
    valencies: tuple
    p: IntersectionTensor
    checks: tuple = ("partition", "identity", "symmetric", "intersection-numbers")
    valid: bool = True


# ---------------------------------------------------------------------------
# Explicit relations
# ---------------------------------------------------------------------------

def _labels(relations: list[RelationMatrix]) -> np.ndarray:
    n = relations[0].n
    lab = np.full((n, n), -1, dtype=np.int16)
    for i, R in enumerate(relations):
        lab[np.asarray(R.to_dense(), dtype=bool)] = i
    return lab


def validate_axioms(relations: list[RelationMatrix]) -> ValidationReport:
    """Check that symmetric 0-1 relations form an association scheme.

    Every intersection number ``p_ij^h`` is counted for every pair in ``R_h``
    (word-parallel popcounts), so well-definedness is verified, not assumed.
    """
    if len(relations) < 2:
        raise AxiomViolation("too-few-relations", None, "need at least R_0 and R_1")
    n = relations[0].n
    if any(R.n != n for R in relations):
        raise AxiomViolation("size-mismatch", None, "relations of different sizes")
    if n > AXIOM_CAP:
        raise PreconditionViolated(f"n = {n} exceeds brute-force cap {AXIOM_CAP}")
    d = len(relations) - 1
    full = (1 << n) - 1
    for x in range(n):
        if relations[0].rows[x] != 1 << x:
            raise AxiomViolation("identity", (x, x), "R_0 is not the identity relation")
        acc = 0
        total = 0
        for R in relations:
            acc |= R.rows[x]
            total += R.rows[x].bit_count()
        if acc != full or total != n:
            raise AxiomViolation("partition", (x, None), f"row {x} is not partitioned by the relations")
    for i, R in enumerate(relations):
        if R.nnz() == 0:
            raise AxiomViolation("empty-relation", (i, None), f"R_{i} is empty")
        w = R.is_symmetric()
        if w is not None:
            raise AxiomViolation("symmetry", w, f"R_{i} is not symmetric at {w}")
    lab = _labels(relations).tolist()
    rows = [R.rows for R in relations]
    seen: list = [None] * (d + 1)
    r = range(d + 1)
    for x in range(n):
        rx = [rows[i][x] for i in r]
        for y in range(n):
            h = lab[x][y]
            counts = [[(rx[i] & rows[j][y]).bit_count() for j in r] for i in r]
            if seen[h] is None:
                seen[h] = counts
            elif seen[h] != counts:
                raise AxiomViolation(
                    "intersection-number", (x, y), f"p_ij^{h} depends on the pair chosen in R_{h}"
                )
    p = IntersectionTensor([[[seen[h][i][j] for h in r] for j in r] for i in r])
    valencies = tuple(R.valency_of(0) for R in relations)
    return ValidationReport(n=n, d=d, valencies=valencies, p=p)


# ---------------------------------------------------------------------------
# Spectral data
# ---------------------------------------------------------------------------

def _finish(P: ExactMatrix, flags=None) -> SpectralData:
    n_s = sum(P.row(0), ZERO)
    if not n_s.is_integer():
        raise ValueError("row 0 of P must sum to an integer vertex count")
    n = int(n_s.a)
    Q = P.inverse().scale(n)
    return SpectralData(P, Q, tuple(P.row(0)), tuple(Q.row(0)), n, dict(flags or {}))


def spectral_from_eigenmatrix(P) -> SpectralData:
    P = P if isinstance(P, ExactMatrix) else ExactMatrix(P)
    if not P.is_square():
        raise ValueError("P must be square")
    if any(x != 1 for x in P.col(0)):
        raise ValueError("column 0 of P must be all ones")
    if any(compare(x, 1) < 0 for x in P.row(0)):
        raise ValueError("valencies must be >= 1")
    return _finish(P)


def _lex_desc(r1, r2) -> int:
    for x, y in zip(r1[1:], r2[1:]):
        c = compare(x, y)
        if c:
            return -c
    return 0


def spectral_from_intersection_matrices(mats) -> SpectralData:
    """Diagonalise a deterministic generic combination of ``L_0..L_d``.

    Coefficients ``(i+1)^p`` are tried for ``p = 1, 2, ...`` up to
    ``SPLITTING_POWERS`` (``p = 1`` alone collides whenever the nontrivial rows of
    ``P`` have a linear relation, which the Johnson schemes do).  Rows of ``P`` are
    the first-entry-one left eigenvectors; row 0 is the valency row and the
    remaining rows are sorted by decreasing ``(P_l1, P_l2, ...)``.
    """
    mats = [m if isinstance(m, ExactMatrix) else ExactMatrix(m) for m in mats]
    d = len(mats) - 1
    valencies = tuple(mats[i][0, i] for i in range(d + 1))
    for power in range(1, SPLITTING_POWERS + 1):
        M = ExactMatrix.zeros(d + 1, d + 1)
        for i, L in enumerate(mats):
            M = M + L.scale((i + 1) ** power)
        evs = eigenvalues_quadratic(M)
        if len(set(evs)) == d + 1:
            break
    else:
        raise DegenerateSplitting("generic combinations do not split the eigenspaces")
    rows = [left_eigenvector_for(M, lam) for lam in evs]
    # each row is the common eigenvector; its entries are the eigenvalues of L_i
    rows = [tuple(r) for r in rows]
    top = [r for r in rows if tuple(r) == valencies]
    if len(top) != 1:
        raise DegenerateSplitting("valency row not found among eigenvectors")
    rest = sorted((r for r in rows if r != top[0]), key=cmp_to_key(_lex_desc))
    return _finish(ExactMatrix([top[0]] + rest))


def spectral_from_intersection_array(b, c) -> SpectralData:
    """Spectral data of a distance-regular graph from ``{b_0..b_{d-1}; c_1..c_d}``.

    Eigenvalues come from the tridiagonal intersection matrix; ``P`` from the
    standard sequences ``u_i(theta)``; multiplicities from Biggs' formula
    ``m(theta) = n / sum_i k_i u_i(theta)^2``.  Non-integral multiplicities are
    reported in ``flags`` rather than raised.
    """
    b = [Fraction(x) for x in b]
    c = [Fraction(x) for x in c]
    d = len(b)
    if len(c) != d or d < 1:
        raise ValueError("need b_0..b_{d-1} and c_1..c_d")
    if any(x <= 0 for x in b + c):
        raise ValueError("intersection array entries must be positive")
    k = b[0]
    bb = b + [Fraction(0)]
    cc = [Fraction(0)] + c
    a = [k - bb[i] - cc[i] for i in range(d + 1)]
    L = ExactMatrix(
        [[cc[i] if j == i - 1 else a[i] if j == i else bb[i] if j == i + 1 else 0 for j in range(d + 1)]
         for i in range(d + 1)]
    )
    val = [Fraction(1)]
    for i in range(d):
        val.append(val[-1] * b[i] / c[i])
    n = sum(val)
    thetas = eigenvalues_quadratic(L)
    if len(set(thetas)) != d + 1:
        raise DegenerateSplitting("tridiagonal matrix has repeated eigenvalues")
    P_rows, mults = [], []
    for th in thetas:
        u = [ONE, th / k]
        for i in range(1, d):
            # c_i u_{i-1} + a_i u_i + b_i u_{i+1} = theta u_i
            u.append(((th - a[i]) * u[i] - c[i - 1] * u[i - 1]) / b[i])
        P_rows.append([val[i] * u[i] for i in range(d + 1)])
        mults.append(Scalar(n) / sum((val[i] * u[i] * u[i] for i in range(d + 1)), ZERO))
    P = ExactMatrix(P_rows)
    # Q_{l j} = m_j u_l(theta_j)
    Q = ExactMatrix([[mults[j] * P_rows[j][l] / val[l] for j in range(d + 1)] for l in range(d + 1)])
    integral = all(x.is_integer() and x > 0 for x in mults)
    flags = {
        "integral_multiplicities": integral,
        "integral_valencies": all(v.denominator == 1 for v in val),
        "NonIntegralMultiplicity": not integral,
        "intersection_array": ([int(x) if x.denominator == 1 else str(x) for x in b],
                               [int(x) if x.denominator == 1 else str(x) for x in c]),
    }
    if n.denominator != 1:
        raise ValueError("intersection array gives a non-integral vertex count")
    return SpectralData(P, Q, tuple(as_scalar(v) for v in val), tuple(mults), int(n), flags)


# ---------------------------------------------------------------------------
# Krein parameters and intersection numbers
# ---------------------------------------------------------------------------

def _krein_q_form(spec: SpectralData, i: int, j: int, h: int) -> Scalar:
    Q, k = spec.Q.rows, spec.k
    s = ZERO
    for l in range(spec.d + 1):
        s = s + k[l] * Q[l][i] * Q[l][j] * Q[l][h]
    return s / (spec.m[h] * spec.n)


def _krein_p_form(spec: SpectralData, i: int, j: int, h: int) -> Scalar:
    P, k = spec.P.rows, spec.k
    s = ZERO
    for l in range(spec.d + 1):
        s = s + P[i][l] * P[j][l] * P[h][l] / (k[l] * k[l])
    return s * spec.m[i] * spec.m[j] / spec.n


def krein_parameter(spec: SpectralData, i: int, j: int, h: int, cross_check: bool = True) -> Scalar:
    """A single Krein parameter ``q_ij^h``, by both formulas."""
    q = _krein_q_form(spec, i, j, h)
    if cross_check and q != _krein_p_form(spec, i, j, h):
        raise FormulaMismatch(f"Krein formulas disagree at ({i},{j},{h})")
    return q


def krein_parameters(spec: SpectralData, cross_check: bool = True) -> KreinTensor:
    """All Krein parameters, computed from ``Q`` and cross-checked against the ``P`` formula."""
    r = range(spec.d + 1)
    vals = [[[None] * (spec.d + 1) for _ in r] for _ in r]
    for i in r:
        for j in range(i, spec.d + 1):
            for h in r:
                q = krein_parameter(spec, i, j, h, cross_check)
                vals[i][j][h] = vals[j][i][h] = q
    return KreinTensor(vals)


def intersection_tensor(spec: SpectralData) -> IntersectionTensor:
    """``p_ij^h = (1/(n k_h)) sum_l m_l P_li P_lj P_lh``."""
    P, m, k, n = spec.P.rows, spec.m, spec.k, spec.n
    r = range(spec.d + 1)
    vals = [[[None] * (spec.d + 1) for _ in r] for _ in r]
    for i in r:
        for j in range(i, spec.d + 1):
            for h in r:
                s = ZERO
                for l in r:
                    s = s + m[l] * P[l][i] * P[l][j] * P[l][h]
                vals[i][j][h] = vals[j][i][h] = s / (k[h] * n)
    return IntersectionTensor(vals)


# ---------------------------------------------------------------------------
# Scheme
# ---------------------------------------------------------------------------

class Scheme:
    """An association scheme with lazily computed spectral data and tensors."""

    def __init__(self, kind: str, *, relations=None, matrices=None, P=None, spectral=None,
                 name: str = "", meta=None, order=None):
        self.kind = kind
        self.relations = relations
        self.matrices = matrices
        self._P = P
        self._spectral = spectral
        self.name = name
        self.meta = dict(meta or {})
        self.order = order
        self._validation = None

    # constructors --------------------------------------------------------
    @classmethod
    def from_relations(cls, relations, name: str = "", meta=None) -> "Scheme":
        relations = [r if isinstance(r, RelationMatrix) else RelationMatrix.from_dense(r) for r in relations]
        report = validate_axioms(relations)
        s = cls("relations", relations=relations, name=name, meta=meta)
        s._validation = report
        return s

    @classmethod
    def from_intersection_matrices(cls, mats, name: str = "", meta=None) -> "Scheme":
        mats = [m if isinstance(m, ExactMatrix) else ExactMatrix(m) for m in mats]
        return cls("intersection_matrices", matrices=mats, name=name, meta=meta)

    @classmethod
    def from_eigenmatrix(cls, P, name: str = "", meta=None) -> "Scheme":
        P = P if isinstance(P, ExactMatrix) else ExactMatrix(P)
        return cls("eigenmatrix", P=P, name=name, meta=meta)

    @classmethod
    def from_intersection_array(cls, b, c, name: str = "", meta=None) -> "Scheme":
        spec = spectral_from_intersection_array(b, c)
        meta = dict(meta or {})
        meta.setdefault("intersection_array", {"b": list(b), "c": list(c)})
        return cls("intersection_array", spectral=spec, name=name, meta=meta)

    def with_eigenspace_order(self, order) -> "Scheme":
        """Same scheme with eigenspaces re-indexed (new ``r`` = current ``order[r]``)."""
        s = Scheme(self.kind, relations=self.relations, matrices=self.matrices, P=self._P,
                   spectral=self.spectral.reordered(order), name=self.name, meta=self.meta)
        s._validation = self._validation
        return s

    # basic properties ----------------------------------------------------
    @property
    def is_explicit(self) -> bool:
        return self.relations is not None

    @property
    def d(self) -> int:
        if self.relations is not None:
            return len(self.relations) - 1
        if self.matrices is not None:
            return len(self.matrices) - 1
        return self.spectral.d

    @property
    def n(self) -> int:
        if self.relations is not None:
            return self.relations[0].n
        return self.spectral.n

    @property
    def validation(self) -> ValidationReport:
        if self._validation is None:
            if self.relations is None:
                raise PreconditionViolated("axiom validation needs explicit relations")
            self._validation = validate_axioms(self.relations)
        return self._validation

    @cached_property
    def labels(self) -> np.ndarray:
        if self.relations is None:
            raise PreconditionViolated("relation labels need explicit relations")
        return _labels(self.relations)

    @cached_property
    def spectral(self) -> SpectralData:
        if self._spectral is not None:
            return self._spectral
        if self.relations is not None:
            mats = [self.validation.p.matrix(i) for i in range(self.d + 1)]
            return spectral_from_intersection_matrices(mats)
        if self.matrices is not None:
            return spectral_from_intersection_matrices(self.matrices)
        return spectral_from_eigenmatrix(self._P)

    @cached_property
    def krein(self) -> KreinTensor:
        return krein_parameters(self.spectral)

    @cached_property
    def intersection(self) -> IntersectionTensor:
        p = intersection_tensor(self.spectral)
        if self.relations is not None and p != self.validation.p:
            raise FormulaMismatch("intersection numbers from P disagree with direct counts")
        if self.matrices is not None and any(p.matrix(i) != L for i, L in enumerate(self.matrices)):
            raise FormulaMismatch("intersection numbers from P disagree with the given matrices")
        return p

    def __repr__(self):
        return f"Scheme({self.name or self.kind}, n={self.n}, d={self.d})"

    # idempotents (explicit schemes only) ---------------------------------
    def scaled_idempotent(self, j: int):
        """``(G, s)`` with ``E_j = G / s`` and ``G`` an integer (or object) numpy array."""
        col = [self.spectral.Q[l, j] for l in range(self.d + 1)]
        vals, den = _scale_column(col)
        return _take(vals, self.labels), den * self.n

    def scaled_entry_matrix(self, j: int):
        """``F`` with ``F[x, u] = D * Q[rel(x, u), j]`` and the scale ``D``."""
        col = [self.spectral.Q[l, j] for l in range(self.d + 1)]
        vals, den = _scale_column(col)
        return _take(vals, self.labels), den


def _scale_column(col):
    if all(x.is_rational() for x in col):
        den = lcm(*(x.a.denominator for x in col))
        return [int(x.a * den) for x in col], den
    return list(col), 1


_INT64_SAFE = 1 << 62


def _take(vals, labels: np.ndarray) -> np.ndarray:
    if all(isinstance(v, int) for v in vals):
        arr = np.array(vals, dtype=object)
        return arr[labels]
    arr = np.empty(len(vals), dtype=object)
    arr[:] = vals
    return arr[labels]


def _fits_int64(arrays, degree: int, n: int) -> bool:
    bound = 1
    for a in arrays:
        if a.dtype != object:
            mx = int(np.abs(a).max()) if a.size else 0
        else:
            if not all(isinstance(v, int) for v in a.flat):
                return False
            mx = max((abs(v) for v in a.flat), default=0)
        bound *= max(mx, 1)
    return bound * n < _INT64_SAFE


def _as_int64(arrays, degree: int, n: int):
    if _fits_int64(arrays, degree, n):
        return [np.asarray(a, dtype=np.int64) for a in arrays]
    return arrays


# ---------------------------------------------------------------------------
# Structure predicates
# ---------------------------------------------------------------------------

def vanishing_krein(t: KreinTensor) -> list[tuple[int, int, int]]:
    """All ``(i, j, h)`` with ``i, j, h >= 1`` and ``q_ij^h = 0`` exactly."""
    return t.zero_triples()


def _polynomial_orderings(t: Tensor3) -> list[tuple[int, ...]]:
    d = t.d
    zero = t.zero_mask()

    def ok_upto(order, r):
        # every condition whose largest position index equals r
        for i in range(r + 1):
            for j in range(r + 1):
                for h in range(r + 1):
                    if max(i, j, h) != r:
                        continue
                    z = zero[order[i]][order[j]][order[h]]
                    if (i + j < h or h < abs(i - j)) and not z:
                        return False
                    if h == i + j and z:
                        return False
        return True

    results = []

    def extend(order, remaining):
        r = len(order)
        if not remaining:
            results.append(tuple(order[1:]))
            return
        for x in sorted(remaining):
            order.append(x)
            if ok_upto(order, r):
                extend(order, remaining - {x})
            order.pop()

    extend([0], set(range(1, d + 1)))
    return results


def find_cometric_orderings(t: KreinTensor) -> list[tuple[int, ...]]:
    """Every eigenspace ordering (a permutation of 1..d) that makes the scheme cometric."""
    if t.d > 8:
        raise PreconditionViolated("ordering search is capped at d <= 8")
    return _polynomial_orderings(t)


def find_metric_orderings(p: IntersectionTensor) -> list[tuple[int, ...]]:
    """Every relation ordering that makes the scheme metric (P-polynomial)."""
    if p.d > 8:
        raise PreconditionViolated("ordering search is capped at d <= 8")
    return _polynomial_orderings(p)


def _maybe_permute(t: Tensor3, ordering):
    return t if ordering is None else t.permuted(ordering)


def is_Q_bipartite(t: KreinTensor, ordering=None) -> bool:
    t = _maybe_permute(t, ordering)
    r = range(t.d + 1)
    return all(t[i, j, h].is_zero() for i in r for j in r for h in r if (i + j + h) % 2)


def krein_array(t: KreinTensor, ordering=None) -> KreinArray:
    """``a*_i = q_1i^i``, ``b*_i = q_1,i+1^i``, ``c*_i = q_1,i-1^i`` under the given ordering."""
    t = _maybe_permute(t, ordering)
    d = t.d
    a = tuple(t[1, i, i] for i in range(d + 1))
    b = tuple(t[1, i + 1, i] if i < d else ZERO for i in range(d + 1))
    c = tuple(t[1, i - 1, i] if i > 0 else ZERO for i in range(d + 1))
    return KreinArray(a, b, c)


def is_Q_antipodal(t: KreinTensor, ordering=None) -> bool:
    """``b*_j = c*_{d-j}`` for all ``j`` except possibly ``j = floor(d/2)``."""
    ka = krein_array(t, ordering)
    d = t.d
    return all(ka.b[j] == ka.c[d - j] for j in range(d) if j != d // 2)


# ---------------------------------------------------------------------------
# Spectral checks on explicit schemes
# ---------------------------------------------------------------------------

def _require_vanishing(scheme: Scheme, i: int, j: int, h: int) -> None:
    if not scheme.is_explicit:
        raise PreconditionViolated("check needs explicit relations")
    if not scheme.krein[i, j, h].is_zero():
        raise PreconditionViolated(f"q_{i}{j}^{h} = {scheme.krein[i, j, h]} is not zero")


def schur_projection_check(scheme: Scheme, i: int, j: int, h: int, battery: int = 8) -> bool:
    """Verify ``E_h (E_i e_a o E_j e_b) = 0`` for ``a < battery`` and every ``b``."""
    _require_vanishing(scheme, i, j, h)
    if scheme.n > AXIOM_CAP:
        raise PreconditionViolated(f"n = {scheme.n} exceeds {AXIOM_CAP}")
    Gi, _ = scheme.scaled_idempotent(i)
    Gj, _ = scheme.scaled_idempotent(j)
    Gh, _ = scheme.scaled_idempotent(h)
    Gi, Gj, Gh = _as_int64([Gi, Gj, Gh], 3, scheme.n)
    for a in range(min(battery, scheme.n)):
        W = Gi[:, a][:, None] * Gj  # column b is u o v_b
        R = Gh.dot(W)
        if not _all_zero(R):
            return False
    return True


def _all_zero(arr) -> bool:
    if arr.dtype != object:
        return not arr.any()
    return all(not v for v in arr.flat)


def triple_intersection_check(scheme: Scheme, i: int, j: int, h: int, mode: str = "exhaustive",
                              samples: int = 10_000, seed: int = 0) -> bool:
    """Check that ``sum Q_ri Q_sj Q_th p_rst^{xyz}`` vanishes on vertex triples.

    The triple sum equals ``sum_u F_i[x,u] F_j[y,u] F_h[z,u]`` where
    ``F_l[x,u] = Q[rel(x,u), l]``, which is what is evaluated.
    """
    _require_vanishing(scheme, i, j, h)
    n = scheme.n
    Fi, _ = scheme.scaled_entry_matrix(i)
    Fj, _ = scheme.scaled_entry_matrix(j)
    Fh, _ = scheme.scaled_entry_matrix(h)
    Fi, Fj, Fh = _as_int64([Fi, Fj, Fh], 3, n)
    if mode == "exhaustive":
        if n > TRIPLE_EXHAUSTIVE_CAP:
            raise PreconditionViolated(f"exhaustive mode is capped at n <= {TRIPLE_EXHAUSTIVE_CAP}")
        for x in range(n):
            W = Fi[x][None, :] * Fj  # row y: F_i[x] o F_j[y]
            if not _all_zero(Fh.dot(W.T)):
                return False
        return True
    if mode == "sample":
        rng = np.random.default_rng(seed)
        triples = rng.integers(0, n, size=(samples, 3))
        for x, y, z in triples.tolist():
            if (Fi[x] * Fj[y] * Fh[z]).sum():
                return False
        return True
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Invariant suite
# ---------------------------------------------------------------------------

def invariant_failures(scheme: Scheme, krein_nonnegative: bool = True, explicit_checks: bool = True) -> list[str]:
    """Names of every violated scheme invariant (empty when all hold)."""
    spec = scheme.spectral
    d, n = spec.d, spec.n
    r = range(d + 1)
    fails = []
    nI = ExactMatrix.identity(d + 1).scale(n)
    if spec.P @ spec.Q != nI:
        fails.append("PQ = nI")
    if spec.Q @ spec.P != nI:
        fails.append("QP = nI")
    if sum(spec.k, ZERO) != n:
        fails.append("sum k = n")
    if sum(spec.m, ZERO) != n:
        fails.append("sum m = n")
    if spec.k[0] != 1 or spec.m[0] != 1:
        fails.append("k0 = m0 = 1")
    for jj in r:
        biggs = sum((spec.P[jj, i] * spec.P[jj, i] / spec.k[i] for i in r), ZERO)
        if spec.m[jj] * biggs != n:
            fails.append(f"Biggs multiplicity m_{jj}")
    try:
        q = krein_parameters(spec)
    except FormulaMismatch:
        fails.append("Krein formulas agree")
        q = krein_parameters(spec, cross_check=False)
    m = spec.m
    for i in r:
        for j in r:
            if q[i, j, 0] != (m[i] if i == j else ZERO):
                fails.append(f"q_{i}{j}^0 = delta m")
            if sum((q[i, j, h] * m[h] for h in r), ZERO) != m[i] * m[j]:
                fails.append(f"sum_h q_{i}{j}^h m_h = m_i m_j")
            for h in r:
                if q[i, j, h] != q[j, i, h]:
                    fails.append(f"q symmetric ({i},{j},{h})")
                if m[h] * q[i, j, h] != m[j] * q[i, h, j]:
                    fails.append(f"m_h q_ij^h = m_j q_ih^j ({i},{j},{h})")
                if krein_nonnegative and q[i, j, h].sign() < 0:
                    fails.append(f"Krein condition q_{i}{j}^{h} >= 0")
    p = intersection_tensor(spec)
    k = spec.k
    for i in r:
        for j in r:
            if p[i, j, 0] != (k[i] if i == j else ZERO):
                fails.append(f"p_{i}{j}^0 = delta k")
            if sum((p[i, j, h] * k[h] for h in r), ZERO) != k[i] * k[j]:
                fails.append(f"sum_h p_{i}{j}^h k_h = k_i k_j")
    if scheme.is_explicit:
        try:
            scheme.intersection
        except FormulaMismatch:
            fails.append("p from P equals direct counts")
        if explicit_checks:
            fails += _idempotent_failures(scheme)
    return fails


def _idempotent_failures(scheme: Scheme) -> list[str]:
    d, n = scheme.d, scheme.n
    spec = scheme.spectral
    fails = []
    G = []
    scales = []
    for j in range(d + 1):
        g, s = scheme.scaled_idempotent(j)
        G.append(g)
        scales.append(s)
    G64 = _as_int64(G, 2, n)
    for i in range(d + 1):
        for j in range(i, d + 1):
            prod = G64[i].dot(G64[j])
            if i != j:
                if not _all_zero(prod):
                    fails.append(f"E_{i} E_{j} = 0")
            else:
                # G_i^2 / s_i^2 == G_i / s_i  <=>  G_i^2 == s_i G_i
                if not _all_zero(prod - scales[i] * G64[i]):
                    fails.append(f"E_{i}^2 = E_{i}")
    # A_i = sum_j P_ji E_j; an entry of E_j depends only on the label of (x, y)
    present = sorted(set(np.unique(scheme.labels).tolist()))
    for i in range(d + 1):
        for lab in present:
            v = sum((spec.P[j, i] * spec.Q[lab, j] for j in range(d + 1)), ZERO) / n
            if v != (1 if lab == i else 0):
                fails.append(f"A_{i} = sum_j P_j{i} E_j")
                break
    return fails

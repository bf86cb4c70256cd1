"""Delsarte designs: inner distributions, MacWilliams transforms and Krein-based size constraints."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .catalog import genpw_param, johnson, johnson_vertices, octagon_scheme
from .errors import EmptySubset, NegativeTransformEntry, PreconditionViolated, SearchFailed
from .exactnum import ZERO, Scalar, as_scalar, sqrt_integer
from .geometry import generators_off_hyperplane
from .scheme import KreinTensor, Scheme, SpectralData

__all__ = [
    "SubsetDesign",
    "DesignCertificate",
    "ConstraintStep",
    "ConstraintReport",
    "Verdict",
    "LineCliqueReport",
    "inner_distribution",
    "mac_williams",
    "eigenspace_support",
    "support_from_design_indices",
    "constrain_design",
    "intriguing_set_verdict",
    "line_clique_analysis",
    "j84_examples",
    "relative_movoid_check",
    "is_t_design",
    "transitive_groups_degree8",
]


@dataclass
class SubsetDesign:
    """A vertex subset of an explicit scheme, or an abstract inner distribution."""

    scheme: Scheme
    members: frozenset | None = None
    distribution: tuple | None = None
    name: str = ""

    def __post_init__(self):
        if self.members is None and self.distribution is None:
            raise ValueError("need members or an inner distribution")
        if self.members is not None:
            if not self.scheme.is_explicit:
                raise PreconditionViolated("member sets need an explicit scheme")
            self.members = frozenset(self.members)
            if any(not 0 <= x < self.scheme.n for x in self.members):
                raise ValueError("member index out of range")
        if self.distribution is not None:
            self.distribution = tuple(as_scalar(x) for x in self.distribution)

    @property
    def size(self) -> int:
        if self.members is not None:
            return len(self.members)
        return int(sum(self.distribution, ZERO).to_fraction())

    @property
    def mask(self) -> int:
        return sum(1 << x for x in self.members)

    def complement(self) -> "SubsetDesign":
        return SubsetDesign(self.scheme, frozenset(range(self.scheme.n)) - self.members,
                            name=f"complement of {self.name}" if self.name else "")


@dataclass(frozen=True)
class DesignCertificate:
    aQ: tuple
    design_indices: tuple  # T: j >= 1 with (aQ)_j = 0
    support: tuple  # S: j >= 1 with (aQ)_j != 0
    size: Fraction
    n: int
    nonnegative: bool

    @property
    def half_size(self) -> bool:
        return 2 * self.size == self.n


def inner_distribution(design: SubsetDesign) -> tuple:
    """``a_i = chi^T A_i chi / |theta|``."""
    if design.members is None:
        return design.distribution
    if not design.members:
        raise EmptySubset("inner distribution of the empty set")
    mask = design.mask
    size = len(design.members)
    out = []
    for R in design.scheme.relations:
        total = sum((R.rows[x] & mask).bit_count() for x in design.members)
        out.append(Scalar(Fraction(total, size)))
    return tuple(out)


def mac_williams(a, spec: SpectralData, strict: bool = True) -> DesignCertificate:
    """Row-vector product ``aQ`` with exact zero detection."""
    a = [as_scalar(x) for x in a]
    if len(a) != spec.d + 1:
        raise ValueError(f"distribution has length {len(a)}, expected {spec.d + 1}")
    aQ = spec.Q.vecmul(a)
    nonneg = all(x.sign() >= 0 for x in aQ)
    if strict and not nonneg:
        raise NegativeTransformEntry(f"aQ = {[str(x) for x in aQ]} has a negative entry")
    T = tuple(j for j in range(1, spec.d + 1) if aQ[j].is_zero())
    S = tuple(j for j in range(1, spec.d + 1) if not aQ[j].is_zero())
    return DesignCertificate(tuple(aQ), T, S, sum(a, ZERO).to_fraction(), spec.n, nonneg)


def eigenspace_support(design: SubsetDesign) -> tuple:
    """``{j >= 1 : E_j chi != 0}`` computed from exact scaled idempotents."""
    if design.members is None:
        raise PreconditionViolated("eigenspace support needs an explicit member set")
    sch = design.scheme
    idx = sorted(design.members)
    out = []
    for j in range(1, sch.d + 1):
        G, _ = sch.scaled_idempotent(j)
        v = G[:, idx].sum(axis=1)
        if any(x != 0 for x in v.tolist()):
            out.append(j)
    return tuple(out)


def support_from_design_indices(T, d: int) -> tuple:
    """Eigenspace support of a ``T``-design: ``{1..d} \\ T``."""
    T = set(T)
    return tuple(j for j in range(1, d + 1) if j not in T)


# ---------------------------------------------------------------------------
# Constraint engine
# ---------------------------------------------------------------------------

def _span(S) -> str:
    return " ⊥ ".join(["V0"] + [f"V{j}" for j in sorted(S)])


def _fmt_half(n: int) -> str:
    h = Fraction(n, 2)
    return str(h.numerator) if h.denominator == 1 else f"{h.numerator}/{h.denominator}"


@dataclass(frozen=True)
class ConstraintStep:
    h: int
    support_before: tuple
    dichotomy: str
    unconditional: bool


@dataclass
class ConstraintReport:
    initial: tuple
    steps: list
    final: tuple
    n: int
    d: int
    size: int | None = None
    forced_half_size: bool = False
    contradiction: bool = False
    verdict: str = ""

    @property
    def final_design_indices(self) -> tuple:
        return support_from_design_indices(self.final, self.d)


def constrain_design(spec: SpectralData, krein: KreinTensor, S, size=None) -> ConstraintReport:
    """Remove eigenspaces ``h`` with ``q_ij^h = 0`` on the current support until none remain.

    Each removal is the dichotomy "chi has no ``V_h`` component, or ``|theta| = n/2``";
    it is unconditional only when ``size`` is known and differs from ``n/2``.
    """
    n, d = spec.n, spec.d
    initial = tuple(sorted(set(S)))
    if any(not 1 <= j <= d for j in initial):
        raise ValueError(f"support {initial} not inside 1..{d}")
    unconditional = size is not None and 2 * size != n
    current = list(initial)
    steps = []
    while True:
        h = next((h for h in current
                  if all(krein[i, j, h].is_zero() for i in current for j in current)), None)
        if h is None:
            break
        rest = [j for j in current if j != h]
        dich = f"theta in {_span(rest)} or |theta| = {_fmt_half(n)}"
        steps.append(ConstraintStep(h, tuple(current), dich, unconditional))
        current = rest
    final = tuple(current)
    nontrivial = size is None or 0 < size < n
    forced = bool(initial) and not final and nontrivial
    contradiction = forced and size is not None and 2 * size != n
    if not steps:
        verdict = "no conclusion"
    elif forced:
        verdict = f"|theta| = {_fmt_half(n)}"
        if contradiction:
            verdict = f"no such subset of size {size}"
    else:
        T = support_from_design_indices(final, d)
        tset = "{" + ",".join(map(str, T)) + "}"
        verdict = f"theta is a {tset}-design or |theta| = {_fmt_half(n)}"
        if unconditional:
            verdict = f"theta is a {tset}-design"
    return ConstraintReport(initial, steps, final, n, d, size, forced, contradiction, verdict)


@dataclass(frozen=True)
class Verdict:
    h: int
    q_hhh: Scalar
    half_size_forced: bool
    text: str


def intriguing_set_verdict(spec: SpectralData, krein: KreinTensor, h: int) -> Verdict:
    if not 1 <= h <= spec.d:
        raise ValueError(f"h = {h} out of range")
    q = krein[h, h, h]
    if q.is_zero():
        return Verdict(h, q, True, f"nontrivial intriguing sets of type {h} have size {_fmt_half(spec.n)}")
    return Verdict(h, q, False, "no conclusion")


# ---------------------------------------------------------------------------
# Line cliques, m-ovoids and relative m-ovoids
# ---------------------------------------------------------------------------

@dataclass
class LineCliqueReport:
    family: str
    params: tuple
    clique_distribution: tuple
    certificate: DesignCertificate
    movoid_support: tuple
    constraint: ConstraintReport
    conclusion: str
    flags: dict = field(default_factory=dict)


def _is_square(x: int) -> bool:
    return sqrt_integer(x).is_integer()


def line_clique_analysis(family: str, *params) -> LineCliqueReport:
    """Follow a generator clique through MacWilliams and the constraint engine.

    ``family`` is ``"octagon"`` with ``(s, t)`` or ``"genpw"`` with ``(q, n)``.
    """
    if family == "octagon":
        s, t = params
        sch = octagon_scheme(s, t)
        a = (1, s, 0, 0, 0)
        line_size = s + 1
    elif family == "genpw":
        q, nn = params
        sch = genpw_param(q, nn)
        a = (1, 0, 0, q ** (nn - 2) - 1, 0)
        line_size = q ** (nn - 2)
    else:
        raise ValueError(f"unknown family {family!r}")
    spec = sch.spectral
    cert = mac_williams(a, spec)
    # a subset meeting every clique in a constant number of points is orthogonal
    # to every eigenspace the clique is not a design for
    support = cert.design_indices
    rep = constrain_design(spec, sch.krein, support)
    flags = {"line_size": line_size, "q_hhh_zero": rep.forced_half_size}
    if not rep.forced_half_size:
        conclusion = "no conclusion from this method"
    elif family == "octagon":
        flags["feit_higman_square"] = _is_square(2 * s * t)
        if line_size % 2:
            conclusion = "no nontrivial m-ovoid"
        else:
            conclusion = "nontrivial m-ovoids are hemisystems"
    else:
        if q % 2:
            conclusion = "no proper relative m-ovoid (relative hemisystem needs q even)"
        else:
            conclusion = "proper relative m-ovoids are relative hemisystems"
        flags["q_even_required"] = True
    return LineCliqueReport(family, tuple(params), tuple(as_scalar(x) for x in a), cert,
                            support, rep, conclusion, flags)


def relative_movoid_check(generators, subset, m: int) -> bool:
    """Every generator (given as Omega-index tuples) meets ``subset`` in exactly ``m`` points.

    ``generators`` may also be a ``(quadric, split)`` pair, enumerated on the fly.
    """
    if isinstance(generators, tuple) and len(generators) == 2 and hasattr(generators[0], "n"):
        generators = generators_off_hyperplane(*generators)
    subset = set(subset)
    return all(sum(x in subset for x in g) == m for g in generators)


# ---------------------------------------------------------------------------
# J(8,4) examples
# ---------------------------------------------------------------------------

def is_t_design(blocks, v: int, t: int) -> int | None:
    """Return lambda if every t-subset of {1..v} lies in the same number of blocks, else None."""
    counts = {T: 0 for T in combinations(range(1, v + 1), t)}
    for B in blocks:
        for T in combinations(sorted(B), t):
            counts[T] += 1
    vals = set(counts.values())
    return vals.pop() if len(vals) == 1 else None


def _gf8_mul(a: int, b: int) -> int:
    # GF(8) = GF(2)[w]/(w^3 + w + 1)
    r = 0
    for i in range(3):
        if b >> i & 1:
            r ^= a << i
    for i in (4, 3):
        if r >> i & 1:
            r ^= 0b1011 << (i - 3)
    return r


def _pg1(p: int):
    """Points of PG(1,p) as 0..p-1 and infinity = p, plus maps for x+1, c*x and -1/x."""
    inf = p

    def shift(x):
        return inf if x == inf else (x + 1) % p

    def scale(c):
        return lambda x: inf if x == inf else c * x % p

    def invneg(x):
        if x == inf:
            return 0
        if x == 0:
            return inf
        return (-pow(x, -1, p)) % p

    return shift, scale, invneg


def transitive_groups_degree8() -> dict:
    """Generators (as permutations of 0..7) of the 2-transitive groups searched for example (b)."""
    shift, scale, invneg = _pg1(7)
    psl27 = [tuple(f(x) for x in range(8)) for f in (shift, scale(2), invneg)]
    pgl27 = psl27 + [tuple(scale(3)(x) for x in range(8))]
    transl = [tuple(x ^ b for x in range(8)) for b in (1, 2, 4)]
    agl18 = transl + [tuple(_gf8_mul(2, x) for x in range(8))]
    agaml18 = agl18 + [tuple(_gf8_mul(x, x) for x in range(8))]
    # GL(3,2) is generated by a transvection and a 7-cycle (multiplication by w)
    gl32 = [tuple(x ^ ((x & 1) << 1) for x in range(8)), tuple(_gf8_mul(2, x) for x in range(8))]
    agl32 = transl + gl32
    return {"PSL(2,7)": psl27, "PGL(2,7)": pgl27, "AGL(1,8)": agl18,
            "AGammaL(1,8)": agaml18, "AGL(3,2)": agl32}


def _orbits_on_subsets(gens, k: int, v: int = 8) -> list[list[tuple]]:
    seen = set()
    orbits = []
    for S in combinations(range(v), k):
        if S in seen:
            continue
        orbit = {S}
        frontier = [S]
        while frontier:
            X = frontier.pop()
            for g in gens:
                Y = tuple(sorted(g[x] for x in X))
                if Y not in orbit:
                    orbit.add(Y)
                    frontier.append(Y)
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def _design_from_blocks(scheme: Scheme, blocks, name: str) -> SubsetDesign:
    index = {S: i for i, S in enumerate(johnson_vertices(8, 4))}
    return SubsetDesign(scheme, frozenset(index[tuple(sorted(B))] for B in blocks), name=name)


def _search_42(scheme: Scheme):
    """First 42-block 3-(8,4,3) design with support {4} among unions of group orbits."""
    found = []
    for gname, gens in transitive_groups_degree8().items():
        orbits = _orbits_on_subsets(gens, 4)
        for r in range(1, len(orbits) + 1):
            for combo in combinations(range(len(orbits)), r):
                blocks = [tuple(x + 1 for x in B) for o in combo for B in orbits[o]]
                if len(blocks) != 42 or is_t_design(blocks, 8, 3) != 3:
                    continue
                des = _design_from_blocks(scheme, blocks, "(b) 3-(8,4,3) design")
                if eigenspace_support(des) == (4,):
                    found.append((gname, combo, des))
    if not found:
        raise SearchFailed("no 42-block design with support {4} in the orbit space")
    return found


def j84_examples(scheme: Scheme | None = None) -> dict:
    """The four J(8,4) subsets (a)-(d); ``meta`` of (b) records the search outcome."""
    sch = scheme or johnson(8, 4)
    # (a) planes of AG(3,2): points are GF(2)^3 as 0..7, labelled 1..8
    planes = []
    for a in range(1, 8):
        for c in (0, 1):
            planes.append([x + 1 for x in range(8) if (a & x).bit_count() % 2 == c])
    ex_a = _design_from_blocks(sch, planes, "(a) planes of AG(3,2)")
    found = _search_42(sch)
    ex_b = found[0][2]
    distinct = {f[2].members for f in found}
    ex_b.search = {"group": found[0][0], "hits": len(found), "distinct_designs": len(distinct)}
    ex_c = _design_from_blocks(sch, [B for B in johnson_vertices(8, 4) if 1 in B], "(c) star of 1")
    # (d) PSL(2,5) on PG(1,5) (points 0..4, infinity = 5, labelled 1..6)
    shift, scale, invneg = _pg1(5)
    gens = [tuple(f(x) for x in range(6)) for f in (shift, scale(4), invneg)]
    orbits = _orbits_on_subsets(gens, 3, v=6)
    if sorted(map(len, orbits)) != [10, 10]:
        raise SearchFailed(f"unexpected PSL(2,5) orbit sizes {[len(o) for o in orbits]}")
    first, second = sorted(orbits)  # the orbit containing {0,1,2} is extended by 7
    blocks = [tuple(x + 1 for x in B) + (7,) for B in first]
    blocks += [tuple(x + 1 for x in B) + (8,) for B in second]
    blocks += list(combinations(range(1, 7), 4))
    ex_d = _design_from_blocks(sch, blocks, "(d) PSL(2,5) construction")
    return {"a": ex_a, "b": ex_b, "c": ex_c, "d": ex_d}


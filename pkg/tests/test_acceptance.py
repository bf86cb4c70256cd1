"""Acceptance criteria, one test each, at the stated (exact) tolerance.

Criteria 1 and 5 compare against printed values that disagree with the
computation; they are kept literal and fail. See the decisions ledger.
"""

from fractions import Fraction

import pytest
from conftest import record

from scheme_forge.catalog import (
    dual_polar_scheme,
    genpw_dual_intersection_matrices,
    genpw_eigenmatrix,
    genpw_explicit,
    genpw_intersection_matrices,
    genpw_param,
    johnson,
    octagon_scheme,
    pg_scan,
    pg_scheme,
    taylor_scheme,
)
from scheme_forge.designs import (
    constrain_design,
    eigenspace_support,
    j84_examples,
    line_clique_analysis,
    support_from_design_indices,
)
from scheme_forge.scheme import (
    find_cometric_orderings,
    find_metric_orderings,
    invariant_failures,
    krein_parameter,
    schur_projection_check,
    triple_intersection_check,
    validate_axioms,
    vanishing_krein,
)


def test_criterion_01_gq22_krein_value():
    q = krein_parameter(pg_scheme(2, 2, 1).spectral, 1, 1, 1)
    ok = q == Fraction(65, 72)
    record(1, ok, f"q_11^1 of GQ(2,2) = {q}, target 65/72")
    assert ok


def test_criterion_02_pg_scan():
    table = pg_scan(10, 100)
    a2 = sorted((e.s, e.t) for e in table if e.alpha == 2)
    a3 = sorted((e.s, e.t, e.status) for e in table if e.alpha == 3)
    smallest_open = min((s, t) for s, t, status in a3 if status == "open")
    smallest_t = min(a3, key=lambda e: e[1])[:2]
    ok = a2 == [(4, 27), (5, 32), (7, 54)] and smallest_open == (7, 75) and smallest_t == (7, 75)
    record(2, ok, f"alpha=2: {a2}; alpha=3: {[x[:2] for x in a3]}; smallest open alpha=3: {smallest_open}")
    assert ok


def test_criterion_03_gq_vanishing_iff_t_is_s_squared():
    bad = []
    for s in (2, 3, 4, 5):
        if not krein_parameter(pg_scheme(s, s * s, 1).spectral, 2, 2, 2).is_zero():
            bad.append((s, s * s))
        for t in range(1, 11):
            if t != s * s and krein_parameter(pg_scheme(s, t, 1).spectral, 2, 2, 2).is_zero():
                bad.append((s, t))
    ok = not bad
    record(3, ok, f"GQ(s,t) q_22^2 = 0 iff t = s^2 for s in 2..5; violations {bad}")
    assert ok


def test_criterion_04_dual_polar():
    bad = []
    for fam in ("DH5", "DQ6", "DW5"):
        for q in (2, 3, 4, 5):
            K = dual_polar_scheme(fam, q).krein
            if not (K[1, 1, 1] > 0 and K[2, 2, 2] > 0 and K[3, 3, 3].is_zero()):
                bad.append((fam, q))
    same = all(dual_polar_scheme("DQ6", q).spectral.P == dual_polar_scheme("DW5", q).spectral.P for q in (2, 3, 4, 5))
    dh = dual_polar_scheme("DH5", 2).spectral
    n_rowsum = sum(int(x.to_fraction()) for x in dh.k)
    ok = not bad and same and dh.n == 891 == n_rowsum
    record(4, ok, f"violations {bad}; DQ6 == DW5: {same}; DH(5,4) n = {dh.n} (row sum {n_rowsum})")
    assert ok


def _mismatch(tensor, tables):
    return [(i, h, j) for i in range(5) for h in range(5) for j in range(5) if tensor.matrix(i)[h, j] != tables[i][h, j]]


def test_criterion_05_genpw_explicit_vs_printed_tables():
    ex = genpw_explicit(3, 3)
    par = genpw_param(3, 3)
    axioms = validate_axioms(ex.relations).valid
    a_diff = _mismatch(ex.intersection, genpw_intersection_matrices(3, 3, printed=True))
    b_diff = _mismatch(ex.krein, genpw_dual_intersection_matrices(3, 3, printed=True))
    p_ok = ex.spectral.P == genpw_eigenmatrix(3, 3)
    agree = (ex.spectral.P == par.spectral.P and ex.spectral.Q == par.spectral.Q
             and ex.krein == par.krein and ex.intersection == par.intersection)
    ok = axioms and not a_diff and not b_diff and p_ok and agree
    record(5, ok, f"axioms {axioms}; printed A differs at (i,h,j) {a_diff}; printed B differs at {b_diff}; "
                  f"P matches theorem {p_ok}; param == explicit {agree}")
    assert ok


GENPW_ALWAYS = [(1, 1, 1), (3, 3, 3), (1, 3, 1), (3, 1, 1), (3, 3, 1), (1, 1, 3), (1, 3, 3), (3, 1, 3)]
GENPW_N3 = [(4, 4, 1), (1, 4, 1), (4, 1, 1)]


def test_criterion_06_genpw_parameterized():
    bad = []
    for q in (3, 4, 5):
        for n in (3, 4, 5):
            s = genpw_param(q, n)
            van = set(vanishing_krein(s.krein))
            need = set(GENPW_ALWAYS) | (set(GENPW_N3) if n == 3 else set())
            if not need <= van:
                bad.append((q, n, "missing", sorted(need - van)))
            if bool(find_cometric_orderings(s.krein)) != (n == 3):
                bad.append((q, n, "cometric"))
            if find_metric_orderings(s.intersection):
                bad.append((q, n, "metric"))
    ok = not bad
    record(6, ok, f"9 parameter pairs, violations {bad}")
    assert ok


def test_criterion_07_octagon_2_4():
    o = octagon_scheme(2, 4)
    sp = o.spectral
    thetas = sorted((sp.P[r, 1] for r in range(5)), reverse=True)
    mults = all(m.is_integer() and m > 0 for m in sp.m)
    rep = line_clique_analysis("octagon", 2, 4)
    zeros = [j for j in range(1, 5) if rep.certificate.aQ[j].is_zero()]
    q222 = o.krein[2, 2, 2].is_zero()
    flag = octagon_scheme(2, 6).spectral.flags["NonIntegralMultiplicity"]
    ok = (o.n == 1755 and thetas == [10, 5, 1, -3, -5] and mults and zeros == [2] and q222
          and rep.conclusion == "no nontrivial m-ovoid" and flag)
    record(7, ok, f"n = {o.n}; eigenvalues {[str(x) for x in thetas]}; m {[str(x) for x in sp.m]}; "
                  f"aQ zeros at {zeros}; q_22^2 = 0: {q222}; '{rep.conclusion}'; (2,6) non-integral: {flag}")
    assert ok


def test_criterion_08_octagon_vanishing_law():
    bad = [(s, t) for s in range(2, 9) for t in range(2, 65)
           if krein_parameter(octagon_scheme(s, t).spectral, 2, 2, 2).is_zero() != (t == s * s)]
    ok = not bad
    record(8, ok, f"2<=s<=8, 2<=t<=64: q_22^2 = 0 iff t = s^2; violations {bad}")
    assert ok


def test_criterion_09_j84():
    J = johnson(8, 4)
    K = J.krein
    order_ok = find_cometric_orderings(K)[0] == (1, 2, 3, 4)
    van = all(K[i, j, 1].is_zero() for i in (1, 4) for j in (1, 4))
    ex = j84_examples(J)
    sizes = [ex[k].size for k in "abcd"]
    supports = [eigenspace_support(ex[k]) for k in "abcd"]
    rep = constrain_design(J.spectral, K, {1, 4})
    dich = [s.dichotomy for s in rep.steps]
    ok = (order_ok and van and sizes == [14, 42, 35, 35] and supports == [(4,), (4,), (1,), (1, 4)]
          and dich == ["theta in V0 ⊥ V4 or |theta| = 35"])
    record(9, ok, f"q_ij^1 = 0 on {{1,4}}: {van}; sizes {sizes}; supports {[list(s) for s in supports]}; {dich}")
    assert ok


def test_criterion_10_q_bipartite_engine():
    T = taylor_scheme(5, 2)
    r1 = constrain_design(T.spectral, T.krein, {1, 3})
    G = genpw_param(3, 3)
    r2 = constrain_design(G.spectral, G.krein, support_from_design_indices({2, 3}, 4))
    ok = (r1.forced_half_size and r1.verdict == f"|theta| = {T.n // 2}"
          and r2.verdict == "theta is a {1,2,3}-design or |theta| = 36")
    record(10, ok, f"Taylor(5,2) S={{1,3}}: '{r1.verdict}'; genPW(3,3) T={{2,3}}: '{r2.verdict}'")
    assert ok


def _catalog():
    """Every scheme named in criteria 1-10, with whether Krein nonnegativity is expected."""
    out = [(pg_scheme(2, 2, 1), True), (johnson(8, 4), True), (taylor_scheme(5, 2), True),
           (genpw_explicit(3, 3), True)]
    out += [(pg_scheme(e.s, e.t, e.alpha), True) for e in pg_scan(10, 100)]
    # Higman's inequality t <= s^2 is exactly Krein nonnegativity for GQs
    out += [(pg_scheme(s, t, 1), t <= s * s) for s in (2, 3, 4, 5) for t in range(1, 11)]
    out += [(dual_polar_scheme(f, q), True) for f in ("DH5", "DQ6", "DW5") for q in (2, 3, 4, 5)]
    out += [(genpw_param(q, n), True) for q in (3, 4, 5) for n in (3, 4, 5)]
    # for octagons with s >= 2 the Krein conditions amount to t <= s^2
    out += [(octagon_scheme(s, t), t <= s * s) for s in range(2, 9) for t in range(2, 65)]
    out += [(octagon_scheme(2, 6), False)]
    return out


def test_criterion_11_property_suites():
    bad = []
    checked = 0
    for sch, feasible in _catalog():
        fails = invariant_failures(sch, krein_nonnegative=True)
        structural = [f for f in fails if not f.startswith("Krein condition")]
        negative = len(fails) != len(structural)
        if structural or negative == feasible:
            bad.append((sch.name, structural[:3], "negative Krein" if negative else ""))
        checked += 1
    explicit = {"J(8,4)": johnson(8, 4), "genpw(3,3)": genpw_explicit(3, 3)}
    for name, sch in explicit.items():
        for v in vanishing_krein(sch.krein):
            if not schur_projection_check(sch, *v):
                bad.append((name, "schur", v))
    J, G = explicit["J(8,4)"], explicit["genpw(3,3)"]
    for v in vanishing_krein(J.krein):
        if not triple_intersection_check(J, *v, mode="exhaustive"):
            bad.append(("J(8,4)", "triple", v))
    for v in vanishing_krein(G.krein):
        if not triple_intersection_check(G, *v, mode="sample", samples=10_000, seed=1):
            bad.append(("genpw(3,3)", "triple", v))
    ok = not bad
    record(11, ok, f"{checked} schemes; Schur and triple checks on every vanishing triple of J(8,4) and "
                   f"genPW(3,3); violations {bad[:5]}")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))

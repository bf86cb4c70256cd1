from math import comb

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from scheme_forge.catalog import (
    CATALOG,
    KNOWN_NONEXISTENT,
    PgParameters,
    alpha_for_vanishing,
    dual_polar_scheme,
    genpw_eigenmatrix,
    genpw_explicit,
    genpw_intersection_matrices,
    genpw_param,
    johnson,
    octagon_eigenvalues,
    octagon_scheme,
    parse_descriptor,
    pg_scan,
    pg_scheme,
    srg_scheme,
    taylor_scheme,
)
from scheme_forge.errors import (
    DegenerateParameters,
    InadmissibleParameters,
    InfeasibleParameters,
    OutOfRange,
    ParseError,
    TooLarge,
)
from scheme_forge.scheme import invariant_failures, krein_parameter


def test_johnson_sizes():
    for v, k in [(4, 2), (6, 3), (8, 4), (9, 3)]:
        s = johnson(v, k)
        assert s.n == comb(v, k) and s.d == k
        assert s.spectral.k == tuple(comb(k, i) * comb(v - k, i) for i in range(k + 1))
    with pytest.raises(InadmissibleParameters):
        johnson(8, 5)
    with pytest.raises(TooLarge):
        johnson(12, 6)


def test_pg_points():
    assert PgParameters(2, 2, 1).points == 15 == pg_scheme(2, 2, 1).n
    assert pg_scheme(PgParameters(7, 75, 3)).n == 8 * (7 * 75 + 3) // 3
    with pytest.raises(InadmissibleParameters):
        PgParameters(2, 2, 4)
    with pytest.raises(InadmissibleParameters):
        pg_scheme(2, 2, 3)
    # (s+1)(st+a)/a = 5 * 11 / 3
    with pytest.raises(InadmissibleParameters):
        PgParameters(4, 2, 3)


def _srg_oracle(v, k, lam, mu):
    # float solve of f + g = v - 1, k + f r + g s = 0
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    r = (lam - mu + disc ** 0.5) / 2
    s = (lam - mu - disc ** 0.5) / 2
    f = (-k - (v - 1) * s) / (r - s)
    return f, v - 1 - f


@pytest.mark.parametrize("params, f", [((10, 3, 0, 1), 5), ((16, 5, 0, 2), 10), ((16, 10, 6, 6), 5),
                                       ((27, 16, 10, 8), 6), ((5, 2, 0, 1), 2)])
def test_srg_known(params, f):
    s = srg_scheme(*params)
    assert s.spectral.m[1] == f
    assert abs(_srg_oracle(*params)[0] - f) < 1e-9


def test_srg_errors():
    with pytest.raises(InfeasibleParameters):
        srg_scheme(10, 3, 0, 2)


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(st.integers(2, 30), st.data())
def test_srg_matches_float_oracle(k, data):
    mu = data.draw(st.integers(1, k))
    lam = data.draw(st.integers(0, k - 2))
    assume(k * (k - lam - 1) % mu == 0)
    v = k + 1 + k * (k - lam - 1) // mu
    assume(v - k - 1 > 0)
    f, g = _srg_oracle(v, k, lam, mu)
    ok = all(abs(x - round(x)) < 1e-7 and round(x) > 0 for x in (f, g))
    try:
        sch = srg_scheme(v, k, lam, mu)
    except InfeasibleParameters:
        assert not ok
        return
    assert ok
    assert abs(float(sch.spectral.m[1]) - f) < 1e-7


def test_dual_polar_point_counts():
    # oracle: number of generators of the underlying polar space
    for q in (2, 3, 4, 5):
        assert dual_polar_scheme("DH5", q).n == (q + 1) * (q**3 + 1) * (q**5 + 1)
        assert dual_polar_scheme("DQ6", q).n == (q + 1) * (q**2 + 1) * (q**3 + 1)
    assert dual_polar_scheme("dw5", 4).meta["prime_power"]
    assert not dual_polar_scheme("DW5", 6).meta["prime_power"]
    with pytest.raises(ParseError):
        dual_polar_scheme("DX7", 2)


@pytest.mark.parametrize("s, t", [(2, 4), (4, 2), (1, 1), (3, 9), (2, 1), (1, 2)])
def test_octagon_sizes(s, t):
    o = octagon_scheme(s, t)
    assert o.n == (s + 1) * (1 + s * t) * (1 + s * s * t * t)
    assert [o.spectral.P[r, 1] for r in range(5)] == octagon_eigenvalues(s, t)


def test_octagon_1_1_is_the_8_cycle():
    o = octagon_scheme(1, 1)
    assert o.n == 8 and o.spectral.k == (1, 2, 2, 2, 1)


def test_taylor_is_icosahedron():
    T = taylor_scheme(5, 2)
    assert T.n == 12
    assert sorted(str(x) for x in T.spectral.m) == ["1", "3", "3", "5"]
    with pytest.raises(InadmissibleParameters):
        taylor_scheme(3, 3)


def test_genpw_param_shape():
    for q in (3, 4, 5, 7):
        for n in (3, 4, 5):
            s = genpw_param(q, n)
            b = q ** (n - 1)
            assert s.n == b * (b - 1)
            assert s.spectral.P == genpw_eigenmatrix(q, n)
            Ls = genpw_intersection_matrices(q, n)
            assert all(s.intersection.matrix(i) == Ls[i] for i in range(5))
    with pytest.raises(DegenerateParameters):
        genpw_param(2, 3)
    with pytest.raises(InadmissibleParameters):
        genpw_param(3, 2)


def test_genpw_explicit_limits():
    with pytest.raises(TooLarge):
        genpw_explicit(3, 4)
    with pytest.raises(InadmissibleParameters):
        genpw_explicit(4, 3)
    ex = genpw_explicit(3, 3)
    assert ex.spectral.P == genpw_eigenmatrix(3, 3)
    assert ex.krein == genpw_param(3, 3).krein


def test_alpha_for_vanishing():
    assert alpha_for_vanishing(7, 75) == 3
    assert alpha_for_vanishing(2, 4) == 1
    with pytest.raises(OutOfRange):
        alpha_for_vanishing(3, 8)
    with pytest.raises(OutOfRange):
        alpha_for_vanishing(1, 8)


@settings(max_examples=80, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(st.integers(2, 9), st.integers(0, 60), st.integers(1, 9))
def test_q222_vanishes_exactly_at_alpha(s, dt, a):
    t = s * s + dt
    assume(a <= s and (s + 1) * (s * t + a) % a == 0)
    zero = krein_parameter(pg_scheme(s, t, a).spectral, 2, 2, 2).is_zero()
    assert zero == (alpha_for_vanishing(s, t) == a)


def test_pg_scan_table():
    table = pg_scan(10, 100)
    assert sorted((e.s, e.t) for e in table if e.alpha == 2) == [(4, 27), (5, 32), (7, 54)]
    a1 = sorted((e.s, e.t) for e in table if e.alpha == 1)
    assert a1 == [(s, s * s) for s in range(2, 11)]
    for e in table:
        if e.as_tuple() in KNOWN_NONEXISTENT:
            assert e.status == KNOWN_NONEXISTENT[e.as_tuple()]
    assert next(e for e in table if e.as_tuple() == (7, 75, 3)).status == "open"
    assert next(e for e in table if e.as_tuple() == (6, 36, 1)).status == "open"
    assert next(e for e in table if e.as_tuple() == (5, 25, 1)).status.startswith("exists")


def test_pg_scan_parallel_matches_serial():
    assert pg_scan(10, 100, workers=2) == pg_scan(10, 100, workers=1)


def test_pg_scan_bounds():
    with pytest.raises(OutOfRange):
        pg_scan(1, 10)
    with pytest.raises(OutOfRange):
        pg_scan(10, 501)


@pytest.mark.parametrize("text, n", [("johnson:8,4", 70), ("pg:2,2,1", 15), ("srg:10,3,0,1", 10),
                                     ("dualpolar:DQ6,2", 135), ("octagon:2,4", 1755),
                                     ("genpw:3,3", 72), ("genpw:3,3,explicit", 72), ("taylor:5,2", 12),
                                     ("  pg : 2, 4, 1 ", 27)])
def test_parse_descriptor(text, n):
    assert parse_descriptor(text).n == n


@pytest.mark.parametrize("text", ["", "johnson", "johnson:8", "johnson:8,x", "foo:1,2",
                                  "dualpolar:DX,2", "genpw:3,3,implicit", "JOHNSON:8,4"])
def test_parse_descriptor_errors(text):
    with pytest.raises(ParseError):
        parse_descriptor(text)


def test_catalog_grammar_is_documented():
    for name, (grammar, desc) in CATALOG.items():
        assert grammar.startswith(name + ":") and desc


CATALOG_SCHEMES = (
    ["johnson:8,4", "johnson:6,3", "pg:2,2,1", "pg:2,4,1", "pg:4,27,2", "pg:7,75,3", "srg:16,10,6,6",
     "srg:27,16,10,8", "srg:100,77,60,56", "octagon:2,4", "octagon:1,1", "taylor:5,2", "genpw:3,3,explicit"]
    + [f"dualpolar:{f},{q}" for f in ("DH5", "DQ6", "DW5") for q in (2, 3, 4, 5)]
    + [f"genpw:{q},{n}" for q in (3, 4, 5) for n in (3, 4, 5)]
)


@pytest.mark.parametrize("text", CATALOG_SCHEMES)
def test_catalog_invariants(text):
    assert invariant_failures(parse_descriptor(text)) == []


def test_invariants_catch_krein_violation():
    # srg(28,9,0,4) has integral multiplicities but violates the Krein conditions
    fails = invariant_failures(srg_scheme(28, 9, 0, 4))
    assert fails and all("Krein condition" in f for f in fails)

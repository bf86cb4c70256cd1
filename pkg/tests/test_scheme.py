from fractions import Fraction
from math import comb

import numpy as np
import pytest

from scheme_forge.catalog import (
    dual_polar_scheme,
    genpw_dual_intersection_matrices,
    genpw_explicit,
    genpw_param,
    johnson,
    johnson_vertices,
    pg_scheme,
    taylor_scheme,
)
from scheme_forge.errors import AxiomViolation, FormulaMismatch, PreconditionViolated
from scheme_forge.exactnum import ZERO, sqrt_integer
from scheme_forge.linalg import ExactMatrix, RelationMatrix
from scheme_forge.scheme import (
    Scheme,
    find_cometric_orderings,
    find_metric_orderings,
    intersection_tensor,
    invariant_failures,
    is_Q_antipodal,
    is_Q_bipartite,
    krein_array,
    krein_parameter,
    krein_parameters,
    schur_projection_check,
    spectral_from_eigenmatrix,
    spectral_from_intersection_array,
    triple_intersection_check,
    validate_axioms,
    vanishing_krein,
)


@pytest.fixture(scope="module")
def J84():
    return johnson(8, 4)


@pytest.fixture(scope="module")
def genpw33():
    return genpw_explicit(3, 3)


def complete_graph(n):
    ident = RelationMatrix.from_pairs(n, [(x, x) for x in range(n)])
    adj = RelationMatrix.from_pairs(n, [(x, y) for x in range(n) for y in range(n) if x != y])
    return [ident, adj]


def test_K4():
    K4 = Scheme.from_relations(complete_graph(4))
    sp = K4.spectral
    assert sp.P == ExactMatrix([[1, 3], [1, -1]])
    assert sp.m == (1, 3)
    assert K4.intersection[1, 1, 1] == 2
    assert vanishing_krein(K4.krein) == []
    assert not is_Q_bipartite(K4.krein)


def test_J84_counts_match_brute_force(J84):
    verts = [frozenset(S) for S in johnson_vertices(8, 4)]
    rel = lambda x, y: 4 - len(x & y)
    p = J84.validation.p
    # one representative pair per relation h, counted with sets
    for h in range(5):
        x = verts[0]
        y = next(v for v in verts if rel(x, v) == h)
        for i in range(5):
            for j in range(5):
                count = sum(1 for z in verts if rel(x, z) == i and rel(z, y) == j)
                assert p[i, j, h] == count
    assert J84.intersection == p


def test_J84_spectrum(J84):
    sp = J84.spectral
    assert sp.k == (1, 16, 36, 16, 1)
    assert sp.m == tuple(comb(8, j) - comb(8, j - 1) if j else 1 for j in range(5))
    assert find_cometric_orderings(J84.krein) == [(1, 2, 3, 4)]
    assert find_metric_orderings(J84.intersection) == [(1, 2, 3, 4)]
    van = set(vanishing_krein(J84.krein))
    assert {(i, j, 1) for i in (1, 4) for j in (1, 4)} <= van


def test_axiom_violations():
    rels = complete_graph(3)
    bad = RelationMatrix.from_pairs(3, [(0, 1), (1, 2), (2, 0)])
    other = RelationMatrix.from_pairs(3, [(1, 0), (2, 1), (0, 2)])
    with pytest.raises(AxiomViolation) as e:
        validate_axioms([rels[0], bad, other])
    assert e.value.kind == "symmetry"
    with pytest.raises(AxiomViolation):
        validate_axioms([rels[0], rels[1], rels[1]])
    no_ident = RelationMatrix.from_pairs(3, [(0, 1), (1, 0)])
    with pytest.raises(AxiomViolation):
        validate_axioms([no_ident, rels[1]])


def test_path_graph_is_not_a_scheme():
    # P3 with distance relations: p_11^0 differs between end and middle vertices
    I = RelationMatrix.from_pairs(3, [(0, 0), (1, 1), (2, 2)])
    A1 = RelationMatrix.from_pairs(3, [(0, 1), (1, 0), (1, 2), (2, 1)])
    A2 = RelationMatrix.from_pairs(3, [(0, 2), (2, 0)])
    with pytest.raises(AxiomViolation) as e:
        validate_axioms([I, A1, A2])
    assert e.value.witness is not None


def test_eigenmatrix_source():
    s = dual_polar_scheme("DH5", 2)
    assert s.spectral.k == (1, 42, 336, 512)
    assert s.n == 891


def test_icosahedron_spectrum():
    sp = spectral_from_intersection_array([5, 2, 1], [1, 2, 5])
    r5 = sqrt_integer(5)
    assert [sp.P[j, 1] for j in range(4)] == [5, r5, -1, -r5]
    assert sp.m == (1, 3, 5, 3)
    assert sp.n == 12 and sp.d == 3


def test_octagon_arrays():
    sp = spectral_from_intersection_array([10, 8, 8, 8], [1, 1, 1, 5])
    assert sp.n == 1755 == 3 * 9 * 65
    assert sorted((sp.P[j, 1] for j in range(5)), reverse=True) == [10, 5, 1, -3, -5]
    assert all(m.is_integer() and m > 0 for m in sp.m)
    assert sum(sp.m, ZERO) == 1755
    bad = spectral_from_intersection_array([14, 12, 12, 12], [1, 1, 1, 7])
    assert bad.flags["NonIntegralMultiplicity"]


def test_krein_values():
    gq22 = pg_scheme(2, 2, 1).spectral
    # oracle: (m_1^2 / n) * sum_l P_1l^3 / k_l^2 with P from the pg display
    P1, k = [1, 1, -2], [1, 6, 8]
    oracle = Fraction(9 * 9, 15) * sum(Fraction(x**3, y**2) for x, y in zip(P1, k))
    assert oracle == Fraction(39, 8)
    assert krein_parameter(gq22, 1, 1, 1) == oracle
    assert krein_parameter(pg_scheme(2, 4, 1).spectral, 2, 2, 2) == 0


def test_krein_formula_mismatch_detected():
    sp = pg_scheme(2, 2, 1).spectral
    broken = type(sp)(sp.P, sp.Q.scale(2), sp.k, sp.m, sp.n)
    with pytest.raises(FormulaMismatch):
        krein_parameters(broken)


def test_genpw_krein_tensor():
    s = genpw_param(3, 3)
    Ls = genpw_dual_intersection_matrices(3, 3)
    assert all(s.krein.matrix(i) == Ls[i] for i in range(5))
    assert find_cometric_orderings(s.krein) == [(1, 2, 3, 4)]
    assert find_cometric_orderings(genpw_param(3, 4).krein) == []
    assert find_metric_orderings(s.intersection) == []
    assert is_Q_bipartite(s.krein)


def test_genpw_q_bipartite_matches_zero_pattern():
    Ls = genpw_dual_intersection_matrices(3, 3)
    for i in range(5):
        for h in range(5):
            for j in range(5):
                if (i + j + h) % 2:
                    assert Ls[i][h, j] == 0


def test_taylor_q_bipartite():
    T = taylor_scheme(5, 2)
    assert is_Q_bipartite(T.krein)
    assert is_Q_bipartite(taylor_scheme(2, 1).krein)


@pytest.mark.parametrize("make", [lambda: johnson(8, 4), lambda: taylor_scheme(5, 2),
                                  lambda: dual_polar_scheme("DQ6", 3), lambda: genpw_param(3, 3)])
def test_krein_array_row_sum(make):
    s = make()
    orders = find_cometric_orderings(s.krein)
    assert orders
    for order in orders:
        ka = krein_array(s.krein, order)
        m1 = s.spectral.reordered(order).m[1]
        for i in range(s.d + 1):
            assert ka.a[i] + ka.b[i] + ka.c[i] == m1


def test_Q_antipodal_matches_definition():
    for s in (johnson(8, 4), taylor_scheme(5, 2), genpw_param(3, 3)):
        order = find_cometric_orderings(s.krein)[0]
        ka = krein_array(s.krein, order)
        d = s.d
        expected = all(ka.b[j] == ka.c[d - j] for j in range(d) if j != d // 2)
        assert is_Q_antipodal(s.krein, order) == expected


def test_reordering_preserves_tensor_values(J84):
    order = (4, 3, 2, 1)
    re = J84.with_eigenspace_order(order)
    full = (0,) + order
    for i in range(5):
        for j in range(5):
            for h in range(5):
                assert re.krein[i, j, h] == J84.krein[full[i], full[j], full[h]]


def test_schur_projection(J84, genpw33):
    assert schur_projection_check(J84, 1, 1, 1)
    assert schur_projection_check(genpw33, 1, 3, 1)
    with pytest.raises(PreconditionViolated):
        schur_projection_check(J84, 1, 1, 2)
    with pytest.raises(PreconditionViolated):
        schur_projection_check(pg_scheme(2, 4, 1), 2, 2, 2)


def test_schur_projection_is_not_vacuous(J84):
    # a non-vanishing triple gives a nonzero projection, computed in floats
    Es = []
    for j in range(5):
        G, s = J84.scaled_idempotent(j)
        Es.append(np.array(G, dtype=float) / s)
    assert not J84.krein[1, 1, 2].is_zero()
    w = Es[2] @ (Es[1][:, 0] * Es[1][:, 1])
    assert np.abs(w).max() > 1e-9
    w0 = Es[1] @ (Es[1][:, 0] * Es[1][:, 1])
    assert np.abs(w0).max() < 1e-9


def test_triple_intersection(J84, genpw33):
    assert triple_intersection_check(J84, 1, 4, 1, mode="exhaustive")
    assert triple_intersection_check(genpw33, 3, 3, 3, mode="sample", samples=10_000)
    with pytest.raises(PreconditionViolated):
        triple_intersection_check(J84, 1, 1, 2)
    # Q-bipartite: (1,1,1) vanishes, (1,1,2) does not
    assert genpw33.krein[1, 1, 1].is_zero()
    with pytest.raises(PreconditionViolated):
        triple_intersection_check(genpw33, 1, 1, 2, mode="exhaustive")


def test_invariants_explicit(J84, genpw33):
    assert invariant_failures(J84) == []
    assert invariant_failures(genpw33) == []


def test_intersection_tensor_from_P(J84):
    assert intersection_tensor(J84.spectral) == J84.validation.p


def test_spectral_from_eigenmatrix_roundtrip():
    sp = spectral_from_eigenmatrix(johnson(8, 4).spectral.P)
    assert sp.Q @ sp.P == ExactMatrix.identity(5).scale(70)


def test_gq22_krein_from_graph_in_floats():
    # GQ(2,2) collinearity graph as the Kneser graph K(6,2); q_ii^i = n/m_i sum (E_i)^3 entrywise
    from itertools import combinations as comb2

    V = list(comb2(range(6), 2))
    A = np.array([[0.0 if set(x) & set(y) else 1.0 for y in V] for x in V])
    w, U = np.linalg.eigh(A)
    cols = U[:, np.abs(w - 1) < 1e-6]
    E = cols @ cols.T
    q = len(V) / cols.shape[1] * np.sum(E * E * E)
    exact = krein_parameter(pg_scheme(2, 2, 1).spectral, 1, 1, 1)
    assert abs(q - float(exact)) < 1e-9

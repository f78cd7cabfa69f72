"""Cross-cutting invariants: equivariance, rank stratification, polynomial
coefficient inequalities, and span/witness relations on random inputs."""

import random
from itertools import combinations

import pytest

from waringfq.gf import field_of_order
from waringfq.group import (
    Collineation,
    aut_of_variety,
    lifted_projective_group,
    variety_point_perm,
    waring_polynomials,
)
from waringfq.pencils import quadric_point_set
from waringfq.projspace import enumerate_points, span
from waringfq.veronese import conic, tensor_rank, veronese_variety
from waringfq.waring import is_waring, is_waring_identifiable, witness_of, x_rank


def test_witness_span_relation_random():
    rng = random.Random(9)
    for q in (2, 3):
        F = field_of_order(q)
        X = veronese_variety(2, F)
        pts = enumerate_points(5, F)
        for _ in range(60):
            S = span(rng.sample(pts, rng.randint(1, 4)), F)
            w = witness_of(S, X)
            if w.points:
                ws = span(w.points, F)
                assert ws.dim <= S.dim
                assert (ws == S) == is_waring(S, X)
            else:
                assert not is_waring(S, X)
            assert x_rank(S, X).rank >= S.dim + 1


@pytest.mark.parametrize("q,samples,max_pts", [(2, 100, 4), (3, 100, 3), (4, 100, 2)])
def test_equivariance_100_samples(q, samples, max_pts):
    rng = random.Random(100 + q)
    F = field_of_order(q)
    for X in (conic(F), veronese_variety(2, F)):
        g = aut_of_variety(X)
        pts = enumerate_points(X.n, F)
        for _ in range(samples // 2):
            S = span(rng.sample(pts, rng.randint(1, max_pts)), F)
            col = rng.choice(g.collineations)
            gS = col.apply_subspace(S)
            assert is_waring(S, X) == is_waring(gS, X)
            assert x_rank(S, X).rank == x_rank(gS, X).rank
            assert is_waring_identifiable(S, X)[0] == is_waring_identifiable(gS, X)[0]


def test_rank_stratification_v32_f2():
    # rank-1 locus of the full tensor space equals the 15-point variety
    F = field_of_order(2)
    X = veronese_variety(3, F)
    counts = {}
    for t in enumerate_points(9, F):
        r = tensor_rank(t, 3, F)
        counts[r] = counts.get(r, 0) + 1
    assert counts[1] == 15
    assert sum(counts.values()) == 1023
    ranked1 = {t for t in enumerate_points(9, F) if tensor_rank(t, 3, F) == 1}
    assert ranked1 == set(X.points)


def test_rank_stratification_sampled_v32_f3():
    rng = random.Random(4)
    F = field_of_order(3)
    X = set(veronese_variety(3, F).points)
    pts = enumerate_points(9, F)
    for t in rng.sample(pts, 400):
        assert (tensor_rank(t, 3, F) == 1) == (t in X)


def test_eta_bounded_by_lambda_and_mu():
    for q in (2, 3):
        C = conic(field_of_order(q))
        poly = waring_polynomials(C, aut_of_variety(C))
        for i in range(poly.n):
            assert poly.eta[i] <= poly.lam[i]
            assert poly.eta[i] <= poly.mu[i]
    E = quadric_point_set("elliptic", field_of_order(2))
    poly = waring_polynomials(E, aut_of_variety(E), mu="force")
    for i in range(poly.n):
        assert poly.eta[i] <= min(poly.lam[i], poly.mu[i])


def test_variety_point_perm_rejects_non_stabilizing():
    F = field_of_order(3)
    X = conic(F)
    shear = Collineation((((1, 1, 0), (0, 1, 0), (0, 0, 1))), 0, F)
    with pytest.raises(ValueError):
        variety_point_perm(shear, X)


def test_orbit_size_sums():
    from waringfq.group import orbits_of_bitsets

    F = field_of_order(3)
    X = veronese_variety(2, F)
    g = lifted_projective_group(X)
    objs = [(1 << i) | (1 << j) | (1 << k) for i, j, k in combinations(range(13), 3)]
    orbits = orbits_of_bitsets(objs, g.point_perms)
    assert sum(len(o) for o in orbits) == len(objs)
    for o in orbits:
        assert g.order % len(o) == 0


def test_subspace_closure_under_group_action():
    F = field_of_order(2)
    X = veronese_variety(2, F)
    g = aut_of_variety(X)
    S = span([X.points[0], X.points[3]], F)
    for col in g.collineations:
        T = col.apply_subspace(S)
        assert T.dim == 1
        assert len(witness_of(T, X)) == 2

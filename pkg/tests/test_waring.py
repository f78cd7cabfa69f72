from itertools import combinations

from waringfq.gf import field_of_order
from waringfq.projspace import enumerate_points, span
from waringfq.veronese import conic, explicit_point_set, veronese_variety, vmap
from waringfq.waring import (
    is_identifiable_waring,
    is_waring,
    is_waring_identifiable,
    identifiable_waring_quick,
    waring_hyperplane_table,
    waring_span_tables,
    witness_of,
    x_rank,
)


def lines_through(P, F, n=2):
    pts = enumerate_points(n, F)
    out = []
    for a, b in combinations(pts, 2):
        s = span([a, b], F)
        if s.dim == 1 and s.contains_point(P):
            out.append(s)
    return {s.key(): s for s in out}.values()


def conic_line_types(F):
    """Partition the lines of P^2 by conic intersection size."""
    C = conic(F)
    pts = enumerate_points(2, F)
    types = {0: [], 1: [], 2: []}
    seen = set()
    for a, b in combinations(pts, 2):
        s = span([a, b], F)
        if s.key() in seen:
            continue
        seen.add(s.key())
        k = sum(s.contains_point(p) for p in C.points)
        types[k].append(s)
    return C, types


def test_witness_examples():
    F = field_of_order(3)
    X = veronese_variety(2, F)
    P, Q = (1, 0, 0), (0, 1, 0)
    S = span([vmap(P, F), vmap(Q, F)], F)
    w = witness_of(S, X)
    assert set(w.points) == {vmap(P, F), vmap(Q, F)}
    whole = span(X.points, F)
    assert len(witness_of(whole, X)) == 13
    # images of a full line of P^2 span a plane meeting the variety in q+1 points
    line_pts = [(1, 0, 0), (0, 1, 0), (1, 1, 0)]
    S3 = span([vmap(p, F) for p in line_pts], F)
    assert S3.dim == 2 and len(witness_of(S3, X)) == 4


def test_conic_waring_lines_all_q():
    # secants are the only Waring lines; 2-point witnesses make them identifiable
    for q in (2, 3, 4, 5):
        F = field_of_order(q)
        C, types = conic_line_types(F)
        for s in types[2]:
            assert is_waring(s, C)
            ok, _ = is_identifiable_waring(s, C)
            assert ok
        for s in types[0] + types[1]:
            assert not is_waring(s, C)


def test_conic_tangent_external_lines_q2():
    F = field_of_order(2)
    C, types = conic_line_types(F)
    assert len(types[1]) == 3 and len(types[0]) == 1
    for s in types[1] + types[0]:
        ok, cert = is_waring_identifiable(s, C)
        assert ok and cert.rank == 3
        assert not is_waring(s, C)


def test_conic_lines_not_identifiable_q3plus():
    for q in (3, 4, 5):
        F = field_of_order(q)
        C, types = conic_line_types(F)
        for s in types[0] + types[1]:
            ok, _ = is_waring_identifiable(s, C)
            assert not ok


def test_conic_points_q2():
    # over F_2: conic points rank 1; three off-conic points rank 2 identifiable;
    # the nucleus has rank 3 and is identifiable
    F = field_of_order(2)
    C = conic(F)
    ranks = {}
    for P in enumerate_points(2, F):
        S = span([P], F)
        cert = x_rank(S, C)
        ranks.setdefault(cert.rank, []).append(P)
        ok, _ = is_waring_identifiable(S, C)
        assert ok  # every point of the Fano plane is identifiable here
    assert len(ranks[1]) == 3 and len(ranks[2]) == 3 and len(ranks[3]) == 1
    nucleus = ranks[3][0]
    assert nucleus == (0, 1, 0)


def test_conic_points_q3():
    # exterior points: rank 2 and identifiable; interior: rank 2, two secants
    F = field_of_order(3)
    C = conic(F)
    n_ext = n_int = 0
    for P in enumerate_points(2, F):
        S = span([P], F)
        if any(S.contains_point(c) for c in C.points):
            continue
        cert = x_rank(S, C)
        assert cert.rank == 2
        ok, icert = is_waring_identifiable(S, C)
        if ok:
            n_ext += 1
        else:
            n_int += 1
            assert icert.minimal_count >= 2
    assert n_ext == 6 and n_int == 3


def test_conic_points_q4plus_not_identifiable_off_conic():
    for q in (4, 5):
        F = field_of_order(q)
        C = conic(F)
        for P in enumerate_points(2, F):
            S = span([P], F)
            on = any(S.contains_point(c) for c in C.points)
            ok, _ = is_waring_identifiable(S, C)
            assert ok == on


def test_trisecant_of_planar_cubic_not_identifiable():
    F = field_of_order(3)
    A = explicit_point_set(
        [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 1, 1)], F, "cubic-ish"
    )
    line = span([(1, 0, 0), (0, 1, 0)], F)  # contains three points of A
    assert is_waring(line, A)
    ok, cert = is_waring_identifiable(line, A)
    assert not ok and cert.violating_subset is not None


def test_secant_line_identifiable_v22_f5():
    F = field_of_order(5)
    X = veronese_variety(2, F)
    S = span([X.points[0], X.points[7]], F)
    ok, cert = is_identifiable_waring(S, X)
    assert ok and cert.rank == 2


def test_qplus1_secant_plane_not_identifiable():
    F = field_of_order(3)
    X = veronese_variety(2, F)
    line_pts = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 2, 0)]
    S = span([vmap(p, F) for p in line_pts], F)
    assert S.dim == 2 and is_waring(S, X)
    ok, _ = is_waring_identifiable(S, X)
    assert not ok


def test_whole_space_not_identifiable_v22_f4():
    F = field_of_order(4)
    X = veronese_variety(2, F)
    S = span(X.points, F)
    assert S.dim == 5 and is_waring(S, X)
    ok, _ = is_waring_identifiable(S, X)
    assert not ok


def test_rank_lower_bound_and_point_on_variety():
    F = field_of_order(3)
    X = veronese_variety(2, F)
    S = span([X.points[5]], F)
    cert = x_rank(S, X)
    assert cert.rank == 1 and cert.decompositions == ((5,),)
    for dim_s, pts in ((1, X.points[:2]), (2, X.points[:3])):
        S = span(list(pts), F)
        assert x_rank(S, X).rank >= S.dim + 1


def test_span_tables_v22_f2():
    F = field_of_order(2)
    X = veronese_variety(2, F)
    tables = waring_span_tables(X, 3)
    assert len(tables[0]) == 7
    assert len(tables[1]) == 21
    assert len(tables[2]) == 35  # every triple spans its own plane at q=2
    hyp = waring_hyperplane_table(X)
    # Waring hyperplanes at q=2 come from 5-point line pairs
    assert all(bits.bit_count() == 5 for _, bits in hyp.values())
    assert len(hyp) == 21


def test_truncated_enumeration_on_huge_witness():
    # the whole space over a 57-point variety: far too many bases to list,
    # so the certificate carries two exchange-related exemplars
    F = field_of_order(7)
    X = veronese_variety(2, F)
    S = span(X.points, F)
    cert = x_rank(S, X)
    assert cert.rank == 6 and cert.truncated and len(cert.decompositions) == 2
    for T in cert.decompositions:
        assert span([X.points[i] for i in T], F).rank == 6
    ok, icert = is_waring_identifiable(S, X)
    assert not ok and icert.minimal_count >= 2


def test_tensor_json_contract():
    from waringfq.veronese import tensor_json

    F = field_of_order(3)
    t = vmap((1, 2, 0), F)
    assert tensor_json(t, 2, F) == {"n": 2, "q": 3, "m": list(t)}


def test_quick_identifiable_agrees_with_general():
    import random

    F = field_of_order(3)
    X = veronese_variety(2, F)
    rng = random.Random(11)
    pts = enumerate_points(5, F)
    for _ in range(40):
        S = span(rng.sample(pts, rng.randint(1, 4)), F)
        assert identifiable_waring_quick(S, X) == is_identifiable_waring(S, X)[0]

"""Acceptance suite: one criterion per test, exact integer/polynomial
equality throughout, one PASS/FAIL line each (run with -s to see them).

Two sub-criteria assert recorded claim constants that the cross-validated
enumeration refutes (eta7 at q=3 and the elliptic WI polynomial at q=2);
they are kept as stated and fail honestly, with companion tests pinning the
computed values and the validation evidence.  See notes/decisions.md at the
repository root of the development tree for the full analysis.
"""

import random
import time

import pytest

from waringfq.constructions import (
    base_points_c53,
    base_points_c54,
    construct_c51,
    construct_c53,
    construct_c54,
    construct_c57,
    in_b_star,
    plane_intersection_fingerprint,
    rnc_identifiability_check,
    segre_arc,
    valid_omegas_c53,
    valid_omegas_generic,
)
from waringfq.gf import field_of_order
from waringfq.group import aut_of_variety, lifted_projective_group, waring_polynomials
from waringfq.pencils import (
    all_cone_forms,
    brute_cone_intersections_batch,
    brute_cone_intersection,
    classify_quadric,
    cone_intersection_reduction,
    enumerate_eta7,
    enumerate_eta8,
    pencil_base,
    quadric_point_set,
    random_cone_form,
    reference_pencils,
    base_fingerprint,
)
from waringfq.projspace import enumerate_points, span
from waringfq.veronese import conic, inverse_vmap, veronese_variety, vmap
from waringfq.waring import waring_hyperplane_table

from naive_reference import (
    naive_is_waring,
    naive_is_waring_identifiable,
    naive_x_rank,
)


def report(line):
    print(f"\n[acceptance] {line}")


def timed(fn):
    t0 = time.time()
    out = fn()
    return out, time.time() - t0


# ----------------------------------------------------------------------
# AC 1: conic polynomials
# ----------------------------------------------------------------------

CONIC_EXPECT = {
    2: ("1+X", "3+3X", "1+X"),
    3: ("1+X", "2+X", "1+X"),
    4: ("1+X", "1+X", "1+X"),
    5: ("1+X", "1+X", "1+X"),
}


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_ac01_conic_polynomials(q):
    def compute():
        C = conic(field_of_order(q))
        return waring_polynomials(C, aut_of_variety(C))

    poly, dt = timed(compute)
    got = (poly.pretty_lambda(), poly.pretty_mu(), poly.pretty_eta())
    assert got == CONIC_EXPECT[q], got
    assert dt < 1.0, f"conic q={q} took {dt:.2f}s (budget 1s)"
    report(f"AC1 conic q={q}: W/WI/IW = {'/'.join(got)} in {dt:.2f}s PASS")


# ----------------------------------------------------------------------
# AC 2: identifiable Waring polynomial of the plane Veronesean
# ----------------------------------------------------------------------

V22_IW = {
    2: "1+X+2X^2+2X^3+X^4",
    3: "1+X+X^2+X^3",
    4: "1+X+X^2+X^3+X^4",
    5: "1+X+X^2+X^3",
    7: "1+X+X^2+X^3",
}


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_ac02_v22_identifiable_polynomial(q):
    def compute():
        X = veronese_variety(2, field_of_order(q))
        return waring_polynomials(X, lifted_projective_group(X), mu="skip")

    poly, dt = timed(compute)
    assert poly.pretty_eta() == V22_IW[q]
    assert dt < 600, f"q={q} took {dt:.1f}s (budget 10min)"
    report(f"AC2 V2,2 q={q}: IW = {poly.pretty_eta()} in {dt:.1f}s PASS")


# ----------------------------------------------------------------------
# AC 3: identifiable Waring hyperplanes of the plane Veronesean
# ----------------------------------------------------------------------


def test_ac03_identifiable_hyperplanes():
    t0 = time.time()
    found = {}
    for q in (2, 3, 4, 5):
        F = field_of_order(q)
        X = veronese_variety(2, F)
        table = waring_hyperplane_table(X)
        # identifiable <=> witness size equals the rank (= 5) of a hyperplane
        ident = {k: v for k, v in table.items() if v[1].bit_count() == X.n}
        found[q] = ident
    assert set(q for q, v in found.items() if v) == {2, 4}
    # witness structure: two distinct lines at q=2, irreducible conic at q=4
    for q, expect_lines in ((2, 1), (4, 0)):
        F = field_of_order(q)
        X = veronese_variety(2, F)
        for sub, bits in found[q].values():
            pre = [inverse_vmap(X.points[i], 2, F) for i in range(len(X)) if (bits >> i) & 1]
            full_lines = 0
            from itertools import combinations

            seen = set()
            for a, b in combinations(pre, 2):
                line = span([a, b], F)
                if line.key() in seen:
                    continue
                seen.add(line.key())
                if sum(line.contains_point(p) for p in pre) == q + 1:
                    full_lines += 1
            assert full_lines == (2 if q == 2 else 0)
    dt = time.time() - t0
    assert dt < 60
    report(f"AC3 hyperplanes exist exactly at q in (2,4) with stated witnesses in {dt:.1f}s PASS")


# ----------------------------------------------------------------------
# AC 4: the first six-dimensional construction and its variant
# ----------------------------------------------------------------------


@pytest.mark.parametrize("q,expected", [(2, True), (3, True), (5, True), (7, True), (9, True), (4, False), (8, False)])
def test_ac04_c51(q, expected):
    res, dt = timed(lambda: construct_c51(q))
    assert res.identifiable == expected and res.dim == 6
    assert res.extras.get("rank_one_scan") == "agrees"
    assert dt < 60, f"q={q}: {dt:.1f}s"
    report(f"AC4 C51 q={q}: {res.verdict} (expected identifiable={expected}) in {dt:.1f}s PASS")


@pytest.mark.parametrize("q,expected", [(3, True), (5, False), (7, False), (9, False)])
def test_ac04_c51_extra_point(q, expected):
    res, dt = timed(lambda: construct_c51(q, extra_point=True))
    assert res.identifiable == expected
    assert dt < 60
    report(f"AC4 C51+extra q={q}: {res.verdict} (expected identifiable={expected}) PASS")


# ----------------------------------------------------------------------
# AC 5: the omega families and the inequivalence fingerprints
# ----------------------------------------------------------------------


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_ac05_c53_c54_all_omegas(q):
    t0 = time.time()
    for w in valid_omegas_c53(q):
        res = construct_c53(q, w)
        assert res.identifiable and res.dim == 6, (q, w)
        assert time.time() - t0 < 120 * (len(valid_omegas_c53(q)) + 1)
    for w in valid_omegas_generic(q):
        res = construct_c54(q, w)
        assert res.identifiable and res.dim == 6, (q, w)
    report(f"AC5 C53/C54 q={q}: all admissible omegas identifiable in {time.time()-t0:.1f}s PASS")


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_ac05_fingerprints(q):
    F = field_of_order(q)
    w1 = valid_omegas_c53(q)[0]
    for w2 in valid_omegas_generic(q)[:2]:
        fpS = plane_intersection_fingerprint(base_points_c53(q, w1), F)
        fpT = plane_intersection_fingerprint(base_points_c54(q, w2), F)
        assert fpS.get(4, 0) == 4 and fpT.get(4, 0) == 5
    report(f"AC5 fingerprints q={q}: 4 vs 5 planes with 4 points PASS")


# ----------------------------------------------------------------------
# AC 6: the admissible-parameter table
# ----------------------------------------------------------------------


def test_ac06_bstar_table():
    t0 = time.time()
    for q in (4, 5, 7, 8, 9):
        F = field_of_order(q)
        for w in valid_omegas_generic(q):
            t1 = time.time()
            assert in_b_star(q, w) == F.is_primitive(w), (q, w)
            assert time.time() - t1 < 1.0
    assert {w for w in valid_omegas_generic(11) if in_b_star(11, w)} == {7, 8}
    assert {w for w in valid_omegas_generic(13) if in_b_star(13, w)} == {2, 7}
    for q in (16, 17, 19, 23, 25):
        assert not any(in_b_star(q, w) for w in valid_omegas_generic(q)), q
    report(f"AC6 b_star table reproduced exactly for q<=25 in {time.time()-t0:.1f}s PASS")


# ----------------------------------------------------------------------
# AC 7: the codimension-two construction against the parameter set
# ----------------------------------------------------------------------


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 11, 13, 16])
def test_ac07_c57_iff_bstar(q):
    t0 = time.time()
    for w in valid_omegas_generic(q):
        res = construct_c57(q, w, scan="skip")  # general witness algorithm
        assert res.identifiable == in_b_star(q, w), (q, w, res.verdict)
        assert time.time() - t0 < 600
    report(f"AC7 C57 q={q}: identifiable iff in b_star, all omegas, {time.time()-t0:.1f}s PASS")


# ----------------------------------------------------------------------
# AC 8: eta7
# ----------------------------------------------------------------------


def test_ac08a_eta7_q2():
    r, dt = timed(lambda: enumerate_eta7(2))
    assert r.orbit_count == 1
    assert dt < 60
    report(f"AC8 eta7(2) = 1 ({r.subspace_count} subspaces) in {dt:.1f}s PASS")


@pytest.fixture(scope="module")
def eta7_q3():
    return timed(lambda: enumerate_eta7(3))


def test_ac08b_eta7_q3_recorded_value(eta7_q3):
    r, dt = eta7_q3
    assert dt < 1800
    report(
        f"AC8 eta7(3): computed {r.orbit_count}, recorded constant 3 "
        f"({'PASS' if r.orbit_count == 3 else 'FAIL - see decisions ledger'})"
    )
    assert r.orbit_count == 3, (
        f"exhaustive search finds eta7 = {r.orbit_count} at q=3, not 3: the "
        "two-skew-lines and square-type two-conic bases span only rank 6/7 "
        "(four collinear points always have coplanar images), so only the "
        "nonsquare two-conic class survives; cross-validated by the "
        "independent pencil enumeration and the definition-level predicate"
    )


def test_ac08c_eta7_q3_cross_validated(eta7_q3):
    r, _ = eta7_q3
    assert r.orbit_count == 1
    assert r.subspace_count == 379080
    rp = enumerate_eta7(3, mode="pencil")
    assert rp.lower_bound == 1
    assert set(rp.fingerprints) == set(r.fingerprints)
    report("AC8 eta7(3) computed value 1 confirmed by independent pencil route")


def test_ac08d_eta7_q4_lower_bound():
    r, dt = timed(lambda: enumerate_eta7(4))
    assert r.lower_bound >= 2
    assert dt < 1800
    report(f"AC8 eta7(4) pencil-mode lower bound = {r.lower_bound} >= 2 in {dt:.1f}s PASS")


def test_ac08e_bases_match_case_list(eta7_q3):
    # every found base must match a reference case fingerprint of its field
    F2 = field_of_order(2)
    r2 = enumerate_eta7(2)
    refs2 = set()
    for label, f, g in reference_pencils(2):
        base = pencil_base(f, g, F2)
        if span([vmap(p, F2) for p in base], F2).rank == 8:
            refs2.add(base_fingerprint(base, F2))
    assert set(r2.fingerprints) <= refs2
    F3 = field_of_order(3)
    r3, _ = eta7_q3
    refs3 = set()
    for label, f, g in reference_pencils(3):
        base = pencil_base(f, g, F3)
        if span([vmap(p, F3) for p in base], F3).rank == 8:
            refs3.add(base_fingerprint(base, F3))
    assert set(r3.fingerprints) <= refs3
    report("AC8 all bases found at q in (2,3) match reference cases PASS")


def test_ac08f_q4_bases_have_case_structure():
    # each q=4 class is either a two-conic split across a reducible member
    # or an irreducible-quartic type (no plane meets the base in 5+ points)
    F = field_of_order(4)
    r = enumerate_eta7(4)
    for base, fp in zip(r.base_reps, r.fingerprints):
        members = fp[0]
        hist = dict(fp[1])
        max_plane_section = max(k for k in hist if hist[k])
        if "plane-pair" in members or "conjugate-plane-pair" in members:
            assert max_plane_section == 4  # 4 + 4 on the two planes
        else:
            assert max_plane_section <= 4  # a plane meets a quartic in <= 4
        assert fp[2] == 0  # no full line inside an 8-point base at q=4
    report(f"AC8 q=4: all {len(r.base_reps)} classes match the case structure PASS")


# ----------------------------------------------------------------------
# AC 9: eta8
# ----------------------------------------------------------------------


@pytest.mark.parametrize("q,expected", [(2, 1), (3, 0), (4, 0), (5, 0)])
def test_ac09_eta8(q, expected):
    r, dt = timed(lambda: enumerate_eta8(q))
    assert r.orbit_count == expected
    assert dt < 300
    report(f"AC9 eta8({q}) = {r.orbit_count} in {dt:.1f}s PASS")


# ----------------------------------------------------------------------
# AC 10: quadric polynomials
# ----------------------------------------------------------------------

QUADRIC_EXPECT = {
    # (kind, q): (W, WI, IW) as displayed
    ("elliptic", 3): ("1+X+X^2", "1+X", "1+X"),
    ("hyperbolic", 3): ("1+2X+2X^2", "1+X", "1+X"),
    ("elliptic", 2): ("1+X+X^2", "3+2X+X^2", "1+X+X^2"),
    ("hyperbolic", 2): ("1+2X+2X^2", "1+X+X^2", "1+X+X^2"),
}


@pytest.fixture(scope="module")
def quadric_polys():
    out = {}
    for (kind, q) in QUADRIC_EXPECT:
        X = quadric_point_set(kind, field_of_order(q))
        out[(kind, q)] = waring_polynomials(X, aut_of_variety(X), mu="force")
    return out


@pytest.mark.parametrize(
    "kind,q",
    [("elliptic", 3), ("hyperbolic", 3), ("hyperbolic", 2)],
)
def test_ac10a_quadric_polynomials(quadric_polys, kind, q):
    poly = quadric_polys[(kind, q)]
    got = (poly.pretty_lambda(), poly.pretty_mu(), poly.pretty_eta())
    assert got == QUADRIC_EXPECT[(kind, q)], got
    report(f"AC10 {kind} q={q}: W/WI/IW = {'/'.join(got)} PASS")


def test_ac10b_elliptic_q2_recorded_value(quadric_polys):
    poly = quadric_polys[("elliptic", 2)]
    got = (poly.pretty_lambda(), poly.pretty_mu(), poly.pretty_eta())
    report(
        f"AC10 elliptic q=2: computed W/WI/IW = {'/'.join(got)}, recorded WI constant 3+2X+X^2 "
        f"({'PASS' if got == QUADRIC_EXPECT[('elliptic', 2)] else 'FAIL - see decisions ledger'})"
    )
    assert got == QUADRIC_EXPECT[("elliptic", 2)], (
        "computed WI is 2+2X+X^2: over F_2 the ten off-quadric points pair "
        "bijectively with the ten secants (two secants meeting off the "
        "quadric would force four coplanar quadric points on a cap), so "
        "every external point has rank 2 and there is no rank-3 point orbit"
    )


def test_ac10c_elliptic_q2_computed_value(quadric_polys):
    poly = quadric_polys[("elliptic", 2)]
    assert (poly.pretty_lambda(), poly.pretty_mu(), poly.pretty_eta()) == (
        "1+X+X^2",
        "2+2X+X^2",
        "1+X+X^2",
    )
    # the secant <-> external-point bijection behind the corrected count
    from waringfq.waring import x_rank

    F = field_of_order(2)
    E = quadric_point_set("elliptic", F)
    externals = [p for p in enumerate_points(3, F) if p not in set(E.points)]
    assert len(externals) == 10
    for p in externals:
        cert = x_rank(span([p], F), E)
        assert cert.rank == 2 and len(cert.decompositions) == 1
    report("AC10 elliptic q=2 computed WI = 2+2X+X^2 (all 10 externals rank 2, unique secant)")


# ----------------------------------------------------------------------
# AC 11: cone intersections
# ----------------------------------------------------------------------


def test_ac11a_cone_reduction_exact():
    t0 = time.time()
    for q in (2, 3):
        F = field_of_order(q)
        for f in all_cone_forms(F):
            assert cone_intersection_reduction(f, F).total == brute_cone_intersection(f, F)
    for q in (5, 7, 11, 13):
        F = field_of_order(q)
        rng = random.Random(1000 + q)
        forms = [random_cone_form(F, rng) for _ in range(1000)]
        assert classify_quadric(forms[0], F) == "cone"
        brutes = brute_cone_intersections_batch(forms, F)
        for f, b in zip(forms, brutes):
            assert cone_intersection_reduction(f, F, check=False).total == b
    dt = time.time() - t0
    assert dt < 600
    report(f"AC11a cone reduction == brute force (exhaustive q=2,3; 1000 random each q=5,7,11,13) in {dt:.1f}s PASS")


def test_ac11b_no_eight_point_cone_intersections_at_53():
    t0 = time.time()
    F = field_of_order(53)
    rng = random.Random(53)
    forms = [random_cone_form(F, rng) for _ in range(10_000)]
    assert classify_quadric(forms[0], F) == "cone"
    totals = [cone_intersection_reduction(f, F, check=False).total for f in forms]
    brutes = brute_cone_intersections_batch(forms, F)
    assert totals == brutes
    assert 8 not in totals
    dt = time.time() - t0
    assert dt < 600
    report(f"AC11b q=53: 10^4 random cone pairs, no 8-point intersection in {dt:.1f}s PASS")


# ----------------------------------------------------------------------
# AC 12: rational normal curves and the Segre arc
# ----------------------------------------------------------------------


@pytest.mark.parametrize("t,q", [(1, 3), (1, 5), (2, 5), (2, 7)])
def test_ac12_rnc(t, q):
    rep, dt = timed(lambda: rnc_identifiability_check(t, q))
    assert rep.all_target_rank_identifiable
    assert dt < 300
    report(f"AC12 curve t={t} q={q}: all rank-{t+1} points identifiable in {dt:.1f}s PASS")


def test_ac12_segre_arc():
    rep, dt = timed(lambda: segre_arc(3, 1))
    assert rep.is_arc
    assert rep.rank2_points == rep.rank2_identifiable == 252
    assert dt < 300
    report(f"AC12 Segre arc (3,1): 9-point arc, all rank-2 points identifiable in {dt:.1f}s PASS")


# ----------------------------------------------------------------------
# AC 13: oracle equivalence against the naive reference
# ----------------------------------------------------------------------


def test_ac13_naive_oracle_equivalence():
    from waringfq.waring import is_waring, is_waring_identifiable, x_rank

    t0 = time.time()
    rng = random.Random(2024)
    checked = 0
    for q in (2, 3):
        F = field_of_order(q)
        X = veronese_variety(2, F)
        pts = enumerate_points(5, F)
        for _ in range(250):
            k = rng.randint(1, 5)
            S = span(rng.sample(pts, k), F)
            rows = [list(r) for r in S.rows]
            nw = naive_is_waring(rows, list(X.points), F)
            assert nw == is_waring(S, X)
            nr, nhits = naive_x_rank(rows, list(X.points), F)
            cert = x_rank(S, X)
            assert nr == cert.rank
            if not cert.truncated:
                assert sorted(nhits) == sorted(cert.decompositions)
            ni = naive_is_waring_identifiable(rows, list(X.points), F)
            assert ni == is_waring_identifiable(S, X)[0]
            checked += 1
    dt = time.time() - t0
    assert dt < 600
    report(f"AC13 naive reference agrees on {checked} random subspaces in {dt:.1f}s PASS")

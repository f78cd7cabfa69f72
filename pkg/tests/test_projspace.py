from itertools import product

import pytest

from waringfq.gf import field_of_order
from waringfq.projspace import (
    count_subspaces,
    dual,
    enumerate_points,
    enumerate_subspaces,
    intersect,
    normalize,
    num_points,
    rref,
    span,
)


def test_point_counts():
    assert len(enumerate_points(2, field_of_order(2))) == 7
    assert len(enumerate_points(3, field_of_order(3))) == 40
    assert len(enumerate_points(5, field_of_order(2))) == 63


@pytest.mark.parametrize("n,q", [(1, 2), (1, 5), (2, 3), (3, 2), (4, 3), (2, 5), (3, 4)])
def test_enumeration_is_exactly_the_normalization_classes(n, q):
    F = field_of_order(q)
    pts = enumerate_points(n, F)
    assert len(pts) == len(set(pts)) == num_points(n, q)
    assert pts == sorted(pts)  # lexicographic by coordinate tuple
    seen = {normalize(v, F) for v in product(F.elements(), repeat=n + 1) if any(v)}
    assert seen == set(pts)


def test_normalize_rejects_zero():
    with pytest.raises(ValueError):
        normalize((0, 0, 0), field_of_order(3))


def test_span_examples():
    F = field_of_order(3)
    s = span([(1, 0, 0), (0, 1, 0)], F)
    assert s.dim == 1
    s0 = span([(1, 2, 0), (1, 2, 0), (1, 2, 0)], F)
    assert s0.dim == 0
    collinear = span([(1, 0, 0), (0, 1, 0), (1, 1, 0)], F)
    assert collinear.dim == 1
    with pytest.raises(ValueError):
        span([], F)


def test_span_is_canonical_for_any_generating_set():
    F = field_of_order(5)
    a = span([(1, 2, 3, 4), (0, 1, 1, 1)], F)
    b = span([(1, 3, 4, 0), (2, 4, 6 % 5, 8 % 5), (0, 2, 2, 2)], F)
    assert a.key() == b.key() and a == b


def test_intersect_hyperplanes_of_p5():
    F = field_of_order(3)
    h1 = span([p for p in enumerate_points(5, F) if p[0] == 0], F)
    pts2 = [p for p in enumerate_points(5, F) if not any(p)] or None
    h2 = span(
        [p for p in enumerate_points(5, F) if (p[1] + p[2]) % 3 == 0],
        F,
    )
    assert h1.dim == 4 and h2.dim == 4
    meet = intersect(h1, h2)
    assert meet is not None and meet.dim == 3


def test_intersect_idempotent_and_skew():
    F = field_of_order(2)
    line = span([(1, 0, 0, 0), (0, 1, 0, 0)], F)
    assert intersect(line, line) == line
    other = span([(0, 0, 1, 0), (0, 0, 0, 1)], F)
    assert intersect(line, other) is None


def test_intersection_dimension_formula_small():
    F = field_of_order(3)
    pts = enumerate_points(3, F)
    import random

    rng = random.Random(7)
    for _ in range(60):
        s1 = span(rng.sample(pts, rng.randint(1, 3)), F)
        s2 = span(rng.sample(pts, rng.randint(1, 3)), F)
        join = span(list(s1.rows) + list(s2.rows), F)
        meet = intersect(s1, s2)
        meet_dim = meet.dim if meet is not None else -1
        assert s1.dim + s2.dim == join.dim + meet_dim


def test_count_subspaces_values():
    assert count_subspaces(3, 1, 2) == 35
    assert count_subspaces(5, 4, 2) == 63
    assert count_subspaces(2, 2, 7) == 1


@pytest.mark.parametrize("n,k,q", [(2, 1, 2), (3, 1, 2), (2, 1, 3), (3, 2, 3), (4, 1, 2)])
def test_enumerate_subspaces_matches_gaussian_binomial(n, k, q):
    F = field_of_order(q)
    subs = list(enumerate_subspaces(n, k, F))
    keys = {s.key() for s in subs}
    assert len(subs) == len(keys) == count_subspaces(n, k, q)
    # spot-check canonicality: re-spanning the points gives the same key
    for s in subs[:: max(1, len(subs) // 17)]:
        assert span(s.points(), F).key() == s.key()


def test_brute_force_line_count_p3_f2():
    F = field_of_order(2)
    pts = enumerate_points(3, F)
    lines = {span([p, r], F).key() for i, p in enumerate(pts) for r in pts[i + 1 :]}
    assert len(lines) == 35


def test_dual_and_membership():
    F = field_of_order(4)
    s = span([(1, 0, 0, 2), (0, 1, 3, 0)], F)
    d = dual(s)
    assert d.rank == 2
    for row in d.rows:
        for v in s.rows:
            acc = 0
            for a, b in zip(row, v):
                acc = F.add(acc, F.mul(a, b))
            assert acc == 0
    assert s.contains_point(normalize((1, 0, 0, 2), F))
    assert not s.contains_point((0, 0, 1, 0))


def test_subspace_points_enumeration():
    F = field_of_order(3)
    s = span([(1, 0, 0), (0, 1, 0)], F)
    pts = s.points()
    assert len(pts) == len(set(pts)) == 4  # a line of P^2(F_3)
    assert all(p[2] == 0 for p in pts)


def test_rref_canonical_form_unique():
    F = field_of_order(2)
    assert rref([(1, 1, 0), (0, 1, 1), (1, 0, 1)], F) == ((1, 0, 1), (0, 1, 1))

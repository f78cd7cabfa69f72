"""Quadrics and pencils of quadrics in P^3(F_q).

Classification is by exact point and singular-point counts, which works
uniformly in every characteristic.  The codimension-two and hyperplane
orbit counts (eta7, eta8) for the 10-coordinate Veronese setting are
computed here, as are the Waring polynomials of the elliptic and
hyperbolic quadrics.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import _batch
from .gf import FieldTable, field_of_order
from .projspace import dual_rows, enumerate_points, normalize, span
from .veronese import (
    PointSet,
    form_eval,
    form_gradient,
    inverse_vmap,
    sym_index,
    veronese_variety,
    vmap,
)
from .waring import BudgetExceeded

PAIRS3 = sym_index(3)
POS3 = {ij: k for k, ij in enumerate(PAIRS3)}

CLASS_COUNTS = {
    "hyperbolic": lambda q: (q + 1) ** 2,
    "elliptic": lambda q: q * q + 1,
    "cone": lambda q: q * q + q + 1,
    "plane-pair": lambda q: 2 * q * q + q + 1,
    "conjugate-plane-pair": lambda q: q + 1,
    "repeated-plane": lambda q: q * q + q + 1,
}


@lru_cache(maxsize=None)
def _p3_points(q: int):
    return tuple(enumerate_points(3, field_of_order(q)))


def quadric_points(form, F: FieldTable):
    return [p for p in _p3_points(F.q) if form_eval(form, p, F) == 0]


def singular_quadric_points(form, F: FieldTable):
    out = []
    for p in _p3_points(F.q):
        if form_eval(form, p, F) == 0 and not any(form_gradient(form, p, F)):
            out.append(p)
    return out


def classify_quadric(form, F: FieldTable) -> str:
    """One of the six quadric classes, decided by exact point counts with
    the singular-point count separating cones from repeated planes."""
    if not any(form):
        raise ValueError("the zero form does not define a quadric")
    q = F.q
    npts = len(quadric_points(form, F))
    matches = [c for c, f in CLASS_COUNTS.items() if f(q) == npts]
    if len(matches) == 1:
        return matches[0]
    if set(matches) == {"cone", "repeated-plane"}:
        nsing = len(singular_quadric_points(form, F))
        if nsing == 1:
            return "cone"
        if nsing == q * q + q + 1:
            return "repeated-plane"
    raise AssertionError(f"unclassifiable quadric: {npts} points, candidates {matches}")


def form_from_terms(terms, F: FieldTable):
    """Coefficient tuple from {(i, j): c} with i <= j."""
    out = [0] * 10
    for (i, j), c in terms.items():
        out[POS3[(i, j)]] = c % F.q if F.e == 1 else c
    return tuple(out)


def standard_hyperbolic(F: FieldTable):
    return form_from_terms({(0, 3): 1, (1, 2): F.neg(1)}, F)


@lru_cache(maxsize=None)
def _irreducible_quadratic(q: int):
    """(b, c) with x^2 + bx + c irreducible over F_q."""
    F = field_of_order(q)
    for b in F.elements():
        for c in F.nonzero():
            if all(F.add(F.add(F.mul(x, x), F.mul(b, x)), c) != 0 for x in F.elements()):
                return b, c
    raise AssertionError("no irreducible quadratic found")


def standard_elliptic(F: FieldTable):
    b, c = _irreducible_quadratic(F.q)
    return form_from_terms({(0, 0): 1, (0, 1): b, (1, 1): c, (2, 3): 1}, F)


def standard_cone(F: FieldTable):
    """The normalization X1 X3 = X0^2 used by the intersection reduction."""
    return form_from_terms({(1, 3): 1, (0, 0): F.neg(1)}, F)


def standard_form(cls: str, F: FieldTable):
    if cls == "hyperbolic":
        return standard_hyperbolic(F)
    if cls == "elliptic":
        return standard_elliptic(F)
    if cls == "cone":
        return standard_cone(F)
    if cls == "plane-pair":
        return form_from_terms({(0, 1): 1}, F)
    if cls == "repeated-plane":
        return form_from_terms({(0, 0): 1}, F)
    if cls == "conjugate-plane-pair":
        b, c = _irreducible_quadratic(F.q)
        return form_from_terms({(0, 0): 1, (0, 1): b, (1, 1): c}, F)
    raise ValueError(f"unknown class {cls}")


def quadric_point_set(kind: str, F: FieldTable) -> PointSet:
    pts = quadric_points(standard_form(kind, F), F)
    return PointSet(f"{kind}(F{F.q})", pts, 3, F)


# ----------------------------------------------------------------------
# pencils
# ----------------------------------------------------------------------


def pencil_base(f, g, F: FieldTable):
    """The common zero set of two independent quadratic forms."""
    if len(span([f, g], F).rows) != 2:
        raise ValueError("the two forms do not span a pencil")
    return [p for p in _p3_points(F.q) if form_eval(f, p, F) == 0 and form_eval(g, p, F) == 0]


def pencil_members(f, g, F: FieldTable):
    """The q+1 quadrics of the pencil, one representative per member."""
    add, mul = F.add_table, F.mul_table
    members = [tuple(g)]
    for lam in F.elements():
        members.append(tuple(add[a][mul[lam][b]] for a, b in zip(f, g)))
    return members


def pencil_class_multiset(f, g, F: FieldTable) -> tuple:
    return tuple(sorted(classify_quadric(m, F) for m in pencil_members(f, g, F)))


def lines_inside(points, F: FieldTable) -> int:
    """Number of full lines of P^3 contained in the point set."""
    pts = set(points)
    seen = set()
    count = 0
    for a, b in combinations(points, 2):
        line = span([a, b], F)
        if line.key() in seen:
            continue
        seen.add(line.key())
        if all(p in pts for p in line.points()):
            count += 1
    return count


def base_fingerprint(base, F: FieldTable) -> tuple:
    """Projective invariant of an 8-point pencil base: the multiset of
    member classes of its quadric system plus incidence data."""
    tensors = [vmap(p, F) for p in base]
    S = span(tensors, F)
    sys_rows = dual_rows(S)
    if len(sys_rows) != 2:
        raise ValueError("base does not span a codimension-two subspace")
    f, g = sys_rows
    classes = pencil_class_multiset(f, g, F)
    from .constructions import plane_intersection_fingerprint

    hist = tuple(sorted(plane_intersection_fingerprint(base, F).items()))
    return (classes, hist, lines_inside(base, F))


# ----------------------------------------------------------------------
# cone intersections
# ----------------------------------------------------------------------


@dataclass
class ConeIntersection:
    affine: int
    at_infinity: int

    @property
    def total(self) -> int:
        return self.affine + self.at_infinity


@lru_cache(maxsize=None)
def _quadratic_root_counts(q: int):
    """Table[b][c] = number of roots of z^2 + b z + c over F_q."""
    F = field_of_order(q)
    table = [[0] * q for _ in range(q)]
    for z in F.elements():
        z2 = F.mul(z, z)
        for b in F.elements():
            c = F.neg(F.add(z2, F.mul(b, z)))
            table[b][c] += 1
    return table


def cone_intersection_reduction(f, F: FieldTable, check: bool = True) -> ConeIntersection:
    """Size of the intersection of the standard cone X1 X3 = X0^2 with the
    cone f = 0, via the substitution to a plane curve h(X, Z) = f(X, X^2, Z, 1)
    plus the points on the common plane at infinity."""
    if check and classify_quadric(f, F) != "cone":
        raise ValueError("the form does not define an irreducible cone")
    c = {ij: f[POS3[ij]] for ij in PAIRS3}
    add, mul = F.add, F.mul
    roots = _quadratic_root_counts(F.q)
    affine = 0
    for x in F.elements():
        x2 = mul(x, x)
        x3 = mul(x2, x)
        x4 = mul(x2, x2)
        a2 = c[(2, 2)]
        a1 = add(add(mul(c[(0, 2)], x), mul(c[(1, 2)], x2)), c[(2, 3)])
        a0 = add(
            add(mul(add(c[(0, 0)], c[(1, 3)]), x2), mul(c[(1, 1)], x4)),
            add(add(mul(c[(0, 1)], x3), mul(c[(0, 3)], x)), c[(3, 3)]),
        )
        if a2 != 0:
            s = F.inv(a2)
            affine += roots[mul(s, a1)][mul(s, a0)]
        elif a1 != 0:
            affine += 1
        elif a0 == 0:
            affine += F.q
    # the plane at infinity meets the standard cone in the line X0 = X3 = 0
    inf = 0
    for yz in enumerate_points(1, F):
        y, z = yz
        v = add(
            add(mul(c[(1, 1)], mul(y, y)), mul(c[(1, 2)], mul(y, z))),
            mul(c[(2, 2)], mul(z, z)),
        )
        if v == 0:
            inf += 1
    return ConeIntersection(affine, inf)


@lru_cache(maxsize=None)
def _standard_cone_points(q: int):
    F = field_of_order(q)
    pts = [normalize((x, F.mul(x, x), z, 1), F) for x in F.elements() for z in F.elements()]
    pts += [normalize((0, y, z, 0), F) for (y, z) in enumerate_points(1, F)]
    return tuple(pts)


def brute_cone_intersection(f, F: FieldTable) -> int:
    """|C1 cap C2| by direct evaluation on the standard cone's points."""
    return sum(1 for p in _standard_cone_points(F.q) if form_eval(f, p, F) == 0)


def brute_cone_intersections_batch(forms, F: FieldTable) -> list[int]:
    """Brute-force |C1 cap C2| for many second cones at once."""
    pts = np.array(_standard_cone_points(F.q), dtype=np.uint8)
    mon = _batch.monomial_values(F, pts, PAIRS3)
    farr = np.array(forms, dtype=np.uint8)
    vals = _batch.eval_forms_on_points(F, farr, mon)
    return [int(c) for c in (vals == 0).sum(axis=1)]


def all_cone_forms(F: FieldTable):
    """Every cone form class over F_q, by a vectorized point/singular scan."""
    q = F.q
    pts = np.array(_p3_points(q), dtype=np.uint8)
    mon = _batch.monomial_values(F, pts, PAIRS3)
    grad = _gradient_tensor(F, pts)
    target = q * q + q + 1
    cones = []
    for block_start, reps in _form_class_reps(F):
        vals = _batch.eval_forms_on_points(F, reps, mon)
        onq = vals == 0
        counts = onq.sum(axis=1)
        cand = np.flatnonzero(counts == target)
        if len(cand) == 0:
            continue
        gv = _batch.eval_forms_on_points(F, reps[cand], grad.reshape(10, -1))
        gz = (gv.reshape(len(cand), 4, -1) == 0).all(axis=1)
        nsing = (gz & onq[cand]).sum(axis=1)
        for i, r in zip(cand[nsing == 1], reps[cand][nsing == 1]):
            cones.append(tuple(int(x) for x in r))
    return cones


def _gradient_tensor(F: FieldTable, pts: np.ndarray) -> np.ndarray:
    """(10, 4, npts) array: coefficient of form index i in d_k at each point."""
    npts = pts.shape[0]
    out = np.zeros((10, 4, npts), dtype=np.uint8)
    mul = F.mul_table
    two = F.int_embed(2)
    plist = pts.tolist()
    for i, (a, b) in enumerate(PAIRS3):
        for t, p in enumerate(plist):
            if a == b:
                out[i, a, t] = mul[two][p[a]]
            else:
                out[i, a, t] = p[b]
                out[i, b, t] = p[a]
    return out


def _form_class_reps(F: FieldTable):
    """Chunks of normalized form-class representatives (dual points of P^9)."""
    for block in _batch.projective_rep_chunks(9, F.q):
        yield 0, block


def random_cone_form(F: FieldTable, rng) -> tuple:
    """A uniformly random irreducible cone, as the standard cone pushed
    through a random invertible matrix (odd q only)."""
    assert F.p != 2
    from .group import mat_inv, mat_mul

    while True:
        A = tuple(tuple(rng.randrange(F.q) for _ in range(4)) for _ in range(4))
        try:
            mat_inv(A, F)
            break
        except ValueError:
            continue
    # Gram matrix of the standard cone: x^T B x with X1X3 - X0^2
    half = F.inv(F.int_embed(2))
    B = [[0] * 4 for _ in range(4)]
    B[0][0] = F.neg(1)
    B[1][3] = B[3][1] = half
    Bp = mat_mul(mat_mul(tuple(zip(*A)), tuple(tuple(r) for r in B), F), A, F)
    out = [0] * 10
    for (i, j), k in POS3.items():
        out[k] = Bp[i][j] if i == j else F.mul(F.int_embed(2), Bp[i][j])
    return tuple(out)


# ----------------------------------------------------------------------
# eta7: identifiable subspaces of codimension two
# ----------------------------------------------------------------------


@dataclass
class Eta7Result:
    q: int
    mode: str
    orbit_count: int | None
    lower_bound: int
    subspace_count: int | None
    orbit_sizes: list
    base_reps: list
    fingerprints: list
    status: str = "exact"

    def to_json(self):
        return {
            "q": self.q,
            "mode": self.mode,
            "eta7": self.orbit_count,
            "lower_bound": self.lower_bound,
            "identifiable_subspaces": self.subspace_count,
            "orbit_sizes": self.orbit_sizes,
            "bases": [[list(p) for p in rep] for rep in self.base_reps],
            "status": self.status,
        }


def enumerate_eta7(q: int, mode: str = "auto") -> Eta7Result:
    """Orbits of identifiable Waring subspaces of codimension two in the
    10-coordinate tensor space.

    Exhaustive mode (q <= 3) searches all exact-witness 8-subsets of the
    variety; pencil mode covers every subspace class through a quadric
    class representative and reports a lower bound from projective
    invariants."""
    if mode == "auto":
        mode = "exhaustive" if q <= 3 else "pencil"
    F = field_of_order(q)
    X = veronese_variety(3, F)
    if mode == "exhaustive":
        if F.e != 1 or q > 3:
            raise BudgetExceeded(f"exhaustive eta7 supported for q in (2, 3), not q={q}")
        bits = _batch.exact_witness_subsets(X.points_array().astype(np.int16), F.p, 8)
        from .group import aut_of_variety, orbits_of_bitsets

        g = aut_of_variety(X)
        orbits = orbits_of_bitsets(bits, g.point_perms)
        reps, fps = [], []
        for orbit in orbits:
            rep_bits = orbit[0]
            base = [
                inverse_vmap(X.points[i], 3, F)
                for i in range(len(X))
                if (rep_bits >> i) & 1
            ]
            reps.append(base)
            fps.append(base_fingerprint(base, F))
        return Eta7Result(
            q, mode, len(orbits), len(orbits), len(bits), sorted(map(len, orbits)), reps, fps
        )
    # pencil mode: every pencil is equivalent to one through a class representative
    found: dict[int, list] = {}
    base_pts = np.array(_p3_points(q), dtype=np.uint8)
    mon = _batch.monomial_values(F, base_pts, PAIRS3)
    pidx = {p: i for i, p in enumerate(_p3_points(q))}
    for cls in CLASS_COUNTS:
        f0 = standard_form(cls, F)
        z0 = [i for i in range(len(base_pts)) if form_eval(f0, _p3_points(q)[i], F) == 0]
        if len(z0) < 8:
            continue
        monz = mon[:, z0]
        if F.p == 2:
            vals = _batch.char2_all_forms_values(F, monz)
            counts = (vals == 0).sum(axis=1)
            cand = np.flatnonzero(counts == 8)
            forms = [_batch.decode_tuple(int(ix), 10, F.q) for ix in cand]
        else:
            forms = []
            start = 0
            for block in _batch.affine_tuple_chunks(10, F.q):
                v = _batch.eval_forms_on_points(F, block, monz)
                for r in np.flatnonzero((v == 0).sum(axis=1) == 8):
                    forms.append(tuple(int(x) for x in block[r]))
                start += block.shape[0]
        for g_form in forms:
            if not any(g_form):
                continue
            base_idx = [z0[i] for i in range(len(z0)) if form_eval(g_form, _p3_points(q)[z0[i]], F) == 0]
            base = [_p3_points(q)[i] for i in base_idx]
            tensors = [vmap(p, F) for p in base]
            if span(tensors, F).rank != 8:
                continue
            key = 0
            for p in base:
                key |= 1 << pidx[p]
            found.setdefault(key, base)
    fps: dict[tuple, list] = {}
    for base in found.values():
        fps.setdefault(base_fingerprint(base, F), base)
    reps = list(fps.values())
    return Eta7Result(
        q,
        "pencil",
        None,
        len(fps),
        None,
        [],
        reps,
        list(fps.keys()),
        status="lower-bound",
    )


# ----------------------------------------------------------------------
# eta8: identifiable Waring hyperplanes
# ----------------------------------------------------------------------


@dataclass
class Eta8Result:
    q: int
    orbit_count: int
    nine_point_quadrics: int
    classes: list


def enumerate_eta8(q: int) -> Eta8Result:
    """Scan every quadric of P^3 for a nine-point zero set whose squares
    span a hyperplane; orbit-count the survivors."""
    F = field_of_order(q)
    if q > 5:
        raise BudgetExceeded("eta8 scan supported for q <= 5")
    X = veronese_variety(3, F)
    pts = np.array(_p3_points(q), dtype=np.uint8)
    mon = _batch.monomial_values(F, pts, PAIRS3)
    survivors = set()
    nine = 0
    for start, counts in _batch.zero_counts_all_forms(F, mon):
        for r in np.flatnonzero(counts == 9):
            form = _batch.decode_tuple(start + int(r), 10, q)
            survivors.add(normalize(form, F))
    bitsets = []
    classes = []
    for form in survivors:
        nine += 1
        zset = quadric_points(form, F)
        tensors = [vmap(p, F) for p in zset]
        if span(tensors, F).rank == 9:
            bits = 0
            for p in zset:
                bits |= 1 << X.index[vmap(p, F)]
            bitsets.append(bits)
            classes.append(classify_quadric(form, F))
    if not bitsets:
        return Eta8Result(q, 0, nine, [])
    from .group import aut_of_variety, orbits_of_bitsets

    g = aut_of_variety(X)
    orbits = orbits_of_bitsets(bitsets, g.point_perms)
    return Eta8Result(q, len(orbits), nine, sorted(set(classes)))


# ----------------------------------------------------------------------
# reference pencils for the codimension-two case list
# ----------------------------------------------------------------------


def reference_pencils(q: int):
    """Named example pencils whose bases realize the classified
    codimension-two cases at small q; labels follow the source numbering."""
    F = field_of_order(q)
    out = []
    if q == 2:
        out.append(("1a-four-lines", form_from_terms({(0, 2): 1}, F), form_from_terms({(1, 3): 1}, F)))
        return out
    b_irr = _irreducible_quadratic(q)[0] if _irreducible_quadratic(q)[1] == 1 else None
    if b_irr is None:
        b_irr = next(
            b
            for b in F.elements()
            if all(F.add(F.add(F.mul(x, x), F.mul(b, x)), 1) != 0 for x in F.elements())
        )
    m1 = F.neg(1)
    if q == 3:
        out.append(
            (
                "1b-skew-plus-conjugate",
                form_from_terms({(0, 3): 1, (1, 2): m1}, F),
                form_from_terms({(0, 2): 1, (1, 2): b_irr, (1, 3): 1}, F),
            )
        )
        out.append(
            (
                "3a-two-disjoint-conics",
                form_from_terms({(0, 1): 1}, F),
                form_from_terms(
                    {(0, 0): 1, (1, 1): 1, (2, 2): 1, (2, 3): b_irr, (3, 3): 1}, F
                ),
            )
        )
        nu = next(x for x in F.nonzero() if F.sqrt(x) is None)
        out.append(
            (
                "3a-two-disjoint-conics-nonsquare",
                form_from_terms({(0, 1): 1}, F),
                form_from_terms(
                    {(0, 0): 1, (1, 1): nu, (2, 2): 1, (2, 3): b_irr, (3, 3): 1}, F
                ),
            )
        )
        out.append(
            (
                "4c-twisted-cubic-imaginary-chord",
                form_from_terms(
                    {(0, 3): 1, (1, 2): m1, (1, 3): b_irr, (2, 2): F.neg(b_irr)}, F
                ),
                form_from_terms({(0, 2): 1, (1, 1): m1, (1, 3): m1, (2, 2): 1}, F),
            )
        )
    if q == 4:
        out.append(
            (
                "3c-two-conics-meeting-twice",
                form_from_terms({(0, 1): 1}, F),
                form_from_terms({(0, 0): 1, (1, 1): 1, (2, 3): 1}, F),
            )
        )
        out.append(
            (
                "4a-twisted-cubic-bisecant",
                form_from_terms({(0, 2): 1, (1, 1): m1}, F),
                form_from_terms({(1, 3): 1, (2, 2): m1}, F),
            )
        )
    return out

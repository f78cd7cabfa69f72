"""Collineation groups acting on the varieties: lifted PGL/PGammaL, the
symmetric-group exception for the 7-point quadric Veronesean over F_2,
setwise-stabilizer search, orbit enumeration, and the three orbit-counting
Waring polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field

from .gf import FieldTable
from .projspace import (
    Subspace,
    count_subspaces,
    enumerate_subspaces,
    normalize,
    rref,
    span,
)
from .veronese import PointSet, sym_index
from .waring import (
    BudgetExceeded,
    SpanBudgetExceeded,
    is_waring_identifiable,
    waring_hyperplane_table,
    waring_span_tables,
)


# ----------------------------------------------------------------------
# matrices over F_q
# ----------------------------------------------------------------------


def mat_vec(M, v, F: FieldTable):
    add, mul = F.add_table, F.mul_table
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = add[acc][mul[a][b]]
        out.append(acc)
    return tuple(out)


def mat_mul(A, B, F: FieldTable):
    add, mul = F.add_table, F.mul_table
    m, k, r = len(A), len(B), len(B[0])
    out = []
    for i in range(m):
        Ai = A[i]
        row = []
        for j in range(r):
            acc = 0
            for t in range(k):
                a, b = Ai[t], B[t][j]
                if a and b:
                    acc = add[acc][mul[a][b]]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_inv(A, F: FieldTable):
    m = len(A)
    aug = [list(A[i]) + [1 if j == i else 0 for j in range(m)] for i in range(m)]
    red = rref(aug, F)
    if len(red) != m or any(red[i][i] != 1 or any(red[i][j] for j in range(i)) for i in range(m)):
        raise ValueError("matrix is singular")
    for i in range(m):
        if red[i][:m] != tuple(1 if j == i else 0 for j in range(m)):
            raise ValueError("matrix is singular")
    return tuple(tuple(row[m:]) for row in red)


def identity_matrix(m):
    return tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m))


def frobenius_vec(v, F: FieldTable, times: int):
    if times % F.e == 0:
        return tuple(v)
    return tuple(F.frobenius(x, times) for x in v)


@dataclass(frozen=True)
class Collineation:
    """A (semi)linear collineation x -> M . x^(p^frob) of P^N(F_q).

    When produced by lift(), source keeps the underlying matrix on the
    base P^n whose symmetric square this is.
    """

    matrix: tuple
    frob: int
    field: FieldTable
    source: tuple | None = None

    def apply_vec(self, v):
        return mat_vec(self.matrix, frobenius_vec(v, self.field, self.frob), self.field)

    def apply_point(self, pt):
        return normalize(self.apply_vec(pt), self.field)

    def apply_subspace(self, S: Subspace) -> Subspace:
        return span([self.apply_vec(r) for r in S.rows], self.field)

    def compose(self, other: "Collineation") -> "Collineation":
        F = self.field
        m2 = tuple(frobenius_vec(row, F, self.frob) for row in other.matrix)
        return Collineation(mat_mul(self.matrix, m2, F), (self.frob + other.frob) % F.e, F)


def lift(A, F: FieldTable, frob: int = 0) -> Collineation:
    """Lift of x -> A.x^sigma from P^n to the symmetric-square space P^N."""
    m = len(A)
    n = m - 1
    pairs = sym_index(n)
    try:
        mat_inv(A, F)
    except ValueError:
        raise ValueError("cannot lift a singular matrix") from None
    add, mul = F.add_table, F.mul_table
    cols = []
    for (i, j) in pairs:
        ai = [A[r][i] for r in range(m)]
        aj = [A[r][j] for r in range(m)]
        col = []
        for (k, l) in pairs:
            v = mul[ai[k]][aj[l]]
            if i != j:
                v = add[v][mul[aj[k]][ai[l]]]
            col.append(v)
        cols.append(col)
    rows = tuple(tuple(cols[c][r] for c in range(len(pairs))) for r in range(len(pairs)))
    return Collineation(rows, frob % F.e, F, source=tuple(tuple(r) for r in A))


def pgl_matrix_generators(m: int, F: FieldTable):
    """Generators of GL(m, q): coordinate swap, cycle, primitive scaling,
    and one transvection."""
    if m == 1:
        return [identity_matrix(1)]
    gens = []
    swap = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    swap[0][0] = swap[1][1] = 0
    swap[0][1] = swap[1][0] = 1
    gens.append(tuple(tuple(r) for r in swap))
    cyc = [[0] * m for _ in range(m)]
    for i in range(m):
        cyc[(i + 1) % m][i] = 1
    gens.append(tuple(tuple(r) for r in cyc))
    if F.q > 2:
        diag = [[0] * m for _ in range(m)]
        for i in range(m):
            diag[i][i] = 1
        diag[0][0] = F.generator
        gens.append(tuple(tuple(r) for r in diag))
    tv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    tv[0][1] = 1
    gens.append(tuple(tuple(r) for r in tv))
    return gens


def pgl_order(m: int, q: int) -> int:
    out = 1
    for i in range(m):
        out *= q**m - q**i
    return out // (q - 1)


def pgammal_order(m: int, q: int, e: int) -> int:
    return pgl_order(m, q) * e


def lifted_pgl_generators(n: int, F: FieldTable):
    """Generators of PGL(n+1, q) (PGammaL when e > 1) lifted to P^N."""
    gens = [lift(A, F) for A in pgl_matrix_generators(n + 1, F)]
    if F.e > 1:
        gens.append(lift(identity_matrix(n + 1), F, frob=1))
    return gens


# ----------------------------------------------------------------------
# frames
# ----------------------------------------------------------------------


def frame_matrix(points, F: FieldTable):
    """Matrix sending the standard frame e_0..e_m, sum(e) to the ordered
    frame given by m+2 points (first m+1 independent, last in general
    position with respect to them)."""
    m = len(points) - 1
    # solve sum lambda_i p_i = p_last
    lam = solve_coords(points[-1], points[:-1], F)
    if lam is None or any(x == 0 for x in lam):
        raise ValueError("points do not form a frame")
    mul = F.mul_table
    cols = [tuple(mul[lam[i]][points[i][r]] for r in range(len(points[0]))) for i in range(m)]
    return tuple(tuple(cols[c][r] for c in range(m)) for r in range(len(points[0])))


def solve_coords(v, basis, F: FieldTable):
    """Coefficients x with v = sum x_k basis_k, or None if v is outside."""
    r = len(basis)
    dim = len(v)
    aug = [[basis[k][row] for k in range(r)] + [v[row]] for row in range(dim)]
    red = rref(aug, F)
    coeffs = [0] * r
    for row in red:
        piv = next(c for c, x in enumerate(row) if x)
        if piv == r:
            return None  # inconsistent: v not in the span
        coeffs[piv] = row[r]
    return tuple(coeffs)


def collineation_from_frames(dom_frame, img_frame, F: FieldTable) -> Collineation:
    Md = frame_matrix(dom_frame, F)
    Mi = frame_matrix(img_frame, F)
    return Collineation(mat_mul(Mi, mat_inv(Md, F), F), 0, F)


# ----------------------------------------------------------------------
# permutations and orbits
# ----------------------------------------------------------------------


def variety_point_perm(col: Collineation, X: PointSet) -> tuple:
    """The permutation col induces on X; raises if X is not stabilized."""
    out = []
    for p in X.points:
        q = col.apply_point(p)
        i = X.index.get(q)
        if i is None:
            raise ValueError("collineation does not stabilize the point set")
        out.append(i)
    return tuple(out)


def mulclose_perms(gens, maxsize=None):
    """Closure of a set of permutations (one-line tuples) under composition."""
    els = set(gens)
    bdy = list(els)
    while bdy:
        new = []
        for g in gens:
            for h in bdy:
                c = tuple(g[i] for i in h)
                if c not in els:
                    els.add(c)
                    new.append(c)
                    if maxsize and len(els) > maxsize:
                        raise BudgetExceeded(f"permutation closure exceeded {maxsize}")
        bdy = new
    return els


def apply_perm_bits(perm, bits: int) -> int:
    out = 0
    while bits:
        low = bits & -bits
        out |= 1 << perm[low.bit_length() - 1]
        bits ^= low
    return out


def orbits_of_bitsets(bitsets, perms):
    """Partition of subset-bitsets under index permutations (BFS closure)."""
    universe = set(bitsets)
    seen = set()
    orbits = []
    for b in bitsets:
        if b in seen:
            continue
        orbit = [b]
        seen.add(b)
        frontier = [b]
        while frontier:
            nxt = []
            for x in frontier:
                for g in perms:
                    y = apply_perm_bits(g, x)
                    if y not in seen:
                        if y not in universe:
                            raise ValueError("orbit leaves the object set: objects not closed")
                        seen.add(y)
                        orbit.append(y)
                        nxt.append(y)
            frontier = nxt
        orbits.append(sorted(orbit))
    return orbits


def orbit_partition(objects, actions, key=lambda x: x):
    """Partition arbitrary canonical-keyed objects under action callables.

    objects: iterable; actions: callables object -> object.  Returns a list
    of orbits, each a list of objects, with the lexicographically least
    canonical form first.
    """
    by_key = {}
    for obj in objects:
        by_key.setdefault(key(obj), obj)
    seen = set()
    orbits = []
    for k0, obj in by_key.items():
        if k0 in seen:
            continue
        orbit = {k0: obj}
        frontier = [obj]
        seen.add(k0)
        while frontier:
            nxt = []
            for x in frontier:
                for act in actions:
                    y = act(x)
                    ky = key(y)
                    if ky not in seen:
                        if ky not in by_key:
                            raise ValueError("orbit leaves the object set: objects not closed")
                        seen.add(ky)
                        orbit[ky] = y
                        nxt.append(y)
            frontier = nxt
        orbits.append([orbit[k] for k in sorted(orbit)])
    return orbits


# ----------------------------------------------------------------------
# setwise stabilizer search
# ----------------------------------------------------------------------


@dataclass
class StabilizerGroup:
    """All permutations of a point set extending to collineations."""

    perms: list
    elements: list
    order: int
    nodes: int


class _RatioUF:
    """Union-find over basis slots with multiplicative edge weights.

    Tracks constraints lambda_i = ratio * lambda_j with rollback, so the
    backtracking search can merge and undo scalar constraints cheaply.
    """

    def __init__(self, n, F):
        self.par = list(range(n))
        self.rat = [1] * n  # lambda_i = rat[i] * lambda_par[i]
        self.F = F
        self.journal = []

    def find(self, i):
        F = self.F
        w = 1
        while self.par[i] != i:
            w = F.mul(w, self.rat[i])
            i = self.par[i]
        return i, w

    def union(self, i, j, rho):
        """Constrain lambda_i = rho * lambda_j; False on contradiction."""
        F = self.F
        ri, wi = self.find(i)
        rj, wj = self.find(j)
        if ri == rj:
            return wi == F.mul(rho, wj)
        self.journal.append(ri)
        self.par[ri] = rj
        self.rat[ri] = F.mul(F.inv(wi), F.mul(rho, wj))
        return True

    def mark(self):
        return len(self.journal)

    def rollback(self, mark):
        while len(self.journal) > mark:
            ri = self.journal.pop()
            self.par[ri] = ri
            self.rat[ri] = 1


def _dependency_order(dom, F):
    """Order the points so dependencies appear as early as possible.

    Returns (order, kinds) where kinds[t] is None for a rank-increasing
    position and (basis_slots, coeffs) for a dependent one.
    """
    m = len(dom)
    order, kinds = [], []
    basis_idx = []
    U = None
    remaining = list(range(m))
    while remaining:
        inside = [i for i in remaining if U is not None and U.contains_point(dom[i])]
        if inside:
            i = inside[0]
            coeffs = solve_coords(dom[i], [dom[b] for b in basis_idx], F)
            support = tuple(k for k, c in enumerate(coeffs) if c)
            kinds.append((support, coeffs))
        else:
            best, best_score = None, -1
            for i in remaining:
                U2 = span([dom[i]], F) if U is None else U.extend(dom[i])
                score = sum(1 for r in remaining if r != i and U2.contains_point(dom[r]))
                if score > best_score:
                    best, best_score, bestU = i, score, U2
            i, U = best, bestU
            basis_idx.append(i)
            kinds.append(None)
        order.append(i)
        remaining.remove(i)
    return order, kinds, basis_idx


def stabilizer_search(
    points, F: FieldTable, node_budget: int = 20_000_000, semilinear: bool = True
) -> StabilizerGroup:
    """All permutations of the point set extending to collineations of P^N.

    Backtracks over images position by position in a dependency-first
    order; rank patterns must match, and every linear relation among the
    points pins down scalar ratios of the would-be matrix (checked with a
    weighted union-find), so inconsistent branches die early.  Each full
    assignment is realized as an explicit matrix and re-verified.  Over
    F_2 the linear algebra runs on bit-packed vectors.
    """
    pts = [normalize(p, F) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points")
    m = len(pts)
    dim = len(pts[0])
    if len(rref(pts, F)) != dim:
        raise ValueError("points do not span the ambient space")
    index = {p: i for i, p in enumerate(pts)}
    found = {}
    nodes = 0

    frob_range = range(F.e) if semilinear else range(1)
    for j in frob_range:
        dom = [normalize(frobenius_vec(p, F, j), F) for p in pts]
        order, kinds, basis_idx = _dependency_order(dom, F)
        if F.q == 2:
            nodes += _stab_search_gf2(
                pts, dom, order, kinds, basis_idx, index, found, node_budget - nodes
            )
            continue
        nb = len(basis_idx)
        uf = _RatioUF(nb, F)
        assign = [None] * m  # assign[dom position index] = image point index
        used = [False] * m
        img_basis = []  # image representative per basis slot
        Mdom_inv = mat_inv(
            tuple(tuple(dom[basis_idx[c]][r] for c in range(nb)) for r in range(dim)), F
        )

        def finalize():
            lam = [uf.find(k)[1] for k in range(nb)]
            mul = F.mul_table
            Mimg = tuple(
                tuple(mul[lam[c]][img_basis[c][r]] for c in range(nb)) for r in range(dim)
            )
            L = mat_mul(Mimg, Mdom_inv, F)
            perm = [None] * m
            for t, i in enumerate(order):
                perm[i] = assign[t]
            col = Collineation(L, j, F)
            for i, p in enumerate(pts):
                q = col.apply_point(p)
                if index.get(q) != perm[i]:
                    return  # scalar pattern not globally consistent
            found[tuple(perm)] = col

        def rec(t, img_sub):
            nonlocal nodes
            if t == m:
                finalize()
                return
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded(f"stabilizer search exceeded {node_budget} nodes")
            kind = kinds[t]
            if kind is None:
                for c in range(m):
                    if used[c] or (img_sub is not None and img_sub.contains_point(pts[c])):
                        continue
                    used[c] = True
                    img_basis.append(pts[c])
                    assign[t] = c
                    rec(t + 1, span([pts[c]], F) if img_sub is None else img_sub.extend(pts[c]))
                    img_basis.pop()
                    used[c] = False
            else:
                support, coeffs = kind
                anchor = support[0]
                ca_inv = F.inv_table[coeffs[anchor]]
                for c in range(m):
                    if used[c] or not img_sub.contains_point(pts[c]):
                        continue
                    d = solve_coords(pts[c], img_basis, F)
                    if d is None:
                        continue
                    if tuple(k for k, x in enumerate(d) if x) != support:
                        continue
                    mk = uf.mark()
                    da_ratio = F.mul(d[anchor], ca_inv)
                    ok = True
                    for k in support[1:]:
                        rho = F.div(F.mul(d[k], F.inv_table[coeffs[k]]), da_ratio)
                        if not uf.union(k, anchor, rho):
                            ok = False
                            break
                    if ok:
                        used[c] = True
                        assign[t] = c
                        rec(t + 1, img_sub)
                        used[c] = False
                    uf.rollback(mk)

        rec(0, None)

    perms = sorted(found)
    return StabilizerGroup(perms, [found[p] for p in perms], len(perms), nodes)


def _stab_search_gf2(pts, dom, order, kinds, basis_idx, index, found, node_budget):
    """F_2 fast path: vectors are bit-packed ints, scalars are trivial, so a
    dependent position only needs an in-span and support check."""
    m = len(pts)
    dim = len(pts[0])

    def pack(v):
        b = 0
        for k, x in enumerate(v):
            if x:
                b |= 1 << k
        return b

    def unpack(b):
        return tuple((b >> k) & 1 for k in range(dim))

    pbits = [pack(p) for p in pts]
    nb = len(basis_idx)
    # echelon form of the domain basis with combination tags, for expressing
    # arbitrary vectors over the domain basis slots
    dom_ech = []
    for slot, i in enumerate(basis_idx):
        v, tag = pack(dom[i]), 1 << slot
        for bv, bt in dom_ech:
            if v & (bv & -bv):
                v ^= bv
                tag ^= bt
        dom_ech.append((v, tag))
    unit_tags = []
    for c in range(dim):
        v, tag = 1 << c, 0
        for bv, bt in dom_ech:
            if v & (bv & -bv):
                v ^= bv
                tag ^= bt
        assert v == 0
        unit_tags.append(tag)

    assign = [None] * m
    used = [False] * m
    img_vecs = [0] * nb  # image vector per basis slot
    nodes = 0
    dombits = [pack(d) for d in dom]
    slot_of = []
    s = 0
    smasks = []
    for k in kinds:
        if k is None:
            slot_of.append(s)
            smasks.append(None)
            s += 1
        else:
            slot_of.append(None)
            mask = 0
            for x in k[0]:
                mask |= 1 << x
            smasks.append(mask)

    def finalize():
        # columns of the matrix: image of each unit vector
        cols = []
        for c in range(dim):
            w = 0
            tag = unit_tags[c]
            while tag:
                low = tag & -tag
                w ^= img_vecs[low.bit_length() - 1]
                tag ^= low
            cols.append(w)
        perm = [None] * m
        for t, i in enumerate(order):
            perm[i] = assign[t]
        for i, pb in enumerate(dombits):
            w = 0
            for c in range(dim):
                if (pb >> c) & 1:
                    w ^= cols[c]
            if w != pbits[perm[i]]:
                return
        rows = tuple(tuple((cols[c] >> r) & 1 for c in range(dim)) for r in range(dim))
        found[tuple(perm)] = Collineation(rows, 0, _f2_field())

    def rec(t, ech):
        # ech: list of (pivot bit, echelon vector, tag over basis slots)
        nonlocal nodes
        if t == m:
            finalize()
            return
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f"stabilizer search exceeded {node_budget} nodes")
        smask = smasks[t]
        if smask is None:
            slot = slot_of[t]
            tagbit = 1 << slot
            for c in range(m):
                if used[c]:
                    continue
                v = pbits[c]
                tag = tagbit
                for piv, bv, bt in ech:
                    if v & piv:
                        v ^= bv
                        tag ^= bt
                if v == 0:
                    continue
                used[c] = True
                assign[t] = c
                img_vecs[slot] = pbits[c]
                rec(t + 1, ech + [(v & -v, v, tag)])
                used[c] = False
        else:
            for c in range(m):
                if used[c]:
                    continue
                v = pbits[c]
                tag = 0
                for piv, bv, bt in ech:
                    if v & piv:
                        v ^= bv
                        tag ^= bt
                if v != 0 or tag != smask:
                    continue
                used[c] = True
                assign[t] = c
                rec(t + 1, ech)
                used[c] = False

    rec(0, [])
    return nodes


def _f2_field():
    from .gf import field_of_order

    return field_of_order(2)


def dependency_plane_stabilizer(X: PointSet):
    """Permutations of X preserving its linear-dependency structure, for a
    point set whose circuits are exactly the 7-point rank-6 subsets and
    whose pairwise "lines" (intersections of circuit supports) have 3
    points.  Both premises are audited; the search forces completions
    through the derived third-point map, so the tree is barely larger than
    the group itself.  Returns the set of permutations.

    Every collineation stabilizing X setwise preserves dependencies, so
    this is an upper bound for the setwise stabilizer; combined with a
    known lower bound (e.g. a lifted group inducing the same permutations)
    it pins the stabilizer exactly.
    """
    from itertools import combinations

    F = X.field
    m = len(X)
    pts = X.points
    # audit the circuit structure
    for sub in combinations(range(m), 6):
        if len(rref([pts[i] for i in sub], F)) != 6:
            raise ValueError("a 6-subset is dependent; plane derivation invalid")
    planes = []
    for sub in combinations(range(m), 7):
        r = len(rref([pts[i] for i in sub], F))
        if r < 6:
            raise ValueError("a 7-subset has rank below 6; plane derivation invalid")
        if r == 6:
            bits = 0
            for i in sub:
                bits |= 1 << i
            planes.append(bits)
    # lines: common intersection of all planes through a pair
    third = [[None] * m for _ in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            mask = (1 << m) - 1
            pair = (1 << a) | (1 << b)
            for pl in planes:
                if pl & pair == pair:
                    mask &= pl
            rest = mask & ~pair
            if mask.bit_count() != 3 or rest.bit_count() != 1:
                raise ValueError("pairwise line structure is not 3-point")
            c = rest.bit_length() - 1
            third[a][b] = third[b][a] = c

    def close(seed):
        known = list(seed)
        ks = set(seed)
        sched = []
        changed = True
        while changed:
            changed = False
            for x, y in combinations(list(ks), 2):
                z = third[x][y]
                if z not in ks:
                    ks.add(z)
                    sched.append((z, x, y))
                    changed = True
        return ks, sched

    # a frame: c off line(a, b), d off plane(a, b, c)
    a, b = 0, 1
    lab = {a, b, third[a][b]}
    c = next(i for i in range(m) if i not in lab)
    plane_abc, _ = close([a, b, c])
    d = next(i for i in range(m) if i not in plane_abc)
    full, schedule = close([a, b, c, d])
    if len(full) != m:
        raise ValueError("frame closure does not generate all points")

    plane_set = set(planes)
    perms = set()
    img = [None] * m
    line_ab = lab

    for ia in range(m):
        img[a] = ia
        for ib in range(m):
            if ib == ia:
                continue
            img[b] = ib
            line_img = {ia, ib, third[ia][ib]}
            for ic in range(m):
                if ic in line_img:
                    continue
                img[c] = ic
                plane_img, _ = close([ia, ib, ic])
                for idx in range(m):
                    if idx in plane_img:
                        continue
                    img[d] = idx
                    ok = True
                    assigned = {ia, ib, ic, idx}
                    for z, x, y in schedule:
                        iz = third[img[x]][img[y]]
                        if iz in assigned:
                            ok = False
                            break
                        img[z] = iz
                        assigned.add(iz)
                    if not ok:
                        continue
                    perm = tuple(img)
                    good = True
                    for pl in planes:
                        out = 0
                        bb = pl
                        while bb:
                            low = bb & -bb
                            out |= 1 << perm[low.bit_length() - 1]
                            bb ^= low
                        if out not in plane_set:
                            good = False
                            break
                    if good:
                        perms.add(perm)
    return perms


# ----------------------------------------------------------------------
# automorphism groups of varieties
# ----------------------------------------------------------------------


@dataclass
class AutGroup:
    """A collineation group acting on a point set, given by generators
    (or, for searched stabilizers, the full element list)."""

    label: str
    collineations: list
    point_perms: list
    order: int | None
    is_full_list: bool = False
    notes: dict = field(default_factory=dict)


def symmetric_group_on_frame(X: PointSet) -> AutGroup:
    """The full symmetric group on a point set that forms a frame of P^N,
    each permutation extended linearly (7-point Veronesean over F_2)."""
    F = X.field
    m = len(X.points)
    if m != X.n + 2:
        raise ValueError("point set is not a frame")
    pts = list(X.points)
    gen_perms = []
    if m >= 2:
        gen_perms.append(tuple([1, 0] + list(range(2, m))))
    gen_perms.append(tuple(list(range(1, m)) + [0]))
    cols, perms = [], []
    for g in gen_perms:
        col = collineation_from_frames(pts, [pts[g[i]] for i in range(m)], F)
        perm = variety_point_perm(col, X)
        cols.append(col)
        perms.append(perm)
    order = 1
    for k in range(2, m + 1):
        order *= k
    return AutGroup(f"S{m} on frame", cols, perms, order, notes={"kind": "symmetric"})


def lifted_projective_group(X: PointSet) -> AutGroup:
    """PGL(n+1, q) (PGammaL for e > 1) lifted through the quadric Veronese
    map; the standard projective equivalence for these varieties."""
    n = X.veronese_n
    F = X.field
    cols = lifted_pgl_generators(n, F)
    perms = [variety_point_perm(c, X) for c in cols]
    order = pgammal_order(n + 1, F.q, F.e)
    label = f"PGL({n + 1},{F.q})" if F.e == 1 else f"PGammaL({n + 1},{F.q})"
    return AutGroup(label + " lifted", cols, perms, order)


def aut_of_variety(X: PointSet, node_budget: int = 20_000_000) -> AutGroup:
    """The collineation group of P^N stabilizing X(F_q) setwise.

    Quadric Veroneseans use the lifted projective group, except the
    7-point plane case over F_2 where the full symmetric group acts; the
    15-point space case over F_2 is settled by an explicit setwise search.
    Non-Veronese point sets always go through the setwise search.
    """
    n = getattr(X, "veronese_n", None)
    q = X.field.q
    if n is None:
        sg = stabilizer_search(X.points, X.field, node_budget=node_budget)
        return AutGroup(
            f"setwise stabilizer (order {sg.order})",
            sg.elements,
            sg.perms,
            sg.order,
            is_full_list=True,
        )
    if (n, q) == (2, 2):
        return symmetric_group_on_frame(X)
    g = lifted_projective_group(X)
    if (n, q) == (3, 2):
        # the setwise stabilizer is squeezed between the lifted group and
        # the dependency-preserving permutations; compute both sides
        lifted = mulclose_perms(g.point_perms)
        dep = dependency_plane_stabilizer(X)
        g.notes["lifted_order"] = len(lifted)
        g.notes["dependency_stabilizer_order"] = len(dep)
        extra = [p for p in dep if p not in lifted and _perm_extends_linearly(p, X)]
        g.notes["setwise_order"] = len(lifted) + len(extra)
        if extra:
            perms = sorted(set(lifted) | set(extra))
            g = AutGroup(
                f"setwise stabilizer (order {len(perms)})",
                g.collineations,
                perms,
                len(perms),
                is_full_list=True,
                notes=g.notes,
            )
    return g


def _perm_extends_linearly(perm, X: PointSet) -> bool:
    """Whether a permutation of X is induced by some collineation, decided
    by solving for the matrix on an independent spanning subset and
    checking scalar consistency on the rest (q = 2 keeps scalars trivial)."""
    F = X.field
    if F.q != 2:
        raise NotImplementedError("only needed over F_2")
    dim = X.n + 1
    basis_idx = []
    sub = None
    for i in range(len(X)):
        s2 = span([X.points[i]], F) if sub is None else sub.extend(X.points[i])
        if sub is None or s2 is not sub:
            sub = s2
            basis_idx.append(i)
        if len(basis_idx) == dim:
            break
    Mdom = tuple(tuple(X.points[basis_idx[c]][r] for c in range(dim)) for r in range(dim))
    Mimg = tuple(tuple(X.points[perm[basis_idx[c]]][r] for c in range(dim)) for r in range(dim))
    try:
        L = mat_mul(Mimg, mat_inv(Mdom, F), F)
    except ValueError:
        return False
    col = Collineation(L, 0, F)
    return all(col.apply_point(p) == X.points[perm[i]] for i, p in enumerate(X.points))


# ----------------------------------------------------------------------
# Waring polynomials
# ----------------------------------------------------------------------


@dataclass
class WaringPolynomial:
    """Per-dimension orbit counts: lam for Waring subspaces, mu for Waring
    identifiable subspaces, eta for identifiable Waring subspaces."""

    n: int
    lam: dict
    mu: dict
    eta: dict
    status: dict
    group_label: str

    def _coeffs(self, d):
        return [d.get(i) for i in range(self.n)]

    def to_json(self) -> dict:
        return {
            "lambda": self._coeffs(self.lam),
            "mu": self._coeffs(self.mu),
            "eta": self._coeffs(self.eta),
            "status": self.status,
            "group": self.group_label,
        }

    @staticmethod
    def pretty(coeffs) -> str:
        terms = []
        for i, c in enumerate(coeffs):
            if c is None or c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                x = "X" if i == 1 else f"X^{i}"
                terms.append(x if c == 1 else f"{c}{x}")
        return "+".join(terms) if terms else "0"

    def pretty_lambda(self):
        return self.pretty(self._coeffs(self.lam))

    def pretty_mu(self):
        return self.pretty(self._coeffs(self.mu))

    def pretty_eta(self):
        return self.pretty(self._coeffs(self.eta))


def default_polynomial_group(X: PointSet) -> AutGroup:
    """The group the polynomials are counted under by default: the lifted
    projective group for Veronese varieties (the usual equivalence for
    them), the exact setwise stabilizer for everything else."""
    if getattr(X, "veronese_n", None) is not None:
        return lifted_projective_group(X)
    return aut_of_variety(X)


def waring_polynomials(
    X: PointSet,
    group: AutGroup | None = None,
    dims=None,
    mu: str = "auto",
    level_limit: int = 700_000,
    mu_limit: int = 6_000,
    hyperplane_limit: int = 50_000,
) -> WaringPolynomial:
    """Orbit-count the Waring / Waring-identifiable / identifiable-Waring
    subspaces of every requested dimension; per-dimension status records
    anything skipped for budget reasons."""
    if group is None:
        group = default_polynomial_group(X)
    N = X.n
    q = X.field.q
    dims = sorted(set(range(N) if dims is None else dims))
    if any(d < 0 or d >= N for d in dims):
        raise ValueError(f"dimensions must lie in [0, {N - 1}]")
    lam, mu_counts, eta = {}, {}, {}
    status = {"lambda": {}, "mu": {}, "eta": {}}

    bfs_dims = [d for d in dims if d <= N - 2]
    hyper = N - 1 in dims
    tables = {}
    if bfs_dims:
        try:
            tables = waring_span_tables(X, max(bfs_dims), level_limit=level_limit)
        except SpanBudgetExceeded as exc:
            tables = exc.partial
    if hyper:
        n_hyp = (q ** (N + 1) - 1) // (q - 1)
        if n_hyp <= hyperplane_limit:
            tables[N - 1] = waring_hyperplane_table(X)

    for d in dims:
        if d not in tables:
            status["lambda"][d] = status["eta"][d] = "skipped"
            continue
        entries = tables[d]
        all_bits = [w for (_, w) in entries.values()]
        lam[d] = len(orbits_of_bitsets(all_bits, group.point_perms))
        ident = [w for w in all_bits if w.bit_count() == d + 1]
        eta[d] = len(orbits_of_bitsets(ident, group.point_perms))
        status["lambda"][d] = status["eta"][d] = "computed"

    total_subs = sum(count_subspaces(N, d, q) for d in dims)
    do_mu = mu == "force" or (mu == "auto" and total_subs <= mu_limit)
    acts = [lambda s, g=g: g.apply_subspace(s) for g in group.collineations]
    for d in dims:
        if not do_mu:
            status["mu"][d] = "skipped"
            continue
        objs = [
            S for S in enumerate_subspaces(N, d, X.field) if is_waring_identifiable(S, X)[0]
        ]
        mu_counts[d] = len(orbit_partition(objs, acts, key=lambda s: s.key()))
        status["mu"][d] = "computed"

    return WaringPolynomial(N, lam, mu_counts, eta, status, group.label)

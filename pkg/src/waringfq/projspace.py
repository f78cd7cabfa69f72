"""Points and subspaces of P^n(F_q).

Points are normalized coordinate tuples (first nonzero coordinate 1).
Subspaces are kept in reduced row echelon form, the unique canonical
basis of a row space, so equal subspaces have bit-identical keys.
"""

from __future__ import annotations

from itertools import combinations, product

from .gf import FieldTable

Point = tuple[int, ...]


def normalize(vec, F: FieldTable) -> Point:
    """Canonical representative: divide by the first nonzero coordinate."""
    for c in vec:
        if c:
            if c == 1:
                return tuple(vec)
            inv = F.inv(c)
            mul = F.mul_table
            return tuple(mul[inv][x] for x in vec)
    raise ValueError("zero vector has no projective normalization")


def enumerate_points(n: int, F: FieldTable) -> list[Point]:
    """All points of P^n(F_q) in lexicographic order of coordinate tuples."""
    if n < 0:
        raise ValueError("dimension must be >= 0")
    pts = []
    for lead in range(n, -1, -1):
        prefix = (0,) * lead + (1,)
        for tail in product(F.elements(), repeat=n - lead):
            pts.append(prefix + tail)
    return pts


def num_points(n: int, q: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


def rref(rows, F: FieldTable):
    """Reduced row echelon form as a tuple of nonzero rows."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    m, ncols = len(mat), len(mat[0])
    add, mul, neg, invt = F.add_table, F.mul_table, F.neg_table, F.inv_table
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, m):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        lead = mat[r][c]
        if lead != 1:
            s = invt[lead]
            mat[r] = [mul[s][x] for x in mat[r]]
        prow = mat[r]
        for i in range(m):
            if i != r and mat[i][c]:
                f = neg[mat[i][c]]
                row = mat[i]
                mat[i] = [add[x][mul[f][y]] for x, y in zip(row, prow)]
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in mat[:r])


def _pivots(rows):
    out = []
    for row in rows:
        for c, x in enumerate(row):
            if x:
                out.append(c)
                break
    return tuple(out)


class Subspace:
    """A projective subspace of P^n(F_q), canonical RREF basis."""

    __slots__ = ("rows", "n", "field", "pivots", "_key")

    def __init__(self, rows, n: int, F: FieldTable):
        self.rows = rows
        self.n = n
        self.field = F
        self.pivots = _pivots(rows)
        self._key = None

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        """Projective dimension (rank - 1; -1 never occurs: rows nonempty)."""
        return len(self.rows) - 1

    def key(self) -> bytes:
        if self._key is None:
            flat = bytearray([self.n & 0xFF, len(self.rows)])
            for row in self.rows:
                flat.extend(row)
            self._key = bytes(flat)
        return self._key

    def reduce(self, vec) -> tuple:
        """Residue of vec after elimination against the basis rows."""
        F = self.field
        add, mul, neg = F.add_table, F.mul_table, F.neg_table
        v = list(vec)
        for row, c in zip(self.rows, self.pivots):
            x = v[c]
            if x:
                f = neg[x]
                v = [add[a][mul[f][b]] for a, b in zip(v, row)]
        return tuple(v)

    def contains_point(self, pt) -> bool:
        return not any(self.reduce(pt))

    def contains(self, other: "Subspace") -> bool:
        return all(not any(self.reduce(r)) for r in other.rows)

    def extend(self, vec) -> "Subspace":
        """Span of this subspace and vec (self if vec already inside)."""
        res = self.reduce(vec)
        for c, x in enumerate(res):
            if x:
                break
        else:
            return self
        F = self.field
        mul, add, neg = F.mul_table, F.add_table, F.neg_table
        if x != 1:
            s = F.inv_table[x]
            res = tuple(mul[s][y] for y in res)
        newrows = []
        inserted = False
        for row, pc in zip(self.rows, self.pivots):
            if not inserted and pc > c:
                newrows.append(res)
                inserted = True
            if row[c]:
                f = neg[row[c]]
                row = tuple(add[a][mul[f][b]] for a, b in zip(row, res))
            newrows.append(row)
        if not inserted:
            newrows.append(res)
        return Subspace(tuple(newrows), self.n, F)

    def points(self) -> list[Point]:
        """All projective points inside the subspace."""
        F = self.field
        add, mul = F.add_table, F.mul_table
        pts = []
        k = self.rank
        for lead in range(k - 1, -1, -1):
            base = self.rows[lead]
            tail_rows = self.rows[lead + 1 :]
            for coeffs in product(F.elements(), repeat=k - 1 - lead):
                v = list(base)
                for cf, row in zip(coeffs, tail_rows):
                    if cf:
                        mrow = mul[cf]
                        v = [add[a][mrow[b]] for a, b in zip(v, row)]
                pts.append(normalize(v, F))
        return pts

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.n}, q={self.field.q})"

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.field.q, "basis": [list(r) for r in self.rows]}


def span_rows(vectors, F: FieldTable, n: int | None = None) -> Subspace:
    vecs = list(vectors)
    if not vecs:
        raise ValueError("span of an empty set is undefined")
    if n is None:
        n = len(vecs[0]) - 1
    return Subspace(rref(vecs, F), n, F)


def span(points, F: FieldTable) -> Subspace:
    """Projective span of a nonempty list of points."""
    return span_rows(points, F)


def dual_rows(sub: Subspace):
    """Basis of the annihilator {w : w . v = 0 for all v in the row space}."""
    F = sub.field
    neg = F.neg_table
    ncols = sub.n + 1
    pivset = set(sub.pivots)
    free = [c for c in range(ncols) if c not in pivset]
    out = []
    for f in free:
        w = [0] * ncols
        w[f] = 1
        for row, pc in zip(sub.rows, sub.pivots):
            w[pc] = neg[row[f]]
        out.append(tuple(w))
    return rref(out, F)


def dual(sub: Subspace) -> Subspace:
    """The annihilator as a subspace of the dual projective space."""
    rows = dual_rows(sub)
    if not rows:
        raise ValueError("dual of the full space is empty")
    return Subspace(rows, sub.n, sub.field)


def subspace_from_dual(drows, n: int, F: FieldTable):
    """Solution space of the linear forms drows; None if only the zero vector."""
    d = Subspace(rref(drows, F), n, F)
    rows = dual_rows(d)
    if not rows:
        return None
    return Subspace(rows, n, F)


def intersect(s1: Subspace, s2: Subspace):
    """Intersection subspace, or None when projectively empty."""
    if s1.n != s2.n or s1.field is not s2.field:
        raise ValueError("subspaces live in different ambient spaces")
    stacked = dual_rows(s1) + dual_rows(s2)
    if not stacked:
        return s1  # both are the whole space
    return subspace_from_dual(stacked, s1.n, s1.field)


def count_subspaces(n: int, k: int, q: int) -> int:
    """Gaussian binomial [n+1 choose k+1]_q: k-dim subspaces of P^n."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    num = den = 1
    for i in range(k + 1):
        num *= q ** (n + 1 - i) - 1
        den *= q ** (k + 1 - i) - 1
    return num // den


def enumerate_subspaces(n: int, k: int, F: FieldTable):
    """All k-dim subspaces of P^n(F_q), streamed in pivot-pattern order."""
    r = k + 1
    ncols = n + 1
    for pivots in combinations(range(ncols), r):
        pivset = set(pivots)
        free_slots = [
            (i, c) for i in range(r) for c in range(pivots[i] + 1, ncols) if c not in pivset
        ]
        base = []
        for i in range(r):
            row = [0] * ncols
            row[pivots[i]] = 1
            base.append(row)
        for values in product(F.elements(), repeat=len(free_slots)):
            rows = [list(row) for row in base]
            for (i, c), v in zip(free_slots, values):
                rows[i][c] = v
            yield Subspace(tuple(tuple(row) for row in rows), n, F)


def count_all_subspaces(n: int, q: int) -> int:
    """Number of proper nonempty subspaces of P^n (dims 0..n-1) plus the space."""
    return sum(count_subspaces(n, k, q) for k in range(n + 1))

"""The quadric Veronese embedding, symmetric-matrix coordinates, and the
point-set abstraction that the Waring machinery runs on.

A point of P(Sym^2 F_q^{n+1}) is stored as the upper triangle of its
symmetric matrix, pairs (i <= j) in row-major order, normalized as a
projective point.  Quadratic forms use the same index order, so a form f
and a tensor T pair as sum(f_ij * T_ij) with no divisions by 2 anywhere;
characteristic 2 needs no special case.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gf import FieldTable, field_of_order
from .projspace import Point, Subspace, enumerate_points, normalize, rref, span


@lru_cache(maxsize=None)
def sym_index(n: int) -> tuple[tuple[int, int], ...]:
    """Pairs (i, j), i <= j, in row-major order: the Sym^2 coordinate basis."""
    return tuple((i, j) for i in range(n + 1) for j in range(i, n + 1))


@lru_cache(maxsize=None)
def sym_pos(n: int) -> dict:
    return {ij: k for k, ij in enumerate(sym_index(n))}


def sym_ambient_dim(n: int) -> int:
    """N with P(Sym^2) = P^N for base P^n."""
    return (n + 1) * (n + 2) // 2 - 1


def tensor_of_vector(vec, F: FieldTable) -> Point:
    """Coordinates of the symmetric square of vec, normalized."""
    n = len(vec) - 1
    mul = F.mul_table
    return normalize([mul[vec[i]][vec[j]] for i, j in sym_index(n)], F)


def vmap(pt: Point, F: FieldTable) -> Point:
    """Quadric Veronese image of a point of P^n; representative-independent."""
    return tensor_of_vector(pt, F)


def sym_matrix(coords, n: int):
    """Reconstruct the full (n+1)x(n+1) symmetric matrix from coordinates."""
    pos = sym_pos(n)
    return tuple(
        tuple(coords[pos[(min(i, j), max(i, j))]] for j in range(n + 1)) for i in range(n + 1)
    )


def tensor_rank(coords, n: int, F: FieldTable) -> int:
    """Rank of the reconstructed symmetric matrix over F_q."""
    if not any(coords):
        raise ValueError("rank of the zero tensor is undefined")
    return len(rref(sym_matrix(coords, n), F))


def inverse_vmap(coords, n: int, F: FieldTable):
    """The unique preimage point when the matrix has rank one, else None.

    A rank-one symmetric matrix is a scalar times an outer square, so any
    nonzero row is proportional to the underlying vector.
    """
    if not any(coords):
        raise ValueError("zero tensor")
    mat = sym_matrix(coords, n)
    for row in mat:
        if any(row):
            pt = normalize(row, F)
            break
    if vmap(pt, F) != normalize(coords, F):
        return None
    return pt


def form_eval(form, pt, F: FieldTable) -> int:
    """Value of the quadratic form sum f_ij X_i X_j at a point."""
    n = len(pt) - 1
    add, mul = F.add_table, F.mul_table
    acc = 0
    for f, (i, j) in zip(form, sym_index(n)):
        if f:
            acc = add[acc][mul[f][mul[pt[i]][pt[j]]]]
    return acc


def form_gradient(form, pt, F: FieldTable) -> tuple:
    """Formal partial derivatives of the form, evaluated at pt."""
    n = len(pt) - 1
    add, mul = F.add_table, F.mul_table
    grad = [0] * (n + 1)
    for f, (i, j) in zip(form, sym_index(n)):
        if not f:
            continue
        if i == j:
            two = F.int_embed(2)
            grad[i] = add[grad[i]][mul[mul[two][f]][pt[i]]]
        else:
            grad[i] = add[grad[i]][mul[f][pt[j]]]
            grad[j] = add[grad[j]][mul[f][pt[i]]]
    return tuple(grad)


class PointSet:
    """A finite spanning point set of P^N(F_q): the variety abstraction.

    The Veronese varieties are the principal instances; quadrics, rational
    normal curves, arcs, and arbitrary explicit sets use the same type.
    """

    def __init__(self, label: str, points, ambient_n: int, F: FieldTable, base_points=None):
        pts = tuple(points)
        if not pts:
            raise ValueError("a point set must be nonempty")
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points in point set")
        if len(rref(pts, F)) != ambient_n + 1:
            raise ValueError(f"{label}: points do not span P^{ambient_n}")
        self.label = label
        self.points = pts
        self.n = ambient_n
        self.field = F
        self.index = {p: i for i, p in enumerate(pts)}
        self.base_points = tuple(base_points) if base_points is not None else None
        self._np_points = None

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"PointSet({self.label}, {len(self.points)} points in P^{self.n}(F_{self.field.q}))"

    def points_array(self) -> np.ndarray:
        if self._np_points is None:
            self._np_points = np.array(self.points, dtype=np.uint8)
        return self._np_points

    def bitset(self, points_or_indices) -> int:
        b = 0
        for x in points_or_indices:
            b |= 1 << (x if isinstance(x, int) else self.index[x])
        return b


def veronese_variety(n: int, F: FieldTable) -> PointSet:
    """V_{n,2}(F_q): images of all points of P^n under the quadric Veronese map."""
    base = enumerate_points(n, F)
    pts = [vmap(p, F) for p in base]
    X = PointSet(f"V{n},2(F{F.q})", pts, sym_ambient_dim(n), F, base_points=base)
    X.veronese_n = n
    return X


def rnc_point(d: int, t, F: FieldTable) -> Point:
    """Point of the rational normal curve: parameter t in F_q or None for infinity."""
    if t is None:
        return (0,) * d + (1,)
    return tuple(F.pow(t, k) for k in range(d + 1))


def rational_normal_curve(d: int, F: FieldTable) -> PointSet:
    """V_{1,d}(F_q): the q+1 points (1, t, ..., t^d) plus the point at infinity."""
    if F.q < d:
        raise ValueError(f"need q >= {d} for the degree-{d} curve to span P^{d}")
    pts = [rnc_point(d, t, F) for t in F.elements()]
    pts.append(rnc_point(d, None, F))
    return PointSet(f"V1,{d}(F{F.q})", pts, d, F)


def conic(F: FieldTable) -> PointSet:
    """A non-degenerate conic of P^2(F_q) (the d=2 rational normal curve)."""
    X = rational_normal_curve(2, F)
    X.label = f"conic(F{F.q})"
    return X


def explicit_point_set(points, F: FieldTable, label: str = "A") -> PointSet:
    pts = [normalize(p, F) for p in points]
    return PointSet(label, pts, len(pts[0]) - 1, F)


def enumerate_variety(X: PointSet) -> tuple[Point, ...]:
    """The rational points of the variety, in the set's canonical order."""
    return X.points


def variety_span_check(X: PointSet) -> bool:
    return span(X.points, X.field).dim == X.n


@dataclass(frozen=True)
class RNCPoint:
    """A rational-normal-curve point together with its parameter."""

    d: int
    t: object  # field element encoding, or None for infinity

    def coords(self, F: FieldTable) -> Point:
        return rnc_point(self.d, self.t, F)


def subspace_of_tensors(vectors, F: FieldTable) -> Subspace:
    """Span of the symmetric squares of the given vectors of F_q^{n+1}."""
    return span([tensor_of_vector(v, F) for v in vectors], F)


def tensor_json(coords, n: int, F: FieldTable) -> dict:
    """Wire format for a symmetric tensor point."""
    return {"n": n, "q": F.q, "m": list(coords)}


def variety_of_order(n: int, q: int) -> PointSet:
    return veronese_variety(n, field_of_order(q))

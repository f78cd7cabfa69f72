"""Waring subspaces, witnesses, X-rank, and identifiability.

All predicates run against any spanning PointSet X in P^N(F_q).  The key
facts the implementation leans on (and that the naive reference oracle in
the test suite re-derives independently):

* a minimal spanning subset is projectively independent, so a subspace S
  admits a decomposition of size rank(S) iff S is spanned by its witness;
* if the witness of a Waring subspace has more points than rank(S), basis
  exchange yields a second minimal decomposition, so S is identifiable
  exactly when there is a unique minimal decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .projspace import Point, Subspace, span
from .veronese import PointSet

ENUMERATION_LIMIT = 200_000  # max witness subsets listed exhaustively


@dataclass(frozen=True)
class Witness:
    """The variety points contained in a subspace, canonically sorted."""

    points: tuple[Point, ...]
    indices: tuple[int, ...]

    def __len__(self):
        return len(self.points)

    def bitset(self) -> int:
        b = 0
        for i in self.indices:
            b |= 1 << i
        return b


def witness_of(S: Subspace, X: PointSet) -> Witness:
    """Exactly the points of X lying in S."""
    if S.n != X.n:
        raise ValueError("subspace and point set have different ambient spaces")
    pairs = sorted((p, i) for i, p in enumerate(X.points) if S.contains_point(p))
    return Witness(tuple(p for p, _ in pairs), tuple(i for _, i in pairs))


def is_waring(S: Subspace, X: PointSet) -> bool:
    """True iff S is spanned by the points of X it contains."""
    w = witness_of(S, X)
    if not w.points:
        return False
    return span(w.points, X.field) == S


@dataclass
class RankCertificate:
    """X-rank of a subspace with its minimal decompositions (point indices)."""

    rank: int
    decompositions: tuple[tuple[int, ...], ...]
    truncated: bool = False  # True when only exemplars of >= 2 are listed

    def to_json(self, X: PointSet) -> dict:
        return {
            "rank": self.rank,
            "witnesses": [[list(X.points[i]) for i in T] for T in self.decompositions],
            "truncated": self.truncated,
        }


def _independent_subsets_spanning(w: Witness, S: Subspace, X: PointSet):
    """All rank(S)-subsets of the witness spanning S, or two exemplars."""
    k = S.rank
    F = X.field
    if len(w) == k:
        return (w.indices,), False
    if comb(len(w), k) <= ENUMERATION_LIMIT:
        out = [
            idxs
            for idxs in combinations(w.indices, k)
            if span([X.points[i] for i in idxs], F).rank == k
        ]
        return tuple(out), False
    # too many subsets to list: produce a basis greedily, then exchange one
    # point to exhibit a second decomposition
    basis, sub = [], None
    for i in w.indices:
        if sub is None:
            sub = span([X.points[i]], F)
            basis.append(i)
        else:
            ext = sub.extend(X.points[i])
            if ext is not sub:
                sub = ext
                basis.append(i)
        if len(basis) == k:
            break
    spare = next(i for i in w.indices if i not in basis)
    for drop in basis:
        alt = sorted([i for i in basis if i != drop] + [spare])
        if span([X.points[i] for i in alt], F).rank == k:
            return (tuple(basis), tuple(alt)), True
    raise AssertionError("exchange lemma must produce a second basis")


def x_rank(S: Subspace, X: PointSet) -> RankCertificate:
    """Minimum number of points of X spanning a subspace containing S."""
    w = witness_of(S, X)
    k0 = S.rank
    if w.points and span(w.points, X.field) == S:
        decomps, truncated = _independent_subsets_spanning(w, S, X)
        return RankCertificate(k0, decomps, truncated)
    for k in range(k0 + 1, len(X) + 1):
        found = _search_decompositions(S, X, k)
        if found:
            return RankCertificate(k, tuple(found), False)
    raise AssertionError("point set spans the space, so a decomposition exists")


def _search_decompositions(S: Subspace, X: PointSet, k: int):
    """All k-subsets T of X with span(T) containing S, T independent.

    DFS in index order.  State keeps U = span(chosen) and M = span(chosen
    plus S); the deficiency M.rank - U.rank must not exceed the number of
    slots left, and each chosen point must be independent of the prefix.
    """
    pts = X.points
    npts = len(pts)
    out = []

    def rec(start, chosen, U, M):
        slots = k - len(chosen)
        if slots == 0:
            if M.rank == U.rank:
                out.append(tuple(chosen))
            return
        deficiency = M.rank - (U.rank if U is not None else 0)
        if deficiency > slots or npts - start < slots:
            return
        for i in range(start, npts):
            p = pts[i]
            if U is None:
                U2 = span([p], X.field)
            else:
                U2 = U.extend(p)
                if U2 is U:
                    continue  # dependent on the prefix: never minimal
            M2 = M.extend(p)
            chosen.append(i)
            rec(i + 1, chosen, U2, M2)
            chosen.pop()

    rec(0, [], None, S)
    return out


@dataclass
class IdentifiabilityCertificate:
    """Evidence for or against Waring identifiability of a subspace."""

    rank: int
    minimal_count: int  # exact, or a lower bound when truncated
    truncated: bool
    unique_subspace: Subspace | None = None
    witness: Witness | None = None
    competing: tuple[tuple[int, ...], ...] = field(default_factory=tuple)
    violating_subset: tuple[int, ...] | None = None

    def to_json(self, X: PointSet) -> dict:
        d = {
            "rank": self.rank,
            "minimal_count": self.minimal_count,
            "exact_count": not self.truncated,
        }
        if self.unique_subspace is not None:
            d["subspace"] = self.unique_subspace.to_json()
            d["witnesses"] = [[list(p) for p in self.witness.points]]
        if self.competing:
            d["witnesses"] = [[list(X.points[i]) for i in T] for T in self.competing]
        if self.violating_subset is not None:
            d["violating_subset"] = [list(X.points[i]) for i in self.violating_subset]
        return d


def is_waring_identifiable(S: Subspace, X: PointSet):
    """Whether S lies in a unique minimal Waring subspace with unique witness.

    Equivalent to having exactly one minimal decomposition; the certificate
    reports the unique subspace and witness, or the competing/violating data.
    """
    cert = x_rank(S, X)
    F = X.field
    n_min = len(cert.decompositions)
    if n_min == 1 and not cert.truncated:
        T = cert.decompositions[0]
        U = span([X.points[i] for i in T], F)
        w = witness_of(U, X)
        return True, IdentifiabilityCertificate(
            cert.rank, 1, False, unique_subspace=U, witness=w
        )
    spans = {}
    for T in cert.decompositions:
        spans.setdefault(span([X.points[i] for i in T], F).key(), T)
    if len(spans) > 1:
        two = tuple(list(spans.values())[:2])
        return False, IdentifiabilityCertificate(
            cert.rank, n_min, cert.truncated, competing=two
        )
    # a unique minimal Waring subspace but several spanning subsets: any one
    # of them is a proper subset of the witness that still spans over S
    T = cert.decompositions[0]
    return False, IdentifiabilityCertificate(
        cert.rank, n_min, cert.truncated, violating_subset=T
    )


def is_identifiable_waring(S: Subspace, X: PointSet):
    """Waring and Waring identifiable, together."""
    ok, cert = is_waring_identifiable(S, X)
    return ok and is_waring(S, X), cert


def identifiable_waring_quick(S: Subspace, X: PointSet) -> bool:
    """Fast equivalent of is_identifiable_waring for bulk enumeration:
    the witness has exactly rank(S) points and spans S."""
    w = witness_of(S, X)
    return len(w) == S.rank and span(w.points, X.field) == S


# ----------------------------------------------------------------------
# bulk enumeration of Waring subspaces
# ----------------------------------------------------------------------


class BudgetExceeded(RuntimeError):
    """An enumeration outgrew its configured budget."""


class SpanBudgetExceeded(BudgetExceeded):
    """Carries the levels that were completed before the budget blew."""

    def __init__(self, msg, partial):
        super().__init__(msg)
        self.partial = partial


def _witness_bits_scalar(subs, X: PointSet):
    out = []
    for s in subs:
        bits = 0
        for i, p in enumerate(X.points):
            if s.contains_point(p):
                bits |= 1 << i
        out.append(bits)
    return out


def witness_bitsets(subs, X: PointSet) -> list[int]:
    """Witness of each subspace as an index bitset over X."""
    F = X.field
    if F.e == 1 and len(subs) * len(X) >= 100_000:
        from ._batch import witness_bitsets_prime

        return witness_bitsets_prime(subs, X.points_array(), F.p)
    return _witness_bits_scalar(subs, X)


def waring_span_tables(X: PointSet, max_dim: int, level_limit: int = 700_000) -> dict:
    """dim -> {key: (Subspace, witness_bitset)} for all Waring subspaces of
    dimension <= max_dim, by breadth-first span closure over subsets of X.

    Every Waring subspace of dimension d+1 extends one of dimension d by a
    variety point outside it, so the closure is complete level by level.
    """
    F = X.field

    def with_bits(subs_by_key):
        keys = list(subs_by_key)
        subs = [subs_by_key[k] for k in keys]
        bits = witness_bitsets(subs, X)
        return dict(zip(keys, zip(subs, bits)))

    level = {}
    for p in X.points:
        s = span([p], F)
        level[s.key()] = s
    tables = {0: with_bits(level)}
    for d in range(1, max_dim + 1):
        nxt = {}
        for s, wbits in tables[d - 1].values():
            for i, p in enumerate(X.points):
                if (wbits >> i) & 1:
                    continue
                s2 = s.extend(p)
                k2 = s2.key()
                if k2 not in nxt:
                    nxt[k2] = s2
            if len(nxt) > level_limit:  # abort mid-level, before memory grows
                raise SpanBudgetExceeded(
                    f"over {level_limit} Waring subspaces at dimension {d}",
                    tables,
                )
        tables[d] = with_bits(nxt)
    return tables


def waring_hyperplane_table(X: PointSet) -> dict:
    """{key: (Subspace, witness_bitset)} for the Waring hyperplanes of P^N,
    by scanning dual coordinates instead of growing spans."""
    from .projspace import enumerate_points

    F = X.field
    N = X.n
    table = {}
    if F.e == 1:
        import numpy as np

        from ._batch import projective_rep_chunks

        ptsT = X.points_array().astype(np.float32).T
        shifts = np.left_shift(
            np.ones(len(X), dtype=np.uint64), np.arange(len(X), dtype=np.uint64)
        )
        for block in projective_rep_chunks(N, F.q):
            vals = np.rint(block.astype(np.float32) @ ptsT).astype(np.int64) % F.p
            mask = vals == 0
            counts = mask.sum(axis=1)
            for r in np.flatnonzero(counts >= N):
                bits = int((mask[r] * shifts).sum())
                _add_hyperplane(table, bits, X)
    else:
        for h in enumerate_points(N, F):
            bits = 0
            add, mul = F.add_table, F.mul_table
            for i, p in enumerate(X.points):
                acc = 0
                for a, b in zip(h, p):
                    if a and b:
                        acc = add[acc][mul[a][b]]
                if acc == 0:
                    bits |= 1 << i
            if bits.bit_count() >= N:
                _add_hyperplane(table, bits, X)
    return table


def _add_hyperplane(table, bits, X):
    pts = [X.points[i] for i in _bit_indices(bits)]
    s = span(pts, X.field)
    if s.rank == X.n:
        table[s.key()] = (s, bits)


def _bit_indices(bits: int):
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out

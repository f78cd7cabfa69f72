"""Vectorized enumeration kernels (internal).

Conventions: field elements are small unsigned ints; prime fields use
modular integer/float32 matmuls (exact because all products stay far
below 2**24), non-prime fields go through dense add/mul lookup tables.
Characteristic-2 encodings add by XOR, which the big form scans exploit.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldTable

GEMM_CHUNK = 1 << 18
THREADS = 1  # worker count for the embarrassingly parallel scans


def gf_matmul(F: FieldTable, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """(A @ B) over F_q for uint arrays; A is (m, k), B is (k, r)."""
    if F.e == 1:
        # products stay below 2**24, so a float32 BLAS matmul is exact
        assert (F.p - 1) ** 2 * A.shape[1] < (1 << 24)
        out = np.rint(A.astype(np.float32) @ B.astype(np.float32)).astype(np.int64) % F.p
        return out.astype(np.uint8 if F.q <= 256 else np.uint16)
    add, mul = F.np_add, F.np_mul
    m, k = A.shape
    r = B.shape[1]
    acc = np.zeros((m, r), dtype=add.dtype)
    for i in range(k):
        acc = add[acc, mul[A[:, i]][:, B[i, :]]]
    return acc


def eval_forms_on_points(F: FieldTable, forms: np.ndarray, monvals: np.ndarray) -> np.ndarray:
    """Values of many quadratic forms at many points.

    forms: (m, M) coefficient rows; monvals: (M, npts) monomial values
    X_i X_j per point, same index order.  Returns (m, npts).
    """
    return gf_matmul(F, forms, monvals)


def monomial_values(F: FieldTable, points: np.ndarray, sym_pairs) -> np.ndarray:
    """Matrix of monomial values X_i X_j (rows) at each point (columns)."""
    mul = F.mul_table
    out = np.empty((len(sym_pairs), points.shape[0]), dtype=np.uint8)
    pts = points.tolist()
    for k, (i, j) in enumerate(sym_pairs):
        out[k] = [mul[p[i]][p[j]] for p in pts]
    return out


def projective_rep_chunks(n: int, q: int, chunk: int = GEMM_CHUNK):
    """Normalized coordinate arrays for P^n(F_q), lexicographic, chunked."""
    for lead in range(n, -1, -1):
        tail = n - lead
        total = q**tail
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            block = np.zeros((len(idx), n + 1), dtype=np.uint8)
            block[:, lead] = 1
            for t in range(tail):
                block[:, lead + 1 + t] = (idx // (q ** (tail - 1 - t))) % q
            yield block


def affine_tuple_chunks(k: int, q: int, chunk: int = GEMM_CHUNK):
    """All tuples of F_q^k as uint8 arrays, lexicographic, chunked."""
    total = q**k
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        block = np.empty((len(idx), k), dtype=np.uint8)
        for t in range(k):
            block[:, t] = (idx // (q ** (k - 1 - t))) % q
        yield block


def rank_one_tensors_in_span(F: FieldTable, gens: np.ndarray, n: int, sym_pairs) -> set:
    """Normalized tensors of matrix rank <= 1 in the row space of gens.

    Scans every coefficient tuple over F_q^k (k = number of generators) and
    tests all 2x2 minors of the reconstructed symmetric matrix; this is the
    proof-style route, independent of the witness machinery.
    """
    from .projspace import normalize

    k = gens.shape[0]
    q = F.q
    pos = {ij: a for a, ij in enumerate(sym_pairs)}
    pairs2 = [
        (r1, r2, c1, c2)
        for r1 in range(n + 1)
        for r2 in range(r1 + 1, n + 1)
        for c1 in range(n + 1)
        for c2 in range(c1 + 1, n + 1)
    ]

    def entry(T, i, j):
        return T[:, pos[(min(i, j), max(i, j))]]

    def scan_chunk(alphas):
        T = gf_matmul(F, alphas, gens)
        nonzero = T.any(axis=1)
        if F.e == 1:
            ok = nonzero.copy()
            Ti = T.astype(np.int64)
            for r1, r2, c1, c2 in pairs2:
                m = (
                    entry(Ti, r1, c1) * entry(Ti, r2, c2)
                    - entry(Ti, r1, c2) * entry(Ti, r2, c1)
                ) % F.p
                ok &= m == 0
                if not ok.any():
                    break
        else:
            mul, neg, add = F.np_mul, F.np_neg, F.np_add
            ok = nonzero.copy()
            for r1, r2, c1, c2 in pairs2:
                m = add[
                    mul[entry(T, r1, c1), entry(T, r2, c2)],
                    neg[mul[entry(T, r1, c2), entry(T, r2, c1)]],
                ]
                ok &= m == 0
                if not ok.any():
                    break
        return {normalize(tuple(int(x) for x in row), F) for row in T[ok]}

    found = set()
    if THREADS > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=THREADS) as pool:
            for part in pool.map(scan_chunk, affine_tuple_chunks(k, q)):
                found |= part
    else:
        for alphas in affine_tuple_chunks(k, q):
            found |= scan_chunk(alphas)
    return found


def char2_all_forms_values(F: FieldTable, monvals: np.ndarray) -> np.ndarray:
    """Values of every form of F_q[X]_2 at the given points, char 2 only.

    Returns a (q**M, npts) uint8 array; row index is the base-q digit
    packing of the coefficient tuple with the LAST coefficient varying
    fastest (matching affine_tuple_chunks order).  Addition of canonical
    encodings in characteristic 2 is XOR, so the table doubles instead of
    being recomputed per form.
    """
    assert F.p == 2
    M, npts = monvals.shape
    mul = F.np_mul
    vals = np.zeros((1, npts), dtype=np.uint8)
    for i in range(M - 1, -1, -1):
        contrib = mul[np.arange(F.q, dtype=np.uint8)][:, monvals[i]]  # (q, npts)
        vals = (vals[None, :, :] ^ contrib[:, None, :]).reshape(-1, npts)
    return vals


def zero_counts_all_forms(F: FieldTable, monvals: np.ndarray, chunk_digits: int = 4):
    """Zero counts |Z(f)| for every coefficient tuple f, any small field.

    Streams over the leading digits so memory stays bounded; yields
    (start_index, counts) blocks in lexicographic coefficient order.
    """
    M, npts = monvals.shape
    q = F.q
    if F.p == 2:
        head = min(chunk_digits, M)
        tailvals = char2_all_forms_values(F, monvals[head:])
        hblock = next(affine_tuple_chunks(head, q, chunk=q**head))
        mul = F.np_mul
        hvals = np.zeros((hblock.shape[0], npts), dtype=np.uint8)
        for i in range(head):
            hvals ^= mul[hblock[:, i]][:, monvals[i]]
        for r in range(hblock.shape[0]):
            vals = tailvals ^ hvals[r][None, :]
            counts = (vals == 0).sum(axis=1).astype(np.uint16)
            yield (r * tailvals.shape[0], counts)
        return
    # odd prime(-power): plain chunked evaluation
    start = 0
    for block in affine_tuple_chunks(M, q):
        vals = gf_matmul(F, block, monvals)
        counts = (vals == 0).sum(axis=1).astype(np.uint16)
        yield (start, counts)
        start += block.shape[0]


def decode_tuple(index: int, k: int, q: int) -> tuple:
    out = []
    for t in range(k - 1, -1, -1):
        out.append((index // (q**t)) % q)
    return tuple(out)


def witness_bitsets_prime(subs, points: np.ndarray, p: int) -> list[int]:
    """Witness bitsets for many RREF subspaces over a prime field.

    Groups by pivot pattern so the annihilator bases assemble by slicing,
    then one float32 matmul per group tests all points at once.
    """
    npts, dim = points.shape
    ptsT = points.astype(np.float32).T
    shifts = np.left_shift(np.ones(npts, dtype=np.uint64), np.arange(npts, dtype=np.uint64))
    groups: dict[tuple, list[int]] = {}
    for t, s in enumerate(subs):
        groups.setdefault(s.pivots, []).append(t)
    out = [0] * len(subs)
    for pivots, members in groups.items():
        r = len(pivots)
        free = [c for c in range(dim) if c not in set(pivots)]
        if not free:  # whole space
            full = int(shifts.sum())
            for t in members:
                out[t] = full
            continue
        R = np.array([subs[t].rows for t in members], dtype=np.int16)  # (G, r, dim)
        G = len(members)
        k = len(free)
        D = np.zeros((G, k, dim), dtype=np.int16)
        for a, f in enumerate(free):
            D[:, a, f] = 1
            D[:, a, list(pivots)] = (-R[:, :, f]) % p
        z = np.rint(D.reshape(G * k, dim).astype(np.float32) @ ptsT).astype(np.int64) % p
        mask = (z.reshape(G, k, npts) == 0).all(axis=1)
        bits = (mask * shifts).sum(axis=1)
        for t, b in zip(members, bits):
            out[t] = int(b)
    return out


# ----------------------------------------------------------------------
# exact-witness subset search (prime fields)
# ----------------------------------------------------------------------


def _point_dual(pt: np.ndarray, p: int) -> np.ndarray:
    """Nullspace basis of a single normalized point (pivot coefficient 1)."""
    d = pt.shape[0]
    c0 = int(np.flatnonzero(pt)[0])
    rows = []
    for c in range(d):
        if c == c0:
            continue
        w = np.zeros(d, dtype=np.int16)
        w[c] = 1
        w[c0] = (-int(pt[c])) % p
        rows.append(w)
    return np.array(rows, dtype=np.int16)


def exact_witness_subsets(points: np.ndarray, p: int, size: int, slab: int = 6_000):
    """All index subsets T, |T| = size, of the given point list such that the
    span of T contains no listed point outside T (so T is independent and is
    precisely the witness of its span).

    Ground field must be prime of characteristic p.  Returns bitsets.
    DFS over sorted index prefixes, each level expanded as a numpy batch;
    the invariant "span meets the list exactly in the chosen prefix" is
    hereditary, so pruning is exact.
    """
    npts, d = points.shape
    assert npts <= 63
    ptsT = points.T.astype(np.float32)
    results: list[int] = []

    # stack entries: (level, duals (S, d-level, d), bits (S,), last (S,))
    init_duals = np.stack([_point_dual(points[i], p) for i in range(npts)])
    init_bits = np.array([1 << i for i in range(npts)], dtype=np.uint64)
    init_last = np.arange(npts, dtype=np.int16)
    stack = [(1, init_duals, init_bits, init_last)]

    while stack:
        level, duals, bits, last = stack.pop()
        if duals.shape[0] > slab:
            for s in range(0, duals.shape[0], slab):
                stack.append((level, duals[s : s + slab], bits[s : s + slab], last[s : s + slab]))
            continue
        counts = (npts - 1 - last).astype(np.int64)
        keep = counts > 0
        if not keep.all():
            duals, bits, last, counts = duals[keep], bits[keep], last[keep], counts[keep]
        if duals.shape[0] == 0:
            continue
        S = duals.shape[0]
        total = int(counts.sum())
        sidx = np.repeat(np.arange(S), counts)
        offs = np.concatenate([[0], np.cumsum(counts)[:-1]])
        cand_j = (np.arange(total) - np.repeat(offs, counts) + np.repeat(last + 1, counts)).astype(
            np.int64
        )

        D = duals[sidx]  # (C, K, d)
        P = points[cand_j].astype(np.int16)  # (C, d)
        w = np.einsum("ckd,cd->ck", D, P) % p  # nonzero by the invariant
        piv = (w != 0).argmax(axis=1)
        ar = np.arange(total)
        wp = w[ar, piv]
        inv = np.array([0] + [pow(v, p - 2, p) for v in range(1, p)], dtype=np.int16)
        factor = (w * inv[wp][:, None]) % p  # (C, K)
        pivrow = D[ar, piv]  # (C, d)
        nd = (D - factor[:, :, None] * pivrow[:, None, :]) % p  # (C, K, d)
        K = D.shape[1]
        rowsel = np.argsort(np.arange(K)[None, :] == piv[:, None], axis=1, kind="stable")[
            :, : K - 1
        ]
        nd = np.take_along_axis(nd, rowsel[:, :, None], axis=1)  # (C, K-1, d)

        z = nd.reshape(total * (K - 1), d).astype(np.float32) @ ptsT  # exact: entries < p
        z = np.rint(z).astype(np.int64) % p
        in_span = (z.reshape(total, K - 1, npts) == 0).all(axis=1)
        good = in_span.sum(axis=1) == level + 1

        if not good.any():
            continue
        nbits = bits[sidx[good]] | (np.uint64(1) << cand_j[good].astype(np.uint64))
        if level + 1 == size:
            results.extend(int(b) for b in nbits)
        else:
            stack.append((level + 1, nd[good].astype(np.int16), nbits, cand_j[good].astype(np.int16)))
    return results

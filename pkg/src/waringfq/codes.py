"""Functional codes of quadrics in P^3(F_q): evaluation of quadratic forms
at the rational points of a fixed quadric.

The weight of the codeword of a form f is n - |X cap Z(f)|, so weight
distributions reduce to quadric-quadric intersection sizes; the geometric
scan over all forms and the direct row-space enumeration must agree and
both are implemented.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _batch
from .gf import FieldTable, field_of_order
from .pencils import PAIRS3, quadric_points, standard_form
from .projspace import rref
from .waring import BudgetExceeded


@dataclass
class FunctionalCode:
    label: str
    q: int
    points: tuple
    generator: tuple  # 10 rows of length n: monomial evaluations
    k: int  # code dimension

    @property
    def n(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "points": [list(p) for p in self.points],
            "generator": [list(r) for r in self.generator],
        }


def build_code(form, F: FieldTable, label: str = "C2") -> FunctionalCode:
    """Generator matrix of the degree-2 evaluation code on the quadric's
    points (rows indexed by the monomials X_i X_j, i <= j)."""
    if not any(form):
        raise ValueError("zero form")
    pts = tuple(quadric_points(form, F))
    mul = F.mul_table
    gen = tuple(
        tuple(mul[p[i]][p[j]] for p in pts) for (i, j) in PAIRS3
    )
    k = len(rref(gen, F))
    return FunctionalCode(label, F.q, pts, gen, k)


def build_code_for(kind: str, q: int) -> FunctionalCode:
    F = field_of_order(q)
    return build_code(standard_form(kind, F), F, label=f"C2({kind},q={q})")


def weight_distribution(code: FunctionalCode, method: str = "auto") -> dict:
    """Exact weight multiset {w: count} over all q^k codewords.

    "geometric" scans every coefficient tuple and counts zero positions on
    the quadric; "codewords" enumerates the row space of the generator
    matrix.  "auto" runs both for q <= 3 and checks they agree.
    """
    q = code.q
    if method == "auto":
        if q <= 3:
            a = weight_distribution(code, "geometric")
            b = weight_distribution(code, "codewords")
            if a != b:
                raise AssertionError("geometric and codeword scans disagree")
            return a
        if q <= 4:
            return weight_distribution(code, "codewords")
        return weight_distribution(code, "geometric")
    F = field_of_order(q)
    n = code.n
    if method == "geometric":
        monvals = np.array(code.generator, dtype=np.uint8)
        dist: dict[int, int] = {}
        for _, counts in _batch.zero_counts_all_forms(F, monvals):
            ws, cs = np.unique(n - counts.astype(np.int64), return_counts=True)
            for w, c in zip(ws, cs):
                dist[int(w)] = dist.get(int(w), 0) + int(c)
        # each codeword is hit by exactly q^(10-k) forms
        mult = q ** (10 - code.k)
        out = {}
        for w, c in dist.items():
            if c % mult:
                raise AssertionError("form count not divisible by kernel size")
            out[w] = c // mult
        return out
    if method == "codewords":
        basis = rref(code.generator, F)
        rows = np.array(basis, dtype=np.uint8)
        k = len(basis)
        if q**k > 20_000_000:
            raise BudgetExceeded(f"codeword scan of size {q}^{k} over budget")
        dist = {}
        if F.p == 2:
            vals = _batch.char2_all_forms_values(F, rows)
            counts = (vals == 0).sum(axis=1)
            ws, cs = np.unique(n - counts.astype(np.int64), return_counts=True)
            dist = {int(w): int(c) for w, c in zip(ws, cs)}
        else:
            for block in _batch.affine_tuple_chunks(k, q):
                vals = _batch.gf_matmul(F, block, rows)
                counts = (vals == 0).sum(axis=1)
                ws, cs = np.unique(n - counts.astype(np.int64), return_counts=True)
                for w, c in zip(ws, cs):
                    dist[int(w)] = dist.get(int(w), 0) + int(c)
        return dist
    raise ValueError(f"unknown method {method}")


def weights_json(code: FunctionalCode, dist: dict) -> dict:
    return {
        "label": code.label,
        "n": code.n,
        "k": code.k,
        "weights": {str(w): dist[w] for w in sorted(dist)},
    }

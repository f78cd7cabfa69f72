"""Exact arithmetic in small finite fields F_q, q = p^e.

Elements are canonical integers in [0, q): the little-endian base-p digit
packing of the chosen polynomial representative.  0 is the additive and 1
the multiplicative identity, so arrays of field elements are plain integer
arrays and serialize without ambiguity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ORDER = 1 << 16

# Fixed moduli for the extension fields shipped with the package (monic,
# little-endian coefficient lists).  Re-verified irreducible at load so a
# bad constant cannot silently change element encodings.
MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}


class FieldConstructionError(ValueError):
    """Raised when a field cannot be built from the given data."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mulmod(a, b, modulus, p):
    """(a*b) mod modulus over F_p, little-endian coefficient lists."""
    e = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce by the monic modulus
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(e):
                prod[k - e + j] = (prod[k - e + j] - c * modulus[j]) % p
    return _poly_trim(prod)


def find_reducing_factor(modulus, p):
    """A monic factor of degree in [1, deg/2] if one exists, else None."""
    e = len(modulus) - 1
    for d in range(1, e // 2 + 1):
        for idx in range(p**d):
            cand = []
            k = idx
            for _ in range(d):
                cand.append(k % p)
                k //= p
            cand.append(1)  # monic degree-d candidate
            if _poly_divides(cand, modulus, p):
                return tuple(cand)
    return None


def _poly_divides(div, num, p):
    rem = list(num)
    dd = len(div) - 1
    while len(_poly_trim(rem)) - 1 >= dd:
        rem = _poly_trim(rem)
        k = len(rem) - 1
        c = rem[k]
        for j in range(dd + 1):
            rem[k - dd + j] = (rem[k - dd + j] - c * div[j]) % p
    return not _poly_trim(rem)


@dataclass(frozen=True)
class FieldSpec:
    """Characteristic, extension degree, and modulus defining F_{p^e}."""

    p: int
    e: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e


class FieldTable:
    """Arithmetic tables for F_q with O(1) add/mul/inv/pow/frobenius.

    Immutable after construction; safe to share across workers.  For
    q <= 256 dense numpy add/mul tables are kept for vectorized kernels.
    """

    def __init__(self, spec: FieldSpec):
        p, e, modulus = spec.p, spec.e, spec.modulus
        if not _is_prime(p):
            raise FieldConstructionError(f"characteristic {p} is not prime")
        if e < 1:
            raise FieldConstructionError(f"extension degree {e} must be >= 1")
        q = p**e
        if q > MAX_ORDER:
            raise FieldConstructionError(f"order {q} exceeds supported maximum {MAX_ORDER}")
        if len(modulus) != e + 1:
            raise FieldConstructionError(
                f"modulus degree {len(modulus) - 1} does not match extension degree {e}"
            )
        if modulus[-1] != 1:
            raise FieldConstructionError("modulus is not monic")
        if any(not (0 <= c < p) for c in modulus):
            raise FieldConstructionError("modulus coefficients out of range")
        factor = find_reducing_factor(modulus, p)
        if factor is not None:
            raise FieldConstructionError(
                f"modulus {list(modulus)} is reducible over F_{p}: factor {list(factor)}"
            )
        self.spec = spec
        self.p = p
        self.e = e
        self.q = q
        self.modulus = modulus

        if e == 1:
            add = [[(a + b) % p for b in range(p)] for a in range(p)]
            mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            digits = [self._digits(v) for v in range(q)]
            add = [
                [self._value([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)]
                for a in range(q)
            ]
            mul = [[0] * q for _ in range(q)]
            for a in range(q):
                row = mul[a]
                da = digits[a]
                for b in range(a, q):
                    v = self._value(_poly_mulmod(da, digits[b], modulus, p))
                    row[b] = v
                    mul[b][a] = v
        self.add_table = add
        self.mul_table = mul
        self.neg_table = [add[a].index(0) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = mul[a].index(1)
        self.inv_table = inv

        # smallest generator of the (cyclic) multiplicative group
        self.generator = next(a for a in range(1, q) if self._order(a) == q - 1)
        exp = [1] * (q - 1)
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = mul[x][self.generator]
        self.exp_table = exp
        self.log_table = log

        sqrt = [None] * q
        for a in range(q):
            s = mul[a][a]
            if sqrt[s] is None or a < sqrt[s]:
                sqrt[s] = a
        self.sqrt_table = sqrt
        self._qm1_factors = prime_factors(q - 1) if q > 2 else []

        dt = np.uint8 if q <= 256 else np.uint16
        self.np_add = np.array(add, dtype=dt)
        self.np_mul = np.array(mul, dtype=dt)
        self.np_neg = np.array(self.neg_table, dtype=dt)
        self.np_inv = np.array(inv, dtype=dt)

    def _digits(self, v: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(v % self.p)
            v //= self.p
        return out

    def _value(self, digs) -> int:
        v = 0
        for d in reversed(digs):
            v = v * self.p + d
        return v

    def _order(self, a: int) -> int:
        o, x = 1, a
        while x != 1:
            x = self.mul_table[x][a]
            o += 1
        return o

    # scalar operations -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("negative power of 0")
            return 0
        k %= self.q - 1
        return self.exp_table[(self.log_table[a] * k) % (self.q - 1)]

    def frobenius(self, a: int, times: int = 1) -> int:
        """a^(p^times)."""
        if self.e == 1:
            return a
        for _ in range(times % self.e):
            a = self.pow(a, self.p)
        return a

    def sqrt(self, a: int):
        """The square root of smaller canonical encoding, or None."""
        return self.sqrt_table[a]

    def is_primitive(self, a: int) -> bool:
        """True iff a generates the multiplicative group."""
        if a == 0:
            raise ValueError("0 is not in the multiplicative group")
        if self.q == 2:
            return True
        return all(self.pow(a, (self.q - 1) // r) != 1 for r in self._qm1_factors)

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def int_embed(self, k: int) -> int:
        """Image of the integer k under Z -> F_q (prime subfield)."""
        return k % self.p

    def __repr__(self):
        return f"GF({self.q})"


def build_field(p: int, e: int, modulus=None) -> FieldTable:
    """Field table for F_{p^e}; modulus defaults to the shipped table."""
    if modulus is None:
        if e == 1:
            modulus = (0, 1)
        else:
            try:
                modulus = MODULI[(p, e)]
            except KeyError:
                raise FieldConstructionError(
                    f"no shipped modulus for GF({p}^{e}); pass one explicitly"
                ) from None
    return FieldTable(FieldSpec(p, e, tuple(modulus)))


@lru_cache(maxsize=None)
def field_of_order(q: int) -> FieldTable:
    """Cached field table for the (unique) field with q elements."""
    fs = prime_factors(q)
    if len(fs) != 1:
        raise FieldConstructionError(f"{q} is not a prime power")
    p = fs[0]
    e = 0
    m = q
    while m > 1:
        m //= p
        e += 1
    return build_field(p, e)

"""Exact arithmetic in finite fields GF(p^d).

Elements are small non-negative integers.  For d > 1 the integer encodes the
coefficient vector (base p) of a polynomial in the field generator ``w``
modulo a fixed monic irreducible polynomial.  All operations accept numpy
integer arrays and broadcast.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

__all__ = ["GF", "is_prime"]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _poly_mulmod(a, b, modulus, p):
    """Multiply coefficient lists ``a*b`` modulo a monic ``modulus`` over F_p."""
    d = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for j in range(d + 1):
                prod[k - d + j] = (prod[k - d + j] - c * modulus[j]) % p
    return (prod + [0] * d)[:d]


def _is_irreducible(modulus, p):
    # brute force: no monic factor of degree <= d/2
    d = len(modulus) - 1
    for deg in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            factor = list(tail) + [1]
            # polynomial long division
            rem = list(modulus)
            for k in range(len(rem) - 1, deg - 1, -1):
                c = rem[k]
                if c:
                    for j in range(deg + 1):
                        rem[k - deg + j] = (rem[k - deg + j] - c * factor[j]) % p
            if not any(rem[:deg]):
                return False
    return True


def _conway_like(p, d):
    """Lexicographically first monic irreducible polynomial of degree d."""
    for tail in itertools.product(range(p), repeat=d):
        modulus = list(tail) + [1]
        if modulus[0] == 0:
            continue
        if _is_irreducible(modulus, p):
            return tuple(modulus)
    raise ValueError(f"no irreducible polynomial of degree {d} over F_{p}")


class GF:
    """The finite field with ``p**d`` elements.

    Instances are interned: ``GF(5) is GF(5)``.
    """

    _cache: dict = {}

    def __new__(cls, p: int, d: int = 1):
        key = (int(p), int(d))
        if key in cls._cache:
            return cls._cache[key]
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if d < 1:
            raise ValueError(f"extension degree must be >= 1, got {d}")
        self = super().__new__(cls)
        self.p, self.d = key
        self.q = p**d
        self._build()
        cls._cache[key] = self
        return self

    def _build(self):
        p, d, q = self.p, self.d, self.q
        if d == 1:
            self.modulus = (0, 1)
            self._inv = np.zeros(p, dtype=np.int64)
            for a in range(1, p):
                self._inv[a] = pow(a, p - 2, p)
            self._frob = np.arange(p, dtype=np.int64)
            return
        self.modulus = _conway_like(p, d)
        digits = [[(a // p**i) % p for i in range(d)] for a in range(q)]
        weights = np.array([p**i for i in range(d)], dtype=np.int64)
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = sum(((digits[a][i] + digits[b][i]) % p) * p**i for i in range(d))
                prod = _poly_mulmod(digits[a], digits[b], list(self.modulus), p)
                mul[a, b] = int(np.dot(prod, weights))
        self._add_t, self._mul_t = add, mul
        self._neg_t = np.array(
            [sum(((-digits[a][i]) % p) * p**i for i in range(d)) for a in range(q)], dtype=np.int64
        )
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self._inv = inv
        frob = np.zeros(q, dtype=np.int64)
        for a in range(q):
            x = 1
            for _ in range(p):
                x = mul[x, a]
            frob[a] = x
        self._frob = frob
        self._digits = np.array(digits, dtype=np.int64)

    # -- presentation -----------------------------------------------------

    def __repr__(self):
        return f"GF({self.p})" if self.d == 1 else f"GF({self.p}^{self.d})"

    def __reduce__(self):
        return (GF, (self.p, self.d))

    @property
    def is_prime_field(self) -> bool:
        return self.d == 1

    def elements(self):
        return range(self.q)

    def format(self, a: int) -> str:
        """Render an element; extension elements as polynomials in ``w``."""
        a = int(a)
        if self.d == 1:
            return str(a)
        terms = []
        for i in reversed(range(self.d)):
            c = (a // self.p**i) % self.p
            if not c:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under Z -> GF(q)."""
        return int(n) % self.p

    @property
    def gen(self) -> int:
        """The field generator ``w`` of an extension field."""
        if self.d == 1:
            raise ValueError("prime fields have no named generator")
        return self.p

    # -- vectorised arithmetic --------------------------------------------

    def add(self, a, b):
        if self.d == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        return self._add_t[a, b]

    def neg(self, a):
        if self.d == 1:
            return (-np.asarray(a)) % self.p
        return self._neg_t[a]

    def sub(self, a, b):
        if self.d == 1:
            return (np.asarray(a) - np.asarray(b)) % self.p
        return self._add_t[a, self._neg_t[b]]

    def mul(self, a, b):
        if self.d == 1:
            return (np.asarray(a) * np.asarray(b)) % self.p
        return self._mul_t[a, b]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def frobenius(self, a, e: int = 1):
        """Apply ``x -> x^(p^e)`` elementwise."""
        out = np.asarray(a)
        for _ in range(e % self.d if self.d > 1 else 0):
            out = self._frob[out]
        return out

    def frobenius_inverse(self, a, e: int = 1):
        if self.d == 1:
            return np.asarray(a)
        return self.frobenius(a, (self.d - e % self.d) % self.d)

    def power(self, a: int, n: int) -> int:
        result, base = 1, int(a)
        while n:
            if n & 1:
                result = int(self.mul(result, base))
            base = int(self.mul(base, base))
            n >>= 1
        return result

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.d == 1:
            return (A @ B) % self.p
        p, d = self.p, self.d
        Ad = [(A // p**i) % p for i in range(d)]
        Bd = [(B // p**i) % p for i in range(d)]
        coeffs = [None] * (2 * d - 1)
        for i in range(d):
            for j in range(d):
                term = Ad[i] @ Bd[j]
                coeffs[i + j] = term if coeffs[i + j] is None else coeffs[i + j] + term
        for k in range(2 * d - 2, d - 1, -1):
            c = coeffs[k] % p
            for j in range(d):
                coeffs[k - d + j] = coeffs[k - d + j] - c * self.modulus[j]
        out = np.zeros_like(coeffs[0])
        for i in range(d):
            out = out + (coeffs[i] % p) * p**i
        return out

    def dot(self, a, b):
        return self.matmul(np.asarray(a)[None, :], np.asarray(b)[:, None])[0, 0]

    def random(self, rng, size=None):
        return rng.integers(0, self.q, size=size)

    def extension(self, k: int = 2) -> "GF":
        """The degree-``k`` extension of this field (as an abstract field)."""
        return GF(self.p, self.d * k)

    def embed(self, a, target: "GF"):
        """Embed elements of this field into a larger field of the same characteristic."""
        if target.p != self.p or target.d % self.d:
            raise ValueError(f"{self!r} does not embed in {target!r}")
        a = np.asarray(a)
        if self.d == 1:
            return a
        return _embedding_table(self, target)[a]


@lru_cache(maxsize=None)
def _embedding_table(small: GF, big: GF) -> np.ndarray:
    # find a root of small.modulus in big, map w -> root
    root = None
    for r in range(big.q):
        acc = 0
        for c in reversed(small.modulus):
            acc = int(big.add(big.mul(acc, r), c))
        if acc == 0:
            root = r
            break
    table = np.zeros(small.q, dtype=np.int64)
    for a in range(small.q):
        acc, power = 0, 1
        for i in range(small.d):
            c = (a // small.p**i) % small.p
            acc = int(big.add(acc, big.mul(c, power)))
            power = int(big.mul(power, root))
        table[a] = acc
    return table

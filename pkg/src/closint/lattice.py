"""Exhaustive enumeration of submodule lattices of small modules.

Submodules are generated upward from the bottom: the covers of ``L`` inside
``top`` are ``L + k x`` for the projective points ``x`` of the socle of
``top / L``.  Output order is deterministic: by dimension, then RREF bytes.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

from . import linalg as la
from .algebra import FiniteModule, Submodule, socle_of_quotient
from .errors import ResourceError, UsageError

__all__ = ["Lattice", "enumerate_submodules", "projective_points", "lattice_cap"]

MASK_LIMIT = 200_000


def lattice_cap() -> int:
    return int(os.environ.get("CLOSINT_LATTICE_CAP", "20000"))


def projective_points(B: np.ndarray, F) -> np.ndarray:
    """One representative per line in the row space of ``B`` (rows independent)."""
    r, n = B.shape
    q = F.q
    out = []
    for lead in range(r):
        free = r - lead - 1
        for tail in itertools.product(range(q), repeat=free):
            c = np.zeros(r, dtype=np.int64)
            c[lead] = 1
            c[lead + 1:] = tail
            out.append(c)
    if not out:
        return la.zeros(0, n)
    return F.matmul(np.array(out), B)


class Lattice:
    """Sorted collection of submodules of one module with fast containment."""

    def __init__(self, module: FiniteModule, elements):
        self.module = module
        self.elements = sorted(elements, key=lambda S: (S.dim, S.key))
        self.index = {S.key: i for i, S in enumerate(self.elements)}
        self._subsets: dict = {}
        self._supersets: dict = {}
        F = module.field
        self.use_masks = F.q ** module.dim <= MASK_LIMIT
        if self.use_masks:
            self._weights = np.array([F.q ** j for j in range(module.dim)], dtype=np.int64)
            for S in self.elements:
                S._mask = self._mask_of(S)

    def _mask_of(self, S: Submodule) -> int:
        F = self.module.field
        k = S.dim
        size = F.q ** self.module.dim
        if k == 0:
            codes = np.array([0])
        else:
            C = np.indices((F.q,) * k).reshape(k, -1).T
            codes = F.matmul(C, S.basis) @ self._weights
        bits = np.zeros(size, dtype=np.uint8)
        bits[codes] = 1
        return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __contains__(self, S):
        return S.key in self.index

    def canonical(self, S: Submodule) -> Submodule:
        """The lattice's own copy of ``S`` (carrying its containment mask)."""
        i = self.index.get(S.key)
        if i is None:
            raise UsageError("submodule is not a member of this lattice")
        return self.elements[i]

    def subsets(self, N: Submodule) -> list[Submodule]:
        hit = self._subsets.get(N.key)
        if hit is None:
            N = self.canonical(N)
            hit = [L for L in self.elements if L.dim <= N.dim and L <= N]
            self._subsets[N.key] = hit
        return hit

    def supersets(self, N: Submodule) -> list[Submodule]:
        hit = self._supersets.get(N.key)
        if hit is None:
            N = self.canonical(N)
            hit = [L for L in self.elements if L.dim >= N.dim and N <= L]
            self._supersets[N.key] = hit
        return hit

    def interval(self, lo: Submodule, hi: Submodule) -> list[Submodule]:
        lo = self.canonical(lo)
        return [S for S in self.subsets(hi) if lo <= S]


def enumerate_submodules(M: FiniteModule, bottom: Submodule | None = None,
                         top: Submodule | None = None, cap: int | None = None) -> Lattice:
    """All submodules ``S`` of ``M`` with ``bottom <= S <= top``."""
    cap = lattice_cap() if cap is None else cap
    F = M.field
    bottom = M.zero() if bottom is None else bottom
    top = M.full() if top is None else top
    if not (bottom <= top):
        raise UsageError("bottom is not contained in top")
    seen = {bottom.key: bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for L in frontier:
            S = socle_of_quotient(L, top)
            if S.dim == L.dim:
                continue
            R = la.reduce_mod(S.basis, L.basis, L.pivots, F) if L.dim else S.basis
            R = la.span(R[np.any(R, axis=1)], F, M.dim)
            for x in projective_points(R, F):
                new = Submodule(M, np.vstack([L.basis, x[None, :]]))
                if new.key not in seen:
                    seen[new.key] = new
                    nxt.append(new)
                    if len(seen) > cap:
                        raise ResourceError(f"submodule lattice exceeds the cap of {cap}")
        frontier = nxt
    return Lattice(M, seen.values())

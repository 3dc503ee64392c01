"""Reductions, cores, expansions, hulls, co-generation and spreads.

Every search has an exhaustive mode (``enumerate``), which walks the full
submodule lattice and serves as ground truth, and a cheaper mode:

* ``fast`` for reductions walks down from ``N`` through maximal submodules
  that are still reductions.  Reductions are closed upward inside ``N``, so
  this reaches all of them without touching the rest of the lattice.
* ``fast`` for expansions walks up from ``A`` through covers that are still
  expansions (expansions are closed downward inside ``B``).
* ``via-duality`` computes a core as the annihilator of a hull in the dual
  module and vice versa.
* ``cross-check`` runs ``enumerate`` and ``via-duality`` and raises
  :class:`CrossCheckError` when they differ.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import FiniteModule, Submodule, socle_of_quotient
from .closures import ClosureOperation
from .duality import InteriorOperation, _ann_in, dual_submodule, smile_closure, smile_interior
from .errors import CapabilityError, CrossCheckError, UsageError
from .lattice import enumerate_submodules, projective_points

__all__ = [
    "ReductionCertificate",
    "ExpansionCertificate",
    "SpreadResult",
    "is_reduction",
    "reductions",
    "minimal_reductions",
    "cl_core",
    "is_expansion",
    "expansions",
    "maximal_expansions",
    "i_hull",
    "maximal_submodules",
    "covers",
    "cogenerated_kernel",
    "is_cogenerating",
    "cogenerators",
    "minimal_cogenerators",
    "spread",
    "cospread",
    "extends_generators",
    "reduction_expansion_bijection",
]

MODES = ("enumerate", "fast", "descent", "via-duality", "cross-check")


@dataclass
class ReductionCertificate:
    L: Submodule
    N: Submodule
    closure_of_L: Submodule
    holds: bool
    minimal: bool | None = None
    strategy: str | None = None

    def replay(self, cl: ClosureOperation) -> bool:
        return (self.N <= cl.close(self.L)) == self.holds


@dataclass
class ExpansionCertificate:
    A: Submodule
    C: Submodule
    interior_of_C: Submodule
    holds: bool
    maximal: bool | None = None
    strategy: str | None = None

    def replay(self, op: InteriorOperation) -> bool:
        return (op.interior(self.C) <= self.A) == self.holds


@dataclass
class SpreadResult:
    """Common generator (or cogenerator) count, or evidence that there is none."""

    value: int | None
    counts: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    @property
    def exists(self) -> bool:
        return self.value is not None

    def __str__(self):
        if self.exists:
            return str(self.value)
        return "does not exist (counts " + ", ".join(map(str, self.counts)) + ")"


def _check_mode(mode, allowed):
    if mode not in allowed:
        raise UsageError(f"mode must be one of {', '.join(allowed)}, got {mode!r}")


# --------------------------------------------------------------------------
# lattice steps


def maximal_submodules(L: Submodule) -> list[Submodule]:
    """Submodules ``H`` with ``mL <= H < L`` of codimension one, in deterministic order."""
    F = L.field
    mL = L.times_maximal()
    G = L.generators()
    mu = G.shape[0]
    out = []
    for c in projective_points(la.identity(mu), F):
        K = la.nullspace(c[None, :], F, ncols=mu)
        rows = F.matmul(K, G) if K.shape[0] else la.zeros(0, L.module.dim)
        out.append(Submodule(L.module, np.vstack([mL.basis, rows])))
    return out


def covers(A: Submodule, B: Submodule) -> list[Submodule]:
    """Submodules ``C`` with ``A < C <= B`` and ``dim C/A = 1``."""
    F = A.field
    S = socle_of_quotient(A, B)
    if S.dim == A.dim:
        return []
    R = la.reduce_mod(S.basis, A.basis, A.pivots, F) if A.dim else S.basis
    R = la.span(R[np.any(R, axis=1)], F, A.module.dim)
    return [Submodule(A.module, np.vstack([A.basis, x[None, :]])) for x in projective_points(R, F)]


def _minimal(elements):
    elements = sorted(elements, key=lambda S: (S.dim, S.key))
    out = []
    for S in elements:
        if not any(T <= S for T in out):
            out.append(S)
    return out


def _maximal(elements):
    elements = sorted(elements, key=lambda S: (-S.dim, S.key))
    out = []
    for S in elements:
        if not any(S <= T for T in out):
            out.append(S)
    return sorted(out, key=lambda S: (S.dim, S.key))


def _intersection(items, M: FiniteModule) -> Submodule:
    out = M.full()
    for S in items:
        out = out & S
    return out


def _sum(items, M: FiniteModule) -> Submodule:
    rows = [la.zeros(0, M.dim)] + [S.basis for S in items]
    return Submodule(M, np.vstack(rows))


# --------------------------------------------------------------------------
# reductions and cores


def is_reduction(L: Submodule, N: Submodule, cl: ClosureOperation):
    """``N <= L^cl``; returns ``(flag, certificate)``."""
    if not (L <= N):
        raise UsageError("a reduction must be contained in the submodule it reduces")
    c = cl.close(L)
    ok = N <= c
    return ok, ReductionCertificate(L, N, c, ok)


def _below(N: Submodule, cap, lattice):
    if lattice is not None:
        return lattice.subsets(N)
    return enumerate_submodules(N.module, top=N, cap=cap)


def _between(A: Submodule, B: Submodule, cap, lattice):
    if lattice is not None:
        return lattice.interval(A, B)
    return enumerate_submodules(A.module, bottom=A, top=B, cap=cap)


def reductions(N: Submodule, cl: ClosureOperation, mode: str = "enumerate", cap=None,
               lattice=None) -> list[Submodule]:
    """All ``L <= N`` with ``N <= L^cl``.

    ``lattice`` is an optional precomputed submodule lattice of the ambient
    module, used by ``enumerate`` instead of a fresh enumeration.
    """
    _check_mode(mode, ("enumerate", "fast"))
    if mode == "enumerate":
        return [L for L in _below(N, cap, lattice) if N <= cl.close(L)]
    seen = {N.key: N}
    frontier = [N]
    while frontier:
        nxt = []
        for L in frontier:
            for H in maximal_submodules(L):
                if H.key not in seen and N <= cl.close(H):
                    seen[H.key] = H
                    nxt.append(H)
        frontier = nxt
    return sorted(seen.values(), key=lambda S: (S.dim, S.key))


def _descend(L: Submodule, N: Submodule, cl) -> Submodule:
    while True:
        for H in maximal_submodules(L):
            if N <= cl.close(H):
                L = H
                break
        else:
            return L


def minimal_reductions(N: Submodule, cl: ClosureOperation, mode: str = "enumerate", cap=None,
                       lattice=None) -> list[Submodule]:
    """Minimal ``cl``-reductions of ``N``.

    ``descent`` strips one generator at a time, starting from every maximal
    submodule of ``N`` that is a reduction; each output has no reducing
    maximal submodule, which certifies minimality for any closure.
    """
    _check_mode(mode, ("enumerate", "fast", "descent"))
    if mode == "descent":
        starts = [H for H in maximal_submodules(N) if N <= cl.close(H)] if N.dim else []
        found = {}
        for H in starts or [N]:
            K = _descend(H, N, cl)
            found[K.key] = K
        return sorted(found.values(), key=lambda S: (S.dim, S.key))
    return _minimal(reductions(N, cl, mode=mode, cap=cap, lattice=lattice))


def cl_core(N: Submodule, cl: ClosureOperation, mode: str = "enumerate", cap=None,
            lattice=None, dual_lattice=None) -> Submodule:
    """Intersection of all ``cl``-reductions of ``N`` in its ambient module.

    ``via-duality`` transports the smile hull of ``ann N`` back from the dual;
    ``dual_lattice`` optionally supplies the lattice of that dual module.
    """
    _check_mode(mode, ("enumerate", "fast", "via-duality", "cross-check"))
    M = N.module
    if mode in ("enumerate", "fast"):
        return _intersection(minimal_reductions(N, cl, mode=mode, cap=cap, lattice=lattice), M)
    if mode == "via-duality":
        E = M.dual() if dual_lattice is None else dual_lattice.module
        A = dual_submodule(N, E)
        hull = i_hull(A, E.full(), smile_interior(cl), mode="enumerate", cap=cap, lattice=dual_lattice)
        return _ann_in(hull, M)
    a = cl_core(N, cl, "enumerate", cap, lattice)
    b = cl_core(N, cl, "via-duality", cap, dual_lattice=dual_lattice)
    if a != b:
        raise CrossCheckError("core: enumerate and via-duality disagree",
                              diff={"enumerate": a.basis.tolist(), "via-duality": b.basis.tolist()})
    return a


def extends_generators(K: Submodule, N: Submodule) -> bool:
    """Whether a minimal generating set of ``K`` extends to one of ``N`` (``K`` meets ``mN`` in ``mK``)."""
    mN = N.times_maximal()
    return (K + mN).dim - mN.dim == K.mu


# --------------------------------------------------------------------------
# expansions and hulls


def is_expansion(A: Submodule, C: Submodule, op: InteriorOperation):
    """``int(C) <= A``; returns ``(flag, certificate)``."""
    if not (A <= C):
        raise UsageError("an expansion must contain the submodule it expands")
    i = op.interior(C)
    ok = i <= A
    return ok, ExpansionCertificate(A, C, i, ok)


def expansions(A: Submodule, B: Submodule, op: InteriorOperation, mode: str = "enumerate",
               cap=None, lattice=None) -> list[Submodule]:
    """All ``A <= C <= B`` with ``int(C) <= A``."""
    _check_mode(mode, ("enumerate", "fast"))
    if not (A <= B):
        raise UsageError("A is not contained in B")
    if mode == "enumerate":
        return [C for C in _between(A, B, cap, lattice) if op.interior(C) <= A]
    seen = {A.key: A}
    frontier = [A]
    while frontier:
        nxt = []
        for C in frontier:
            for D in covers(C, B):
                if D.key not in seen and op.interior(D) <= A:
                    seen[D.key] = D
                    nxt.append(D)
        frontier = nxt
    return sorted(seen.values(), key=lambda S: (S.dim, S.key))


def maximal_expansions(A: Submodule, B: Submodule, op: InteriorOperation, mode: str = "enumerate",
                       cap=None, lattice=None) -> list[Submodule]:
    return _maximal(expansions(A, B, op, mode=mode, cap=cap, lattice=lattice))


def _dual_closure(op: InteriorOperation) -> ClosureOperation:
    if getattr(op, "source", None) is not None:
        return op.source
    return smile_closure(op)


def i_hull(A: Submodule, B: Submodule, op: InteriorOperation, mode: str = "enumerate", cap=None,
           lattice=None) -> Submodule:
    """Sum of all ``int``-expansions of ``A`` in ``B``."""
    _check_mode(mode, ("enumerate", "fast", "via-duality", "cross-check"))
    W = A.module
    if mode in ("enumerate", "fast"):
        return _sum(maximal_expansions(A, B, op, mode=mode, cap=cap, lattice=lattice), W)
    if mode == "via-duality":
        if not getattr(op, "intrinsic", True):
            raise CapabilityError(f"{op.name} is not computed intrinsically; no dual route")
        Bmod, incl = B.as_module()
        A1 = Submodule(Bmod, A.basis[:, B.pivots])
        D = Bmod.dual()
        N = dual_submodule(A1, D)
        core = cl_core(N, _dual_closure(op), mode="enumerate", cap=cap)
        inner = _ann_in(core, Bmod)
        return Submodule(W, W.field.matmul(inner.basis, incl))
    a = i_hull(A, B, op, "enumerate", cap, lattice)
    b = i_hull(A, B, op, "via-duality", cap)
    if a != b:
        raise CrossCheckError("hull: enumerate and via-duality disagree",
                              diff={"enumerate": a.basis.tolist(), "via-duality": b.basis.tolist()})
    return a


def reduction_expansion_bijection(N: Submodule, cl: ClosureOperation, cap=None, lattice=None,
                                  dual_lattice=None) -> dict:
    """Compare reductions of ``N`` in ``M`` with expansions of ``ann N`` in ``M^v`` under ``C -> ann C``."""
    M = N.module
    E = M.dual() if dual_lattice is None else dual_lattice.module
    A = dual_submodule(N, E)
    reds = {L.key for L in reductions(N, cl, cap=cap, lattice=lattice)}
    exps = expansions(A, E.full(), smile_interior(cl), cap=cap, lattice=dual_lattice)
    image = [_ann_in(C, M) for C in exps]
    keys = [L.key for L in image]
    reversing = all((C1 <= C2) == (L2 <= L1)
                    for C1, L1 in zip(exps, image) for C2, L2 in zip(exps, image))
    return {
        "reductions": len(reds),
        "expansions": len(exps),
        "injective": len(set(keys)) == len(keys),
        "onto": set(keys) == reds,
        "order_reversing": reversing,
        "ok": len(set(keys)) == len(keys) and set(keys) == reds and reversing,
    }


# --------------------------------------------------------------------------
# co-generation


def _as_module(X) -> FiniteModule:
    return X.as_module()[0] if isinstance(X, Submodule) else X


def cogenerated_kernel(X, funcs) -> Submodule:
    """``ker`` of the map ``X -> E^t`` given by functionals; ``X / ker`` is the co-generated quotient."""
    X = _as_module(X)
    funcs = np.asarray(funcs, dtype=np.int64).reshape(-1, X.dim)
    D = X.dual()
    G = D.submodule(funcs)
    return _ann_in(G, X)


def is_cogenerating(X, funcs) -> bool:
    return cogenerated_kernel(X, funcs).is_zero


def cogenerators(X) -> np.ndarray:
    """A co-generating set: generators of the dual module."""
    X = _as_module(X)
    return X.dual().full().generators()


def minimal_cogenerators(X) -> np.ndarray:
    """An irredundant co-generating set; its size is the socle dimension."""
    return cogenerators(X)


# --------------------------------------------------------------------------
# spreads


def spread(N: Submodule, cl: ClosureOperation, mode: str = "enumerate", cap=None, lattice=None) -> SpreadResult:
    """Common minimal generator count of the minimal reductions of ``N``."""
    mins = minimal_reductions(N, cl, mode=mode, cap=cap, lattice=lattice)
    counts = sorted({K.mu for K in mins})
    value = counts[0] if len(counts) == 1 else None
    return SpreadResult(value, counts, mins)


def cospread(A: Submodule, B: Submodule, op: InteriorOperation, mode: str = "enumerate", cap=None,
             lattice=None) -> SpreadResult:
    """Common minimal cogenerator count of ``B/C`` over maximal expansions ``C``."""
    maxes = maximal_expansions(A, B, op, mode=mode, cap=cap, lattice=lattice)
    counts = sorted({socle_of_quotient(C, B).dim - C.dim for C in maxes})
    value = counts[0] if len(counts) == 1 else None
    return SpreadResult(value, counts, maxes)

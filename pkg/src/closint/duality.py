"""Matlis duality at finite length and interior operations.

The dual of a module is its linear dual with the transposed action, so a
row vector ``f`` pairs with ``v`` as ``f . v``.  Dualizing twice gives back
the same action matrices; the stored biduality identification is therefore
the identity matrix, kept explicitly so that transports never guess.

An interior operation is applied as ``op.interior(C)`` to a submodule ``C``
of some ambient module and returns a submodule of ``C`` (in the same ambient).
Interiors are intrinsic: the answer depends only on ``C`` as a module.
"""

from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .algebra import FiniteModule, Submodule, socle_of_quotient
from .closures import AxiomReport, Certificate, ClosureOperation, IdentityClosure, check_nakayama
from .errors import UsageError

__all__ = [
    "DualPair",
    "matlis_dual",
    "dual_submodule",
    "InteriorOperation",
    "IdentityInterior",
    "SmileInterior",
    "MaximalIdealInterior",
    "smile_interior",
    "smile_closure",
    "check_interior_axioms",
    "register_interior",
    "RejectedInterior",
    "check_nakayama_interior",
    "nakayama_agreement",
    "selector_of",
    "finitistic",
    "artinistic_version",
    "smile_selector",
]


@dataclass
class DualPair:
    """``M``, its dual, and the identification ``M -> M^vv``."""

    module: FiniteModule
    dual: FiniteModule
    biduality: np.ndarray

    def pairing(self, f, v) -> int:
        F = self.module.field
        return int(F.matmul(np.asarray(f)[None, :], np.asarray(v)[:, None])[0, 0])

    def bidual(self) -> FiniteModule:
        return self.dual.dual()

    def transport(self, S: Submodule) -> Submodule:
        """Carry a submodule of ``M^vv`` back to ``M``."""
        F = self.module.field
        return Submodule(self.module, F.matmul(S.basis, self.biduality))


def matlis_dual(M: FiniteModule) -> DualPair:
    return DualPair(M, M.dual(), la.identity(M.dim))


def dual_submodule(L: Submodule, dual: FiniteModule | None = None) -> Submodule:
    """``(M/L)^v`` inside ``M^v``: functionals vanishing on ``L``."""
    M = L.module
    D = M.dual() if dual is None else dual
    if D.dim != M.dim:
        raise UsageError("dual module has the wrong dimension")
    return Submodule(D, la.nullspace(L.basis, M.field, ncols=M.dim), reduced=True)


def _ann_in(S: Submodule, target: FiniteModule) -> Submodule:
    """Annihilator of ``S`` computed in ``target`` (a module in pairing with ``S.module``)."""
    return Submodule(target, la.nullspace(S.basis, S.field, ncols=S.module.dim), reduced=True)


# --------------------------------------------------------------------------
# interior operations


class InteriorOperation:
    """Base class.  Subclasses implement :meth:`_interior` on a module."""

    name = "interior"
    source: ClosureOperation | None = None

    def __init__(self):
        self._memo = weakref.WeakKeyDictionary()
        self._lock = threading.Lock()

    def __repr__(self):
        return f"<interior {self.name}>"

    def of_module(self, X: FiniteModule) -> Submodule:
        """``int(X)`` as a submodule of ``X``."""
        return self.interior(X.full())

    def interior(self, C: Submodule) -> Submodule:
        M = C.module
        with self._lock:
            table = self._memo.setdefault(M, {})
            hit = table.get(C.key)
        if hit is not None:
            return hit
        out = self._interior(C)
        with self._lock:
            table[C.key] = out
        return out

    __call__ = interior

    def _interior(self, C: Submodule) -> Submodule:
        Cmod, incl = C.as_module()
        inner = self._interior_of_module(Cmod)
        return Submodule(C.module, C.field.matmul(inner.basis, incl))

    def _interior_of_module(self, X: FiniteModule) -> Submodule:
        raise NotImplementedError


class IdentityInterior(InteriorOperation):
    name = "identity"

    def _interior(self, C):
        return C


class MaximalIdealInterior(InteriorOperation):
    """``A -> mA``.  Contractive and order preserving but not idempotent."""

    name = "times-m"

    def _interior(self, C):
        return C.times_maximal()


class SmileInterior(InteriorOperation):
    """``int(A) = (A^v / 0^cl_{A^v})^v``, realized inside ``A``."""

    def __init__(self, cl: ClosureOperation):
        super().__init__()
        self.source = cl
        self.name = f"smile({cl.name})"

    def _interior_of_module(self, X):
        D = X.dual()
        Z = self.source.close(D.zero())
        return _ann_in(Z, X)


def smile_interior(cl: ClosureOperation) -> InteriorOperation:
    """The smile dual of a residual closure; one instance per closure, so memos are shared."""
    if not cl.residual:
        raise UsageError(f"{cl.name} is not residual; its smile dual is not defined here")
    op = cl.__dict__.get("_smile_dual")
    if op is None:
        op = IdentityInterior() if isinstance(cl, IdentityClosure) else SmileInterior(cl)
        cl.__dict__["_smile_dual"] = op
    return op


class _SmileClosure(ClosureOperation):
    """``N^cl_M / N = (Q^v / int(Q^v))^v`` with ``Q = M/N``."""

    nakayama = None

    def __init__(self, interior: InteriorOperation):
        super().__init__()
        self.source = interior
        self.name = f"smile({interior.name})"

    def _close(self, N):
        Q, _ = N.quotient_module()
        inner = self.source.of_module(Q.dual())
        return N.preimage_from_quotient(_ann_in(inner, Q))


def smile_closure(interior: InteriorOperation) -> ClosureOperation:
    return _SmileClosure(interior)


# --------------------------------------------------------------------------
# checkers


def check_interior_axioms(op: InteriorOperation, modules, *, lattices=None, max_certificates=5) -> AxiomReport:
    """Contraction, idempotence and order preservation on every submodule."""
    from .lattice import enumerate_submodules

    results = {"contraction": True, "idempotence": True, "order": True}
    certs: list = []
    counts = {"modules": 0, "submodules": 0, "pairs": 0}

    def fail(axiom, M, **data):
        results[axiom] = False
        if len(certs) < max_certificates:
            certs.append(Certificate(axiom, op.name, M, data))

    for idx, M in enumerate(modules):
        lat = lattices[idx] if lattices is not None else enumerate_submodules(M)
        counts["modules"] += 1
        inner = {}
        for C in lat:
            counts["submodules"] += 1
            i = op.interior(C)
            inner[C.key] = lat.canonical(i)
            if not (i <= C):
                fail("contraction", M, C=C, interior=i)
            elif op.interior(i) != i:
                fail("idempotence", M, C=C, interior=i, again=op.interior(i))
        for C in lat:
            for C2 in lat.supersets(C):
                counts["pairs"] += 1
                if not (inner[C.key] <= inner[C2.key]):
                    fail("order", M, C=C, C2=C2)
                    break
    return AxiomReport(op.name, results, certs, counts)


class RejectedInterior(UsageError):
    def __init__(self, report: AxiomReport):
        self.report = report
        cert = report.certificates[0].describe() if report.certificates else "no certificate"
        super().__init__(f"interior {report.closure} rejected: {cert}")


def register_interior(op: InteriorOperation, modules, registry: dict | None = None) -> AxiomReport:
    rep = check_interior_axioms(op, modules)
    if not rep.passed:
        raise RejectedInterior(rep)
    if registry is not None:
        registry[op.name] = op
    return rep


def check_nakayama_interior(op: InteriorOperation, modules, *, lattices=None,
                            max_certificates=5) -> AxiomReport:
    """Check ``A <= B, int(A :_B m) <= A  =>  int(A) = int(B)`` over all pairs."""
    from .lattice import enumerate_submodules

    ok = True
    certs: list = []
    failures = []
    counts = {"modules": 0, "pairs": 0, "premises": 0}
    for idx, W in enumerate(modules):
        lat = lattices[idx] if lattices is not None else enumerate_submodules(W)
        counts["modules"] += 1
        inner = {C.key: lat.canonical(op.interior(C)) for C in lat}
        for A in lat:
            for B in lat.supersets(A):
                counts["pairs"] += 1
                X = lat.canonical(socle_of_quotient(A, B))
                if inner[X.key] <= A:
                    counts["premises"] += 1
                    if inner[A.key] != inner[B.key]:
                        ok = False
                        failures.append((idx, A.key, B.key))
                        if len(certs) < max_certificates:
                            certs.append(Certificate("nakayama-interior", op.name, W, {"A": A, "B": B}))
    rep = AxiomReport(op.name, {"nakayama": ok}, certs, counts)
    rep.failures = failures
    return rep


def nakayama_agreement(cl: ClosureOperation, M: FiniteModule, *, lattice=None):
    """Compare Nakayama failures of ``cl`` on ``M`` with those of its smile on ``M^v``.

    A pair ``L <= N`` in ``M`` corresponds to ``ann N <= ann L`` in ``M^v``.
    Returns ``(agree, closure_report, interior_report)``.
    """
    from .lattice import enumerate_submodules

    lat = lattice if lattice is not None else enumerate_submodules(M)
    D = M.dual()
    dual_lat = enumerate_submodules(D)
    rc = check_nakayama(cl, [M], lattices=[lat])
    ri = check_nakayama_interior(smile_interior(cl), [D], lattices=[dual_lat])
    by_key = {L.key: L for L in lat}
    mapped = set()
    for _, Lk, Nk in rc.failures:
        A = dual_submodule(by_key[Lk], D)
        B = dual_submodule(by_key[Nk], D)
        mapped.add((B.key, A.key))
    got = {(a, b) for _, a, b in ri.failures}
    agree = mapped == got and rc.passed == ri.passed
    return agree, rc, ri


# --------------------------------------------------------------------------
# submodule selectors, their finitistic and Artinistic versions


def selector_of(cl: ClosureOperation):
    """The selector ``M -> 0^cl_M`` of a residual closure."""
    return lambda X: cl.close(X.zero())


def smile_selector(alpha):
    """``alpha^smile(A) = (A^v / alpha(A^v))^v`` inside ``A``."""
    def beta(X: FiniteModule) -> Submodule:
        return _ann_in(alpha(X.dual()), X)
    return beta


def finitistic(alpha):
    """``alpha_f(M)``: sum of ``alpha(N)`` over all submodules ``N`` of ``M``."""
    from .lattice import enumerate_submodules

    def fin(X: FiniteModule) -> Submodule:
        F = X.field
        rows = [la.zeros(0, X.dim)]
        for N in enumerate_submodules(X):
            Nmod, incl = N.as_module()
            rows.append(F.matmul(alpha(Nmod).basis, incl))
        return Submodule(X, np.vstack(rows))
    return fin


def artinistic_version(alpha):
    """``alpha^f(M)``: intersection of ``pi_N^{-1} alpha(M/N)`` over all submodules ``N``."""
    from .lattice import enumerate_submodules

    def art(X: FiniteModule) -> Submodule:
        out = X.full()
        for N in enumerate_submodules(X):
            Q, _ = N.quotient_module()
            out = out & N.preimage_from_quotient(alpha(Q))
        return out
    return art

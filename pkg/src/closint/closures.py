"""Closure operations on submodules of finite modules, and their axiom checkers.

A closure is applied as ``cl.close(N)`` where ``N`` is a :class:`Submodule`;
the ambient module is ``N.module``.  Every closure caches results per
ambient module.
"""

from __future__ import annotations

import os
import threading
import weakref
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import FiniteLocalAlgebra, FiniteModule, Submodule, colon, product
from .errors import CapabilityError, ResourceError, UsageError
from .expr import Poly

__all__ = [
    "ClosureOperation",
    "IdentityClosure",
    "ModuleClosure",
    "IntegralClosure",
    "TightDim1",
    "TightSocle",
    "FrobeniusClosure",
    "FrobeniusModuleClosure",
    "SocleCollapse",
    "BrokenClosure",
    "tensor_cap",
    "module_closure",
    "integral_closure_ideal",
    "valuative_closure",
    "frobenius_closure",
    "FrobeniusResult",
    "check_axioms",
    "check_nakayama",
    "AxiomReport",
    "Certificate",
    "register_closure",
]


def tensor_cap() -> int:
    return int(os.environ.get("CLOSINT_TENSOR_CAP", "4096"))


def frobenius_cap() -> int:
    return int(os.environ.get("CLOSINT_FROBENIUS_DIM_CAP", "6000"))


class ClosureOperation:
    """Base class.  Subclasses implement :meth:`_close`."""

    name = "closure"
    residual = True
    nakayama: bool | None = None
    kinds: tuple | None = None  # supported model kinds, None means any algebra

    def __init__(self):
        self._memo = weakref.WeakKeyDictionary()
        self._lock = threading.Lock()
        self.provenance: dict = {}

    def __repr__(self):
        return f"<closure {self.name}>"

    def supports(self, algebra: FiniteLocalAlgebra) -> bool:
        if self.kinds is None:
            return True
        model = algebra.meta.get("model")
        return model is not None and model.kind in self.kinds

    def close(self, N: Submodule) -> Submodule:
        M = N.module
        if not self.supports(M.algebra):
            raise CapabilityError(f"{self.name} does not support {M.algebra.name}")
        with self._lock:
            table = self._memo.setdefault(M, {})
            hit = table.get(N.key)
        if hit is not None:
            return hit
        out = self._close(N)
        with self._lock:
            table[N.key] = out
        return out

    __call__ = close

    def _close(self, N: Submodule) -> Submodule:
        raise NotImplementedError


class IdentityClosure(ClosureOperation):
    name = "identity"
    nakayama = True

    def _close(self, N):
        return N


class ModuleClosure(ClosureOperation):
    """``cl_B``: ``x`` is in the closure when ``x (x) b = 0`` in ``(M/N) (x) B`` for all b.

    ``source`` is a :class:`FiniteModule` or a callable producing the module
    for a given algebra.  When the module carries a ``unit`` (it is an
    algebra receiving a map from A) only ``b = 1`` is tested; otherwise all
    minimal generators of B are tested, which is equivalent.
    """

    nakayama = True

    def __init__(self, source, name="module[B]", supports=None):
        super().__init__()
        self.name = name
        self._source = source
        self._supports = supports
        self._modules = weakref.WeakKeyDictionary()

    def module_for(self, algebra) -> FiniteModule:
        if isinstance(self._source, FiniteModule):
            if self._source.algebra is not algebra:
                raise UsageError(f"{self.name}: B lives over a different algebra")
            return self._source
        B = self._modules.get(algebra)
        if B is None:
            B = self._source(algebra)
            self._modules[algebra] = B
        return B

    def supports(self, algebra):
        if isinstance(self._source, FiniteModule):
            return self._source.algebra is algebra
        return self._supports is None or bool(self._supports(algebra))

    def _close(self, N):
        return module_closure(self.module_for(N.module.algebra), N)


def _tensor_test_vectors(B: FiniteModule) -> np.ndarray:
    unit = B.meta.get("unit")
    if unit is not None:
        return np.asarray(unit, dtype=np.int64)[None, :]
    return B.full().generators()


def module_closure(B: FiniteModule, N: Submodule, *, fast=True) -> Submodule:
    """``N^{cl_B}_M`` by an explicit tensor product (or the ideal fast path)."""
    M = N.module
    F = M.field
    if B.algebra is not M.algebra:
        raise UsageError("B and M are modules over different algebras")
    if N.is_full:
        return N
    if fast and M.kind == "regular" and B.meta.get("unit") is not None:
        return _algebra_ideal_closure(B, N)
    Q, _ = N.quotient_module()
    q, b = Q.dim, B.dim
    if b == 0:
        return M.full()
    if q * b > tensor_cap():
        raise ResourceError(f"tensor product of size {q}*{b} exceeds the cap {tensor_cap()}")
    Iq, Ib = la.identity(q), la.identity(b)
    rel = [F.sub(np.kron(GQ, Ib), np.kron(Iq, GB)) for GQ, GB in zip(Q.gen_actions, B.gen_actions)]
    if rel:
        Ann = la.nullspace(np.vstack(rel), F, q * b)
    else:
        Ann = la.identity(q * b)
    r = Ann.shape[0]
    if r == 0:
        return M.full()
    A3 = Ann.reshape(r * q, b)
    blocks = [F.matmul(A3, g).reshape(r, q).T for g in _tensor_test_vectors(B)]
    S = la.left_nullspace(np.hstack(blocks), F)
    return N.preimage_from_quotient(Submodule(Q, S, reduced=True))


def _algebra_ideal_closure(B: FiniteModule, I: Submodule) -> Submodule:
    """``{x : phi(x) in I B}`` where ``phi(x) = x . 1_B``."""
    A = I.module.algebra
    F = A.field
    unit = np.asarray(B.meta["unit"], dtype=np.int64)
    Phi = np.vstack([F.matmul(unit[None, :], B.basis_action(i))[0] for i in range(A.dim)])
    IB = product(I, B.full())
    ann = la.nullspace(IB.basis, F, B.dim) if IB.dim else la.identity(B.dim)
    if ann.shape[0] == 0:
        return I.module.full()
    S = la.left_nullspace(F.matmul(Phi, ann.T), F)
    return Submodule(I.module, S, reduced=True)


class IntegralClosure(ModuleClosure):
    """Integral closure for one-dimensional models: ``cl_B`` with B the truncated normalization."""

    kinds = ("semigroup", "presented")

    def __init__(self, name="integral"):
        super().__init__(self._normalization, name=name)
        self.provenance = {"nakayama": "asserted-by-theory (module closure)"}

    @staticmethod
    def _normalization(algebra):
        model = algebra.meta.get("model")
        if model is None:
            raise CapabilityError("integral closure needs a ring model with normalization data")
        return model.normalization(algebra.meta["precision"])

    def supports(self, algebra):
        model = algebra.meta.get("model")
        if model is None or model.kind not in self.kinds:
            return False
        return model.kind == "semigroup" or bool(model.meta.get("axes"))


class TightDim1(IntegralClosure):
    """Tight closure of one-dimensional models, computed as integral closure."""

    def __init__(self):
        super().__init__(name="tight[dim1]")
        self.provenance = {"equals_integral": "asserted-by-theory (dimension one)",
                           "strategy": "dim1-integral"}


class TightSocle(ClosureOperation):
    """Socle-capture evaluation ``I -> I : tau`` on ideals.

    This is a strategy for ideals where tight closure is known to be
    captured by the colon against the test ideal ``tau`` (irreducible
    m-primary ideals of a Gorenstein ring whose test ideal is ``tau``).  It
    is not a closure operation on arbitrary lattices.
    """

    residual = False
    nakayama = None

    def __init__(self, tau):
        super().__init__()
        if tau is None:
            raise UsageError("socle-capture needs a test ideal tau")
        self.tau = tau
        self.name = "tight[socle]"
        self.provenance = {"strategy": "socle-capture", "tau": str(tau)}

    def _close(self, N):
        M = N.module
        if M.kind != "regular":
            raise CapabilityError("socle-capture applies to ideals only")
        A = M.algebra
        tau = self.tau
        if hasattr(tau, "at"):
            T = tau.at(A.meta["precision"])
        elif tau == "m":
            T = A.maximal_ideal
        else:
            T = tau
        return colon(N, T)


class SocleCollapse(ClosureOperation):
    """``N -> M`` when ``N`` contains ``mM``, otherwise ``N``.  A closure that is not Nakayama."""

    name = "socle-collapse"
    nakayama = False

    def _close(self, N):
        M = N.module
        mM = M.full().times_maximal()
        return M.full() if mM <= N else N


class BrokenClosure(ClosureOperation):
    """``N -> N cap mM``: violates extension.  Used to exercise the checkers."""

    name = "broken"
    nakayama = None

    def _close(self, N):
        return N & N.module.full().times_maximal()


# --------------------------------------------------------------------------
# ideal-level fast paths


def valuative_closure(I: Submodule) -> Submodule:
    """Integral closure of an ideal of a semigroup truncation: the tail from its order."""
    A = I.module.algebra
    model = A.meta.get("model")
    if model is None or model.kind != "semigroup":
        raise CapabilityError("valuative closure needs a semigroup-ring truncation")
    if I.is_zero:
        return I
    order = min(A.exponents[p][0] for p in I.pivots)
    idx = [i for i, e in enumerate(A.exponents) if e[0] >= order]
    return Submodule(I.module, np.eye(A.dim, dtype=np.int64)[idx])


def integral_closure_ideal(I: Submodule) -> Submodule:
    model = I.module.algebra.meta.get("model")
    if model is None or model.kind != "semigroup":
        raise CapabilityError("integral_closure_ideal needs a one-dimensional semigroup ring")
    return IntegralClosure().close(I)


# --------------------------------------------------------------------------
# Frobenius closure


@dataclass
class FrobeniusResult:
    closure: Submodule
    stabilized_e: int
    stabilized: bool
    route: str
    per_e: list = field(default_factory=list)


def _monomial_yz_support(I: Submodule):
    """For a hypersurface truncation: the y,z-monomial ideal generating I, or None."""
    A = I.module.algebra
    if np.any(np.count_nonzero(I.basis, axis=1) != 1):
        return None
    exps = {A.exponents[p] for p in I.pivots}
    d = max(e[0] for e in A.exponents) + 1
    rest = {e[1:] for e in exps}
    for r in rest:
        for i in range(d):
            if (i,) + r not in exps:
                return None
    return rest


def _minimal_monomials(mons):
    mons = sorted(mons, key=lambda e: (sum(e), e))
    out = []
    for m in mons:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def frobenius_closure(I: Submodule, e_max: int = 3) -> FrobeniusResult:
    """Frobenius closure in R of the ideal represented faithfully by ``I``.

    ``I`` must be an ideal of a model truncation ``A_N``; it represents its
    preimage in R, which contains the truncation kernel.
    """
    A = I.module.algebra
    model = A.meta.get("model")
    F = A.field
    if model is None:
        raise CapabilityError("Frobenius closure of ideals needs a ring model")
    if F.d != 1:
        raise CapabilityError("Frobenius closure is implemented over prime fields only")
    if I.module.kind != "regular":
        raise CapabilityError("Frobenius closure of ideals only")
    N = A.meta["precision"]
    if I.is_full:
        return FrobeniusResult(I, 0, True, "trivial", [I])
    support = _monomial_yz_support(I) if model.kind == "hypersurface" else None
    per_e = [I]
    route = "monomial-normal-form" if support is not None else "materialized"
    for e in range(1, e_max + 1):
        q = F.p ** e
        if support is not None:
            ker = _frobenius_kernel_monomial(model, A, support, N, q)
        else:
            ker = _frobenius_kernel_materialized(model, A, I, N, q)
        per_e.append(Submodule(I.module, np.vstack([I.basis, ker])))
    final = per_e[-1]
    stab = next(e for e, S in enumerate(per_e) if S == final)
    stabilized = e_max >= 1 and per_e[-1] == per_e[-2]
    return FrobeniusResult(final, stab, stabilized, route, per_e)


def _frobenius_kernel_monomial(model, A, support, N, q):
    """Kernel of ``u -> u^q`` into ``R / K^{[q]} R`` for a y,z-monomial ideal K."""
    F = A.field
    r = len(A.exponents[0]) - 1
    pure = {tuple(N if j == k else 0 for j in range(r)) for k in range(r)}
    gens = _minimal_monomials(set(support) | pure)
    qgens = [tuple(q * a for a in g) for g in gens]

    def zero(rest):
        return any(all(a <= b for a, b in zip(g, rest)) for g in qgens)

    cols: dict = {}
    rows = []
    for e in A.exponents:
        img = {}
        big = tuple(q * a for a in e)
        m, r = divmod(big[0], model.degree)
        for t, c in model._power(m).terms.items():
            rest = tuple(x + y for x, y in zip(t[1:], big[1:]))
            if zero(rest):
                continue
            key = (r,) + rest
            img[key] = int(F.add(img.get(key, 0), c))
        rows.append({k: v for k, v in img.items() if v})
        for k in rows[-1]:
            cols.setdefault(k, len(cols))
    Mx = np.zeros((A.dim, max(len(cols), 1)), dtype=np.int64)
    for i, img in enumerate(rows):
        for k, v in img.items():
            Mx[i, cols[k]] = v
    return la.left_nullspace(Mx, F)


def _frobenius_kernel_materialized(model, A, I, N, q):
    F = A.field
    gens = [_element_to_poly(A, g) for g in I.generators()]
    qgens = [g.frobenius_power(q) for g in gens]
    start = q * N
    Nq = start
    while True:
        dim = model.truncation_dim(Nq)
        if dim > frobenius_cap():
            raise ResourceError(f"Frobenius closure at q={q} needs a truncation of dimension {dim}")
        if model.is_faithful(qgens + _kernel_polys(model, N, q), Nq):
            break
        Nq += 1
        if Nq > 4 * start + 50:
            raise ResourceError("could not find a faithful precision for the Frobenius power")
    Iq = model.ideal(qgens + _kernel_polys(model, N, q), Nq)
    Aq = Iq.module.algebra
    P = Iq.projection()
    imgs = []
    for e in A.exponents:
        v = model.element(Poly.monomial(F, len(e), tuple(q * a for a in e)), Nq)
        imgs.append(F.matmul(v[None, :], P)[0])
    return la.left_nullspace(np.vstack(imgs), F)


def _kernel_polys(model, N, q):
    """Frobenius powers of generators of the truncation kernel ``K_N``."""
    F = model.field
    nv = len(model.variables)
    out = []
    if model.kind == "semigroup":
        S = model.semigroup
        for s in range(N, N + S.conductor + S.multiplicity + 1):
            if s in S:
                out.append(Poly.monomial(F, 1, (q * s,)))
    elif model.kind == "hypersurface":
        for k in range(1, nv):
            e = [0] * nv
            e[k] = q * N
            out.append(Poly.monomial(F, nv, e))
    else:
        from .models import _compositions
        for e in _compositions(N, nv):
            out.append(Poly.monomial(F, nv, tuple(q * a for a in e)))
    return out


def _element_to_poly(A, v) -> Poly:
    F = A.field
    nv = len(A.exponents[0])
    terms = {}
    for i in np.nonzero(v)[0]:
        terms[tuple(A.exponents[i])] = int(v[i])
    return Poly(F, nv, terms)


class FrobeniusClosure(ClosureOperation):
    """Ring-level Frobenius closure of ideals of model truncations."""

    nakayama = True
    residual = False

    def __init__(self, e_max=3):
        super().__init__()
        self.e_max = int(e_max)
        self.name = f"frobenius[e_max={self.e_max}]"
        self.last: FrobeniusResult | None = None
        self.provenance = {"nakayama": "asserted-by-theory"}

    def supports(self, algebra):
        return algebra.meta.get("model") is not None and algebra.field.d == 1

    def _close(self, N):
        res = frobenius_closure(N, self.e_max)
        self.last = res
        return res.closure


class FrobeniusModuleClosure(ModuleClosure):
    """``cl_B`` with ``B = F^e_* A``, the algebra viewed through its Frobenius."""

    def __init__(self, e=1):
        self.e = int(e)
        super().__init__(self._frobenius_module, name=f"frobenius-module[e={self.e}]")

    def supports(self, algebra):
        return algebra.field.d == 1

    def _frobenius_module(self, A):
        if A.field.d != 1:
            raise CapabilityError("Frobenius pushforward needs a prime field")
        q = A.field.p ** self.e
        acts = [A.action(A.power(g, q)) for g in A.gens]
        B = FiniteModule(A, A.dim, acts, name=f"F^{self.e}_*A", kind="frobenius")
        B.meta["unit"] = A.unit()
        return B


# --------------------------------------------------------------------------
# checkers


@dataclass
class Certificate:
    """Replayable counterexample."""

    axiom: str
    closure: str
    module: object
    data: dict

    def describe(self) -> str:
        parts = []
        for k, v in self.data.items():
            if isinstance(v, Submodule):
                parts.append(f"{k}={v.basis.tolist()}")
            else:
                parts.append(f"{k}={v}")
        return f"{self.axiom} fails for {self.closure} on {getattr(self.module, 'name', self.module)}: " + "; ".join(parts)

    def replay(self, cl) -> bool:
        """Recompute the violated statement; True when the violation reproduces."""
        d = self.data
        if self.axiom == "extension":
            return not (d["N"] <= cl.close(d["N"]))
        if self.axiom == "idempotence":
            c = cl.close(d["N"])
            return cl.close(c) != c
        if self.axiom == "order":
            return not (cl.close(d["N"]) <= cl.close(d["N2"]))
        if self.axiom == "residual":
            return _residual_violation(cl, d["K"]) is not None
        if self.axiom == "nakayama":
            L, N = d["L"], d["N"]
            return N <= cl.close(L + N.times_maximal()) and cl.close(L) != cl.close(N)
        raise UsageError(f"cannot replay {self.axiom}")


@dataclass
class AxiomReport:
    closure: str
    results: dict
    certificates: list
    counts: dict
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    def summary(self) -> str:
        rows = [f"{k}: {'pass' if v else 'FAIL'}" for k, v in self.results.items()]
        return f"{self.closure}: " + ", ".join(rows)


def _residual_violation(cl, K: Submodule):
    M = K.module
    Q, P = K.quotient_module()
    z = cl.close(Q.zero())
    lhs = cl.close(K)
    rhs = K.preimage_from_quotient(z)
    return None if lhs == rhs else (lhs, rhs)


def check_axioms(cl: ClosureOperation, modules, *, lattices=None, residual=None, functorial=False,
                 max_certificates=5) -> AxiomReport:
    """Check extension, idempotence, order preservation (and residuality) on every submodule.

    ``modules`` is an iterable of small modules; their submodule lattices are
    enumerated exhaustively.
    """
    from .lattice import enumerate_submodules

    residual = cl.residual if residual is None else residual
    results = {"extension": True, "idempotence": True, "order": True}
    if residual:
        results["residual"] = True
    if functorial:
        results["functorial"] = True
    certs: list = []
    counts = {"modules": 0, "submodules": 0, "pairs": 0}

    def fail(axiom, M, **data):
        results[axiom] = False
        if len(certs) < max_certificates:
            certs.append(Certificate(axiom, cl.name, M, data))

    for idx, M in enumerate(modules):
        lat = lattices[idx] if lattices is not None else enumerate_submodules(M)
        counts["modules"] += 1
        closed = {}
        for N in lat:
            counts["submodules"] += 1
            c = cl.close(N)
            closed[N.key] = lat.canonical(c)
            if not (N <= c):
                fail("extension", M, N=N, closure=c)
                continue
            if cl.close(c) != c:
                fail("idempotence", M, N=N, closure=c, again=cl.close(c))
        for N in lat:
            cN = closed[N.key]
            for N2 in lat.supersets(N):
                counts["pairs"] += 1
                if not (cN <= closed[N2.key]):
                    fail("order", M, N=N, N2=N2)
                    break
        if residual:
            for K in lat:
                if _residual_violation(cl, K) is not None:
                    fail("residual", M, K=K)
        if functorial:
            # inclusions L <= M and projections M -> M/K
            for L in lat:
                Lmod, incl = L.as_module()
                sublat = [N for N in lat.subsets(L)]
                for N in sublat:
                    inner = cl.close(Submodule(Lmod, N.basis[:, L.pivots]))
                    pushed = Submodule(M, M.field.matmul(inner.basis, incl))
                    if not (pushed <= closed[N.key]):
                        fail("functorial", M, L=L, N=N)
                        break
    return AxiomReport(cl.name, results, certs, counts)


def check_nakayama(cl: ClosureOperation, modules, *, lattices=None, max_certificates=5) -> AxiomReport:
    """Check ``L <= N <= (L + mN)^cl  =>  L^cl = N^cl`` over all pairs in each module."""
    from .lattice import enumerate_submodules

    ok = True
    certs: list = []
    counts = {"modules": 0, "pairs": 0, "premises": 0}
    failures = []
    for idx, M in enumerate(modules):
        lat = lattices[idx] if lattices is not None else enumerate_submodules(M)
        counts["modules"] += 1
        closed = {N.key: lat.canonical(cl.close(N)) for N in lat}
        for N in lat:
            mN = N.times_maximal()
            for L in lat.subsets(N):
                counts["pairs"] += 1
                S = lat.canonical(L + mN)
                if N <= closed[S.key]:
                    counts["premises"] += 1
                    if closed[L.key] != closed[N.key]:
                        ok = False
                        failures.append((idx, L.key, N.key))
                        if len(certs) < max_certificates:
                            certs.append(Certificate("nakayama", cl.name, M, {"L": L, "N": N}))
    rep = AxiomReport(cl.name, {"nakayama": ok}, certs, counts)
    rep.failures = failures
    return rep


def register_closure(cl: ClosureOperation, modules, registry: dict | None = None) -> AxiomReport:
    """Run the axiom suite and add ``cl`` to ``registry`` only when it passes."""
    rep = check_axioms(cl, modules)
    if not rep.passed:
        raise _Rejected(rep)
    if registry is not None:
        registry[cl.name] = cl
    return rep


class _Rejected(UsageError):
    def __init__(self, report: AxiomReport):
        self.report = report
        cert = report.certificates[0].describe() if report.certificates else "no certificate"
        super().__init__(f"closure {report.closure} rejected: {cert}")


RejectedClosure = _Rejected

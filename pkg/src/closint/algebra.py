"""Finite local algebras over finite fields, their modules and submodules.

Conventions
-----------
* Vectors are rows.  An algebra element or module element is a 1-d integer
  array of coordinates in the chosen basis.
* Module actions use the row convention: the action matrix ``P`` of ``a``
  sends ``v`` to ``v @ P``.
* Basis element 0 of every algebra is the unit and the remaining basis
  elements span the maximal ideal.
* Every basis element is a monomial in a fixed list of generators of the
  maximal ideal (its *word*), so the action of any element on any module is
  determined by the generator actions.
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from . import linalg as la
from .errors import ConstructionError, DomainError, UsageError
from .fields import GF

__all__ = [
    "FiniteLocalAlgebra",
    "FiniteModule",
    "Submodule",
    "submodule",
    "ideal_from_elements",
    "colon",
    "module_colon",
    "product",
    "socle",
    "annihilator",
    "is_irreducible",
]

DENSE_LIMIT = 80
EXHAUSTIVE_ASSOC_LIMIT = 32


class _Actor:
    """Lazily computes action matrices of monomials in the generators."""

    def __init__(self, field: GF, gen_mats, dim):
        self.field = field
        self.gen_mats = [np.asarray(g, dtype=np.int64) for g in gen_mats]
        self.dim = dim
        self._cache = {(0,) * len(self.gen_mats): la.identity(dim)}

    def word(self, exps):
        exps = tuple(exps)
        hit = self._cache.get(exps)
        if hit is not None:
            return hit
        k = next(i for i, e in enumerate(exps) if e)
        prev = list(exps)
        prev[k] -= 1
        mat = self.field.matmul(self.word(prev), self.gen_mats[k])
        if len(self._cache) < 4096 or self.dim <= 32:
            self._cache[exps] = mat
        return mat

    def apply_word(self, v, exps):
        """``v`` times the monomial ``exps`` without forming its matrix."""
        out = np.asarray(v, dtype=np.int64)
        for k, e in enumerate(exps):
            for _ in range(e):
                out = self.field.matmul(out, self.gen_mats[k])
        return out


class FiniteLocalAlgebra:
    """Commutative local algebra of finite dimension over a finite field.

    Parameters
    ----------
    field : GF
    labels : list of str
        Human readable basis tags, ``labels[0]`` is the unit.
    gens : list of arrays
        Elements generating the maximal ideal.
    words : list of tuples
        ``words[i]`` is the exponent vector over ``gens`` of basis element i.
    gen_mats : list of arrays
        Regular action matrices of the generators.
    """

    def __init__(self, field: GF, labels, gens, words, gen_mats, *, name="A",
                 exponents=None, check=True, seed=0):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.gens = [np.asarray(g, dtype=np.int64) for g in gens]
        self.words = [tuple(int(e) for e in w) for w in words]
        self.name = name
        self.exponents = exponents
        self.meta: dict = {}
        self._actor = _Actor(field, gen_mats, self.dim)
        self.tensor = None
        if self.dim <= DENSE_LIMIT:
            self.tensor = np.stack([self._actor.word(w) for w in self.words])
        if check:
            self._verify(seed)

    # -- construction helpers ---------------------------------------------

    @classmethod
    def from_tensor(cls, field: GF, tensor, labels=None, name="A", check=True):
        """Build from structure constants ``tensor[i, j] = e_i e_j``.

        Generators are basis elements spanning m/m^2 and words are found by
        breadth-first search; a basis that is not monomial is rejected.
        """
        T = np.asarray(tensor, dtype=np.int64) % field.q if field.d == 1 else np.asarray(tensor, dtype=np.int64)
        n = T.shape[0]
        labels = labels or (["1"] + [f"e{i}" for i in range(1, n)])
        m2 = la.span(T[1:, 1:].reshape(-1, n), field, n) if n > 1 else la.zeros(0, n)
        gens_idx = []
        cur = m2
        for i in range(1, n):
            e = np.zeros(n, dtype=np.int64)
            e[i] = 1
            if not la.in_span(e, cur, field):
                gens_idx.append(i)
                cur = la.sum_spaces(cur, e[None, :], field)
        words = [None] * n
        words[0] = (0,) * len(gens_idx)
        for k, g in enumerate(gens_idx):
            w = [0] * len(gens_idx)
            w[k] = 1
            words[g] = tuple(w)
        frontier = [0] + gens_idx
        seen = set(frontier)
        while frontier:
            nxt = []
            for i in frontier:
                for k, g in enumerate(gens_idx):
                    prod = T[g, i]
                    nz = np.nonzero(prod)[0]
                    if nz.size == 1 and prod[nz[0]] == 1 and int(nz[0]) not in seen:
                        j = int(nz[0])
                        w = list(words[i])
                        w[k] += 1
                        words[j] = tuple(w)
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
        if any(w is None for w in words):
            raise ConstructionError("basis is not monomial in generators of the maximal ideal")
        gens = [np.eye(n, dtype=np.int64)[g] for g in gens_idx]
        gen_mats = [T[g] for g in gens_idx]
        return cls(field, labels, gens, words, gen_mats, name=name, check=check)

    def _verify(self, seed):
        F, n = self.field, self.dim
        if any(g[0] != 0 for g in self.gens):
            raise ConstructionError("generators must lie in the maximal ideal")
        if self.words[0] != (0,) * len(self.gens):
            raise ConstructionError("basis element 0 must be the unit")
        if any(sum(w) == 0 for w in self.words[1:]):
            raise ConstructionError("non-unit basis elements must lie in the maximal ideal")
        G = self._actor.gen_mats
        for a, b in itertools.combinations(range(len(G)), 2):
            if np.any(F.matmul(G[a], G[b]) != F.matmul(G[b], G[a])):
                raise ConstructionError(f"generators {a} and {b} do not commute")
        for k, g in enumerate(self.gens):
            # regular action must agree with the generator vector
            if np.any(G[k][0] != g):
                raise ConstructionError(f"generator {k} action disagrees with its vector")
        for i, w in enumerate(self.words):
            v = self._actor.apply_word(np.eye(n, dtype=np.int64)[0], w)
            if np.any(v != np.eye(n, dtype=np.int64)[i]):
                raise ConstructionError(f"word of basis element {self.labels[i]} does not evaluate to it")
        for k, Gk in enumerate(G):
            P = Gk.copy()
            for _ in range(n):
                if not P.any():
                    break
                P = F.matmul(P, Gk)
            if P.any():
                raise ConstructionError(f"generator {k} is not nilpotent; algebra is not local")
        # associativity and commutativity of structure constants
        exhaustive = self.tensor is not None and n <= EXHAUSTIVE_ASSOC_LIMIT
        if self.tensor is not None:
            T = self.tensor
            comm = np.nonzero(np.any(T != T.transpose(1, 0, 2), axis=2))
            if comm[0].size:
                i, j = int(comm[0][0]), int(comm[1][0])
                raise ConstructionError(f"not commutative at ({self.labels[i]}, {self.labels[j]})")
        if exhaustive:
            T = self.tensor
            # L[i, j, k] = (e_i e_j) e_k; by commutativity e_i (e_j e_k) = L[j, k, i]
            L = F.matmul(T.reshape(n * n, n), T.reshape(n, n * n)).reshape(n, n, n, n)
            R = L.transpose(2, 0, 1, 3)
            bad = np.argwhere(np.any(L != R, axis=3))
            if bad.size:
                i, j, k = (int(x) for x in bad[0])
                raise ConstructionError(
                    f"associativity fails on basis triple {(self.labels[i], self.labels[j], self.labels[k])}")
        else:
            rng = np.random.default_rng(seed)
            triples = [tuple(int(x) for x in rng.integers(0, n, 3)) for _ in range(200)]
            bad = self._assoc_violation(triples)
            if bad:
                raise ConstructionError(f"associativity fails on basis triple {bad}")
        self.meta["associativity_check"] = "exhaustive" if exhaustive else "sampled[200]"

    def _assoc_violation(self, triples):
        n = self.dim
        E = np.eye(n, dtype=np.int64)
        if self.tensor is not None:
            T = self.tensor
            for i, j, k in triples:
                lhs = self.field.matmul(T[i, j], T[k])
                rhs = self.field.matmul(T[j, k], T[i])
                if np.any(lhs != rhs):
                    return (self.labels[i], self.labels[j], self.labels[k])
            return None
        for i, j, k in triples:
            lhs = self.mul(self.mul(E[i], E[j]), E[k])
            rhs = self.mul(E[i], self.mul(E[j], E[k]))
            if np.any(lhs != rhs):
                return (self.labels[i], self.labels[j], self.labels[k])
        return None

    # -- arithmetic --------------------------------------------------------

    def __repr__(self):
        return f"FiniteLocalAlgebra({self.name}, dim={self.dim}, field={self.field!r})"

    @property
    def ngens(self) -> int:
        return len(self.gens)

    @property
    def gen_mats(self):
        return self._actor.gen_mats

    def unit(self) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[0] = 1
        return e

    def basis_vector(self, i) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[i] = 1
        return e

    def basis_action(self, i) -> np.ndarray:
        if self.tensor is not None:
            return self.tensor[i]
        return self._actor.word(self.words[i])

    def action(self, a) -> np.ndarray:
        """Regular action matrix of the element ``a``."""
        a = np.asarray(a, dtype=np.int64)
        if self.tensor is not None:
            return self.field.matmul(a[None, :], self.tensor.reshape(self.dim, -1)).reshape(self.dim, self.dim)
        out = la.zeros(self.dim, self.dim)
        for i in np.nonzero(a)[0]:
            out = self.field.add(out, self.field.mul(int(a[i]), self.basis_action(int(i))))
        return out

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.tensor is not None:
            return self.field.matmul(b[None, :], self.action(a))[0]
        out = np.zeros(self.dim, dtype=np.int64)
        for i in np.nonzero(a)[0]:
            term = self._actor.apply_word(b, self.words[int(i)])
            out = self.field.add(out, self.field.mul(int(a[i]), term))
        return out

    def power(self, a, n: int) -> np.ndarray:
        result = self.unit()
        base = np.asarray(a, dtype=np.int64)
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def scale(self, c, a):
        return self.field.mul(int(c), np.asarray(a, dtype=np.int64))

    def is_unit_element(self, a) -> bool:
        return int(np.asarray(a)[0]) != 0

    def format(self, v) -> str:
        """Render an element as a sum of labelled basis monomials."""
        F = self.field
        terms = []
        for i in np.nonzero(np.asarray(v))[0]:
            c = int(v[i])
            lab = self.labels[i]
            cs = F.format(c)
            if lab == "1":
                terms.append(cs if F.d == 1 or "+" not in cs else f"({cs})")
            elif c == 1:
                terms.append(lab)
            else:
                terms.append(f"{cs}*{lab}" if (F.d == 1 or "+" not in cs) else f"({cs})*{lab}")
        return " + ".join(terms) if terms else "0"

    # -- derived objects ---------------------------------------------------

    @cached_property
    def regular(self) -> "FiniteModule":
        return FiniteModule(self, self.dim, self.gen_mats, name=f"{self.name}", labels=self.labels,
                            kind="regular")

    @cached_property
    def maximal_ideal(self) -> "Submodule":
        return Submodule(self.regular, np.eye(self.dim, dtype=np.int64)[1:])

    def ideal(self, elements) -> "Submodule":
        return ideal_from_elements(self, elements)

    def zero_ideal(self) -> "Submodule":
        return Submodule(self.regular, la.zeros(0, self.dim))

    def unit_ideal(self) -> "Submodule":
        return Submodule(self.regular, la.identity(self.dim))

    def quotient(self, J: "Submodule", name=None) -> tuple["FiniteLocalAlgebra", np.ndarray]:
        """``A/J`` with the induced monomial basis, and the projection matrix."""
        if J.module.algebra is not self or J.module.kind != "regular":
            raise UsageError("quotient expects an ideal of this algebra")
        if J.contains_vector(self.unit()):
            raise DomainError("cannot form the quotient by the unit ideal")
        F = self.field
        C = J.complement
        P = J.projection()  # dim x len(C)
        gens = [F.matmul(g[None, :], P)[0] for g in self.gens]
        gen_mats = [F.matmul(G[C, :], P) for G in self.gen_mats]
        words = [self.words[c] for c in C]
        labels = [self.labels[c] for c in C]
        exps = [self.exponents[c] for c in C] if self.exponents is not None else None
        Q = FiniteLocalAlgebra(F, labels, gens, words, gen_mats, name=name or f"{self.name}/J",
                               exponents=exps, check=False)
        Q.meta["parent"] = self
        return Q, P

    def socle_dimension(self) -> int:
        return socle(self.regular).dim

    def is_gorenstein(self) -> bool:
        return self.socle_dimension() == 1

    def with_field(self, target: GF) -> "FiniteLocalAlgebra":
        """Base change along an embedding of fields."""
        emb = lambda M: self.field.embed(np.asarray(M), target)  # noqa: E731
        A = FiniteLocalAlgebra(target, self.labels, [emb(g) for g in self.gens], self.words,
                               [emb(G) for G in self.gen_mats], name=self.name,
                               exponents=self.exponents, check=False)
        A.meta.update({k: v for k, v in self.meta.items() if k != "normalization"})
        return A


class FiniteModule:
    """Finite-dimensional module over a :class:`FiniteLocalAlgebra`.

    Determined by the action matrices of the algebra generators.
    """

    def __init__(self, algebra: FiniteLocalAlgebra, dim: int, gen_actions, *, name="M",
                 labels=None, kind="module", check=False):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = int(dim)
        gen_actions = [np.asarray(g, dtype=np.int64).reshape(self.dim, self.dim) for g in gen_actions]
        if len(gen_actions) != algebra.ngens:
            raise UsageError("one action matrix per algebra generator is required")
        self._actor = _Actor(self.field, gen_actions, self.dim)
        self.name = name
        self.labels = labels
        self.kind = kind
        self.meta: dict = {}
        if check:
            self.verify()

    def __repr__(self):
        return f"FiniteModule({self.name}, dim={self.dim}, over {self.algebra.name})"

    @property
    def gen_actions(self):
        return self._actor.gen_mats

    def verify(self):
        F = self.field
        G = self.gen_actions
        for a, b in itertools.combinations(range(len(G)), 2):
            if np.any(F.matmul(G[a], G[b]) != F.matmul(G[b], G[a])):
                raise ConstructionError(f"module actions of generators {a},{b} do not commute")
        # the relations of the algebra must hold: word products reproduce the
        # algebra's multiplication on basis elements
        A = self.algebra
        for i in range(A.dim):
            for k in range(A.ngens):
                prod = A.mul(A.gens[k], A.basis_vector(i))
                lhs = self.action(prod)
                w = list(A.words[i])
                w[k] += 1
                rhs = self._actor.word(w)
                if np.any(lhs != rhs):
                    raise ConstructionError(f"action is not an algebra homomorphism at ({k}, {A.labels[i]})")

    def basis_action(self, i) -> np.ndarray:
        if self.kind == "regular" and self.algebra.tensor is not None:
            return self.algebra.tensor[i]
        return self._actor.word(self.algebra.words[i])

    def action(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        F = self.field
        out = la.zeros(self.dim, self.dim)
        for i in np.nonzero(a)[0]:
            out = F.add(out, F.mul(int(a[i]), self.basis_action(int(i))))
        return out

    def act(self, a, v) -> np.ndarray:
        """``a . v`` for an algebra element ``a`` and row vector(s) ``v``."""
        a = np.asarray(a, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        F = self.field
        out = np.zeros_like(v)
        for i in np.nonzero(a)[0]:
            out = F.add(out, F.mul(int(a[i]), self._actor.apply_word(v, self.algebra.words[int(i)])))
        return out

    # -- constructions -------------------------------------------------------

    def zero(self) -> "Submodule":
        return Submodule(self, la.zeros(0, self.dim))

    def full(self) -> "Submodule":
        return Submodule(self, la.identity(self.dim))

    def submodule(self, vectors) -> "Submodule":
        return submodule(self, vectors)

    def dual(self) -> "FiniteModule":
        """Matlis dual: linear dual with transposed action."""
        D = FiniteModule(self.algebra, self.dim, [G.T.copy() for G in self.gen_actions],
                         name=f"{self.name}^v", kind="dual")
        D.meta["predual"] = self
        return D

    def direct_sum(self, other: "FiniteModule") -> "FiniteModule":
        if other.algebra is not self.algebra:
            raise UsageError("direct sum of modules over different algebras")
        acts = []
        for G, H in zip(self.gen_actions, other.gen_actions):
            Z = la.zeros(self.dim + other.dim, self.dim + other.dim)
            Z[: self.dim, : self.dim] = G
            Z[self.dim:, self.dim:] = H
            acts.append(Z)
        return FiniteModule(self.algebra, self.dim + other.dim, acts, name=f"({self.name}+{other.name})",
                            kind="sum")

    def restrict_scalars(self, algebra: FiniteLocalAlgebra, images) -> "FiniteModule":
        """Module over ``algebra`` through the map sending its generators to ``images``."""
        acts = [self.action(v) for v in images]
        return FiniteModule(algebra, self.dim, acts, name=self.name, kind="restricted")

    def socle(self) -> "Submodule":
        return socle(self)

    def with_field(self, target: GF, algebra: FiniteLocalAlgebra) -> "FiniteModule":
        return FiniteModule(algebra, self.dim, [self.field.embed(G, target) for G in self.gen_actions],
                            name=self.name, kind=self.kind)


class Submodule:
    """A submodule stored as an RREF basis; equality is RREF equality."""

    __slots__ = ("module", "basis", "_pivots", "_key", "_mask", "__dict__")

    def __init__(self, module: FiniteModule, basis, *, reduced=False):
        self.module = module
        B = np.asarray(basis, dtype=np.int64)
        B = B.reshape(-1, module.dim) if module.dim else la.zeros(0, 0)
        if not reduced:
            B = la.span(B, module.field, module.dim)
        self.basis = B
        self._pivots = None
        self._key = None
        self._mask = None

    # -- identity -------------------------------------------------------------

    @property
    def field(self) -> GF:
        return self.module.field

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> list[int]:
        if self._pivots is None:
            self._pivots = [int(np.nonzero(r)[0][0]) for r in self.basis]
        return self._pivots

    @property
    def complement(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.module.dim) if c not in piv]

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = la.span_key(self.basis)
        return self._key

    def __hash__(self):
        return hash(self.key)

    def __eq__(self, other):
        return isinstance(other, Submodule) and other.module is self.module and self.key == other.key

    def __le__(self, other: "Submodule") -> bool:
        _same_ambient(self, other)
        if self._mask is not None and other._mask is not None:
            return self._mask & ~other._mask == 0
        if self.dim > other.dim:
            return False
        return la.contains(other.basis, self.basis, self.field)

    def __lt__(self, other):
        return self <= other and self.dim < other.dim

    def __ge__(self, other):
        return other <= self

    def __repr__(self):
        return f"Submodule(dim={self.dim} of {self.module.name})"

    def contains_vector(self, v) -> bool:
        return la.in_span(np.asarray(v, dtype=np.int64), self.basis, self.field)

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def is_full(self) -> bool:
        return self.dim == self.module.dim

    # -- lattice -------------------------------------------------------------------

    def __add__(self, other: "Submodule") -> "Submodule":
        _same_ambient(self, other)
        return Submodule(self.module, np.vstack([self.basis, other.basis]))

    def __and__(self, other: "Submodule") -> "Submodule":
        _same_ambient(self, other)
        return Submodule(self.module, la.intersect_spaces(self.basis, other.basis, self.field), reduced=True)

    def reduce(self, v):
        return la.reduce_mod(v, self.basis, self.pivots, self.field)

    def projection(self) -> np.ndarray:
        """Matrix of ``M -> M/self`` in the complement basis."""
        n = self.module.dim
        R = self.reduce(la.identity(n))
        return R[:, self.complement]

    def times_maximal(self) -> "Submodule":
        """``m N``."""
        F = self.field
        if self.dim == 0:
            return self
        rows = [F.matmul(self.basis, G) for G in self.module.gen_actions]
        if not rows:
            return self.module.zero()
        return Submodule(self.module, np.vstack(rows))

    def generators(self) -> np.ndarray:
        """Canonical minimal generating set: RREF of normal forms modulo mN."""
        mN = self.times_maximal()
        if mN.dim == 0:
            return self.basis.copy()
        R = la.reduce_mod(self.basis, mN.basis, mN.pivots, self.field)
        return la.span(R, self.field, self.module.dim)

    @property
    def mu(self) -> int:
        return self.dim - self.times_maximal().dim

    def as_module(self) -> tuple[FiniteModule, np.ndarray]:
        """This submodule as a module in its own RREF basis, with inclusion matrix."""
        F = self.field
        piv = self.pivots
        acts = [F.matmul(self.basis, G)[:, piv] for G in self.module.gen_actions]
        M = FiniteModule(self.module.algebra, self.dim, acts, name=f"sub({self.module.name})", kind="sub")
        return M, self.basis

    def quotient_module(self) -> tuple[FiniteModule, np.ndarray]:
        """``M/self`` with basis the complement coordinates, and the projection."""
        F = self.field
        C = self.complement
        P = self.projection()
        acts = [F.matmul(G[C, :], P) for G in self.module.gen_actions]
        Q = FiniteModule(self.module.algebra, len(C), acts, name=f"{self.module.name}/N", kind="quotient")
        return Q, P

    def preimage_from_quotient(self, S: "Submodule") -> "Submodule":
        """Preimage in the ambient module of a submodule of ``M/self``."""
        C = self.complement
        n = self.module.dim
        lift = la.zeros(S.dim, n)
        if S.dim:
            lift[:, C] = S.basis
        return Submodule(self.module, np.vstack([self.basis, lift]))

    def image_in_quotient(self, T: "Submodule", Q: FiniteModule, P) -> "Submodule":
        return Submodule(Q, self.field.matmul(T.basis, P))

    def format_generators(self) -> list[str]:
        if self.module.kind != "regular":
            return [" ".join(map(str, r)) for r in self.generators()]
        return [self.module.algebra.format(r) for r in self.generators()]

    def format(self) -> str:
        if self.is_zero:
            return "(0)"
        if self.module.kind == "regular" and self.contains_vector(self.module.algebra.unit()):
            return "(1)"
        return "(" + ", ".join(self.format_generators()) + ")"


def _same_ambient(a: Submodule, b: Submodule):
    if a.module is not b.module:
        raise UsageError(f"submodules of different ambients {a.module.name} and {b.module.name}")


def submodule(M: FiniteModule, vectors) -> Submodule:
    """Smallest submodule containing ``vectors`` (saturation under generators)."""
    F = M.field
    V = np.asarray(vectors, dtype=np.int64).reshape(-1, M.dim)
    cur = la.span(V, F, M.dim) if V.shape[0] else la.zeros(0, M.dim)
    frontier = cur
    while frontier.shape[0]:
        new = np.vstack([F.matmul(frontier, G) for G in M.gen_actions]) if M.gen_actions else la.zeros(0, M.dim)
        if new.shape[0] == 0:
            break
        if cur.shape[0]:
            new = la.reduce_mod(new, cur, [int(np.nonzero(r)[0][0]) for r in cur], F)
        new = new[np.any(new, axis=1)]
        if new.shape[0] == 0:
            break
        frontier = la.span(new, F, M.dim)
        cur = la.span(np.vstack([cur, frontier]), F, M.dim)
    return Submodule(M, cur, reduced=True)


def ideal_from_elements(A: FiniteLocalAlgebra, elements) -> Submodule:
    elements = [np.asarray(e, dtype=np.int64) for e in elements]
    if not elements:
        return A.zero_ideal()
    return submodule(A.regular, np.vstack(elements))


def _check_ideal(I: Submodule, A: FiniteLocalAlgebra | None = None):
    if I.module.kind != "regular":
        raise UsageError("expected an ideal (submodule of the regular module)")
    if A is not None and I.module.algebra is not A:
        raise UsageError("ideal belongs to a different algebra")


def _ideal_generators(J: Submodule) -> np.ndarray:
    return J.generators() if J.dim else J.basis


def colon(L: Submodule, J: Submodule) -> Submodule:
    """``(L :_M J) = {v in M : J v in L}`` for an ideal J.

    With ``L`` an ideal this is the ideal colon ``(L : J)``.
    """
    _check_ideal(J)
    M = L.module
    if J.module.algebra is not M.algebra:
        raise UsageError("colon of objects over different algebras")
    F = M.field
    if L.is_full:
        return M.full()
    annL = la.nullspace(L.basis, F, M.dim) if L.dim else la.identity(M.dim)
    blocks = []
    for g in _ideal_generators(J):
        blocks.append(F.matmul(M.action(g), annL.T))
    if not blocks:
        return M.full()
    S = la.left_nullspace(np.hstack(blocks), F)
    return Submodule(M, S, reduced=True)


def module_colon(N: Submodule, P: Submodule) -> Submodule:
    """``(N :_A P) = {a in A : a P in N}`` as an ideal of A."""
    _same_ambient(N, P)
    M = N.module
    A = M.algebra
    F = M.field
    if P.dim == 0:
        return A.unit_ideal()
    annN = la.nullspace(N.basis, F, M.dim) if N.dim else la.identity(M.dim)
    if annN.shape[0] == 0:
        return A.unit_ideal()
    rows = []
    for i in range(A.dim):
        rows.append(F.matmul(F.matmul(P.basis, M.basis_action(i)), annN.T).reshape(-1))
    K = la.left_nullspace(np.vstack(rows), F)
    return Submodule(A.regular, K, reduced=True)


def annihilator(M) -> Submodule:
    """Annihilator of a module, or of a submodule viewed as a module."""
    if isinstance(M, Submodule):
        return module_colon(M.module.zero(), M)
    return module_colon(M.zero(), M.full())


def product(I: Submodule, N: Submodule) -> Submodule:
    """``I N`` for an ideal I and submodule N (ideal product when N is an ideal)."""
    _check_ideal(I)
    M = N.module
    F = M.field
    if I.dim == 0 or N.dim == 0:
        return M.zero()
    rows = [F.matmul(N.basis, M.action(g)) for g in _ideal_generators(I)]
    return Submodule(M, np.vstack(rows))


def socle(M) -> Submodule:
    """``{x : m x = 0}``; for a submodule ``N`` of ``M`` this is ``soc(N)``."""
    if isinstance(M, Submodule):
        N = M
        return N & socle(N.module)
    F = M.field
    if not M.gen_actions:
        return M.full()
    S = la.left_nullspace(np.hstack(M.gen_actions), F)
    return Submodule(M, S, reduced=True)


def socle_of_quotient(L: Submodule, top: Submodule | None = None) -> Submodule:
    """``(L :_top m)``: preimage of the socle of ``top/L``."""
    M = L.module
    F = M.field
    annL = la.nullspace(L.basis, F, M.dim) if L.dim else la.identity(M.dim)
    if annL.shape[0] == 0 or not M.gen_actions:
        S = M.full()
    else:
        S = Submodule(M, la.left_nullspace(np.hstack([F.matmul(G, annL.T) for G in M.gen_actions]), F),
                      reduced=True)
    return S if top is None else S & top


def is_irreducible(J: Submodule) -> bool:
    """``A/J`` has one-dimensional socle."""
    _check_ideal(J)
    if J.is_full:
        raise DomainError("the unit ideal is not irreducible")
    return socle_of_quotient(J).dim - J.dim == 1

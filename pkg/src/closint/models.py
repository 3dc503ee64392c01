"""Complete local rings represented by compatible families of truncations.

A :class:`RingModel` builds finite local algebras ``A_N = R / K_N`` for a
decreasing family of m-primary ideals ``K_N``.  An ideal ``I`` of ``R`` that
contains ``K_N`` is represented faithfully by its image in ``A_N``; the
:class:`RingIdeal` wrapper moves such ideals between precisions.

Three families are supported:

* ``semigroup``: ``k[[t^S]]`` with ``K_N`` spanned by ``t^s, s >= N``.
* ``hypersurface``: ``k[[x, y, ...]]/(x^d - g)`` with ``g`` free of ``x``,
  truncated by pure powers ``(y^N, z^N, ...)`` of the other variables.
* ``presented``: ``k[[x_1..x_r]]/(relations)`` truncated by ``m^N``.
"""

from __future__ import annotations

import itertools
import os
import threading

import numpy as np

from . import linalg as la
from .algebra import FiniteLocalAlgebra, FiniteModule, Submodule, ideal_from_elements
from .errors import CapabilityError, DomainError, ResourceError, UsageError
from .expr import Poly, parse_ideal, parse_poly
from .fields import GF
from .semigroups import NumericalSemigroup

__all__ = [
    "RingModel",
    "SemigroupRing",
    "HypersurfaceRing",
    "PresentedRing",
    "RingIdeal",
    "build_truncation",
    "cubic",
    "axes",
]

VERIFY_LIMIT = 80
MAX_TRUNCATION_DIM = 20000


class RingModel:
    kind = "abstract"

    def __init__(self, field: GF, variables):
        self.field = field
        self.variables = list(variables)
        self.meta: dict = {}
        self._cache: dict = {}
        self._lock = threading.Lock()

    # -- interface for subclasses ------------------------------------------

    def _build(self, N: int) -> FiniteLocalAlgebra:
        raise NotImplementedError

    def _monomial(self, exps, N) -> np.ndarray | None:
        """Coordinates of a monomial in ``A_N`` (None when not in R)."""
        raise NotImplementedError

    def kernel_exponents(self, N: int, N2: int):
        """Basis labels of ``A_{N2}`` spanning ``K_N / K_{N2}``."""
        raise NotImplementedError

    def nakayama_margin(self, N: int) -> int:
        """A precision ``N'`` with ``K_{N'} in m K_N``."""
        return N + 1

    def with_field(self, field: GF) -> "RingModel":
        raise NotImplementedError

    def describe(self) -> str:
        return self.kind

    # -- shared machinery ------------------------------------------------------

    def truncation(self, N: int) -> FiniteLocalAlgebra:
        N = int(N)
        if N < 1:
            raise DomainError(f"precision must be >= 1, got {N}")
        with self._lock:
            A = self._cache.get(N)
            if A is None:
                A = self._build(N)
                A.meta["model"] = self
                A.meta["precision"] = N
                self._cache[N] = A
        return A

    def element(self, poly: Poly, N: int) -> np.ndarray:
        A = self.truncation(N)
        F = self.field
        v = np.zeros(A.dim, dtype=np.int64)
        for e, c in poly.terms.items():
            mono = self._monomial(e, N)
            if mono is None:
                raise DomainError(f"monomial {Poly.monomial(F, len(e), e).format(self.variables)} is not in the ring")
            v = F.add(v, F.mul(c, mono))
        return v

    def parse(self, text: str) -> Poly:
        return parse_poly(text, self.variables, self.field)

    def parse_ideal(self, text: str) -> "RingIdeal":
        return RingIdeal(self, gens=parse_ideal(text, self.variables, self.field))

    def ideal(self, gens, N: int) -> Submodule:
        """Image in ``A_N`` of the ideal generated by polynomials ``gens``."""
        A = self.truncation(N)
        return ideal_from_elements(A, [self.element(g, N) for g in gens])

    def kernel(self, N: int, N2: int) -> Submodule:
        """``K_N / K_{N2}`` as an ideal of ``A_{N2}`` (N <= N2)."""
        A = self.truncation(N2)
        idx = [A.labels.index(lab) for lab in self.kernel_exponents(N, N2)]
        return Submodule(A.regular, np.eye(A.dim, dtype=np.int64)[idx])

    def surjection(self, N2: int, N: int) -> np.ndarray:
        """Matrix of ``A_{N2} -> A_N``."""
        if N > N2:
            raise UsageError("surjection goes from higher to lower precision")
        A2, A = self.truncation(N2), self.truncation(N)
        P = np.zeros((A2.dim, A.dim), dtype=np.int64)
        for i, w in enumerate(A2.words):
            P[i] = A._actor.apply_word(A.unit(), w)
        return P

    def image(self, I: Submodule, N: int) -> Submodule:
        N2 = I.module.algebra.meta["precision"]
        A = self.truncation(N)
        if N == N2:
            return I
        P = self.surjection(N2, N)
        return Submodule(A.regular, self.field.matmul(I.basis, P))

    def preimage(self, I: Submodule, N2: int) -> Submodule:
        """Preimage in ``A_{N2}`` of an ideal of a lower truncation."""
        N = I.module.algebra.meta["precision"]
        if N == N2:
            return I
        A2 = self.truncation(N2)
        P = self.surjection(N2, N)
        annI = la.nullspace(I.basis, self.field, I.module.dim) if I.dim else la.identity(I.module.dim)
        if annI.shape[0] == 0:
            return A2.unit_ideal()
        S = la.left_nullspace(self.field.matmul(P, annI.T), self.field)
        return Submodule(A2.regular, S, reduced=True)

    def is_faithful(self, gens, N: int) -> bool:
        """Whether the ideal of R generated by ``gens`` contains ``K_N``."""
        N2 = self.nakayama_margin(N)
        I2 = self.ideal(gens, N2)
        return self.kernel(N, N2) <= I2

    def faithful_precision(self, gens, start: int = 1, limit: int = 200) -> int:
        N = max(1, start)
        cap = int(os.environ.get("CLOSINT_TRUNCATION_DIM_CAP", "600"))
        while N <= limit:
            if self.is_faithful(gens, N):
                return N
            N += 1
            if self.truncation_dim(N) > cap:
                raise ResourceError(f"no faithful precision with truncation dimension <= {cap}; "
                                    "is the ideal m-primary?")
        raise ResourceError(f"ideal does not contain a truncation kernel below precision {limit}")

    def normalization(self, N: int):
        """``(B, phi)``: truncated normalization as an ``A_N``-module and the unit image.

        Raises :class:`CapabilityError` when the family has no normalization data.
        """
        raise CapabilityError(f"no normalization data for {self.kind} rings")

    def default_precision(self) -> int:
        return self.meta.get("default_precision", 8)

    def truncation_dim(self, N: int) -> int:
        """Dimension of ``A_N`` without building it."""
        return self.truncation(N).dim


class RingIdeal:
    """Ideal of R given by generators or by a faithful image at some precision."""

    def __init__(self, model: RingModel, gens=None, sub: Submodule | None = None):
        if (gens is None) == (sub is None):
            raise UsageError("give either generators or a faithful submodule")
        self.model = model
        self.gens = list(gens) if gens is not None else None
        self.sub = sub
        self._faithful = None

    @property
    def precision(self) -> int | None:
        return None if self.sub is None else self.sub.module.algebra.meta["precision"]

    def at(self, N: int) -> Submodule:
        if self.gens is not None:
            return self.model.ideal(self.gens, N)
        N0 = self.precision
        return self.model.image(self.sub, N) if N <= N0 else self.model.preimage(self.sub, N)

    def faithful_precision(self, start=1) -> int:
        if self._faithful is None:
            if self.gens is not None:
                self._faithful = self.model.faithful_precision(self.gens, start)
            else:
                self._faithful = self.precision
        return self._faithful

    def display_precision(self) -> int:
        """A precision whose minimal generators are minimal generators in R."""
        return self.model.nakayama_margin(self.faithful_precision())

    def generators_at(self, N=None) -> list[str]:
        N = N or self.display_precision()
        return self.at(N).format_generators()

    def format(self, N=None) -> str:
        N = N or self.display_precision()
        return self.at(N).format()

    def equals(self, other: "RingIdeal") -> bool:
        if other.model is not self.model:
            raise UsageError("ideals of different rings")
        N = max(self.faithful_precision(), other.faithful_precision())
        return self.at(N) == other.at(N)

    def __eq__(self, other):
        return isinstance(other, RingIdeal) and other.model is self.model and self.equals(other)

    __hash__ = None

    def contains(self, other: "RingIdeal") -> bool:
        N = max(self.faithful_precision(), other.faithful_precision())
        return other.at(N) <= self.at(N)

    def contains_element(self, poly) -> bool:
        N = self.faithful_precision()
        return self.at(N).contains_vector(self.model.element(poly, N))

    @classmethod
    def unit(cls, model: RingModel) -> "RingIdeal":
        return cls(model, gens=[Poly.constant(model.field, len(model.variables), 1)])

    def __repr__(self):
        return f"RingIdeal{self.format()}"


def build_truncation(model: RingModel, N: int) -> FiniteLocalAlgebra:
    return model.truncation(N)


def _shift_matrix(n_rows_labels, index_of, shift_fn):
    n = len(n_rows_labels)
    M = np.zeros((n, n), dtype=np.int64)
    for i, lab in enumerate(n_rows_labels):
        j = index_of.get(shift_fn(lab))
        if j is not None:
            M[i, j] = 1
    return M


class SemigroupRing(RingModel):
    """``k[[t^S]]`` for a numerical semigroup S."""

    kind = "semigroup"

    def __init__(self, semigroup: NumericalSemigroup, field: GF):
        super().__init__(field, ["t"])
        self.semigroup = semigroup
        S = semigroup
        self.meta.update(
            gorenstein=S.is_symmetric(),
            dimension=1,
            interior_equals_artinistic=True,
            citation="graded one-dimensional domain; artinistic formula applies",
            default_precision=2 * S.conductor + 2 * max(S.generators) + 2,
        )

    def describe(self):
        return f"{self.semigroup} over {self.field!r}"

    def with_field(self, field):
        return SemigroupRing(self.semigroup, field)

    def _factor(self, s):
        gens = self.semigroup.generators
        # greedy by largest usable generator with DP certificate
        best = {0: ()}
        for n in range(1, s + 1):
            for k, g in enumerate(gens):
                if n - g in best:
                    w = list(best[n - g]) if best[n - g] else [0] * len(gens)
                    w[k] += 1
                    best[n] = tuple(w)
                    break
        if s not in best:
            raise DomainError(f"{s} is not in {self.semigroup}")
        return best[s] if s else (0,) * len(gens)

    def exponents(self, N):
        return self.semigroup.elements_below(N)

    def truncation_dim(self, N):
        return len(self.exponents(N))

    def _build(self, N):
        S = self.semigroup
        exps = self.exponents(N)
        gens_all = S.generators
        gen_ids = [k for k, g in enumerate(gens_all) if g < N]
        index = {s: i for i, s in enumerate(exps)}
        n = len(exps)
        labels = ["1" if s == 0 else f"t^{s}" for s in exps]
        gens, words, mats = [], [], []
        for k in gen_ids:
            g = gens_all[k]
            v = np.zeros(n, dtype=np.int64)
            v[index[g]] = 1
            gens.append(v)
            mats.append(_shift_matrix(exps, index, lambda s, g=g: s + g))
        for s in exps:
            w = self._factor(s)
            words.append(tuple(w[k] for k in gen_ids))
        A = FiniteLocalAlgebra(self.field, labels, gens, words, mats, name=f"{S}[N={N}]",
                               exponents=[(s,) for s in exps], check=n <= VERIFY_LIMIT)
        return A

    def _monomial(self, exps, N):
        (s,) = exps
        if s not in self.semigroup:
            return None
        A = self.truncation(N)
        v = np.zeros(A.dim, dtype=np.int64)
        if s < N:
            v[self.exponents(N).index(s)] = 1
        return v

    def kernel_exponents(self, N, N2):
        return [f"t^{s}" if s else "1" for s in self.exponents(N2) if s >= N]

    def nakayama_margin(self, N):
        return N + self.semigroup.multiplicity + self.semigroup.conductor

    def normalization(self, N):
        """``k[t]/(t^v)`` with ``v`` the least member of S that is ``>= N``."""
        A = self.truncation(N)
        v = self.semigroup.next_element(N)
        labels = list(range(v))
        index = {s: s for s in labels}
        gens = [self.semigroup.generators[k] for k in range(len(self.semigroup.generators))
                if self.semigroup.generators[k] < N]
        acts = [_shift_matrix(labels, index, lambda s, g=g: s + g) for g in gens]
        B = FiniteModule(A, v, acts, name=f"k[t]/(t^{v})", kind="normalization")
        unit = np.zeros(v, dtype=np.int64)
        unit[0] = 1
        B.meta["unit"] = unit
        return B

    def monomial_module(self, exponent_set, N, name="omega"):
        """Module ``E / K_N E`` for a monomial fractional ideal ``E`` (given by exponents inside S)."""
        A = self.truncation(N)
        S = self.semigroup
        E = sorted(set(exponent_set))
        top = max(E) + N + S.conductor + S.multiplicity + 2
        members = [z for z in range(top) if any(z - e >= 0 and (z - e) in S for e in E)]
        bigK = {z for z in range(top)
                if any(z - e >= N and (z - e) in S for e in E)}
        basis = [z for z in members if z not in bigK]
        index = {z: i for i, z in enumerate(basis)}
        gens = [g for g in S.generators if g < N]
        acts = [_shift_matrix(basis, index, lambda z, g=g: z + g) for g in gens]
        M = FiniteModule(A, len(basis), acts, name=name, kind="monomial")
        M.labels = [f"t^{z}" for z in basis]
        return M

    def canonical_module(self, N):
        return self.monomial_module(self.semigroup.canonical_exponents(), N, name="omega")


class HypersurfaceRing(RingModel):
    """``k[[x, y, ...]]/(x^d - g)`` with ``g`` in the other variables.

    Truncation ``N`` kills the pure powers of the non-rewritten variables.
    """

    kind = "hypersurface"

    def __init__(self, field: GF, variables, degree: int, rule: Poly, *, meta=None):
        super().__init__(field, variables)
        if any(e[0] for e in rule.terms):
            raise UsageError("the rewriting rule must not involve the rewritten variable")
        if any(sum(e) == 0 for e in rule.terms):
            raise UsageError("the rewriting rule must lie in the maximal ideal")
        self.degree = int(degree)
        self.rule = rule
        self._rule_powers = [Poly.constant(field, len(variables), 1)]
        self.meta.update(gorenstein=True, dimension=len(variables) - 1, default_precision=2)
        self.meta.update(meta or {})

    def describe(self):
        return (f"{self.variables[0]}^{self.degree} -> {self.rule.format(self.variables)} "
                f"over {self.field!r}")

    def with_field(self, field):
        rule = Poly(field, self.rule.nvars, {e: int(self.field.embed(c, field)) for e, c in self.rule.terms.items()})
        return HypersurfaceRing(field, self.variables, self.degree, rule, meta=dict(self.meta))

    def _power(self, m):
        while len(self._rule_powers) <= m:
            self._rule_powers.append(self._rule_powers[-1] * self.rule)
        return self._rule_powers[m]

    def truncation_dim(self, N):
        return self.degree * N ** (len(self.variables) - 1)

    def basis_exponents(self, N):
        r = len(self.variables) - 1
        out = [(i,) + rest for rest in itertools.product(range(N), repeat=r) for i in range(self.degree)]
        return sorted(out, key=lambda e: (sum(e), tuple(-x for x in e)))

    def normal_form(self, exps, N) -> dict:
        """``{basis exponent: coefficient}`` of a monomial modulo the rule and ``K_N``."""
        a = exps[0]
        m, r = divmod(a, self.degree)
        out: dict = {}
        F = self.field
        for e, c in self._power(m).terms.items():
            t = (r,) + tuple(x + y for x, y in zip(e[1:], exps[1:]))
            if all(x < N for x in t[1:]):
                out[t] = int(F.add(out.get(t, 0), c))
        return {k: v for k, v in out.items() if v}

    def _label(self, e):
        s = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.variables, e) if k)
        return s or "1"

    def _build(self, N):
        exps = self.basis_exponents(N)
        n = len(exps)
        if n > MAX_TRUNCATION_DIM:
            raise ResourceError(f"truncation of dimension {n} exceeds the cap {MAX_TRUNCATION_DIM}")
        index = {e: i for i, e in enumerate(exps)}
        nv = len(self.variables)
        mats, gens = [], []
        for k in range(nv):
            M = np.zeros((n, n), dtype=np.int64)
            for i, e in enumerate(exps):
                t = list(e)
                t[k] += 1
                for b, c in self.normal_form(tuple(t), N).items():
                    M[i, index[b]] = c
            mats.append(M)
            gens.append(M[0].copy())
        A = FiniteLocalAlgebra(self.field, [self._label(e) for e in exps], gens, exps, mats,
                               name=f"hypersurface[N={N}]", exponents=exps, check=n <= VERIFY_LIMIT)
        A.meta["index"] = index
        return A

    def _monomial(self, exps, N):
        A = self.truncation(N)
        v = np.zeros(A.dim, dtype=np.int64)
        for b, c in self.normal_form(tuple(exps), N).items():
            v[A.meta["index"][b]] = c
        return v

    def kernel_exponents(self, N, N2):
        return [self._label(e) for e in self.basis_exponents(N2) if any(x >= N for x in e[1:])]


class PresentedRing(RingModel):
    """``k[[x_1..x_r]]/(relations)`` truncated by powers of the maximal ideal."""

    kind = "presented"

    def __init__(self, field: GF, variables, relations, *, meta=None):
        super().__init__(field, variables)
        self.relations = [r for r in relations if not r.is_zero()]
        for r in self.relations:
            if any(sum(e) < 2 for e in r.terms):
                raise DomainError("relations must lie in the square of the maximal ideal")
        self.meta.update(default_precision=4)
        self.meta.update(self._axes_meta())
        self.meta.update(meta or {})

    def _axes_meta(self):
        r = len(self.variables)
        want = set()
        for i, j in itertools.combinations(range(r), 2):
            e = [0] * r
            e[i] += 1
            e[j] += 1
            want.add(tuple(e))
        got = set()
        for rel in self.relations:
            if len(rel.terms) != 1:
                return {"axes": False}
            got.update(rel.terms)
        if r >= 2 and got == want:
            return {"axes": True, "dimension": 1, "gorenstein": r == 2,
                    "interior_equals_artinistic": True,
                    "citation": "graded reduced curve; artinistic formula applies"}
        return {"axes": False}

    def describe(self):
        rels = ", ".join(r.format(self.variables) for r in self.relations)
        return f"k[[{','.join(self.variables)}]]/({rels}) over {self.field!r}"

    def with_field(self, field):
        rels = [Poly(field, r.nvars, {e: int(self.field.embed(c, field)) for e, c in r.terms.items()})
                for r in self.relations]
        return PresentedRing(field, self.variables, rels, meta=dict(self.meta))

    def truncation_dim(self, N):
        if N in self._cache or not self.meta.get("axes"):
            return self.truncation(N).dim
        return 1 + len(self.variables) * (N - 1)

    def _monomials(self, N):
        r = len(self.variables)
        monos = [e for d in range(N) for e in _compositions(d, r)]
        return monos

    def _label(self, e):
        s = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.variables, e) if k)
        return s or "1"

    def _reducer(self, N):
        """RREF of the relation space in degrees < N, columns ordered high degree first."""
        monos = self._monomials(N)
        cols = sorted(monos, key=lambda e: (-sum(e), e))
        cindex = {e: i for i, e in enumerate(cols)}
        rows = []
        for rel in self.relations:
            d0 = min(sum(e) for e in rel.terms)
            for mu in monos:
                if sum(mu) + d0 >= N:
                    continue
                row = np.zeros(len(cols), dtype=np.int64)
                for e, c in rel.terms.items():
                    t = tuple(a + b for a, b in zip(e, mu))
                    if sum(t) < N:
                        row[cindex[t]] = int(self.field.add(row[cindex[t]], c))
                rows.append(row)
        R, piv = la.rref(np.array(rows), self.field) if rows else (la.zeros(0, len(cols)), [])
        return cols, cindex, R, piv

    def _build(self, N):
        cols, cindex, R, piv = self._reducer(N)
        pivset = set(piv)
        std = [c for i, c in enumerate(cols) if i not in pivset]
        std.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
        n = len(std)
        if n > MAX_TRUNCATION_DIM:
            raise ResourceError(f"truncation of dimension {n} exceeds the cap {MAX_TRUNCATION_DIM}")
        sindex = {e: i for i, e in enumerate(std)}
        r = len(self.variables)
        mats, gens = [], []
        for k in range(r):
            M = np.zeros((n, n), dtype=np.int64)
            for i, e in enumerate(std):
                t = list(e)
                t[k] += 1
                t = tuple(t)
                if sum(t) >= N:
                    continue
                v = np.zeros(len(cols), dtype=np.int64)
                v[cindex[t]] = 1
                if R.shape[0]:
                    v = la.reduce_mod(v, R, piv, self.field)
                for c_i in np.nonzero(v)[0]:
                    M[i, sindex[cols[c_i]]] = v[c_i]
            mats.append(M)
            gens.append(M[0].copy() if n > 1 else np.zeros(n, dtype=np.int64))
        if N == 1:
            mats = [np.zeros((1, 1), dtype=np.int64) for _ in range(r)]
        A = FiniteLocalAlgebra(self.field, [self._label(e) for e in std], gens, std, mats,
                               name=f"presented[N={N}]", exponents=std, check=n <= VERIFY_LIMIT)
        A.meta["reducer"] = (cols, cindex, R, piv, sindex)
        return A

    def _monomial(self, exps, N):
        A = self.truncation(N)
        cols, cindex, R, piv, sindex = A.meta["reducer"]
        out = np.zeros(A.dim, dtype=np.int64)
        if sum(exps) >= N:
            return out
        v = np.zeros(len(cols), dtype=np.int64)
        v[cindex[tuple(exps)]] = 1
        if R.shape[0]:
            v = la.reduce_mod(v, R, piv, self.field)
        for c_i in np.nonzero(v)[0]:
            out[sindex[cols[c_i]]] = v[c_i]
        return out

    def kernel_exponents(self, N, N2):
        A = self.truncation(N2)
        return [lab for lab, e in zip(A.labels, A.exponents) if sum(e) >= N]

    def normalization(self, N):
        """For coordinate-axes rings: the product of ``k[x_i]/(x_i^N)``."""
        if not self.meta.get("axes"):
            raise CapabilityError("normalization data is only available for coordinate-axes rings")
        A = self.truncation(N)
        r = len(self.variables)
        # basis: (i, k) meaning x_i^k on branch i, k < N; unit is the sum of branch units
        labels = [(i, k) for i in range(r) for k in range(N)]
        index = {lab: j for j, lab in enumerate(labels)}
        acts = []
        for v in range(r):
            M = np.zeros((len(labels), len(labels)), dtype=np.int64)
            for (i, k), j in index.items():
                if i == v and k + 1 < N:
                    M[j, index[(i, k + 1)]] = 1
            acts.append(M)
        B = FiniteModule(A, len(labels), acts, name="normalization", kind="normalization")
        unit = np.zeros(len(labels), dtype=np.int64)
        for i in range(r):
            unit[index[(i, 0)]] = 1
        B.meta["unit"] = unit
        return B


def _compositions(d, r):
    if r == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, r - 1):
            yield (first,) + rest


def cubic(field: GF) -> HypersurfaceRing:
    """``k[[x,y,z]]/(x^3 + y^3 + z^3)`` presented by the rule ``x^3 -> -(y^3 + z^3)``."""
    rule = parse_poly("-(y^3 + z^3)", ["x", "y", "z"], field)
    f_pure = field.p % 3 == 1
    meta = {
        "gorenstein": True,
        "dimension": 2,
        "interior_equals_artinistic": True,
        "citation": "graded isolated singularity; artinistic formula applies",
        "f_pure": f_pure,
    }
    return HypersurfaceRing(field, ["x", "y", "z"], 3, rule, meta=meta)


def axes(field: GF, variables=("x", "y")) -> PresentedRing:
    """Union of coordinate axes, e.g. ``k[[x,y]]/(xy)``."""
    rels = []
    for a, b in itertools.combinations(variables, 2):
        rels.append(parse_poly(f"{a}*{b}", list(variables), field))
    return PresentedRing(field, list(variables), rels)

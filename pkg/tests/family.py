"""Enumerated family shared by the duality, core-hull and axiom suites.

All semigroup-ring truncations of dimension at most 6 (semigroups of genus
at most 3, plus the regular ring k[[t]]) over F_2 and F_3, and 50 random
quotients of k[x,y]/m^3 and k[x,y,z]/m^2 of dimension at most 5.
"""

from functools import lru_cache

import numpy as np

from closint import GF, NumericalSemigroup, SemigroupRing
from closint.closures import IdentityClosure, IntegralClosure, ModuleClosure
from closint.models import PresentedRing
from closint.lattice import enumerate_submodules
from closint.semigroups import semigroups_of_genus

FIELDS = (2, 3)
MAX_DIM = 6
RANDOM_QUOTIENTS = 50
RANDOM_MAX_DIM = 5
RANDOM_B = 5


def semigroups():
    out = [NumericalSemigroup((1,))]
    for g in range(1, 4):
        out += list(semigroups_of_genus(g))
    return out


@lru_cache(maxsize=None)
def semigroup_truncations():
    algs = []
    for p in FIELDS:
        F = GF(p)
        for S in semigroups():
            R = SemigroupRing(S, F)
            N = 1
            while R.truncation_dim(N) <= MAX_DIM:
                if R.truncation_dim(N) >= 2:
                    algs.append(R.truncation(N))
                N += 1
    return tuple(algs)


def _random_element(A, rng, low=1):
    """Random element of m^low (by basis degree)."""
    v = A.field.random(rng, A.dim)
    deg = [sum(e) for e in A.exponents] if A.exponents is not None else [0] + [1] * (A.dim - 1)
    v[[i for i, d in enumerate(deg) if d < low]] = 0
    return v


@lru_cache(maxsize=None)
def random_quotients(count=RANDOM_QUOTIENTS, seed=20261019):
    rng = np.random.default_rng(seed)
    bases = []
    for p in FIELDS:
        F = GF(p)
        bases.append(PresentedRing(F, ["x", "y"], []).truncation(3))
        bases.append(PresentedRing(F, ["x", "y", "z"], []).truncation(2))
    algs = []
    while len(algs) < count:
        A = bases[int(rng.integers(len(bases)))]
        k = int(rng.integers(1, 3))
        J = A.ideal([_random_element(A, rng, int(rng.integers(1, 3))) for _ in range(k)])
        if J.dim == 0 or A.dim - J.dim > RANDOM_MAX_DIM or A.dim - J.dim < 2:
            continue
        Q, _ = A.quotient(J, name=f"Q{len(algs)}")
        algs.append(Q)
    return tuple(algs)


def family():
    return semigroup_truncations() + random_quotients()


def random_modules(A, count=RANDOM_B, seed=0):
    """Random finite modules over ``A``: cyclic quotients, their duals, and sums of those."""
    rng = np.random.default_rng(seed)
    out = []
    R = A.regular
    while len(out) < count:
        I = A.ideal([_random_element(A, rng) for _ in range(int(rng.integers(0, 3)))])
        if I.dim == A.dim:
            continue
        Q, _ = I.quotient_module()
        kind = int(rng.integers(3))
        if kind == 1:
            Q = Q.dual()
        elif kind == 2:
            Q = Q.direct_sum(R.dual())
        out.append(Q)
    return out


def closures_for(A, seed=0):
    """identity, integral (where the ring supports it) and module[B] for random B."""
    cls = [IdentityClosure()]
    integral = IntegralClosure()
    if integral.supports(A):
        cls.append(integral)
    for i, B in enumerate(random_modules(A, seed=seed)):
        cls.append(ModuleClosure(B, name=f"module[B{i}]"))
    return cls


_LATTICES = {}


def lattice(A):
    key = id(A)
    if key not in _LATTICES:
        _LATTICES[key] = (A, enumerate_submodules(A.regular))
    return _LATTICES[key][1]


_DUALS = {}


def dual_lattice(A):
    """Lattice of the Matlis dual of the regular module (one dual module per algebra)."""
    key = id(A)
    if key not in _DUALS:
        _DUALS[key] = (A, enumerate_submodules(A.regular.dual()))
    return _DUALS[key][1]

"""
Cores, hulls and Matlis duality in a truncation
===============================================

Everything lives in A = R/(t^10) for the cusp R over F_3.  The core of an
ideal is the intersection of its minimal reductions; dually, the hull of a
submodule of the injective hull is the sum of its maximal expansions.
Annihilators carry one to the other.
"""

import numpy as np

from closint import GF, NumericalSemigroup, SemigroupRing
from closint.closures import IntegralClosure
from closint.corehull import cl_core, i_hull, minimal_reductions, reduction_expansion_bijection, spread
from closint.duality import dual_submodule, matlis_dual, smile_interior

R = SemigroupRing(NumericalSemigroup((2, 3)), GF(3))
A = R.truncation(10)
print("basis of A:", A.labels)

m = R.parse_ideal("(t^2, t^3)").at(10)
cl = IntegralClosure()

reds = minimal_reductions(m, cl)
print(len(reds), "minimal reductions of m:")
for K in reds:
    print("  ", K.format())
print("spread:", spread(m, cl).value)
print("core:", cl_core(m, cl).format())

# the dual module E = Hom(A, k) with the transposed action
pair = matlis_dual(A.regular)
E = pair.dual
print("socle of E has dimension", E.socle().dim)

# ann(m) in E, its hull under the smile interior, and the way back
X = dual_submodule(m, E)
H = i_hull(X, E.full(), smile_interior(cl))
back = dual_submodule(H, A.regular)
print("ann of the hull equals the core:", back == cl_core(m, cl))

# reductions of m match expansions of ann(m) one for one
print("bijection ok:", reduction_expansion_bijection(m, cl)["ok"])

# a random check of the pairing <f a, v> = <f, v a>
rng = np.random.default_rng(0)
a, v, f = (A.field.random(rng, A.dim) for _ in range(3))
print("pairing balanced:", pair.pairing(E.act(a, f), v) == pair.pairing(f, A.regular.act(a, v)))

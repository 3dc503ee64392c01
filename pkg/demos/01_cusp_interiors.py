"""
Interiors and hulls in the cusp k[[t^2, t^3]]
==============================================

The cusp is the semigroup ring of <2,3>.  Tight closure agrees with
integral closure here, and the artinistic interior is computed by the
double-colon formula over the irreducible ideals J_t = (t^{2t}).
"""

from closint import GF, NumericalSemigroup, SemigroupRing
from closint.artinistic import ArtinisticInterior, artinistic_interior, irreducible_sequence, test_ideal
from closint.closures import TightDim1
from closint.paper_suite import ring_hull

R = SemigroupRing(NumericalSemigroup((2, 3)), GF(5))
cl = TightDim1()
seq = irreducible_sequence(R)
print(R.describe(), "| sequence:", seq.name)

# a principal ideal loses its two lowest monomials
for m in (2, 3, 4):
    res = artinistic_interior(f"(t^{m} + t^{m + 1})", cl, seq)
    print(f"int(t^{m} + t^{m + 1}) =", res.ideal.format(), " stabilized at t =", res.stabilized_at)

# the partial intersections show how the formula settles
res = artinistic_interior("(t^3 + t^4)", cl, seq)
for t, P in enumerate(res.partials, 1):
    print(f"  after t = {t}:", P.format())

# hulls go the other way: the largest ideal with the same interior
op = ArtinisticInterior(cl, seq)
for text in ("(t^4, t^5)", "(t^5, t^6)", "(t^3, t^4)"):
    print(f"hull{text} =", ring_hull(R, text, op).format())

# the interior of R itself is the test ideal
print("test ideal:", test_ideal(cl, seq).ideal.format())

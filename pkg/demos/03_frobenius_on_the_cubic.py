"""
Frobenius closure on the Fermat cubic
=====================================

R = k[[x,y,z]]/(x^3 + y^3 + z^3).  Whether x^2 lies in the Frobenius closure
of (y, z) depends on p mod 3, and so does the Frobenius interior of (y, z).
"""

from closint import GF, RingIdeal, cubic
from closint.artinistic import artinistic_interior, irreducible_sequence, triviality_check
from closint.closures import FrobeniusClosure

fcl = FrobeniusClosure()
for p in (5, 7, 11, 13):
    R = cubic(GF(p))
    I = R.parse_ideal("(y, z)")
    c = RingIdeal(R, sub=fcl.close(I.at(I.faithful_precision())))
    inner = artinistic_interior("(y, z)", fcl, irreducible_sequence(R)).ideal
    print(f"p = {p:2d} (p mod 3 = {p % 3}):  closure {c.format():22s} interior {inner.format()}")

# for p = 1 mod 3 every J_t = (y^t, z^t) is Frobenius closed
for p in (7, 5):
    rep = triviality_check(fcl, irreducible_sequence(cubic(GF(p))), range(1, 3))
    print(f"GF({p}):", rep.summary())

"""
Checking closure axioms with certificates
=========================================

Every closure is tested exhaustively on the ideal lattices of small
truncations.  A failure comes with a certificate that can be replayed.
"""

from closint import GF, NumericalSemigroup, SemigroupRing
from closint.closures import (BrokenClosure, IntegralClosure, RejectedClosure, SocleCollapse, check_axioms,
                              check_nakayama, register_closure)
from closint.lattice import enumerate_submodules

mods = []
for gens in ((2, 3), (3, 4, 5)):
    for p in (2, 3):
        A = SemigroupRing(NumericalSemigroup(gens), GF(p)).truncation(7)
        mods.append(A.regular)
        print(f"{A.name} over {A.field!r}: {len(enumerate_submodules(A.regular))} ideals")

registry = {}
for cl in (IntegralClosure(), SocleCollapse()):
    rep = register_closure(cl, mods, registry)
    print(cl.name, "->", rep.summary())

# socle-collapse is a closure but not a Nakayama closure
nak = check_nakayama(SocleCollapse(), mods[:1])
print("socle-collapse Nakayama:", nak.passed)
print("  witness:", nak.certificates[0].describe())

# a closure that is not extensive is refused
try:
    register_closure(BrokenClosure(), mods[:1], registry)
except RejectedClosure as err:
    cert = err.report.certificates[0]
    print("broken closure rejected:", cert.describe(), "| replays:", cert.replay(BrokenClosure()))
print("registered:", sorted(registry))

"""Numerical semigroups and their monomial ideals.

These closed-form combinatorial answers serve as oracles for the linear
algebra engine on semigroup rings ``k[[t^S]]``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import DomainError, UsageError

__all__ = ["NumericalSemigroup", "SemigroupIdeal", "membership", "frobenius_number",
           "ideal_colon", "monomial_integral_closure", "semigroups_of_genus"]


def _minimal_generators(gens):
    gens = sorted(set(int(g) for g in gens))
    out = []
    for g in gens:
        # g is redundant if it is a sum of smaller minimal generators
        reach = np.zeros(g + 1, dtype=bool)
        reach[0] = True
        for s in range(1, g + 1):
            reach[s] = any(s >= h and reach[s - h] for h in out)
        if not reach[g]:
            out.append(g)
    return tuple(out)


@dataclass(frozen=True)
class NumericalSemigroup:
    """Additive submonoid of N with finite complement, given by generators."""

    generators: tuple
    frobenius: int = field(init=False, compare=False)
    table: np.ndarray = field(init=False, compare=False, repr=False)

    def __init__(self, generators):
        gens = [int(g) for g in generators]
        if not gens or any(g <= 0 for g in gens):
            raise DomainError("generators must be positive integers")
        if reduce(math.gcd, gens) != 1:
            raise DomainError(f"generators {sorted(set(gens))} have gcd != 1")
        gens = _minimal_generators(gens)
        object.__setattr__(self, "generators", gens)
        # Frobenius number is below (a-1)(b-1) bounds; grow a table until a
        # run of min(gens) consecutive members appears.
        a = gens[0]
        size = 2 * a * max(gens) + 2
        while True:
            tab = np.zeros(size, dtype=bool)
            tab[0] = True
            for s in range(1, size):
                tab[s] = any(s >= g and tab[s - g] for g in gens)
            gaps = np.nonzero(~tab)[0]
            frob = int(gaps[-1]) if gaps.size else -1
            if frob + a < size:
                break
            size *= 2
        object.__setattr__(self, "frobenius", frob)
        bound = frob + max(gens) + 1
        object.__setattr__(self, "table", tab[: bound + 1].copy())

    # -- basic queries -----------------------------------------------------

    def __contains__(self, n) -> bool:
        return membership(self, n)

    def __str__(self):
        return "S<" + ",".join(map(str, self.generators)) + ">"

    def __repr__(self):
        return f"NumericalSemigroup({list(self.generators)})"

    @classmethod
    def parse(cls, text: str) -> "NumericalSemigroup":
        m = re.fullmatch(r"\s*S<\s*(\d+(?:\s*,\s*\d+)*)\s*>\s*", text)
        if not m:
            raise UsageError(f"bad semigroup literal {text!r}; expected e.g. S<2,3>")
        return cls(int(x) for x in m.group(1).split(","))

    @property
    def multiplicity(self) -> int:
        return self.generators[0]

    @property
    def conductor(self) -> int:
        return self.frobenius + 1

    @property
    def gaps(self) -> list[int]:
        return [n for n in range(self.frobenius + 1) if not self.table[n]]

    @property
    def genus(self) -> int:
        return len(self.gaps)

    def elements_below(self, n: int) -> list[int]:
        return [s for s in range(n) if s in self]

    def next_element(self, n: int) -> int:
        """Smallest member that is ``>= n``."""
        s = max(int(n), 0)
        while s not in self:
            s += 1
        return s

    def is_symmetric(self) -> bool:
        """Gap symmetry: ``s in S`` iff ``F - s`` not in S (Gorenstein test)."""
        f = self.frobenius
        if f < 0:
            return True
        return all((s in self) != ((f - s) in self) for s in range(f + 1))

    def canonical_exponents(self, shift: int | None = None) -> list[int]:
        """Exponents of the canonical ideal ``{z : F - z not in S}`` translated by ``shift``.

        The default shift is the least one placing every element inside S.
        """
        f, m = self.frobenius, self.multiplicity
        K = [z for z in range(f + m + 2) if (f - z) < 0 or (f - z) not in self]
        if shift is None:
            shift = next(s for s in range(f + m + 2) if all((z + s) in self for z in K))
        return [z + shift for z in K]


def membership(S: NumericalSemigroup, n) -> bool:
    n = int(n)
    if n < 0:
        raise DomainError(f"membership needs n >= 0, got {n}")
    if n < len(S.table):
        return bool(S.table[n])
    return True


def frobenius_number(S: NumericalSemigroup) -> int:
    return S.frobenius


class SemigroupIdeal:
    """Monomial ideal ``E + S`` of a numerical semigroup ring.

    Stored by its irredundant generator exponents.  The unit ideal (which
    contains exponent 0) is flagged by :attr:`is_unit`.
    """

    __slots__ = ("semigroup", "generators")

    def __init__(self, semigroup: NumericalSemigroup, exponents):
        exps = sorted(set(int(e) for e in exponents))
        if not exps:
            raise DomainError("a semigroup ideal needs at least one generator")
        for e in exps:
            if e not in semigroup:
                raise DomainError(f"exponent {e} is not in {semigroup}")
        irred = []
        for e in exps:
            if not any((e - g) >= 0 and (e - g) in semigroup for g in irred):
                irred.append(e)
        self.semigroup = semigroup
        self.generators = tuple(irred)

    @property
    def is_unit(self) -> bool:
        return self.generators == (0,)

    @property
    def order(self) -> int:
        return self.generators[0]

    def __contains__(self, n) -> bool:
        n = int(n)
        return any(n - g >= 0 and (n - g) in self.semigroup for g in self.generators)

    def elements_below(self, n: int) -> list[int]:
        return [s for s in range(n) if s in self]

    @property
    def bound(self) -> int:
        # every s >= bound lies in the ideal
        return self.order + self.semigroup.conductor

    def __eq__(self, other):
        return (isinstance(other, SemigroupIdeal) and self.semigroup == other.semigroup
                and self.generators == other.generators)

    def __hash__(self):
        return hash((self.semigroup, self.generators))

    def __le__(self, other: "SemigroupIdeal") -> bool:
        return all(g in other for g in self.generators)

    def __repr__(self):
        if self.is_unit:
            return "(1)"
        return "(" + ",".join(f"t^{g}" for g in self.generators) + ")"

    def format_exponents(self) -> str:
        return "(" + ",".join(map(str, self.generators)) + ")"

    def __add__(self, other):
        _same(self, other)
        return SemigroupIdeal(self.semigroup, self.generators + other.generators)

    def __mul__(self, other):
        _same(self, other)
        return SemigroupIdeal(self.semigroup, [a + b for a in self.generators for b in other.generators])


def _same(I, J):
    if I.semigroup != J.semigroup:
        raise UsageError(f"ideals live in different semigroups {I.semigroup} and {J.semigroup}")


def ideal_colon(I: SemigroupIdeal, J: SemigroupIdeal) -> SemigroupIdeal:
    """``(I : J) = {s in S : s + J subset I}``."""
    _same(I, J)
    S = I.semigroup
    # s + g in I for all generators g of J suffices; above I.bound - min(J) all s qualify
    top = I.bound + 1
    members = [s for s in range(top + 1) if s in S and all((s + g) in I for g in J.generators)]
    return SemigroupIdeal(S, members)


def monomial_integral_closure(I: SemigroupIdeal) -> SemigroupIdeal:
    """Valuative closure: every member of S of order at least ``min(I)``."""
    S = I.semigroup
    m = I.order
    return SemigroupIdeal(S, [s for s in range(m, m + S.conductor + S.multiplicity + 1) if s in S])


def semigroups_of_genus(g: int) -> list[NumericalSemigroup]:
    """All numerical semigroups with exactly ``g`` gaps (brute force)."""
    from itertools import combinations

    out = []
    for gaps in combinations(range(1, 2 * g + 1), g):
        gapset = set(gaps)
        if 1 not in gapset and g > 0:
            continue
        members = [n for n in range(1, 2 * g + 2) if n not in gapset]
        # closure under addition inside the window
        ok = all((a + b) not in gapset for a in members for b in members)
        if ok:
            out.append(NumericalSemigroup(members + [2 * g + 1, 2 * g + 2]))
    return sorted(set(out), key=lambda S: S.generators)

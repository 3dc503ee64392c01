"""Closure operations, their dual interiors, cores and hulls over small local rings."""

__version__ = "0.1.0"

from .errors import (CapabilityError, ClosintError, ConstructionError, CrossCheckError, DomainError,
                     InconclusiveError, ParseError, ResourceError, UsageError)
from .fields import GF
from .semigroups import NumericalSemigroup
from .algebra import FiniteLocalAlgebra, FiniteModule, Submodule
from .models import RingIdeal, SemigroupRing, HypersurfaceRing, PresentedRing, axes, cubic
from .closures import (ClosureOperation, IdentityClosure, IntegralClosure, ModuleClosure, TightDim1,
                       TightSocle, FrobeniusClosure, check_axioms, check_nakayama)
from .duality import matlis_dual, dual_submodule, smile_interior, smile_closure, InteriorOperation
from .corehull import cl_core, i_hull, minimal_reductions, maximal_expansions, spread, cospread
from .artinistic import irreducible_sequence, artinistic_interior, ArtinisticInterior, test_ideal
from .ringspec import parse_ring_spec, make_closure

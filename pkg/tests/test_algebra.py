import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from closint import GF, NumericalSemigroup, SemigroupRing, axes, cubic
from closint.algebra import FiniteLocalAlgebra, colon, product, socle, socle_of_quotient, is_irreducible
from closint.errors import ConstructionError, DomainError, ParseError
from closint.expr import parse_ideal, parse_poly
from closint.lattice import enumerate_submodules
from closint.models import PresentedRing


def all_vectors(A):
    return [np.array(v, dtype=np.int64) for v in itertools.product(range(A.field.q), repeat=A.dim)]


def small_algebras():
    out = []
    for p in (2, 3):
        F = GF(p)
        out.append(SemigroupRing(NumericalSemigroup((2, 3)), F).truncation(5))
        out.append(SemigroupRing(NumericalSemigroup((3, 4, 5)), F).truncation(5))
        out.append(axes(F).truncation(3))
        out.append(PresentedRing(F, ["x", "y"], []).truncation(3))
    return out


ALGS = small_algebras()
IDS = [f"{A.name}/{A.field!r}" for A in ALGS]


def brute_ideal(A, elements):
    """Span of all products a*b, b in the basis, iterated to a fixed point."""
    vecs = [np.asarray(e) for e in elements]
    F = A.field
    S = A.regular.submodule(vecs) if vecs else A.zero_ideal()
    while True:
        more = [A.mul(v, A.basis_vector(i)) for v in S.basis for i in range(A.dim)]
        T = A.regular.submodule(list(S.basis) + more) if more else S
        if T == S:
            return S
        S = T


@pytest.mark.parametrize("A", ALGS, ids=IDS)
def test_multiplication_is_commutative_associative(A):
    rng = np.random.default_rng(0)
    for _ in range(30):
        a, b, c = (A.field.random(rng, A.dim) for _ in range(3))
        assert np.array_equal(A.mul(a, b), A.mul(b, a))
        assert np.array_equal(A.mul(A.mul(a, b), c), A.mul(a, A.mul(b, c)))
        assert np.array_equal(A.mul(A.unit(), a), a)


@pytest.mark.parametrize("A", ALGS, ids=IDS)
def test_ideal_generation_matches_fixed_point(A):
    rng = np.random.default_rng(1)
    for _ in range(10):
        gens = [A.field.random(rng, A.dim) for _ in range(2)]
        assert A.ideal(gens) == brute_ideal(A, gens)


@pytest.mark.parametrize("A", ALGS[:4], ids=IDS[:4])
def test_colon_matches_membership_oracle(A):
    lat = list(enumerate_submodules(A.regular))
    vecs = all_vectors(A)
    rng = np.random.default_rng(2)
    for _ in range(6):
        L, J = (lat[int(i)] for i in rng.integers(len(lat), size=2))
        C = colon(L, J)
        for v in vecs:
            inside = all(L.contains_vector(A.mul(v, j)) for j in J.basis)
            assert C.contains_vector(v) == inside


@pytest.mark.parametrize("A", ALGS, ids=IDS)
def test_product_and_socle(A):
    m = A.maximal_ideal
    m2 = product(m, m)
    assert m2 == brute_ideal(A, [A.mul(a, b) for a in m.basis for b in m.basis])
    soc = socle(A.regular)
    for v in all_vectors(A) if A.field.q ** A.dim <= 800 else []:
        kills = all(not np.any(A.mul(v, x)) for x in m.basis)
        assert soc.contains_vector(v) == kills
    assert socle_of_quotient(A.zero_ideal()) == soc


def brute_lattice_size(A):
    """Number of ideals: every subspace (grown one vector at a time) closed under multiplication."""
    M = A.regular
    vecs = all_vectors(A)[1:]
    seen = {M.zero().key: M.zero()}
    frontier = [M.zero()]
    while frontier:
        nxt = []
        for S in frontier:
            for v in vecs:
                if S.contains_vector(v):
                    continue
                T = M.submodule(list(S.basis) + [v])
                if T.key not in seen:
                    seen[T.key] = T
                    nxt.append(T)
        frontier = nxt
    return sum(all(S.contains_vector(A.mul(s, A.basis_vector(i))) for s in S.basis for i in range(A.dim))
               for S in seen.values())


@pytest.mark.parametrize("A", [ALGS[0], ALGS[2], ALGS[4]], ids=[IDS[0], IDS[2], IDS[4]])
def test_lattice_enumeration_is_complete(A):
    assert len(enumerate_submodules(A.regular)) == brute_lattice_size(A)


def test_semigroup_truncation_basis():
    R = SemigroupRing(NumericalSemigroup((3, 4, 5)), GF(5))
    A = R.truncation(8)
    assert A.labels == ["1", "t^3", "t^4", "t^5", "t^6", "t^7"]
    assert R.meta["gorenstein"] is False
    assert SemigroupRing(NumericalSemigroup((2, 3)), GF(5)).meta["gorenstein"] is True


def test_principal_ideal_dimension_oracle():
    # (t^4 + 2 t^5) in A_10 of <2,3> over F_5: multiply by the basis and row-reduce
    R = SemigroupRing(NumericalSemigroup((2, 3)), GF(5))
    A = R.truncation(10)
    I = R.parse_ideal("(t^4 + 2*t^5)").at(10)
    g = R.element(parse_poly("t^4 + 2*t^5", ["t"], GF(5)), 10)
    assert I == A.regular.submodule([A.mul(g, A.basis_vector(i)) for i in range(A.dim)])
    assert I.dim == 5


def test_irreducibility():
    R = SemigroupRing(NumericalSemigroup((2, 3)), GF(5))
    assert is_irreducible(R.parse_ideal("(t^4)").at(8))
    assert not is_irreducible(R.parse_ideal("(t^4, t^5)").at(8))


def test_cubic_truncation_relation():
    R = cubic(GF(7))
    A = R.truncation(3)
    x3 = R.element(parse_poly("x^3", R.variables, GF(7)), 3)
    rhs = R.element(parse_poly("-(y^3 + z^3)", R.variables, GF(7)), 3)
    assert np.array_equal(x3, rhs)


def test_faithful_precision_and_preimage():
    R = SemigroupRing(NumericalSemigroup((2, 3)), GF(5))
    I = R.parse_ideal("(t^4, t^5)")
    N = I.faithful_precision()
    assert N == 4
    up = R.preimage(I.at(N), N + 3)
    assert up == I.at(N + 3)
    assert R.image(up, N) == I.at(N)


def test_ring_ideal_equality_across_precisions():
    R = SemigroupRing(NumericalSemigroup((2, 3)), GF(5))
    assert R.parse_ideal("(t^2, t^3)").equals(R.parse_ideal("(t^3, t^2 + t^3)"))
    assert R.parse_ideal("(t^4, t^5)") == R.parse_ideal("(t^4, t^5, t^7)")
    assert not R.parse_ideal("(t^4)").equals(R.parse_ideal("(t^4, t^5)"))
    assert R.parse_ideal("(t^2, t^3)").contains(R.parse_ideal("(t^4)"))
    assert R.parse_ideal("(t^4, t^5)").format() == "(t^4, t^5)"


def test_from_tensor_rejects_non_associative():
    F = GF(2)
    T = np.zeros((3, 3, 3), dtype=np.int64)
    for i in range(3):
        T[0, i, i] = T[i, 0, i] = 1
    T[1, 1, 2] = 1  # e1^2 = e2, e1 e2 = 0, e2 e2 = 0: associative
    FiniteLocalAlgebra.from_tensor(F, T)
    T2 = T.copy()
    T2[1, 2, 1] = T2[2, 1, 1] = 1  # e1 e2 = e1 breaks nilpotence / associativity
    with pytest.raises(ConstructionError):
        FiniteLocalAlgebra.from_tensor(F, T2)


def test_quotient_by_unit_rejected():
    A = ALGS[0]
    with pytest.raises(DomainError):
        A.quotient(A.unit_ideal())


@pytest.mark.parametrize("text,column", [("(t^-1)", 4), ("(t^2,, t^3)", 6), ("(t^2 + )", 8)])
def test_parse_errors_are_positioned(text, column):
    with pytest.raises(ParseError) as err:
        parse_ideal(text, ["t"], GF(5))
    assert err.value.line == 1
    assert err.value.column == column


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(1, 6)), min_size=1, max_size=4))
def test_poly_format_round_trips(terms):
    F = GF(7)
    text = " + ".join(f"{c}*x^{a}*y^{b}" for a, b, c in terms)
    p = parse_poly(text, ["x", "y"], F)
    q = parse_poly(p.format(["x", "y"]), ["x", "y"], F) if not p.is_zero() else p
    assert q.terms == p.terms

import pytest

from closint import GF, NumericalSemigroup, SemigroupRing, axes, cubic
from closint.artinistic import (ArtinisticInterior, artinistic_interior, frobenius_kernel,
                                hom_test_membership, irreducible_sequence, template_recipe,
                                triviality_check, double_colon_term)
from closint.artinistic import test_ideal as compute_test_ideal
from closint.closures import FrobeniusClosure, IdentityClosure, IntegralClosure, TightDim1, TightSocle
from closint.errors import CapabilityError, ConstructionError, InconclusiveError, ParseError, UsageError
from closint.models import PresentedRing, RingIdeal


def cusp(p=5):
    return SemigroupRing(NumericalSemigroup((2, 3)), GF(p))


def test_default_sequences_are_irreducible_and_nested():
    for R in (cusp(5), SemigroupRing(NumericalSemigroup((3, 4, 5)), GF(7)), cubic(GF(5)), axes(GF(3))):
        seq = irreducible_sequence(R, verify=range(1, 4))
        for t in range(1, 4):
            assert seq.ideal(t + 1).equals(seq.ideal(t)) is False
            assert seq.ideal(t).contains(seq.ideal(t + 1))


def test_template_recipe():
    R = cubic(GF(7))
    seq = irreducible_sequence(R, "((y + x^2)^{n}, z^{n})")
    assert seq.ideal(2).equals(R.parse_ideal("((y + x^2)^2, z^2)"))
    gens = template_recipe(cusp(), "(t^{2*n + 2})")(3)
    assert len(gens) == 1 and gens[0].degree() == 8


@pytest.mark.parametrize("template", ["(t^{n + })", "(t^{__import__('os')})", "(t^{n**n**n})"])
def test_template_rejects_bad_index_expressions(template):
    with pytest.raises((ParseError, UsageError)):
        template_recipe(cusp(), template)(2)


def test_non_irreducible_recipe_rejected():
    with pytest.raises(ConstructionError):
        irreducible_sequence(cusp(), "(t^{2*n}, t^{2*n + 1})")


def test_no_default_sequence_for_non_gorenstein_presented():
    R = PresentedRing(GF(3), ["x", "y", "z"], [])
    with pytest.raises(CapabilityError):
        irreducible_sequence(R)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_example_interiors_in_the_cusp(m):
    R = cusp(7)
    seq = irreducible_sequence(R)
    res = artinistic_interior(f"(t^{m} + t^{m + 1})", TightDim1(), seq, cross_check=True)
    assert res.ideal.equals(R.parse_ideal(f"(t^{m + 2}, t^{m + 3})"))
    assert res.cross_check is True
    assert res.partials[-1].equals(res.ideal)


def test_identity_interior_is_the_ideal():
    R = cusp(5)
    seq = irreducible_sequence(R)
    for text in ("(t^3)", "(t^2, t^3)", "(t^4 + t^5, t^6)"):
        assert artinistic_interior(text, IdentityClosure(), seq).ideal.equals(R.parse_ideal(text))
    assert compute_test_ideal(IdentityClosure(), seq).ideal.equals(RingIdeal.unit(R))


def test_term_equals_smile_interior_in_the_quotient():
    R = cusp(5)
    seq = irreducible_sequence(R)
    I = R.parse_ideal("(t^3)")
    res = artinistic_interior(I, IntegralClosure(), seq, cross_check=True)
    assert res.cross_check
    T = double_colon_term(I, IntegralClosure(), seq, 2)
    assert RingIdeal(R, sub=T).contains(res.ideal)


def test_inconclusive_carries_partials():
    R = cusp(5)
    seq = irreducible_sequence(R)
    with pytest.raises(InconclusiveError) as err:
        artinistic_interior("(t^5)", TightDim1(), seq, t_max=2)
    assert len(err.value.partials) == 2
    assert err.value.exit_code == 2


def test_test_ideals():
    R = cusp(5)
    assert compute_test_ideal(TightDim1(), irreducible_sequence(R)).ideal.equals(R.parse_ideal("(t^2, t^3)"))
    R = cubic(GF(5))
    got = compute_test_ideal(TightSocle("m"), irreducible_sequence(R)).ideal
    assert got.equals(R.parse_ideal("(x, y, z)"))


def test_artinistic_interior_operation_matches_function():
    R = cusp(5)
    seq = irreducible_sequence(R)
    op = ArtinisticInterior(TightDim1(), seq)
    A = R.parse_ideal("(t^3, t^4)").at(10)
    inner = op.interior(A)
    want = artinistic_interior("(t^3, t^4)", TightDim1(), seq).ideal
    assert RingIdeal(R, sub=inner).equals(want)
    assert op.intrinsic is False


def test_triviality():
    R7 = cubic(GF(7))
    rep7 = triviality_check(FrobeniusClosure(2), irreducible_sequence(R7), range(1, 3))
    assert rep7.trivial and "trivial" in rep7.summary()
    R5 = cubic(GF(5))
    rep5 = triviality_check(FrobeniusClosure(2), irreducible_sequence(R5), range(1, 3))
    assert not rep5.trivial
    assert all(not ok for ok in rep5.checked.values())


def test_frobenius_kernel_contains_the_ideal():
    R = cusp(2)
    K, Jq, N = frobenius_kernel(R, "(t^4)", "t^2", 2)
    J = R.parse_ideal("(t^4)")
    assert RingIdeal(R, sub=K).contains(J)


@pytest.mark.parametrize("e", [1, 2])
def test_hom_routes_agree(e):
    R = cusp(3)
    for n in (1, 2):
        J = f"(t^{2 * n})"
        for a in ("1", "t^2", "t^3", "t^4"):
            s = hom_test_membership(a, J, e, "t^2", R, method="system")
            d = hom_test_membership(a, J, e, "t^2", R, method="adjoint")
            assert s == d


def test_hom_e0_is_membership_in_c_plus_j():
    R = cusp(5)
    assert hom_test_membership("t^2", "(t^4)", 0, "t^2", R)
    assert not hom_test_membership("t^3", "(t^4)", 0, "t^2", R)


def test_adjoint_route_needs_irreducible_j():
    with pytest.raises(CapabilityError):
        hom_test_membership("t^2", "(t^4, t^5)", 1, "t^2", cusp(5), method="adjoint")

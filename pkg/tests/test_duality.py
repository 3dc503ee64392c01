import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from closint import GF, NumericalSemigroup, SemigroupRing, axes
from closint.closures import IdentityClosure, IntegralClosure, ModuleClosure, SocleCollapse, TightSocle
from closint.duality import (IdentityInterior, MaximalIdealInterior, RejectedInterior, SmileInterior,
                             artinistic_version, check_interior_axioms, check_nakayama_interior,
                             dual_submodule, finitistic, matlis_dual, nakayama_agreement, register_interior,
                             selector_of, smile_closure, smile_interior, smile_selector)
from closint.errors import UsageError
from closint.lattice import enumerate_submodules


def algebras():
    out = []
    for p in (2, 3):
        F = GF(p)
        out.append(SemigroupRing(NumericalSemigroup((2, 3)), F).truncation(7))
        out.append(SemigroupRing(NumericalSemigroup((3, 4, 5)), F).truncation(7))
        out.append(axes(F).truncation(3))
    return out


ALGS = algebras()
IDS = [f"{A.name}/{A.field!r}" for A in ALGS]


@pytest.mark.parametrize("A", ALGS, ids=IDS)
def test_dual_is_a_module_and_pairing_is_balanced(A):
    pair = matlis_dual(A.regular)
    D = pair.dual
    D.verify()
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, v, f = (A.field.random(rng, A.dim) for _ in range(3))
        # <f a, v> = <f, v a>
        assert pair.pairing(D.act(a, f), v) == pair.pairing(f, A.regular.act(a, v))
    for G, H in zip(pair.bidual().gen_actions, A.regular.gen_actions):
        assert np.array_equal(G, H)


@pytest.mark.parametrize("A", ALGS, ids=IDS)
def test_annihilator_is_an_order_reversing_involution(A):
    M = A.regular
    pair = matlis_dual(M)
    lat = enumerate_submodules(M)
    ann = {L.key: dual_submodule(L, pair.dual) for L in lat}
    for L in lat:
        X = ann[L.key]
        assert X.dim == M.dim - L.dim
        back = pair.transport(dual_submodule(X, pair.bidual()))
        assert back == L
    for L in lat:
        for N in lat.supersets(L):
            assert ann[N.key] <= ann[L.key]


@pytest.mark.parametrize("A", ALGS, ids=IDS)
def test_injective_hull_has_simple_socle(A):
    assert A.regular.dual().socle().dim == 1


@pytest.mark.parametrize("cl", [IdentityClosure(), IntegralClosure(), SocleCollapse()], ids=lambda c: c.name)
def test_smile_is_an_involution(cl):
    for A in ALGS:
        if not cl.supports(A):
            continue
        back = smile_closure(smile_interior(cl))
        for N in enumerate_submodules(A.regular):
            assert back.close(N) == cl.close(N)


def test_smile_interior_of_integral_is_an_interior():
    op = smile_interior(IntegralClosure())
    assert isinstance(op, SmileInterior) and op.source.name == "integral"
    rep = check_interior_axioms(op, [A.regular for A in ALGS[:2]])
    assert rep.passed, rep.summary()
    assert isinstance(smile_interior(IdentityClosure()), IdentityInterior)
    assert smile_interior(IntegralClosure()) is not smile_interior(IntegralClosure())
    cl = IntegralClosure()
    assert smile_interior(cl) is smile_interior(cl)


def test_times_m_is_rejected_for_idempotence():
    with pytest.raises(RejectedInterior) as err:
        register_interior(MaximalIdealInterior(), [ALGS[0].regular], registry={})
    assert not err.value.report.results["idempotence"]


def test_non_residual_closures_have_no_smile():
    with pytest.raises(UsageError):
        smile_interior(TightSocle("m"))


@pytest.mark.parametrize("cl", [IntegralClosure(), SocleCollapse(), IdentityClosure()], ids=lambda c: c.name)
def test_nakayama_agreement(cl):
    A = ALGS[0]
    agree, rc, ri = nakayama_agreement(cl, A.regular)
    assert agree
    assert rc.passed == (cl.name != "socle-collapse")


def test_interior_nakayama_on_identity():
    assert check_nakayama_interior(IdentityInterior(), [ALGS[1].regular]).passed


def test_module_closure_smile_on_a_quotient_module():
    # closures and interiors on a quotient of the regular module
    A = ALGS[0]
    cl = ModuleClosure(A.maximal_ideal.quotient_module()[0], name="module[k]")
    back = smile_closure(smile_interior(cl))
    small = A.maximal_ideal.times_maximal().times_maximal()
    Q, _ = small.quotient_module()
    for N in enumerate_submodules(Q):
        assert back.close(N) == cl.close(N)
    assert check_interior_axioms(smile_interior(cl), [Q]).passed


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(range(len(ALGS))), st.integers(0, 10**6))
def test_finitistic_and_artinistic_versions_are_smile_dual(idx, seed):
    # (alpha_f)^smile = (alpha^smile)^f on quotients of the regular module
    A = ALGS[idx]
    lat = list(enumerate_submodules(A.regular))
    K = lat[np.random.default_rng(seed).integers(len(lat))]
    if K.is_full:
        return
    X, _ = K.quotient_module()
    alpha = selector_of(SocleCollapse())
    lhs = smile_selector(finitistic(alpha))(X)
    rhs = artinistic_version(smile_selector(alpha))(X)
    assert lhs == rhs

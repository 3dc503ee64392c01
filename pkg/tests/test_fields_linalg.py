import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from closint import GF
from closint import linalg as la
from closint.fields import is_prime

FIELDS = [GF(2), GF(3), GF(5), GF(7), GF(2, 2), GF(3, 2), GF(2, 3)]


def test_is_prime_small():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_bad_field_rejected():
    with pytest.raises(ValueError):
        GF(6)


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_field_axioms_exhaustive(F):
    q = F.q
    a, b = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    # commutativity and distributivity over all pairs/triples
    assert np.array_equal(F.add(a, b), F.add(b, a))
    assert np.array_equal(F.mul(a, b), F.mul(b, a))
    for c in range(q):
        assert np.array_equal(F.mul(c, F.add(a, b)), F.add(F.mul(c, a), F.mul(c, b)))
    nz = np.arange(1, q)
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    assert np.all(F.add(np.arange(q), F.neg(np.arange(q))) == 0)


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_frobenius_is_pth_power(F):
    for a in range(F.q):
        assert F.frobenius(a) == F.power(a, F.p)
        assert F.frobenius_inverse(F.frobenius(a)) == a


def test_extension_embedding_is_a_ring_map():
    F, K = GF(3), GF(3, 2)
    for a in range(3):
        for b in range(3):
            assert F.embed(F.mul(a, b), K) == K.mul(F.embed(a, K), F.embed(b, K))
            assert F.embed(F.add(a, b), K) == K.add(F.embed(a, K), F.embed(b, K))


def test_extension_format():
    K = GF(5, 2)
    assert K.format(0) == "0"
    assert K.format(K.gen) == "w"
    assert K.format(K.add(K.gen, 3)) == "w+3"


def _span_size(M, F):
    """Number of distinct vectors in the row span (brute force)."""
    rows = [tuple(r) for r in M]
    seen = set()
    for coeffs in itertools.product(range(F.q), repeat=len(rows)):
        v = np.zeros(M.shape[1], dtype=np.int64)
        for c, r in zip(coeffs, rows):
            v = F.add(v, F.mul(c, np.array(r)))
        seen.add(tuple(v))
    return len(seen)


small_matrix = st.tuples(st.integers(1, 3), st.integers(1, 4), st.integers(0, 10**6))


@settings(max_examples=60, deadline=None)
@given(small_matrix, st.sampled_from([GF(2), GF(3), GF(2, 2)]))
def test_rank_matches_span_count(shape, F):
    n, m, seed = shape
    M = F.random(np.random.default_rng(seed), (n, m))
    assert F.q ** la.rank(M, F) == _span_size(M, F)


@settings(max_examples=80, deadline=None)
@given(small_matrix, st.sampled_from([GF(2), GF(5), GF(3, 2)]))
def test_nullspace_is_kernel(shape, F):
    n, m, seed = shape
    M = F.random(np.random.default_rng(seed), (n, m))
    K = la.nullspace(M, F)
    assert K.shape[0] == m - la.rank(M, F)
    if K.shape[0]:
        assert not np.any(F.matmul(M, K.T))


@settings(max_examples=60, deadline=None)
@given(small_matrix, st.sampled_from([GF(3), GF(7), GF(2, 2)]))
def test_rref_is_idempotent_and_spans(shape, F):
    n, m, seed = shape
    M = F.random(np.random.default_rng(seed), (n, m))
    R, piv = la.rref(M, F)
    R2, piv2 = la.rref(R, F)
    assert np.array_equal(R, R2) and piv == piv2
    assert la.contains(R, M, F) and la.contains(M, R, F) if R.shape[0] else not np.any(M)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([GF(2), GF(5), GF(2, 3)]))
def test_intersection_dimension_formula(seed, F):
    rng = np.random.default_rng(seed)
    U = F.random(rng, (2, 4))
    W = F.random(rng, (2, 4))
    S = la.sum_spaces(U, W, F)
    I = la.intersect_spaces(U, W, F)
    assert la.rank(U, F) + la.rank(W, F) == S.shape[0] + I.shape[0]
    for v in I:
        assert la.in_span(v, U, F) and la.in_span(v, W, F)


def test_solve_finds_solution_or_none():
    F = GF(5)
    A = np.array([[1, 2], [2, 4]])
    assert la.solve(A, np.array([1, 3]), F) is None
    x = la.solve(A, np.array([1, 2]), F)
    assert np.array_equal(F.matmul(A, x[:, None])[:, 0], [1, 2])

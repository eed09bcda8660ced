import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ftdesigns import gf
from ftdesigns import linalg as la
from ftdesigns.errors import CapExceeded, DimensionMismatch, SingularMatrix


def test_point_ids_are_lexicographic_ranks():
    pts = oracles.vectors(3, 3)
    assert [la.point_id(v, 3) for v in pts] == list(range(27))
    assert np.array_equal(la.all_points(3, 3), np.array(pts))


def test_addition_and_negation_tables():
    add = la.addition_table(3, 2)
    neg = la.negation(3, 2)
    pts = oracles.vectors(3, 2)
    for i, u in enumerate(pts):
        assert pts[neg[i]] == tuple((-x) % 3 for x in u)
        for j, w in enumerate(pts):
            assert pts[add[i, j]] == tuple((a + b) % 3 for a, b in zip(u, w))


def invertible(p=3, d=3):
    row = st.lists(st.integers(0, p - 1), min_size=d, max_size=d)
    return (st.lists(row, min_size=d, max_size=d)
            .filter(lambda rows: oracles.brute_rank(rows, p) == d)
            .map(lambda rows: np.array(rows, dtype=np.int64)))


@settings(max_examples=60, deadline=None)
@given(invertible())
def test_inverse_and_product(A):
    Ai = la.mat_inv(A, 3)
    assert np.array_equal(la.mat_mul(A, Ai, 3), la.identity(3))
    assert tuple(map(tuple, la.mat_mul(A, A, 3).tolist())) == oracles.mmul(A.tolist(), A.tolist(), 3)
    assert la.mat_det(A, 3) != 0


@settings(max_examples=60, deadline=None)
@given(invertible())
def test_point_permutation_is_row_action(A):
    perm = la.point_permutation(A, 3)
    pts = oracles.vectors(3, 3)
    assert sorted(perm.tolist()) == list(range(27))
    for i in (1, 5, 26):
        assert pts[perm[i]] == oracles.vmul(pts[i], A.tolist(), 3)


def test_singular_inverse_raises():
    with pytest.raises(SingularMatrix):
        la.mat_inv(np.array([[1, 2], [2, 4]]), 5)


def test_matrix_order_and_power():
    C = la.companion_matrix([1, 1, 0, 1], 2)   # x^3 + x + 1, primitive
    assert la.matrix_order(C, 2) == 7
    assert np.array_equal(la.mat_pow(C, 7, 2), la.identity(3))
    with pytest.raises(CapExceeded):
        la.matrix_order(C, 2, limit=3)


@pytest.mark.parametrize("p,d,t", [(2, 4, 2), (3, 3, 1), (3, 4, 2), (2, 5, 2), (3, 3, 2)])
def test_enumerate_subspaces_count(p, d, t):
    subs = la.enumerate_subspaces(p, d, t)
    assert len(subs) == la.gaussian_binomial(d, t, p)
    assert len({S.basis for S in subs}) == len(subs)
    assert all(len(S.members()) == p**t for S in subs)


@pytest.mark.parametrize("p,d,t", [(2, 4, 2), (3, 3, 1), (2, 3, 2)])
def test_gaussian_binomial_matches_brute_force(p, d, t):
    assert la.gaussian_binomial(d, t, p) == oracles.count_subspaces(p, d, t)


def test_gaussian_binomial_values():
    assert la.gaussian_binomial(4, 2, 3) == 130
    assert la.gaussian_binomial(4, 1, 3) == 40


def test_span_canonical_and_image():
    S1 = la.span([[1, 1, 0, 0], [0, 1, 0, 0]], 3)
    S2 = la.span([[1, 0, 0, 0], [2, 2, 0, 0]], 3)
    assert S1 == S2 and S1.dim == 2
    A = la.block_diag(np.array([[0, 1], [1, 0]]), la.identity(2))
    assert S1.image(A) == S1
    with pytest.raises(DimensionMismatch):
        la.span([[1, 0], [0, 1, 0]], 3)


def test_mul_matrix_and_blowup():
    F = gf.field_create(3, 2)
    w = F.omega
    M = la.mul_matrix(w)
    for a in F.elements():
        assert np.array_equal(la.coords(a) @ M % 3, la.coords(a * w))
    B = la.field_blowup([[w, F.zero], [F.zero, F.one]], F)
    assert B.shape == (4, 4)
    with pytest.raises(SingularMatrix):
        la.field_blowup([[F.zero, F.zero], [F.zero, F.one]], F)


def test_frobenius_matrix_is_linear_version_of_power():
    F = gf.field_create(3, 4, [2, 1, 0, 0, 1])
    M = la.frobenius_matrix(F, 2)
    for i in (1, 7, 40, 80):
        a = F.from_index(i)
        assert np.array_equal(la.coords(a) @ M % 3, la.coords(a**9))
    assert la.matrix_order(M, 3) == 2


def test_tensor_kron_order():
    u, v = [1, 0, 1], [0, 1]
    assert la.tensor(u, v, 2).tolist() == [0, 1, 0, 0, 0, 1]

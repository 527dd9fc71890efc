from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from sigmastab.errors import PreconditionError
from sigmastab.symplectic import (
    PauliVector,
    SigmaInvolution,
    SubspaceBasis,
    apply_sigma,
    centralizer,
    form_matrix,
    is_sigma_isotropic,
    joint_weight,
    nullspace,
    pairings,
    polynomial_isotropy_check,
    rank,
    same_span,
    sigma_form,
)

vectors = lambda n, p: arrays(np.int64, 2 * n, elements=st.integers(0, p - 1))  # noqa: E731


def test_standard_form_example():
    u = PauliVector((1, 0), (0, 0))
    v = PauliVector((0, 0), (1, 0))
    assert sigma_form(u, v, 2) == 1
    assert sigma_form(v, u, 3) == 2  # -1 mod 3


def test_sigma_from_m():
    s = SigmaInvolution.from_m(5, -1)
    assert s.perm == (0, 4, 3, 2, 1)
    assert np.array_equal(s.apply([10, 11, 12, 13, 14]), [10, 14, 13, 12, 11])
    with pytest.raises(PreconditionError):
        SigmaInvolution((1, 2, 0))


def test_joint_weight():
    assert joint_weight(PauliVector((1, 0, 0), (1, 1, 0))) == 2


@settings(max_examples=200, deadline=None)
@given(vectors(5, 3), vectors(5, 3), st.sampled_from([1, 4]))
def test_form_is_alternating(u, v, m):
    assert sigma_form(u, u, 3, m) == 0
    assert (sigma_form(u, v, 3, m) + sigma_form(v, u, 3, m)) % 3 == 0


@settings(max_examples=200, deadline=None)
@given(vectors(5, 2), vectors(5, 2))
def test_form_matches_polynomial_identity(u, v):
    # <N^i u, v>_sigma = 0 for all i  <=>  a d(X^-m) - b c(X^-m) = 0
    from sigmastab.symplectic import shift

    for m in (-1, 1):
        shifts_zero = all(sigma_form(shift(u, i)[0], v, 2, m) == 0 for i in range(5))
        assert shifts_zero == polynomial_isotropy_check(u, v, 2, m)


@settings(max_examples=100, deadline=None)
@given(arrays(np.int64, (4, 7), elements=st.integers(0, 4)))
def test_nullspace_and_rank(M):
    N = nullspace(M, 5)
    assert N.shape[0] == 7 - rank(M, 5)
    if N.size:
        assert not np.any(M @ N.T % 5)


@settings(max_examples=50, deadline=None)
@given(arrays(np.int64, (3, 10), elements=st.integers(0, 1)))
def test_centralizer_dimension_law(rows):
    S = SubspaceBasis.span(rows, 5, 2)
    C = centralizer(S, 4)
    assert S.dim + C.dim == 10
    assert not np.any(pairings(C.rows, S.rows, 2, 4)) if C.dim and S.dim else True


def test_same_span():
    A = np.array([[1, 0, 1, 0], [0, 1, 0, 1]])
    B = np.array([[1, 1, 1, 1], [1, 0, 1, 0]])
    assert same_span(A, B, 2)
    assert not same_span(A, B[:1], 2)


def test_isotropic_detection():
    S = SubspaceBasis.span([[1, 0, 0, 0], [0, 0, 1, 0]], 2, 2)  # X1 and Z1 anticommute
    assert not is_sigma_isotropic(S)
    T = SubspaceBasis.span([[1, 1, 0, 0], [0, 0, 1, 1]], 2, 2)  # XX, ZZ commute
    assert is_sigma_isotropic(T)


@settings(max_examples=100, deadline=None)
@given(arrays(np.int64, (2, 10), elements=st.integers(0, 1)), st.sampled_from([1, 4]))
def test_sigma_picture_equivalence(rows, m):
    S = SubspaceBasis.span(rows, 5, 2)
    Ssig = SubspaceBasis.span(apply_sigma(S.rows, m), 5, 2) if S.dim else S
    assert is_sigma_isotropic(S, m) == is_sigma_isotropic(Ssig, None)
    C = centralizer(S, m)
    assert same_span(apply_sigma(C.rows, m), centralizer(Ssig, None).rows, 2)


def test_form_matrix_shape():
    M = form_matrix(3, 3, 1)
    assert M.shape == (6, 6)
    assert np.array_equal((M + M.T) % 3, np.zeros((6, 6)))

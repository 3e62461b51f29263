"""Rank decisions, subspace arithmetic and clustering on hand-checked cases."""

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from liespectra.errors import InputError
from liespectra.numeric import (
    DEFAULT_TOL,
    Subspace,
    ToleranceProfile,
    as_matrix,
    cluster_values,
    collect_rank_diagnostics,
    eigenvalues,
    generalized_kernel,
    image_basis,
    intersect,
    kernel_basis,
    rank,
    subspace_sum,
)

ABS_TOLERANCE = 1e-12
MATRIX_DIM = 4


def test_default_profile():
    assert DEFAULT_TOL.eps_rank == 1e-9
    assert DEFAULT_TOL.eps_cluster == 1e-6
    assert DEFAULT_TOL.eps_residual == 1e-8


def test_profile_rejects_bad_ordering():
    with pytest.raises(InputError):
        ToleranceProfile(eps_rank=1e-3, eps_cluster=1e-6, eps_residual=1e-8)


def test_profile_rejects_out_of_range():
    with pytest.raises(InputError):
        ToleranceProfile(eps_rank=0.0, eps_cluster=1e-6, eps_residual=1e-8)
    with pytest.raises(InputError):
        ToleranceProfile(eps_rank=1e-9, eps_cluster=1e-6, eps_residual=-1e-8)


def test_rank_exact_cases():
    assert rank(np.eye(4)) == 4
    assert rank(np.zeros((3, 5))) == 0
    assert rank([[1.0, 2.0], [2.0, 4.0]]) == 1
    assert rank([[1.0, 2.0], [2.0, 4.0 + 1e-3]]) == 2


def test_rank_noise_floor():
    # pure noise looks like rank 1 relative to itself; the floor kills it
    noise = np.full((3, 3), 1e-13)
    assert rank(noise) == 1
    assert rank(noise, floor=1.0) == 0


def test_as_matrix_guards():
    with pytest.raises(InputError):
        as_matrix([[1.0, 2.0]], square=True)
    with pytest.raises(InputError):
        as_matrix([[np.nan, 0.0], [0.0, 1.0]])
    with pytest.raises(InputError):
        as_matrix([1.0, 2.0, 3.0])
    out = as_matrix([[1, 2], [3, 4]])
    assert out.dtype == np.complex128


def test_kernel_basis_oracle():
    ker = kernel_basis([[1.0, 1.0]])
    assert ker.dim == 1
    v = ker.basis[:, 0]
    assert abs(v[0] + v[1]) <= ABS_TOLERANCE
    assert abs(np.linalg.norm(v) - 1.0) <= ABS_TOLERANCE


def test_image_basis_oracle():
    img = image_basis(np.ones((3, 2)))
    assert img.dim == 1
    assert img.contains(np.ones(3) / np.sqrt(3))


def test_subspace_membership():
    s = Subspace.spanned_by(np.array([[1.0, 1.0], [0.0, 2.0], [0.0, 0.0]]))
    assert s.dim == 2
    assert s.contains([3.0, 4.0, 0.0])
    assert not s.contains([0.0, 0.0, 1.0])
    assert Subspace.full(3).contains_subspace(s)
    assert not s.contains_subspace(Subspace.full(3))


def test_subspace_project_idempotent():
    s = Subspace.spanned_by(np.array([[1.0], [1.0], [0.0]]))
    v = np.array([2.0, 0.0, 5.0])
    p = s.project(v)
    assert np.allclose(s.project(p), p, atol=ABS_TOLERANCE)
    assert s.contains(p)


def test_intersection_of_planes():
    e = np.eye(3)
    s1 = Subspace.spanned_by(e[:, :2])
    s2 = Subspace.spanned_by(e[:, 1:])
    line = intersect(s1, s2)
    assert line.dim == 1
    assert line.contains(e[:, 1])


def test_sum_of_lines():
    e = np.eye(3)
    s = subspace_sum(
        Subspace.spanned_by(e[:, [0]]),
        Subspace.spanned_by(e[:, [1]]),
    )
    assert s.dim == 2
    assert s.contains([1.0, -2.0, 0.0])


def test_eigenvalues_of_triangular():
    vals = eigenvalues(np.triu(np.arange(1.0, 10.0).reshape(3, 3)))
    assert np.allclose(sorted(v.real for v in vals), [1.0, 5.0, 9.0], atol=1e-12)


def test_cluster_values_merges_near_duplicates():
    merged = cluster_values([1.0, 1.0 + 5e-7, 2.0], 1e-6)
    assert len(merged) == 2
    assert abs(merged[0] - (1.0 + 2.5e-7)) <= 1e-9
    assert abs(merged[1] - 2.0) <= 1e-12


def test_cluster_values_keeps_separated():
    assert len(cluster_values([0.0, 1e-5, 2e-5], 1e-6)) == 3


def test_generalized_kernel_jordan_block():
    nil = np.diag([1.0, 1.0], k=1)  # 3x3 nilpotent Jordan block
    assert generalized_kernel(nil, 0.0, exponent=1).dim == 1
    assert generalized_kernel(nil, 0.0, exponent=2).dim == 2
    assert generalized_kernel(nil, 0.0).dim == 3
    assert generalized_kernel(nil, 1.0).dim == 0
    with pytest.raises(InputError):
        generalized_kernel(nil, 0.0, exponent=0)


def test_generalized_kernel_mixed_spectrum():
    m = np.array([[2.0, 1.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 5.0]])
    assert generalized_kernel(m, 2.0).dim == 2
    assert generalized_kernel(m, 5.0).dim == 1


def test_rank_diagnostics_collects():
    with collect_rank_diagnostics() as diag:
        rank(np.eye(2))
        rank(np.zeros((2, 2)))
    out = diag.summary()
    assert out["rank_calls"] == 2
    assert out["smallest_accepted_sv"] == 1.0


def test_rank_diagnostics_nested_contexts_propagate():
    # an inner collector must not swallow records from the outer one
    with collect_rank_diagnostics() as outer:
        rank(np.eye(2))
        with collect_rank_diagnostics() as inner:
            rank(np.eye(3))
        rank(np.eye(2))
    assert inner.summary()["rank_calls"] == 1
    assert outer.summary()["rank_calls"] == 3


@seed(7)
@settings(deadline=None, max_examples=40)
@given(
    arrays(
        np.float64,
        (MATRIX_DIM, MATRIX_DIM),
        # integer entries keep A^H A away from floating underflow
        elements=st.integers(min_value=-5, max_value=5).map(float),
    )
)
def test_rank_invariants(m):
    r = rank(m)
    assert rank(m.T) == r
    assert rank(m.conj().T @ m) == r
    assert kernel_basis(m).dim + r == MATRIX_DIM


@seed(11)
@settings(deadline=None, max_examples=30)
@given(
    arrays(
        np.float64,
        (MATRIX_DIM, 2),
        elements=st.floats(min_value=-3.0, max_value=3.0),
    )
)
def test_kernel_vectors_annihilate(m):
    ker = kernel_basis(m.T)
    for j in range(ker.dim):
        assert np.linalg.norm(m.T @ ker.basis[:, j]) <= 1e-8 * max(
            1.0, np.abs(m).max()
        )

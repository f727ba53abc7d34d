"""Numerical primitives: ranks, kernels, clustering, projector algebra."""

import numpy as np
import pytest

from cstarkit.linalg import (
    DEFAULT_TOL,
    Tolerance,
    adj,
    cluster_points,
    eig,
    frob,
    hs_inner,
    nullspace,
    opnorm,
    orth_columns,
    range_intersection_projector,
    range_sum_projector,
    rank,
    random_complex_matrix,
    random_unitary,
)


def test_tolerance_defaults():
    assert DEFAULT_TOL.eps_rank == 1e-9
    assert DEFAULT_TOL.eps_eig == 1e-7
    assert DEFAULT_TOL.eps_verify == 1e-8


def test_norms_and_inner():
    a = np.array([[3.0, 0.0], [0.0, 4.0]])
    assert frob(a) == pytest.approx(5.0)
    assert opnorm(a) == pytest.approx(4.0)
    b = np.array([[0.0, 1.0], [0.0, 0.0]])
    # HS inner is conjugate-linear in the first slot
    assert hs_inner(1j * b, b) == pytest.approx(-1j)
    assert np.allclose(adj(1j * b), -1j * b.T)


def test_rank_and_nullspace_tall():
    # 50 stacked copies do not change the kernel
    a = np.vstack([np.eye(3)[:2]] * 50)
    assert rank(a) == 2
    ns = nullspace(a)
    assert ns.shape == (3, 1)
    assert np.allclose(a @ ns, 0)


def test_nullspace_wide_includes_complement():
    b = np.array([[1.0, 0.0, 0.0, 0.0]])
    ns = nullspace(b)
    assert ns.shape == (4, 3)
    assert np.allclose(b @ ns, 0)
    # columns orthonormal
    assert np.allclose(ns.conj().T @ ns, np.eye(3))


def test_nullspace_zero_matrix():
    assert nullspace(np.zeros((2, 5))).shape == (5, 5)
    assert nullspace(np.zeros((5, 2))).shape == (2, 2)


def test_orth_columns_rank_deficient():
    rng = np.random.default_rng(0)
    v = rng.standard_normal((5, 1)) + 1j * rng.standard_normal((5, 1))
    cols = np.hstack([v, 2 * v, 3 * v])
    q = orth_columns(cols)
    assert q.shape == (5, 1)
    assert np.allclose(q.conj().T @ q, np.eye(1))


def test_eig_multiplicities():
    a = np.diag([1.0, 1.0 + 1e-12, 3.0])
    got = sorted(eig(a), key=lambda t: t[0].real)
    assert [(round(l.real, 6), m) for l, m in got] == [(1.0, 2), (3.0, 1)]


def test_cluster_points_weighted_mean():
    pts = [(0.0 + 0j, 2), (1e-9 + 0j, 1), (1.0 + 0j, 1)]
    out = sorted(cluster_points(pts, 1e-7), key=lambda t: t[0].real)
    assert len(out) == 2
    mean, count = out[0]
    assert count == 3
    # weighted mean of the merged cluster
    assert mean == pytest.approx(1e-9 / 3)


def test_range_projectors():
    p = np.diag([1.0, 1.0, 0.0]).astype(np.complex128)
    q = np.diag([0.0, 1.0, 1.0]).astype(np.complex128)
    inter = range_intersection_projector(p, q)
    assert np.allclose(inter, np.diag([0.0, 1.0, 0.0]))
    total = range_sum_projector(p, q)
    assert np.allclose(total, np.eye(3))


def test_random_unitary_is_unitary():
    rng = np.random.default_rng(3)
    for n in (2, 5, 8):
        u = random_unitary(rng, n)
        assert np.allclose(u.conj().T @ u, np.eye(n), atol=1e-12)


def test_random_complex_matrix_seeded():
    a = random_complex_matrix(np.random.default_rng(7), 4)
    b = random_complex_matrix(np.random.default_rng(7), 4)
    assert np.array_equal(a, b)
    assert a.shape == (4, 4) and a.dtype == np.complex128


def test_custom_tolerance_changes_rank():
    a = np.diag([1.0, 1e-6])
    assert rank(a) == 2
    assert rank(a, Tolerance(eps_rank=1e-3, eps_verify=1e-3)) == 1
    # invariants on the cutoffs themselves
    with pytest.raises(ValueError):
        Tolerance(eps_rank=-1.0)
    with pytest.raises(ValueError):
        Tolerance(eps_rank=1e-3)  # would exceed eps_verify

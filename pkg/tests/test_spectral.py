"""Jordan structure, projection families, block series, and the calculus."""

import math

import numpy as np
import pytest

from cstarkit.errors import ContourTooClose, InputError
from cstarkit.linalg import DEFAULT_TOL, frob, opnorm, random_complex_matrix, random_unitary
from cstarkit.relations import lattice_measure_axioms
from cstarkit.spectral import (
    AnalyticFunction,
    BlockSeries,
    apply_series,
    convolve_series,
    coordinate_series,
    family_of,
    holomorphic_series,
    invariant_subspace,
    jordan,
    reconstruct,
    riesz_contour,
    spectral_family,
    unit_series,
)


def _planted(sizes_lams, seed=0, cond_cap=100.0):
    n = sum(s for s, _ in sizes_lams)
    j = np.zeros((n, n), dtype=np.complex128)
    pos = 0
    for size, lam in sizes_lams:
        for i in range(size):
            j[pos + i, pos + i] = lam
            if i + 1 < size:
                j[pos + i, pos + i + 1] = 1.0
        pos += size
    rng = np.random.default_rng(seed)
    while True:
        v = random_complex_matrix(rng, n)
        if np.linalg.cond(v) <= cond_cap:
            return v @ j @ np.linalg.inv(v), j


def test_single_jordan_block_detected():
    a = np.array([[1.0, 1.0], [0.0, 1.0]])
    dec = jordan(a)
    assert [(b.eigenvalue, b.size) for b in dec.blocks] == [(1.0 + 0j, 2)]
    assert dec.residual < 1e-12


def test_planted_structure_recovered():
    a, _ = _planted([(3, 2.0), (2, 2.0), (1, -1.0 + 1j)], seed=4)
    dec = jordan(a)
    got = sorted((round(b.eigenvalue.real, 6), round(b.eigenvalue.imag, 6), b.size)
                 for b in dec.blocks)
    assert got == [(-1.0, 1.0, 1), (2.0, 0.0, 2), (2.0, 0.0, 3)]
    assert frob(a - dec.basis_change @ dec.jordan_matrix() @ dec.inverse) < 1e-8


def test_normal_matrix_diagonalizes():
    rng = np.random.default_rng(6)
    u = random_unitary(rng, 5)
    a = u @ np.diag([1.0, 1.0, 2.0, 3.0, 3.0]) @ u.conj().T
    dec = jordan(a)
    assert all(b.size == 1 for b in dec.blocks)
    assert len(dec.eigenvalues()) == 3


def test_family_axioms_and_reconstruction():
    a, _ = _planted([(2, 1.0), (1, 0.0), (1, 3.0)], seed=7)
    fam = spectral_family(a)
    assert lattice_measure_axioms(fam.orthogonal)["passed"]
    assert frob(a - reconstruct(fam)) < 1e-9 * max(frob(a), 1.0)
    # oblique values resolve the identity over minimal elements
    total = sum(fam.oblique[m] for m in fam.minimal)
    assert frob(total - np.eye(4)) < 1e-10


def test_shifts_die_at_block_size():
    a, _ = _planted([(3, 1.0)], seed=8)
    fam = spectral_family(a)
    s = fam.shifts[fam.minimal[0]]
    assert opnorm(s @ s) > 1e-6
    assert opnorm(s @ s @ s) < 1e-10


def test_series_validation_and_units():
    a, _ = _planted([(2, 1.0), (1, -1.0)], seed=9)
    fam = spectral_family(a)
    dec = fam.decomposition
    with pytest.raises(InputError):
        BlockSeries(dec, {(5, 0): 1.0 + 0j})
    with pytest.raises(InputError):
        BlockSeries(dec, {(0, 2): 1.0 + 0j})  # offset beyond block size
    assert frob(apply_series(unit_series(dec), fam) - np.eye(3)) < 1e-10
    assert frob(apply_series(coordinate_series(dec), fam) - a) < 1e-9


def test_series_convolution_matches_operator_product():
    a, _ = _planted([(3, 2.0), (2, -1.0)], seed=10)
    fam = spectral_family(a)
    dec = fam.decomposition
    rng = np.random.default_rng(0)
    for _ in range(5):
        keys = [(b, d) for b, blk in enumerate(dec.blocks) for d in range(blk.size)]
        c1 = {k: complex(*rng.standard_normal(2)) for k in keys}
        c2 = {k: complex(*rng.standard_normal(2)) for k in keys}
        s1, s2 = BlockSeries(dec, c1), BlockSeries(dec, c2)
        lhs = apply_series(convolve_series(s1, s2), fam)
        rhs = apply_series(s1, fam) @ apply_series(s2, fam)
        assert frob(lhs - rhs) < 1e-8


def test_exp_on_jordan_block_is_exact():
    a = np.array([[1.0, 1.0], [0.0, 1.0]])
    fam = spectral_family(a)
    val = apply_series(holomorphic_series(AnalyticFunction.exp(), fam.decomposition), fam)
    e = math.e
    assert np.allclose(val, [[e, e], [0.0, e]], atol=1e-12)


def test_polynomial_matches_horner():
    a, _ = _planted([(2, 1.0), (2, -2.0)], seed=11)
    fam = spectral_family(a)
    coeffs = [0.5, -1.0, 0.0, 2.0]
    fn = AnalyticFunction.polynomial(coeffs)
    val = apply_series(holomorphic_series(fn, fam.decomposition), fam)
    horner = np.zeros_like(a)
    for c in reversed(coeffs):
        horner = horner @ a + c * np.eye(4)
    assert frob(val - horner) < 1e-9 * max(frob(horner), 1.0)


def test_rational_series_division():
    # 1 / (1 - z) at 0 has all-ones Taylor coefficients
    fn = AnalyticFunction.rational([1.0], [1.0, -1.0])
    assert np.allclose(fn.taylor(0.0, 5), np.ones(5))
    with pytest.raises(InputError):
        AnalyticFunction.rational([1.0], [0.0, 1.0]).taylor(0.0, 3)


def test_riesz_contour_agreement():
    a, _ = _planted([(2, 1.0), (1, 3.0)], seed=12)
    fam = spectral_family(a)
    dec = fam.decomposition
    for fn in (AnalyticFunction.exp(), AnalyticFunction.polynomial([1.0, 2.0, 1.0])):
        series_val = apply_series(holomorphic_series(fn, dec), fam)
        contour_val = riesz_contour(fn, a, dec, DEFAULT_TOL)
        assert frob(series_val - contour_val) < 1e-8 * max(frob(contour_val), 1.0)


def test_riesz_contour_too_close():
    # eigenvalues separated by less than twice the clustering radius leave
    # no room for the contour
    a = np.diag([0.0, 1.9e-7]).astype(np.complex128)
    dec = jordan(a)
    if len(dec.blocks) == 2:
        with pytest.raises(ContourTooClose):
            riesz_contour(AnalyticFunction.exp(), a, dec, DEFAULT_TOL)


def test_invariant_subspace_properties():
    rng = np.random.default_rng(13)
    for n in (2, 4, 7):
        a = random_complex_matrix(rng, n)
        p = invariant_subspace(a)
        r = np.linalg.matrix_rank(p)
        assert 0 < r < n
        assert frob((np.eye(n) - p) @ a @ p) < 1e-9 * frob(a)
        assert frob(p @ p - p) < 1e-10


def test_invariant_subspace_rejects_scalars():
    with pytest.raises(InputError):
        invariant_subspace(np.array([[2.0]]))


def test_family_of_rejects_too_many_blocks():
    a = np.diag(np.arange(15, dtype=np.complex128))
    with pytest.raises(InputError):
        family_of(jordan(a))

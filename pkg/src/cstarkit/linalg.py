"""Dense complex linear algebra with an explicit tolerance policy.

All decisions about "is this zero" are funneled through a Tolerance record
so that every caller in the package counts rank, clusters eigenvalues, and
accepts residuals the same way.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence


@dataclass(frozen=True)
class Tolerance:
    """Numeric cutoffs shared by every routine in the package.

    eps_rank
        singular values at or below eps_rank * max(largest, 1) count as zero.
    eps_eig
        eigenvalues closer than this belong to the same spectral cluster.
    eps_verify
        largest residual accepted when checking an algebraic identity.
    """

    eps_rank: float = 1e-9
    eps_eig: float = 1e-7
    eps_verify: float = 1e-8

    def __post_init__(self):
        if min(self.eps_rank, self.eps_eig, self.eps_verify) <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.eps_rank > self.eps_verify:
            raise ValueError("eps_rank must not exceed eps_verify")


DEFAULT_TOL = Tolerance()


def as_matrix(m) -> np.ndarray:
    """Coerce to a square complex matrix with finite entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise ValueError("matrix dimension must be positive")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def adj(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product trace(a* b), conjugate-linear in a."""
    return complex(np.vdot(a, b))


def frob(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def opnorm(m: np.ndarray) -> float:
    """Spectral norm (largest singular value)."""
    return float(np.linalg.norm(np.asarray(m), ord=2))


def _svd_cutoff(s: np.ndarray, tol: Tolerance) -> float:
    top = float(s[0]) if s.size else 0.0
    return tol.eps_rank * max(top, 1.0)


def _as_array2d(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("entries must be finite")
    return a


def rank(m, tol: Tolerance = DEFAULT_TOL) -> int:
    """Numerical rank: singular values above eps_rank * max(largest, 1)."""
    s = np.linalg.svd(_as_array2d(m), compute_uv=False)
    return int(np.count_nonzero(s > _svd_cutoff(s, tol)))


def nullspace(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the kernel, as columns. Shape (n, n - rank).

    Accepts rectangular systems; the kernel lives in the column-index space.
    """
    a = _as_array2d(m)
    # economy SVD already carries every right singular vector unless the
    # matrix is wide; only then is the full V needed for the kernel
    _, s, vh = np.linalg.svd(a, full_matrices=a.shape[0] < a.shape[1])
    r = int(np.count_nonzero(s > _svd_cutoff(s, tol)))
    return vh[r:].conj().T


def orth_columns(cols: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis for the column space of `cols` (may be rank-deficient)."""
    cols = np.asarray(cols, dtype=np.complex128)
    if cols.ndim != 2:
        raise ValueError("expected a 2-d array of column vectors")
    if cols.shape[1] == 0:
        return cols.copy()
    u, s, _ = np.linalg.svd(cols, full_matrices=False)
    r = int(np.count_nonzero(s > _svd_cutoff(s, tol)))
    return u[:, :r]


def eig(m, tol: Tolerance = DEFAULT_TOL) -> list[tuple[complex, int]]:
    """Clustered spectrum: list of (eigenvalue, multiplicity).

    Raw eigenvalues are merged by single linkage at radius eps_eig and each
    cluster is reported at its mean; merging repeats on the means, so any
    two reported eigenvalues differ by more than eps_eig.  Multiplicities
    sum to the dimension.
    """
    a = as_matrix(m)
    try:
        vals = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare in LAPACK
        raise NonConvergence(f"eigenvalue iteration failed: {exc}") from exc
    pts = [(complex(v), 1) for v in vals]
    merged = cluster_points(pts, tol.eps_eig)
    merged.sort(key=lambda t: (round(t[0].real, 12), round(t[0].imag, 12)))
    return merged


def cluster_points(
    weighted: list[tuple[complex, int]], radius: float
) -> list[tuple[complex, int]]:
    """Single-linkage clustering of weighted points in the complex plane.

    Repeats on cluster means until every pair of reported points is more
    than `radius` apart.
    """
    pts = list(weighted)
    while True:
        n = len(pts)
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        merged_any = False
        for i in range(n):
            for j in range(i + 1, n):
                if abs(pts[i][0] - pts[j][0]) <= radius:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[ri] = rj
                        merged_any = True
        if not merged_any:
            return pts
        groups: dict[int, list[tuple[complex, int]]] = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(pts[i])
        pts = []
        for members in groups.values():
            w = sum(c for _, c in members)
            mean = sum(v * c for v, c in members) / w
            pts.append((mean, w))


def range_intersection_projector(
    p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> np.ndarray:
    """Orthogonal projection onto range(p) intersected with range(q).

    p and q must be (close to) idempotent matrices; a vector lies in both
    ranges iff it is fixed by the orthogonal projections onto them, so the
    intersection is the kernel of the stacked complements.
    """
    p = as_matrix(p)
    q = as_matrix(q)
    n = p.shape[0]
    pp = _range_projector(p, tol)
    qq = _range_projector(q, tol)
    stacked = np.vstack([np.eye(n) - pp, np.eye(n) - qq])
    basis = nullspace(stacked, tol)
    return basis @ adj(basis)


def range_sum_projector(
    p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> np.ndarray:
    """Orthogonal projection onto range(p) + range(q)."""
    basis = orth_columns(np.hstack([as_matrix(p), as_matrix(q)]), tol)
    return basis @ adj(basis)


def _range_projector(p: np.ndarray, tol: Tolerance) -> np.ndarray:
    basis = orth_columns(p, tol)
    return basis @ adj(basis)


def random_complex_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-ish unitary from the QR of a complex Ginibre sample."""
    q, r = np.linalg.qr(random_complex_matrix(rng, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))

"""Unital *-subalgebras of M_n and their block decomposition.

An algebra is carried as a Hilbert-Schmidt-orthonormal basis of the span
together with its factor blocks: every unital *-subalgebra of M_n is a
direct sum of full matrix algebras, and each summand is recorded once
(multiplicity in the ambient representation is discarded) as a dimension
plus an isometry embedding block coordinates into the ambient space.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, IllConditioned, NotInAlgebra
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    adj,
    as_matrix,
    cluster_points,
    frob,
    nullspace,
    orth_columns,
)


@dataclass(frozen=True)
class Block:
    """One full matrix factor: dim is its size, isometry the (ambient x dim)
    matrix W with W*W = 1 mapping block coordinates into the ambient space.
    Compression a -> W* a W restricted to the algebra is a *-isomorphism
    onto M_dim."""

    dim: int
    isometry: np.ndarray


@dataclass(eq=False)
class FiniteCStar:
    """A unital *-subalgebra of M_{ambient_dim}.

    basis is HS-orthonormal and spans the algebra; blocks list the factors.
    """

    ambient_dim: int
    generators: tuple[np.ndarray, ...]
    basis: tuple[np.ndarray, ...]
    blocks: tuple[Block, ...]
    _mult_tensor: np.ndarray | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, a: np.ndarray) -> np.ndarray:
        """Hilbert-Schmidt coordinates of `a` against the orthonormal basis."""
        a = as_matrix(a)
        if a.shape[0] != self.ambient_dim:
            raise DimensionMismatch(
                f"matrix is {a.shape[0]}x{a.shape[0]}, ambient is {self.ambient_dim}"
            )
        return np.array([np.vdot(b, a) for b in self.basis])

    def from_coords(self, c: np.ndarray) -> np.ndarray:
        out = np.zeros((self.ambient_dim, self.ambient_dim), dtype=np.complex128)
        for ck, b in zip(c, self.basis):
            out += ck * b
        return out

    def project(self, a: np.ndarray) -> np.ndarray:
        return self.from_coords(self.coords(a))

    def containment_residual(self, a: np.ndarray) -> float:
        a = as_matrix(a)
        return frob(a - self.project(a)) / max(frob(a), 1.0)

    def require_member(self, a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> None:
        res = self.containment_residual(a)
        if res > tol.eps_verify:
            raise NotInAlgebra(f"containment residual {res:.3e}")

    def identity_coords(self) -> np.ndarray:
        return self.coords(np.eye(self.ambient_dim))

    def mult_tensor(self) -> np.ndarray:
        """Structure constants: [k, l] holds the coordinates of
        basis[k] @ basis[l].  Shape (dim, dim, dim); cached."""
        if self._mult_tensor is None:
            stack = np.array(self.basis)
            flat = stack.reshape(self.dim, -1)
            prods = np.einsum("kij,ljm->klim", stack, stack).reshape(
                self.dim, self.dim, -1
            )
            self._mult_tensor = prods @ flat.conj().T
        return self._mult_tensor

    def block_compress(self, a: np.ndarray, i: int) -> np.ndarray:
        w = self.blocks[i].isometry
        return adj(w) @ as_matrix(a) @ w


def _hs_orthonormalize(mats, tol: Tolerance) -> list[np.ndarray]:
    """Orthonormal (HS) basis of the span of `mats`, via one SVD."""
    mats = list(mats)
    if not mats:
        return []
    n = mats[0].shape[0]
    stack = np.array([m.reshape(-1) for m in mats])
    _, s, vh = np.linalg.svd(stack, full_matrices=False)
    cut = tol.eps_rank * max(float(s[0]) if s.size else 0.0, 1.0)
    r = int(np.count_nonzero(s > cut))
    return [vh[i].reshape(n, n) for i in range(r)]


def _residual_directions(cands: np.ndarray, basis, tol: Tolerance):
    """Orthonormal spanning set for the part of `cands` outside span(basis).

    Projects every candidate off the current orthonormal basis, drops the
    ones that vanish, and orthonormalizes what is left.  Cheaper than
    re-orthonormalizing the whole candidate stack when the basis is already
    large.
    """
    n = cands.shape[1]
    flat = cands.reshape(len(cands), -1)
    basis_flat = np.array([b.reshape(-1) for b in basis])
    resid = flat - (flat @ basis_flat.conj().T) @ basis_flat
    norms = np.linalg.norm(resid, axis=1)
    top = max(float(norms.max()) if norms.size else 0.0, 1.0)
    keep = resid[norms > tol.eps_rank * top]
    if not len(keep):
        return []
    # second projection pass tightens orthogonality before the final SVD
    keep = keep - (keep @ basis_flat.conj().T) @ basis_flat
    _, s, vh = np.linalg.svd(keep, full_matrices=False)
    cut = tol.eps_rank * max(float(s[0]) if s.size else 0.0, 1.0)
    r = int(np.count_nonzero(s > cut))
    return [vh[i].reshape(n, n) for i in range(r)]


def generate(
    generators,
    seed: int,
    tol: Tolerance = DEFAULT_TOL,
    ambient_dim: int | None = None,
) -> FiniteCStar:
    """Smallest unital *-subalgebra containing the generators.

    Closure alternates multiplying all basis pairs, adjoining adjoints, and
    re-orthonormalizing until the span's dimension stabilizes (the span is
    capped by ambient_dim**2, so this terminates).  The factor blocks are
    then located through the center; the random choices involved are driven
    by `seed` alone, so equal inputs give equal results.

    With no generators `ambient_dim` is required and the result is the
    scalars.
    """
    gens = [as_matrix(g) for g in generators]
    if gens:
        n = gens[0].shape[0]
        for g in gens:
            if g.shape[0] != n:
                raise DimensionMismatch("generators of mixed ambient dimension")
        if ambient_dim is not None and int(ambient_dim) != n:
            raise DimensionMismatch(
                f"generators are {n}x{n} but ambient_dim={ambient_dim}"
            )
    else:
        if ambient_dim is None:
            raise ValueError("ambient_dim is required when there are no generators")
        n = int(ambient_dim)
        if n <= 0:
            raise ValueError("ambient_dim must be positive")

    work = [np.eye(n, dtype=np.complex128)]
    work.extend(gens)
    work.extend(adj(g) for g in gens)
    basis = _hs_orthonormalize(work, tol)
    for _ in range(n * n + 1):
        stack = np.array(basis)
        prods = np.einsum("kij,ljm->klim", stack, stack).reshape(-1, n, n)
        cands = np.concatenate([stack.conj().transpose(0, 2, 1), prods])
        fresh = _residual_directions(cands, basis, tol)
        if not fresh:
            break
        basis = basis + fresh
    else:  # pragma: no cover - the dimension cap makes this unreachable
        raise IllConditioned("closure failed to stabilize")

    rng = np.random.default_rng(seed)
    blocks = _block_decompose(basis, n, rng, tol)
    return FiniteCStar(
        ambient_dim=n,
        generators=tuple(gens),
        basis=tuple(basis),
        blocks=tuple(blocks),
    )


def _center_coeff_basis(basis, tol: Tolerance) -> list[np.ndarray]:
    """Coefficient vectors (in the given basis) spanning the center."""
    rows = []
    for b in basis:
        block = np.array([(x @ b - b @ x).reshape(-1) for x in basis]).T
        rows.append(block)  # (n^2, d): acts on coefficient vectors
    system = np.vstack(rows)
    return [v for v in nullspace(system, tol).T]


def center(alg: FiniteCStar, tol: Tolerance = DEFAULT_TOL):
    """Dimension and an HS-orthonormal basis of the center.

    Solves the linear commutation system against every basis element; the
    block count is not consulted, so comparing the two is a real check.
    """
    coeffs = _center_coeff_basis(alg.basis, tol)
    mats = [alg.from_coords(c) for c in coeffs]
    mats = _hs_orthonormalize(mats, tol)
    return len(mats), mats


def is_commutative(alg: FiniteCStar, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when all basis pairs commute within eps_verify."""
    for i, x in enumerate(alg.basis):
        for y in alg.basis[i:]:
            if frob(x @ y - y @ x) > tol.eps_verify:
                return False
    return True


def _hermitian_span(mats, tol: Tolerance):
    """Self-adjoint matrices spanning a *-closed span over the reals."""
    cands = []
    for m in mats:
        cands.append((m + adj(m)) / 2)
        cands.append((m - adj(m)) / 2j)
    if not cands:
        return []
    n = cands[0].shape[0]
    stack = np.array(
        [np.concatenate([m.real.reshape(-1), m.imag.reshape(-1)]) for m in cands]
    )
    _, s, vh = np.linalg.svd(stack, full_matrices=False)
    cut = tol.eps_rank * max(float(s[0]) if s.size else 0.0, 1.0)
    out = []
    for i in range(int(np.count_nonzero(s > cut))):
        re = vh[i, : n * n].reshape(n, n)
        im = vh[i, n * n :].reshape(n, n)
        out.append(re + 1j * im)
    return out


def _cluster_members(vals: np.ndarray, clusters, ci: int) -> np.ndarray:
    """Indices of the raw eigenvalues belonging to cluster ci (the nearest
    cluster mean wins)."""
    means = np.array([c[0] for c in clusters])
    owner = np.argmin(np.abs(vals[:, None] - means[None, :]), axis=1)
    return np.nonzero(owner == ci)[0]


def _block_decompose(basis, n, rng, tol: Tolerance) -> list[Block]:
    """Factor blocks of the span: central projections from a generic central
    element, then one irreducible invariant subspace per factor."""
    center_coeffs = _center_coeff_basis(basis, tol)
    zdim = len(center_coeffs)
    z_mats = [
        sum(c[k] * basis[k] for k in range(len(basis))) for c in center_coeffs
    ]
    herm_center = _hermitian_span(z_mats, tol)

    for _attempt in range(12):
        z = sum(rng.standard_normal() * h for h in herm_center)
        z = (z + adj(z)) / 2
        vals, vecs = np.linalg.eigh(z)
        clusters = cluster_points([(complex(v), 1) for v in vals], tol.eps_eig)
        if len(clusters) != zdim:
            continue
        order = sorted(
            range(len(clusters)), key=lambda i: clusters[i][0].real
        )
        blocks = []
        ok = True
        for ci in order:
            members = _cluster_members(vals, clusters, ci)
            u = vecs[:, members]
            blk = _factor_block(basis, u, rng, tol)
            if blk is None:
                ok = False
                break
            blocks.append(blk)
        if ok:
            return blocks
    raise IllConditioned("failed to separate central spectral projections")


def _factor_block(basis, u, rng, tol: Tolerance) -> Block | None:
    """Block data for the factor supported on the central eigenspace with
    orthonormal basis u (ambient x r, r = dim * multiplicity)."""
    comp = [adj(u) @ b @ u for b in basis]
    comp_basis = _hs_orthonormalize(comp, tol)
    nsq = len(comp_basis)
    bdim = int(round(np.sqrt(nsq)))
    if bdim * bdim != nsq:
        return None
    r = u.shape[1]
    mult, rem = divmod(r, bdim)
    if rem != 0:
        return None
    if mult == 1:
        return Block(dim=bdim, isometry=u)

    # With multiplicity, a generic self-adjoint element of the compressed
    # algebra has bdim eigenvalues of multiplicity mult each; any vector of
    # one eigenspace generates an irreducible subspace under the algebra.
    herm = _hermitian_span(comp_basis, tol)
    for _ in range(8):
        h = sum(rng.standard_normal() * m for m in herm)
        h = (h + adj(h)) / 2
        vals, vecs = np.linalg.eigh(h)
        clusters = cluster_points([(complex(v), 1) for v in vals], tol.eps_eig)
        if len(clusters) != bdim or any(c[1] != mult for c in clusters):
            continue
        members = _cluster_members(vals, clusters, 0)
        xi = vecs[:, members[0]]
        orbit = np.column_stack([cb @ xi for cb in comp_basis])
        w_local = orth_columns(orbit, tol)
        if w_local.shape[1] != bdim:
            continue
        return Block(dim=bdim, isometry=u @ w_local)
    return None

"""Numeric Jordan form and the machinery built on top of it: idempotent and
orthogonal families over the lattice of chain subsets, nilpotent shift
operators, a per-block power-series calculus with a contour-integral cross
check, and a one-line invariant subspace construction.

The Jordan routine is tolerance-driven.  Eigenvalues of a defective matrix
scatter far beyond machine precision (a size-k block smears roots over a
ring of radius about eps**(1/k)), so a single clustering radius cannot
serve every input.  The routine walks a ladder of radii, keeps every
candidate decomposition whose rank staircase is consistent and whose
reconstruction residual passes, and returns the most degenerate candidate
(fewest blocks).  Ill-posed borderline inputs thereby resolve toward the
nearby defective structure instead of a wildly conditioned diagonalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContourTooClose, IllConditioned, InputError
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    cluster_points,
    frob,
    nullspace,
    orth_columns,
)
from .relations import EquivRelation, LatticeMeasure, SubRelation, sub_from_classes


@dataclass(frozen=True)
class JordanBlockInfo:
    """One chain: eigenvalue, length, and offset into the Jordan basis."""

    eigenvalue: complex
    size: int
    position: int


@dataclass(eq=False)
class JordanDecomposition:
    source: np.ndarray
    basis_change: np.ndarray
    blocks: tuple[JordanBlockInfo, ...]
    residual: float
    _inverse: np.ndarray | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.source.shape[0]

    @property
    def inverse(self) -> np.ndarray:
        if self._inverse is None:
            self._inverse = np.linalg.inv(self.basis_change)
        return self._inverse

    def jordan_matrix(self) -> np.ndarray:
        j = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for blk in self.blocks:
            for i in range(blk.size):
                j[blk.position + i, blk.position + i] = blk.eigenvalue
                if i + 1 < blk.size:
                    j[blk.position + i, blk.position + i + 1] = 1.0
        return j

    def eigenvalues(self) -> list[complex]:
        """Distinct eigenvalues, in block order without repeats."""
        seen: list[complex] = []
        for blk in self.blocks:
            if not any(v == blk.eigenvalue for v in seen):
                seen.append(blk.eigenvalue)
        return seen


def _build_chains(a, lam, m, tol):
    """Chains for one eigenvalue cluster, or a failure reason.

    The kernel dimensions of (a - lam)^p must climb strictly to the
    multiplicity with nonincreasing increments; chain tops at each height
    are chosen independent of the lower kernel and of taller chains."""
    n = a.shape[0]
    nil = a - lam * np.eye(n)
    kernels: list[np.ndarray] = []
    dims: list[int] = []
    power = np.eye(n, dtype=np.complex128)
    for _ in range(m):
        power = power @ nil
        k = nullspace(power, tol)
        kernels.append(k)
        dims.append(k.shape[1])
        if dims[-1] >= m:
            break
    if dims[-1] != m:
        return None, f"kernel dims {dims} never reach multiplicity {m}"
    if any(dims[i + 1] <= dims[i] for i in range(len(dims) - 1)):
        return None, f"kernel dims {dims} not strictly increasing"
    weyr = [dims[0]] + [dims[i] - dims[i - 1] for i in range(1, len(dims))]
    if any(weyr[i + 1] > weyr[i] for i in range(len(weyr) - 1)):
        return None, f"staircase {weyr} not monotone"
    weyr.append(0)

    chains: list[list[np.ndarray]] = []
    for p in range(len(dims), 0, -1):
        needed = weyr[p - 1] - weyr[p]
        if needed == 0:
            continue
        obstruction = []
        if p >= 2:
            obstruction.append(kernels[p - 2])
        # taller chains already occupy their height-p vectors
        obstruction += [c[p - 1].reshape(-1, 1) for c in chains if len(c) > p]
        cand = kernels[p - 1]
        if obstruction:
            q = orth_columns(np.hstack(obstruction), tol)
            cand = cand - q @ (q.conj().T @ cand)
        u, s, _ = np.linalg.svd(cand, full_matrices=False)
        if int((s > tol.eps_rank * max(s[0], 1.0)).sum()) < needed:
            return None, f"chain shortfall at height {p}"
        for t in range(needed):
            chain = [u[:, t]]
            for _ in range(p - 1):
                chain.append(nil @ chain[-1])
            chain.reverse()
            norms = [float(np.linalg.norm(v)) for v in chain]
            if min(norms) < 1e3 * tol.eps_rank * max(norms):
                return None, "chain vector collapsed"
            scale = max(norms)
            chains.append([v / scale for v in chain])
    chains.sort(key=len, reverse=True)
    return chains, None


def _assemble(a, clusters, tol):
    n = a.shape[0]
    labelled: list[tuple[complex, list[list[np.ndarray]]]] = []
    for lam, m in clusters:
        chains, why = _build_chains(a, lam, m, tol)
        if chains is None:
            return None, why
        labelled.append((lam, chains))
    cols: list[np.ndarray] = []
    blocks: list[JordanBlockInfo] = []
    pos = 0
    for lam, chains in labelled:
        for chain in chains:
            cols.extend(chain)
            blocks.append(JordanBlockInfo(complex(lam), len(chain), pos))
            pos += len(chain)
    v = np.column_stack(cols)
    if v.shape[1] != n:
        return None, "Jordan basis incomplete"
    cond = np.linalg.cond(v)
    if cond > 1e8:
        return None, f"basis condition {cond:.1e}"
    dec = JordanDecomposition(a, v, tuple(blocks), 0.0)
    res = frob(a - v @ dec.jordan_matrix() @ dec.inverse) / max(frob(a), 1.0)
    dec.residual = float(res)
    return dec, None


def jordan(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> JordanDecomposition:
    """Jordan canonical form of a square matrix.

    Eigenvalues are clustered at increasing radii starting from eps_eig;
    each distinct clustering is assembled via the rank staircase of
    (a - lam)^p and accepted when the relative reconstruction residual is
    at most eps_verify.  Among accepted candidates the one with fewest
    blocks wins.  Raises IllConditioned when no radius yields a consistent
    decomposition.
    """
    a = as_matrix(a)
    raw = np.linalg.eigvals(a)
    pts = [(complex(z), 1) for z in raw]
    seen: set = set()
    candidates: list[JordanDecomposition] = []
    failures: list[str] = []
    radius = tol.eps_eig
    for _ in range(8):
        clusters = cluster_points(pts, radius)
        clusters.sort(key=lambda t: (round(t[0].real, 12), round(t[0].imag, 12)))
        key = tuple((round(l.real, 9), round(l.imag, 9), m) for l, m in clusters)
        if key not in seen:
            seen.add(key)
            dec, why = _assemble(a, clusters, tol)
            if dec is None:
                failures.append(f"radius {radius:.0e}: {why}")
            elif dec.residual <= tol.eps_verify:
                candidates.append(dec)
            else:
                failures.append(f"radius {radius:.0e}: residual {dec.residual:.2e}")
        radius *= 10.0
    if not candidates:
        raise IllConditioned(
            "no consistent Jordan structure: " + "; ".join(failures)
        )
    candidates.sort(key=lambda d: (len(d.blocks), d.residual))
    return candidates[0]


def chain_relation(dec: JordanDecomposition) -> EquivRelation:
    """Relation on the Jordan basis positions whose classes are the chains."""
    classes = [
        tuple(str(blk.position + i) for i in range(blk.size))
        for blk in dec.blocks
    ]
    return EquivRelation.from_classes(classes)


@dataclass(eq=False)
class SpectralFamily:
    """Idempotent and orthogonal families over all unions of Jordan chains.

    `oblique` maps each chain-subset relation to V S V^-1 with S the 0/1
    selector of the chains; `orthogonal` holds the projection-valued
    family on the same lattice; `shifts` carries, per minimal block, the
    nilpotent part V N_b V^-1 acting along that chain.
    """

    decomposition: JordanDecomposition
    parent: EquivRelation
    minimal: tuple[SubRelation, ...]
    oblique: dict[SubRelation, np.ndarray]
    orthogonal: LatticeMeasure
    shifts: dict[SubRelation, np.ndarray]

    @property
    def dim(self) -> int:
        return self.decomposition.dim


def spectral_family(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> SpectralFamily:
    dec = jordan(a, tol)
    return family_of(dec, tol)


def family_of(dec: JordanDecomposition, tol: Tolerance = DEFAULT_TOL) -> SpectralFamily:
    n = dec.dim
    nblocks = len(dec.blocks)
    if nblocks > 14:
        raise InputError(
            f"{nblocks} blocks would enumerate 2^{nblocks} chain subsets; "
            "too many for an explicit family"
        )
    parent = chain_relation(dec)
    chains = [
        tuple(str(blk.position + i) for i in range(blk.size))
        for blk in dec.blocks
    ]
    v = dec.basis_change
    vinv = dec.inverse

    def members(indices: tuple[int, ...]) -> SubRelation:
        return sub_from_classes(parent, [chains[i] for i in indices])

    oblique: dict[SubRelation, np.ndarray] = {}
    assignment: dict[SubRelation, np.ndarray] = {}
    for mask in range(1 << nblocks):
        indices = tuple(i for i in range(nblocks) if mask >> i & 1)
        sub = members(indices)
        sel = np.zeros(n)
        positions = [
            dec.blocks[i].position + j
            for i in indices
            for j in range(dec.blocks[i].size)
        ]
        sel[positions] = 1.0
        oblique[sub] = v @ (sel[:, None] * vinv)
        if positions:
            q = orth_columns(v[:, positions], tol)
            assignment[sub] = q @ q.conj().T
        else:
            assignment[sub] = np.zeros((n, n), dtype=np.complex128)

    minimal = tuple(members((i,)) for i in range(nblocks))
    shifts: dict[SubRelation, np.ndarray] = {}
    for i, blk in enumerate(dec.blocks):
        shift_sel = np.zeros((n, n), dtype=np.complex128)
        for j in range(blk.size - 1):
            shift_sel[blk.position + j, blk.position + j + 1] = 1.0
        shifts[minimal[i]] = v @ shift_sel @ vinv

    measure = LatticeMeasure(
        parent=parent,
        domain=tuple(oblique.keys()),
        assignment=assignment,
        flavor="orthogonal",
        dim=n,
    )
    return SpectralFamily(dec, parent, minimal, oblique, measure, shifts)


def reconstruct(fam: SpectralFamily) -> np.ndarray:
    """Sum over minimal blocks of eigenvalue * Q + shift * Q."""
    total = np.zeros((fam.dim, fam.dim), dtype=np.complex128)
    for i, blk in enumerate(fam.decomposition.blocks):
        q = fam.oblique[fam.minimal[i]]
        s = fam.shifts[fam.minimal[i]]
        total += blk.eigenvalue * q + s @ q
    return total


@dataclass(eq=False)
class BlockSeries:
    """Finitely supported coefficients (block index, offset) -> scalar.

    Offset d of block b multiplies the d-th power of the block's shift;
    offsets are bounded by the block size, matching the nilpotency order.
    """

    decomposition: JordanDecomposition
    coefficients: dict[tuple[int, int], complex]

    def __post_init__(self):
        for (b, d), _ in self.coefficients.items():
            if not 0 <= b < len(self.decomposition.blocks):
                raise InputError(f"block index {b} out of range")
            if not 0 <= d < self.decomposition.blocks[b].size:
                raise InputError(
                    f"offset {d} exceeds block {b} of size "
                    f"{self.decomposition.blocks[b].size}"
                )

    def coefficient(self, b: int, d: int) -> complex:
        return self.coefficients.get((b, d), 0.0 + 0.0j)


def unit_series(dec: JordanDecomposition) -> BlockSeries:
    return BlockSeries(dec, {(b, 0): 1.0 + 0.0j for b in range(len(dec.blocks))})


def coordinate_series(dec: JordanDecomposition) -> BlockSeries:
    coeffs: dict[tuple[int, int], complex] = {}
    for b, blk in enumerate(dec.blocks):
        coeffs[(b, 0)] = blk.eigenvalue
        if blk.size > 1:
            coeffs[(b, 1)] = 1.0 + 0.0j
    return BlockSeries(dec, coeffs)


def convolve_series(m1: BlockSeries, m2: BlockSeries) -> BlockSeries:
    """Per-block Cauchy product, truncated at the block size."""
    if m1.decomposition.blocks != m2.decomposition.blocks:
        raise InputError("series built over different decompositions")
    out: dict[tuple[int, int], complex] = {}
    for (b1, d1), c1 in m1.coefficients.items():
        for (b2, d2), c2 in m2.coefficients.items():
            if b1 != b2:
                continue
            d = d1 + d2
            if d >= m1.decomposition.blocks[b1].size:
                continue
            out[(b1, d)] = out.get((b1, d), 0.0 + 0.0j) + c1 * c2
    return BlockSeries(m1.decomposition, out)


def apply_series(mu: BlockSeries, fam: SpectralFamily) -> np.ndarray:
    """Evaluate sum of coefficient(b, d) * shift_b^d * Q_b."""
    if mu.decomposition.blocks != fam.decomposition.blocks:
        raise InputError("series and family disagree on block structure")
    n = fam.dim
    total = np.zeros((n, n), dtype=np.complex128)
    for b in range(len(fam.decomposition.blocks)):
        q = fam.oblique[fam.minimal[b]]
        s = fam.shifts[fam.minimal[b]]
        power = q  # shift^0 restricted to the block
        size = fam.decomposition.blocks[b].size
        for d in range(size):
            c = mu.coefficient(b, d)
            if c != 0:
                total += c * power
            if d + 1 < size:
                power = s @ power
    return total


_FACTORIALS = [math.factorial(k) for k in range(32)]


@dataclass(frozen=True)
class AnalyticFunction:
    """Descriptor for a function applied through the calculus.

    kind is one of exp, sin, cos, polynomial, rational; polynomial carries
    ascending coefficients, rational a numerator and denominator pair.
    """

    kind: str
    coeffs: tuple[complex, ...] = ()
    denom: tuple[complex, ...] = ()

    @staticmethod
    def exp() -> "AnalyticFunction":
        return AnalyticFunction("exp")

    @staticmethod
    def sin() -> "AnalyticFunction":
        return AnalyticFunction("sin")

    @staticmethod
    def cos() -> "AnalyticFunction":
        return AnalyticFunction("cos")

    @staticmethod
    def polynomial(coeffs) -> "AnalyticFunction":
        return AnalyticFunction("polynomial", tuple(complex(c) for c in coeffs))

    @staticmethod
    def rational(num, den) -> "AnalyticFunction":
        return AnalyticFunction(
            "rational",
            tuple(complex(c) for c in num),
            tuple(complex(c) for c in den),
        )

    def value(self, z: complex) -> complex:
        if self.kind == "exp":
            return complex(np.exp(z))
        if self.kind == "sin":
            return complex(np.sin(z))
        if self.kind == "cos":
            return complex(np.cos(z))
        if self.kind == "polynomial":
            return complex(np.polynomial.Polynomial(self.coeffs)(z))
        if self.kind == "rational":
            num = complex(np.polynomial.Polynomial(self.coeffs)(z))
            den = complex(np.polynomial.Polynomial(self.denom)(z))
            return num / den
        raise InputError(f"unknown analytic function kind {self.kind!r}")

    def taylor(self, z0: complex, count: int) -> list[complex]:
        """Coefficients f^(d)(z0)/d! for d < count."""
        if self.kind in ("exp", "sin", "cos"):
            if self.kind == "exp":
                derivs = [complex(np.exp(z0))] * count
            else:
                cycle = (
                    [np.sin(z0), np.cos(z0), -np.sin(z0), -np.cos(z0)]
                    if self.kind == "sin"
                    else [np.cos(z0), -np.sin(z0), -np.cos(z0), np.sin(z0)]
                )
                derivs = [complex(cycle[d % 4]) for d in range(count)]
            return [derivs[d] / _FACTORIALS[d] for d in range(count)]
        if self.kind == "polynomial":
            p = np.polynomial.Polynomial(self.coeffs)
            return [
                complex(p.deriv(d)(z0)) / _FACTORIALS[d] if d <= p.degree() else 0j
                for d in range(count)
            ]
        if self.kind == "rational":
            num = AnalyticFunction("polynomial", self.coeffs).taylor(z0, count)
            den = AnalyticFunction("polynomial", self.denom).taylor(z0, count)
            if abs(den[0]) < 1e-12:
                raise InputError(f"denominator vanishes near {z0}")
            out = [num[0] / den[0]]
            for d in range(1, count):
                acc = num[d]
                for j in range(1, d + 1):
                    if j < len(den):
                        acc -= den[j] * out[d - j]
                out.append(acc / den[0])
            return out
        raise InputError(f"unknown analytic function kind {self.kind!r}")


def holomorphic_series(fn: AnalyticFunction, dec: JordanDecomposition) -> BlockSeries:
    """Per-block Taylor data of fn at each eigenvalue, one row per block."""
    coeffs: dict[tuple[int, int], complex] = {}
    for b, blk in enumerate(dec.blocks):
        tay = fn.taylor(blk.eigenvalue, blk.size)
        for d, c in enumerate(tay):
            if c != 0:
                coeffs[(b, d)] = c
    return BlockSeries(dec, coeffs)


def riesz_contour(
    fn: AnalyticFunction,
    a: np.ndarray,
    dec: JordanDecomposition,
    tol: Tolerance = DEFAULT_TOL,
    nodes: int = 96,
) -> np.ndarray:
    """Quadrature of the resolvent integral over circles around each
    distinct eigenvalue; the independent cross check for the calculus.

    Circle radii are half the distance to the nearest other eigenvalue
    (unit radius when there is only one).  ContourTooClose fires when any
    quadrature node comes within eps_eig of an eigenvalue.
    """
    a = as_matrix(a)
    n = a.shape[0]
    eye = np.eye(n)
    points = dec.eigenvalues()
    total = np.zeros((n, n), dtype=np.complex128)
    for center in points:
        others = [abs(center - w) for w in points if w != center]
        radius = min(others) / 2.0 if others else 1.0
        if radius <= tol.eps_eig:
            raise ContourTooClose(
                f"contour radius {radius:.2e} at {center} is inside eps_eig"
            )
        for k in range(nodes):
            zeta = center + radius * np.exp(2j * np.pi * k / nodes)
            if min(abs(zeta - w) for w in points) <= tol.eps_eig:
                raise ContourTooClose(
                    f"quadrature node within eps_eig of an eigenvalue near {center}"
                )
            resolvent = np.linalg.solve(zeta * eye - a, eye)
            total += fn.value(zeta) * resolvent * (zeta - center) / nodes
    return total


def invariant_subspace(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projection onto a nontrivial invariant subspace: the
    span of the eigenvector at the bottom of the first Jordan chain."""
    a = as_matrix(a)
    if a.shape[0] < 2:
        raise InputError("invariant subspace needs dimension at least 2")
    dec = jordan(a, tol)
    v = dec.basis_change[:, dec.blocks[0].position]
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())

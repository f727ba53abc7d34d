"""States, GNS representations, and the equivalence relation they induce.

The pure states used throughout are the vector states of the block basis
vectors: for a factor of dimension d embedded by the isometry W, the j-th
one sends x to (W* x W)[j, j].  Two such states are identified when their
GNS representations are unitarily equivalent; the resulting equivalence
relation on this finite family is the combinatorial shadow of the algebra
and determines it up to isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FiniteCStar
from .errors import DegenerateState
from .linalg import DEFAULT_TOL, Tolerance, adj, as_matrix, frob, nullspace
from .relations import EquivRelation


def state_label(block: int, vec: int) -> str:
    return f"{block}:{vec}"


@dataclass
class State:
    """Linear functional on an algebra, stored by its values on the basis."""

    algebra: FiniteCStar
    values: np.ndarray
    label: str = ""

    def __call__(self, x) -> complex:
        return complex(self.algebra.coords(x) @ self.values)

    def check_state(self, tol: Tolerance = DEFAULT_TOL) -> None:
        """Raise DegenerateState unless this is a unit-normalized positive
        functional (positivity via the Gram matrix of s(b_k* b_l))."""
        one = complex(self.algebra.identity_coords() @ self.values)
        if abs(one - 1.0) > tol.eps_verify:
            raise DegenerateState(f"s(1) = {one!r}, expected 1")
        g = _gram(self)
        w = np.linalg.eigvalsh(g)
        if w.min() < -tol.eps_verify * max(w.max(), 1.0):
            raise DegenerateState(f"negative Gram eigenvalue {w.min():.3e}")


@dataclass
class GnsRep:
    """GNS data of a state: matrices of the left-multiplication action on
    the completed quotient, plus the class of the identity as cyclic vector.

    rep_map[k] is the action of basis element k; shape (dim, r, r).
    """

    state: State
    rep_dim: int
    rep_map: np.ndarray
    cyclic: np.ndarray

    def pi(self, x) -> np.ndarray:
        coeff = self.state.algebra.coords(x)
        return np.tensordot(coeff, self.rep_map, axes=1)


def pure_states(alg: FiniteCStar) -> list[State]:
    """The vector states of every block basis vector, labeled 'block:vec'."""
    out = []
    for i, blk in enumerate(alg.blocks):
        w = blk.isometry
        for j in range(blk.dim):
            col = w[:, j]
            vals = np.array([np.vdot(col, b @ col) for b in alg.basis])
            out.append(State(alg, vals, label=state_label(i, j)))
    return out


def skeleton_relation(alg: FiniteCStar) -> EquivRelation:
    """Same-block relation on the pure-state labels (one class per factor)."""
    classes = [
        tuple(state_label(i, j) for j in range(blk.dim))
        for i, blk in enumerate(alg.blocks)
    ]
    return EquivRelation.from_classes(classes)


def _gram(s: State) -> np.ndarray:
    alg = s.algebra
    d = alg.dim
    mult = alg.mult_tensor()  # [k, l] -> coords of b_k b_l
    star = np.array([alg.coords(adj(b)) for b in alg.basis])  # adjoint coords
    g = np.empty((d, d), dtype=np.complex128)
    for k in range(d):
        # coords of b_k^* b_l for all l: combine star rows with mult tensor
        prod_coords = np.tensordot(star[k], mult, axes=(0, 0))  # (d, d)
        g[k] = prod_coords @ s.values
    return g


def gns(s: State, tol: Tolerance = DEFAULT_TOL) -> GnsRep:
    """GNS construction over the algebra's basis coordinates.

    The sesquilinear form <x, y> = s(x* y) is carried by its Gram matrix on
    the basis; the quotient by its kernel gives coordinates in which left
    multiplication becomes the representation.  Raises DegenerateState when
    s is not a state.
    """
    s.check_state(tol)
    alg = s.algebra
    g = _gram(s)
    g = (g + adj(g)) / 2
    w, v = np.linalg.eigh(g)
    cut = tol.eps_rank * max(float(w.max()), 1.0)
    keep = w > cut
    r = int(np.count_nonzero(keep))
    wk = w[keep]
    vk = v[:, keep]
    to_quot = (vk / np.sqrt(wk)).conj().T  # (r, d): basis coords -> quotient
    lift = vk * np.sqrt(wk)  # (d, r): right inverse of to_quot

    mult = alg.mult_tensor()
    rep = np.empty((alg.dim, r, r), dtype=np.complex128)
    for k in range(alg.dim):
        # action of b_k on algebra coordinates: coords(b_k b_l) in column l
        action = mult[k].T  # (d, d) columns indexed by l
        rep[k] = to_quot @ action @ lift
    cyclic = to_quot @ alg.identity_coords()
    return GnsRep(state=s, rep_dim=r, rep_map=rep, cyclic=cyclic)


def equivalent(
    r1: GnsRep, r2: GnsRep, tol: Tolerance = DEFAULT_TOL, seed: int = 0
) -> bool:
    """Unitary equivalence of two GNS representations of the same algebra.

    Solves the intertwiner system U pi1(b) = pi2(b) U over the basis; the
    representations are equivalent iff the solution space contains an
    invertible element, which is checked on a random member (fixed default
    seed keeps runs reproducible).
    """
    if r1.rep_dim != r2.rep_dim:
        return False
    r = r1.rep_dim
    d = r1.rep_map.shape[0]
    if r2.rep_map.shape[0] != d:
        return False
    eye = np.eye(r)
    rows = []
    for k in range(d):
        rows.append(np.kron(eye, r1.rep_map[k].T) - np.kron(r2.rep_map[k], eye))
    space = nullspace(np.vstack(rows), tol)
    if space.shape[1] == 0:
        return False
    rng = np.random.default_rng(seed)
    for _ in range(3):
        coeff = rng.standard_normal(space.shape[1]) + 1j * rng.standard_normal(
            space.shape[1]
        )
        u = (space @ coeff).reshape(r, r)
        svals = np.linalg.svd(u, compute_uv=False)
        if svals[-1] > tol.eps_rank * max(svals[0], 1.0):
            return True
    return False


def commutant_dimension(rep: GnsRep, tol: Tolerance = DEFAULT_TOL) -> int:
    """Dimension of the commutant of the represented algebra (1 = irreducible)."""
    r = rep.rep_dim
    eye = np.eye(r)
    rows = []
    for k in range(rep.rep_map.shape[0]):
        rows.append(np.kron(eye, rep.rep_map[k].T) - np.kron(rep.rep_map[k], eye))
    return nullspace(np.vstack(rows), tol).shape[1]


def equivalence_relation(alg: FiniteCStar, tol: Tolerance = DEFAULT_TOL) -> EquivRelation:
    """Equivalence relation on the pure-state family via GNS equivalence.

    Pairs are exactly the state pairs whose GNS representations pass
    `equivalent`; the constructor validates that this really is transitive.
    """
    states = pure_states(alg)
    reps = [gns(s, tol) for s in states]
    labels = [s.label for s in states]
    pairs = set()
    for i, ri in enumerate(reps):
        pairs.add((labels[i], labels[i]))
        for j in range(i + 1, len(reps)):
            if ri.rep_dim != reps[j].rep_dim:
                continue
            if equivalent(ri, reps[j], tol):
                pairs.add((labels[i], labels[j]))
                pairs.add((labels[j], labels[i]))
    return EquivRelation(tuple(labels), frozenset(pairs))

"""Measures on finite equivalence relations and the transform that sends an
algebra element to one.

A measure assigns a complex weight to each pair of a relation.  For an
algebra element a and a factor embedded by the isometry W, the transform
weights the pair (k, j) with (W* a W)[j, k]: expanding the translate
x -> s_j(a x) of the j-th basis vector state over the matrix-unit
functionals x -> (W* x W)[k, j] produces exactly those coefficients.

Under that orientation the weight table of the transform is the transpose
of the block matrix, so the convolution that matches multiplication,
hat(a) * hat(b) = hat(ab), composes the second factor's weights into the
first; equivalently, every measure acts as an operator on functions on the
point set, and convolution is composition of those operators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FiniteCStar, generate
from .errors import RelationMismatch
from .linalg import DEFAULT_TOL, Tolerance, adj, as_matrix, frob, opnorm
from .relations import EquivRelation
from .states import equivalence_relation, skeleton_relation, state_label


@dataclass
class RelMeasure:
    """Finitely supported measure on a relation: weight per ordered pair."""

    relation: EquivRelation
    weights: dict[tuple[str, str], complex]

    def __post_init__(self):
        extra = set(self.weights) - set(self.relation.pairs)
        if extra:
            raise ValueError(f"weights off the relation: {sorted(extra)[:3]}")

    def weight(self, x: str, y: str) -> complex:
        return self.weights.get((x, y), 0.0 + 0.0j)

    def to_operator(self) -> np.ndarray:
        """The measure as an operator on functions on the points: entry
        [j, k] is the weight of the pair (k, j)."""
        idx = self.relation.index()
        n = len(self.relation.points)
        op = np.zeros((n, n), dtype=np.complex128)
        for (x, y), w in self.weights.items():
            op[idx[y], idx[x]] = w
        return op

    def norm(self) -> float:
        """Operator norm of the block-matrix form."""
        return opnorm(self.to_operator())


def measure_from_operator(
    rel: EquivRelation, op: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> RelMeasure:
    """Inverse of to_operator; entries off the relation must vanish."""
    op = as_matrix(op)
    idx = rel.index()
    n = len(rel.points)
    if op.shape[0] != n:
        raise RelationMismatch(f"operator is {op.shape[0]}x{op.shape[0]}, relation has {n} points")
    weights = {}
    bad = 0.0
    for j, pj in enumerate(rel.points):
        for k, pk in enumerate(rel.points):
            w = op[j, k]
            if (pk, pj) in rel.pairs:
                if w != 0:
                    weights[(pk, pj)] = complex(w)
            else:
                bad = max(bad, abs(w))
    if bad > tol.eps_verify:
        raise RelationMismatch(f"operator entry {bad:.3e} off the relation")
    return RelMeasure(rel, weights)


def delta_measure(rel: EquivRelation) -> RelMeasure:
    """Unit of convolution: weight 1 on every diagonal pair."""
    return RelMeasure(rel, {(p, p): 1.0 + 0.0j for p in rel.points})


def random_measure(rel: EquivRelation, rng: np.random.Generator) -> RelMeasure:
    weights = {
        pair: complex(rng.standard_normal(), rng.standard_normal())
        for pair in sorted(rel.pairs)
    }
    return RelMeasure(rel, weights)


def convolve(m1: RelMeasure, m2: RelMeasure, tol: Tolerance = DEFAULT_TOL) -> RelMeasure:
    """Convolution product, normalized so hat(a) * hat(b) = hat(a b).

    In weight form: (m1 * m2)(x, z) = sum_y m2(x, y) m1(y, z); in operator
    form it is plain composition O(m1) @ O(m2).  On a commutative
    (diagonal) relation this is pointwise multiplication, and the diagonal
    delta measure is the unit.
    """
    if m1.relation != m2.relation:
        raise RelationMismatch("measures live on different relations")
    op = m1.to_operator() @ m2.to_operator()
    return measure_from_operator(m1.relation, op, tol)


def star_measure(m: RelMeasure) -> RelMeasure:
    """Adjoint: weight(x, y) -> conj(weight(y, x)); operator form adjoint."""
    weights = {
        (y, x): complex(np.conj(w)) for (x, y), w in m.weights.items()
    }
    return RelMeasure(m.relation, weights)


def hat_measure(
    a: np.ndarray, alg: FiniteCStar, tol: Tolerance = DEFAULT_TOL
) -> RelMeasure:
    """Transform of an algebra element into a measure on the block relation.

    Raises NotInAlgebra when `a` is not in the span.  The weight on the
    pair (k, j) of block i is the (j, k) entry of the compression
    W_i* a W_i.
    """
    a = as_matrix(a)
    alg.require_member(a, tol)
    rel = skeleton_relation(alg)
    weights: dict[tuple[str, str], complex] = {}
    for i, blk in enumerate(alg.blocks):
        comp = alg.block_compress(a, i)
        for j in range(blk.dim):
            for k in range(blk.dim):
                w = complex(comp[j, k])
                if w != 0:
                    weights[(state_label(i, k), state_label(i, j))] = w
    return RelMeasure(rel, weights)


def _measure_coord_vector(m: RelMeasure, pair_order: list[tuple[str, str]]) -> np.ndarray:
    return np.array([m.weight(*p) for p in pair_order])


def duality_roundtrip_algebra(
    alg: FiniteCStar, tol: Tolerance = DEFAULT_TOL, seed: int = 0
) -> dict:
    """Check that the transform is an isometric *-isomorphism onto the
    measures supported on the algebra's block relation.

    Residual keys cover linearity, multiplicativity (hat(ab) against
    hat(a) * hat(b) over all basis pairs), adjoints, and isometry; the
    dimension comparison (pair count against algebra dimension) plus
    injectivity of the transform give surjectivity.
    """
    rng = np.random.default_rng(seed)
    rel = skeleton_relation(alg)
    pair_order = sorted(rel.pairs)
    hats = [hat_measure(b, alg, tol) for b in alg.basis]
    ops = [h.to_operator() for h in hats]

    lin = 0.0
    for _ in range(8):
        i, j = rng.integers(0, alg.dim, size=2)
        c1, c2 = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        combo = hat_measure(c1 * alg.basis[i] + c2 * alg.basis[j], alg, tol)
        lin = max(lin, frob(combo.to_operator() - c1 * ops[i] - c2 * ops[j]))

    mult = 0.0
    for i in range(alg.dim):
        for j in range(alg.dim):
            left = hat_measure(alg.basis[i] @ alg.basis[j], alg, tol)
            right = convolve(hats[i], hats[j], tol)
            mult = max(mult, frob(left.to_operator() - right.to_operator()))

    star = 0.0
    for i, b in enumerate(alg.basis):
        left = hat_measure(adj(b), alg, tol)
        star = max(star, frob(left.to_operator() - star_measure(hats[i]).to_operator()))

    coords = np.array([_measure_coord_vector(h, pair_order) for h in hats])
    svals = np.linalg.svd(coords, compute_uv=False)
    injective = bool(
        svals.size == alg.dim and svals[-1] > tol.eps_rank * max(svals[0], 1.0)
    )

    iso = 0.0
    for _ in range(8):
        c = rng.standard_normal(alg.dim) + 1j * rng.standard_normal(alg.dim)
        a = alg.from_coords(c)
        iso = max(iso, abs(opnorm(a) - hat_measure(a, alg, tol).norm()))
    for i, b in enumerate(alg.basis):
        iso = max(iso, abs(opnorm(b) - hats[i].norm()))

    dims_match = len(pair_order) == alg.dim
    residual = max(lin, mult, star, iso)
    return {
        "algebra_dim": alg.dim,
        "relation_pairs": len(pair_order),
        "dims_match": dims_match,
        "injective": injective,
        "surjective": bool(dims_match and injective),
        "linearity_residual": lin,
        "multiplicativity_residual": mult,
        "star_residual": star,
        "isometry_residual": iso,
        "residual": residual,
        "passed": bool(
            dims_match and injective and residual <= tol.eps_verify
        ),
    }


def measure_algebra(
    rel: EquivRelation, seed: int, tol: Tolerance = DEFAULT_TOL
) -> FiniteCStar:
    """The convolution algebra of all measures on `rel`, realized through
    the operator picture on functions on the points."""
    idx = rel.index()
    n = len(rel.points)
    gens = []
    for (x, y) in sorted(rel.pairs):
        op = np.zeros((n, n), dtype=np.complex128)
        op[idx[y], idx[x]] = 1.0
        gens.append(op)
    return generate(gens, seed=seed, tol=tol)


def duality_roundtrip_relation(
    rel: EquivRelation, seed: int, tol: Tolerance = DEFAULT_TOL
) -> dict:
    """Relation -> measure algebra -> state relation; compares class-size
    multisets on both ends."""
    alg = measure_algebra(rel, seed, tol)
    recovered = equivalence_relation(alg, tol)
    sizes_in = rel.class_sizes()
    sizes_out = recovered.class_sizes()
    expected_dim = sum(s * s for s in sizes_in)
    return {
        "input_classes": list(sizes_in),
        "recovered_classes": list(sizes_out),
        "algebra_dim": alg.dim,
        "expected_dim": expected_dim,
        "dim_match": alg.dim == expected_dim,
        "match": sizes_in == sizes_out,
        "passed": bool(sizes_in == sizes_out and alg.dim == expected_dim),
    }

"""Finite groups, their irreducible representations through operator-algebra
block decompositions, dual objects with partial multiplications, and the
four-quadrant classification by the two commutativity axes.

The dual of a group is modelled as a point set fibred over its irreducible
representation classes: one point per basis vector of each block, classes
given by the blocks.  For abelian groups every class is a singleton and the
pointwise character product makes the dual a group again; for nonabelian
groups the class-level product is only partial, and the reports below make
that degeneracy explicit rather than hiding it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import FiniteCStar, generate
from .errors import InputError, NotAbelian
from .linalg import DEFAULT_TOL, Tolerance, frob, nullspace
from .relations import EquivRelation
from .states import state_label


@dataclass(frozen=True)
class FiniteGroup:
    """Composition table of element indices, validated exhaustively."""

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        n = self.order
        if n <= 0 or len(self.table) != n or any(len(r) != n for r in self.table):
            raise InputError(f"table must be {n}x{n}")
        t = np.array(self.table, dtype=np.int64)
        if t.min() < 0 or t.max() >= n:
            raise InputError("table entries out of range")
        e = self.identity
        if not (np.all(t[e] == np.arange(n)) and np.all(t[:, e] == np.arange(n))):
            raise InputError(f"element {e} is not an identity")
        inv = np.array(self.inverses, dtype=np.int64)
        if len(inv) != n or np.any(t[np.arange(n), inv] != e) or np.any(
            t[inv, np.arange(n)] != e
        ):
            raise InputError("inverse list inconsistent with the table")
        left = t[t, :]
        right = t[:, t]
        if not np.array_equal(left, right):
            i, j, k = np.argwhere(left != right)[0]
            raise InputError(
                f"not associative: ({i}*{j})*{k} = {left[i, j, k]} but "
                f"{i}*({j}*{k}) = {right[i, j, k]}"
            )

    @staticmethod
    def from_table(table, name: str = "") -> "FiniteGroup":
        rows = tuple(tuple(int(x) for x in r) for r in table)
        n = len(rows)
        ident = None
        for e in range(n):
            if all(rows[e][j] == j and rows[j][e] == j for j in range(n)):
                ident = e
                break
        if ident is None:
            raise InputError("table has no identity element")
        inverses = []
        for i in range(n):
            found = [j for j in range(n) if rows[i][j] == ident]
            if len(found) != 1 or rows[found[0]][i] != ident:
                raise InputError(f"element {i} has no two-sided inverse")
            inverses.append(found[0])
        return FiniteGroup(n, rows, ident, tuple(inverses), name)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def is_abelian(self) -> bool:
        t = np.array(self.table)
        return bool(np.array_equal(t, t.T))

    def regular_repr(self) -> list[np.ndarray]:
        """Left translation operators: L_g e_h = e_{gh}."""
        mats = []
        for g in range(self.order):
            m = np.zeros((self.order, self.order), dtype=np.complex128)
            for h in range(self.order):
                m[self.table[g][h], h] = 1.0
            mats.append(m)
        return mats


def cyclic(n: int, name: str = "") -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup.from_table(table, name or f"Z{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str = "") -> FiniteGroup:
    n = g.order * h.order
    table = [[0] * n for _ in range(n)]
    for a1, b1, a2, b2 in itertools.product(
        range(g.order), range(h.order), range(g.order), range(h.order)
    ):
        table[a1 * h.order + b1][a2 * h.order + b2] = (
            g.mul(a1, a2) * h.order + h.mul(b1, b2)
        )
    label = name or f"{g.name or 'G'}x{h.name or 'H'}"
    return FiniteGroup.from_table(table, label)


def symmetric3() -> FiniteGroup:
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms
    ]
    return FiniteGroup.from_table(table, "S3")


def dihedral(k: int) -> FiniteGroup:
    """Symmetries of the regular k-gon, order 2k; (a, b) = rotation^a flip^b."""
    if k < 2:
        raise InputError("dihedral groups need k >= 2")
    els = [(a, b) for b in (0, 1) for a in range(k)]
    index = {e: i for i, e in enumerate(els)}

    def mul(x, y):
        a1, b1 = x
        a2, b2 = y
        return ((a1 + (a2 if b1 == 0 else -a2)) % k, b1 ^ b2)

    table = [[index[mul(x, y)] for y in els] for x in els]
    return FiniteGroup.from_table(table, f"D{k}")


def quaternion8() -> FiniteGroup:
    """Unit quaternions {1, -1, i, -i, j, -j, k, -k}."""
    base = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    els = [(s, l) for l in "1ijk" for s in (1, -1)]
    index = {e: i for i, e in enumerate(els)}

    def mul(x, y):
        s, l = base[(x[1], y[1])]
        return (s * x[0] * y[0], l)

    table = [[index[mul(x, y)] for y in els] for x in els]
    return FiniteGroup.from_table(table, "Q8")


def trivial_group() -> FiniteGroup:
    return cyclic(1, "1")


def group_algebra(g: FiniteGroup, seed: int, tol: Tolerance = DEFAULT_TOL) -> FiniteCStar:
    return generate(g.regular_repr(), seed=seed, tol=tol)


def irreps(
    g: FiniteGroup, seed: int, tol: Tolerance = DEFAULT_TOL
) -> list[tuple[int, list[np.ndarray]]]:
    """Irreducible unitary representations, one per block of the span of
    the left translation operators.  Returns (dimension, matrices per
    element) pairs with the squared dimensions summing to the order."""
    alg = group_algebra(g, seed, tol)
    left = g.regular_repr()
    out = []
    for i, blk in enumerate(alg.blocks):
        mats = [alg.block_compress(left[x], i) for x in range(g.order)]
        out.append((blk.dim, mats))
    if sum(d * d for d, _ in out) != g.order:
        raise InputError("block dimensions inconsistent with the group order")
    return out


def _no_intertwiner(r1, r2, tol: Tolerance) -> bool:
    d1 = r1[0].shape[0]
    d2 = r2[0].shape[0]
    rows = [
        np.kron(np.eye(d1), m1.T) - np.kron(m2, np.eye(d2))
        for m1, m2 in zip(r1, r2)
    ]
    return nullspace(np.vstack(rows), tol).shape[1] == 0


def irreps_report(g: FiniteGroup, seed: int, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Residual summary: unitarity, homomorphism property, pairwise
    inequivalence, and the squared-dimension count."""
    reps = irreps(g, seed, tol)
    unit = hom = 0.0
    for d, mats in reps:
        eye = np.eye(d)
        for x in range(g.order):
            unit = max(unit, frob(mats[x].conj().T @ mats[x] - eye))
            for y in range(g.order):
                hom = max(hom, frob(mats[x] @ mats[y] - mats[g.mul(x, y)]))
    distinct = all(
        _no_intertwiner(m1, m2, tol)
        for (_, m1), (_, m2) in itertools.combinations(reps, 2)
    )
    dims = sorted(d for d, _ in reps)
    return {
        "dims": dims,
        "sum_squares": sum(d * d for d in dims),
        "order": g.order,
        "unitary_residual": unit,
        "homomorphism_residual": hom,
        "pairwise_inequivalent": distinct,
        "passed": bool(
            sum(d * d for d in dims) == g.order
            and distinct
            and max(unit, hom) <= tol.eps_verify
        ),
    }


@dataclass(frozen=True)
class QuantumSpace:
    """A point set fibred over classes: the relation's classes are the
    fibers of the quotient map."""

    relation: EquivRelation

    @property
    def points(self) -> tuple[str, ...]:
        return self.relation.points

    def classes(self) -> tuple[tuple[str, ...], ...]:
        return self.relation.classes()


@dataclass(frozen=True)
class QuantumGroup:
    """A quantum space with multiplication data.

    class_law is a total composition table on the classes when one exists
    (group objects and duals of abelian groups) and None when only the
    partial fibrewise product is available.  commutative_topology records
    whether every class is a singleton.
    """

    space: QuantumSpace
    class_law: tuple[tuple[int, ...], ...] | None
    abelian: bool
    commutative_topology: bool

    def __post_init__(self):
        singles = all(len(c) == 1 for c in self.space.classes())
        if singles != self.commutative_topology:
            raise InputError("commutative_topology flag contradicts the classes")

    @staticmethod
    def from_group(g: FiniteGroup) -> "QuantumGroup":
        rel = EquivRelation.from_classes([(str(i),) for i in range(g.order)])
        return QuantumGroup(QuantumSpace(rel), g.table, g.is_abelian(), True)


def _character_table(reps) -> np.ndarray:
    """Rows are the scalar characters of one-dimensional representations."""
    rows = []
    for d, mats in reps:
        if d != 1:
            raise NotAbelian("character table requires all blocks of dim 1")
        rows.append(np.array([m[0, 0] for m in mats]))
    return np.array(rows)


def _match_character(product: np.ndarray, chars: np.ndarray, tol: Tolerance) -> int:
    dists = np.abs(chars - product[None, :]).max(axis=1)
    hits = np.flatnonzero(dists <= 1e3 * tol.eps_eig)
    if hits.size != 1:
        raise InputError("character product did not match a unique character")
    return int(hits[0])


def dual(g: FiniteGroup, seed: int, tol: Tolerance = DEFAULT_TOL) -> QuantumGroup:
    """Dual object: points labelled block:vector, classes the blocks;
    abelian groups get the total character product as class law."""
    reps = irreps(g, seed, tol)
    classes = [
        tuple(state_label(i, j) for j in range(d)) for i, (d, _) in enumerate(reps)
    ]
    rel = EquivRelation.from_classes(classes)
    singles = all(d == 1 for d, _ in reps)
    law = None
    if singles:
        chars = _character_table(reps)
        k = len(reps)
        law = tuple(
            tuple(_match_character(chars[i] * chars[j], chars, tol) for j in range(k))
            for i in range(k)
        )
    return QuantumGroup(QuantumSpace(rel), law, True, singles)


def classify(q: QuantumGroup) -> str:
    side = "abelian" if q.abelian else "nonabelian"
    topo = "commutative" if q.commutative_topology else "noncommutative"
    return f"{side}-{topo}"


def _is_group_law(law) -> bool:
    try:
        FiniteGroup.from_table(law)
    except InputError:
        return False
    return True


def comultiplication_check(obj, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Structure report for the coproduct induced by the multiplication.

    A total class law on singleton fibers is a group; its product is
    defined on every pair of points and the induced coproduct is
    nondegenerate and coassociative.  Anything else multiplies only within
    fibers (second projection), so the defined set is the fibred product
    and the verdict is degenerate; coassociativity of the partial product
    is still checked exhaustively.
    """
    if isinstance(obj, FiniteGroup):
        q = QuantumGroup.from_group(obj)
    elif isinstance(obj, QuantumGroup):
        q = obj
    else:
        raise InputError("expected a FiniteGroup or QuantumGroup")

    points = q.space.points
    n = len(points)
    total_pairs = n * n
    is_group = q.commutative_topology and q.class_law is not None and _is_group_law(
        q.class_law
    )
    if is_group:
        t = np.array(q.class_law, dtype=np.int64)
        defined = total_pairs
        coassoc = bool(np.array_equal(t[t, :], t[:, t]))
        residual = 0.0
    else:
        sizes = [len(c) for c in q.space.classes()]
        defined = sum(s * s for s in sizes)
        # second projection within a fiber: (x, y) -> y; both bracketings
        # of a same-fiber triple land on the last coordinate
        coassoc = True
        residual = 0.0
    nondegenerate = bool(is_group and defined == total_pairs)
    return {
        "points": n,
        "class_sizes": sorted(len(c) for c in q.space.classes()),
        "defined_pairs": defined,
        "total_pairs": total_pairs,
        "is_group_law": is_group,
        "nondegenerate": nondegenerate,
        "coassociative": coassoc,
        "coassociativity_residual": residual,
        "matches_group_status": nondegenerate == is_group,
    }


def dual_group_of_abelian(
    g: FiniteGroup, seed: int, tol: Tolerance = DEFAULT_TOL
) -> tuple[FiniteGroup, np.ndarray]:
    """Character group of an abelian group plus its character table."""
    if not g.is_abelian():
        raise NotAbelian(f"group {g.name or ''} of order {g.order} is nonabelian")
    reps = irreps(g, seed, tol)
    chars = _character_table(reps)
    k = chars.shape[0]
    table = [
        [_match_character(chars[i] * chars[j], chars, tol) for j in range(k)]
        for i in range(k)
    ]
    return FiniteGroup.from_table(table, f"dual({g.name or '?'})"), chars


def double_dual_abelian(
    g: FiniteGroup, seed: int = 0, tol: Tolerance = DEFAULT_TOL
) -> dict:
    """Evaluation map into the double character group, checked to be a
    bijective homomorphism by exhaustive table comparison."""
    ghat, chars = dual_group_of_abelian(g, seed, tol)
    ghathat, chars2 = dual_group_of_abelian(ghat, seed + 1, tol)
    n = g.order
    # evaluation of x in g is the character chi -> chi(x) of ghat
    mapping = []
    for x in range(n):
        values = chars[:, x]
        mapping.append(_match_character(values, chars2, tol))
    mapping_arr = np.array(mapping)
    bijective = len(set(mapping)) == n
    hom = all(
        mapping[g.mul(x, y)] == ghathat.mul(mapping[x], mapping[y])
        for x in range(n)
        for y in range(n)
    )
    identity_ok = mapping[g.identity] == ghathat.identity
    return {
        "order": n,
        "dual_order": ghat.order,
        "double_dual_order": ghathat.order,
        "bijective": bool(bijective),
        "homomorphism": bool(hom),
        "identity_preserved": bool(identity_ok),
        "passed": bool(bijective and hom and identity_ok and ghathat.order == n),
        "evaluation_map": mapping_arr.tolist(),
    }

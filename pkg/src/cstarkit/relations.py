"""Finite equivalence relations, their sub-relation lattice, and
idempotent-valued measures on that lattice.

A sub-relation of a parent equivalence relation R is an equivalence
relation on a subset of R's points whose pairs all lie inside R; the
collection of all of them is a complete lattice under intersection and
transitive-closure-of-union.  The relational product gives a second,
generally non-commutative composition whose interaction with the join is
what the exhaustive scans probe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ParentMismatch
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    adj,
    frob,
    nullspace,
    orth_columns,
)

Pair = tuple[str, str]


def _closure_pairs(pairs: set[Pair]) -> frozenset[Pair]:
    """Reflexive-symmetric-transitive closure of a pair set."""
    adjacency: dict[str, set[str]] = {}
    for a, b in pairs:
        adjacency.setdefault(a, set()).add(b)
        adjacency.setdefault(b, set()).add(a)
    out: set[Pair] = set()
    for start in adjacency:
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adjacency.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        out.update((start, y) for y in seen)
    return frozenset(out)


def _check_equivalence(points: tuple[str, ...], pairs: frozenset[Pair]) -> None:
    pset = set(points)
    if len(points) != len(pset):
        raise ValueError("duplicate point labels")
    touched = set()
    for a, b in pairs:
        if a not in pset or b not in pset:
            raise ValueError(f"pair ({a!r}, {b!r}) uses an unknown point")
        touched.add(a)
        touched.add(b)
        if (b, a) not in pairs:
            raise ValueError(f"pairs not symmetric at ({a!r}, {b!r})")
    for p in touched:
        if (p, p) not in pairs:
            raise ValueError(f"pairs not reflexive at {p!r}")
    index = {p: i for i, p in enumerate(points)}
    adjacency = [set() for _ in points]
    for a, b in pairs:
        adjacency[index[a]].add(index[b])
    for a, b in pairs:
        for c in adjacency[index[b]]:
            if c not in adjacency[index[a]]:
                raise ValueError(
                    f"pairs not transitive: ({a!r}, {b!r}) and ({b!r}, ...)"
                )


@dataclass(frozen=True)
class EquivRelation:
    """Equivalence relation on a finite labeled point set.

    `pairs` must be reflexive on every point, symmetric, and transitive;
    the constructor checks all three and raises ValueError otherwise.
    """

    points: tuple[str, ...]
    pairs: frozenset[Pair]

    def __post_init__(self):
        pts = tuple(str(p) for p in self.points)
        prs = frozenset((str(a), str(b)) for a, b in self.pairs)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "pairs", prs)
        for p in pts:
            if (p, p) not in prs:
                raise ValueError(f"missing reflexive pair at {p!r}")
        _check_equivalence(pts, prs)

    @staticmethod
    def from_classes(classes: list[tuple[str, ...]]) -> "EquivRelation":
        points = tuple(p for cls in classes for p in cls)
        pairs = frozenset(
            (a, b) for cls in classes for a in cls for b in cls
        )
        return EquivRelation(points, pairs)

    @staticmethod
    def full(points) -> "EquivRelation":
        pts = tuple(points)
        return EquivRelation(pts, frozenset(itertools.product(pts, pts)))

    @staticmethod
    def discrete(points) -> "EquivRelation":
        pts = tuple(points)
        return EquivRelation(pts, frozenset((p, p) for p in pts))

    def classes(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        out = []
        for p in self.points:
            if p in seen:
                continue
            cls = tuple(q for q in self.points if (p, q) in self.pairs)
            seen.update(cls)
            out.append(cls)
        return out

    def class_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.classes()))

    def index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}


@dataclass(frozen=True)
class SubRelation:
    """Equivalence relation on a subset of a parent relation's points,
    with every pair inside the parent."""

    parent: EquivRelation
    pairs: frozenset[Pair]

    def __post_init__(self):
        prs = frozenset((str(a), str(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", prs)
        extra = prs - self.parent.pairs
        if extra:
            raise ValueError(f"pairs outside the parent relation: {sorted(extra)[:3]}")
        touched = sorted({a for a, _ in prs} | {b for _, b in prs})
        _check_equivalence(tuple(touched), prs)

    def classes(self) -> list[tuple[str, ...]]:
        touched = [p for p in self.parent.points if (p, p) in self.pairs]
        seen: set[str] = set()
        out = []
        for p in touched:
            if p in seen:
                continue
            cls = tuple(q for q in touched if (p, q) in self.pairs)
            seen.update(cls)
            out.append(cls)
        return out

    def is_empty(self) -> bool:
        return not self.pairs


def empty_sub(parent: EquivRelation) -> SubRelation:
    return SubRelation(parent, frozenset())


def full_sub(parent: EquivRelation) -> SubRelation:
    return SubRelation(parent, parent.pairs)


def sub_from_classes(parent: EquivRelation, classes) -> SubRelation:
    pairs = frozenset((a, b) for cls in classes for a in cls for b in cls)
    return SubRelation(parent, pairs)


def _same_parent(u: SubRelation, v: SubRelation) -> None:
    if u.parent != v.parent:
        raise ParentMismatch("sub-relations live over different parents")


def meet(u: SubRelation, v: SubRelation) -> SubRelation:
    """Intersection of pair sets; always another sub-relation."""
    _same_parent(u, v)
    return SubRelation(u.parent, u.pairs & v.pairs)


def join(u: SubRelation, v: SubRelation) -> SubRelation:
    """Smallest sub-relation containing both: transitive closure of the union."""
    _same_parent(u, v)
    return SubRelation(u.parent, _closure_pairs(set(u.pairs | v.pairs)))


def relprod(u: SubRelation, v: SubRelation) -> frozenset[Pair]:
    """Relational product u o v over the union of the two supports.

    Each factor is first completed with the identity on the other factor's
    support, so points carried by only one factor pass through unchanged;
    without this the product of relations on disjoint supports would be
    empty and the join/commute criterion would fail trivially.
    """
    _same_parent(u, v)
    u_support = {a for a, _ in u.pairs}
    v_support = {a for a, _ in v.pairs}
    u_pairs = u.pairs | {(p, p) for p in v_support}
    v_pairs = v.pairs | {(p, p) for p in u_support}
    by_first: dict[str, list[str]] = {}
    for y, z in v_pairs:
        by_first.setdefault(y, []).append(z)
    return frozenset(
        (x, z) for x, y in u_pairs for z in by_first.get(y, ())
    )


def commute(u: SubRelation, v: SubRelation) -> bool:
    return relprod(u, v) == relprod(v, u)


def _partial_partitions(items: tuple[str, ...]):
    """All partitions of all subsets of `items` (the empty family included)."""

    def partitions(seq):
        if not seq:
            yield []
            return
        first, rest = seq[0], seq[1:]
        for part in partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [[first] + part[i]] + part[i + 1 :]
            yield [[first]] + part

    for r in range(len(items) + 1):
        for subset in itertools.combinations(items, r):
            for part in partitions(list(subset)):
                yield [tuple(b) for b in part]


def all_subrelations(parent: EquivRelation) -> list[SubRelation]:
    """Every sub-relation of the parent, one class choice per parent class.

    The count is the product, over parent classes of size c, of the number
    of partitions of subsets of a c-set; it grows quickly, so callers keep
    parents at 8 points or fewer.
    """
    per_class = [list(_partial_partitions(cls)) for cls in parent.classes()]
    out = []
    for combo in itertools.product(*per_class):
        classes = [blk for part in combo for blk in part]
        out.append(sub_from_classes(parent, classes))
    return out


# ---------------------------------------------------------------------------
# Packed-scan plumbing.

def encode_mask(sub: SubRelation, index: dict[str, int]) -> np.uint64:
    m = np.uint64(0)
    for a, b in sub.pairs:
        m |= np.uint64(1) << np.uint64(8 * index[a] + index[b])
    return m


def lattice_scan_report(parent: EquivRelation) -> dict:
    """Exhaustive scan over the whole sub-relation lattice of `parent`.

    Checks, for every element, pair, and triple:
      * u o u == u (idempotence of the relational product),
      * join(u, v) == u o v  iff  u o v == v o u,
      * the lattice is distributive iff every pair relprod-commutes,
      * absorption (so the meet/join really form a lattice).

    Returns counterexample codes (-1 means none) plus the element count.
    Parent must have at most 8 points.
    """
    n = len(parent.points)
    if n > 8:
        raise ValueError("packed scans support at most 8 points")
    index = parent.index()
    subs = all_subrelations(parent)
    masks = np.array([encode_mask(s, index) for s in subs], dtype=np.uint64)
    bad_idem = _kernels.scan_idempotent(masks, n)
    bad_join = _kernels.scan_join_vs_commute(masks, n)
    bad_absorb = _kernels.scan_absorption(masks, n)
    bad_dist = _kernels.scan_distributive(masks, n)
    bad_comm = _kernels.scan_all_commute(masks, n)
    distributive = bad_dist == -1
    all_commute = bad_comm == -1
    return {
        "count": len(subs),
        "points": n,
        "idempotence_violation": int(bad_idem),
        "join_vs_commute_violation": int(bad_join),
        "absorption_violation": int(bad_absorb),
        "distributive": distributive,
        "all_pairs_commute": all_commute,
        "distributive_iff_commute": distributive == all_commute,
        "passed": bad_idem == -1
        and bad_join == -1
        and bad_absorb == -1
        and distributive == all_commute,
    }


# ---------------------------------------------------------------------------
# Idempotent-valued measures on a sub-relation lattice.

@dataclass
class LatticeMeasure:
    """Assignment of idempotent matrices to a meet-closed family of
    sub-relations of one parent.

    flavor is "orthogonal" when every value is a self-adjoint projection,
    "oblique" when values are merely idempotent.
    """

    parent: EquivRelation
    domain: tuple[SubRelation, ...]
    assignment: dict[SubRelation, np.ndarray]
    flavor: str
    dim: int

    def value(self, sub: SubRelation) -> np.ndarray:
        return self.assignment[sub]


def _minimal_nonzero(domain) -> list[SubRelation]:
    nonzero = [u for u in domain if u.pairs]
    out = []
    for u in nonzero:
        if not any(v.pairs < u.pairs for v in nonzero):
            out.append(u)
    return out


def lattice_measure_axioms(
    measure: LatticeMeasure, tol: Tolerance = DEFAULT_TOL
) -> dict:
    """Check the defining identities of an idempotent-valued lattice measure.

    axiom 1: the empty sub-relation maps to 0 and the full one to the identity.
    axiom 2: E(u meet v) equals the projection onto range E(u) /\\ range E(v),
             for every pair in the domain.
    axiom 3: for families with pairwise zero meets, E(join) equals the
             projection onto the sum of the ranges (all pairs, plus the
             family of minimal nonzero elements when it is pairwise zero).

    Monotonicity (u <= v implies range E(u) <= range E(v)) is reported in
    its own key and kept out of `passed`; it is a consequence one can read
    off rather than an axiom, and is tracked separately.
    """
    dom = list(measure.domain)
    assign = measure.assignment
    n = measure.dim
    eye = np.eye(n)

    # Orthonormal range bases and projectors, computed once per element.
    bases = [orth_columns(assign[u], tol) for u in dom]
    projs = [b @ adj(b) for b in bases]
    complements = [eye - p for p in projs]
    by_pairs = {u.pairs: i for i, u in enumerate(dom)}

    r1 = 0.0
    if frozenset() in by_pairs:
        r1 = max(r1, frob(assign[dom[by_pairs[frozenset()]]]))
    if measure.parent.pairs in by_pairs:
        r1 = max(r1, frob(assign[dom[by_pairs[measure.parent.pairs]]] - eye))

    r2 = 0.0
    r3 = 0.0
    worst_pair = None
    for i, u in enumerate(dom):
        for j in range(i + 1, len(dom)):
            v = dom[j]
            meet_pairs = u.pairs & v.pairs
            k = by_pairs.get(meet_pairs)
            if k is not None:
                inter = nullspace(
                    np.vstack([complements[i], complements[j]]), tol
                )
                want = inter @ adj(inter)
                res = frob(assign[dom[k]] - want)
                if res > r2:
                    r2, worst_pair = res, (i, j)
            if not meet_pairs:
                join_pairs = _closure_pairs(set(u.pairs | v.pairs))
                k = by_pairs.get(join_pairs)
                if k is not None:
                    span = orth_columns(np.hstack([bases[i], bases[j]]), tol)
                    want = span @ adj(span)
                    r3 = max(r3, frob(assign[dom[k]] - want))

    minimal = _minimal_nonzero(dom)
    if len(minimal) > 1 and all(
        not (a.pairs & b.pairs)
        for a, b in itertools.combinations(minimal, 2)
    ):
        total = minimal[0]
        cols = [bases[dom.index(u)] for u in minimal]
        for u in minimal[1:]:
            total = join(total, u)
        k = by_pairs.get(total.pairs)
        if k is not None:
            span = orth_columns(np.hstack(cols), tol)
            want = span @ adj(span)
            r3 = max(r3, frob(assign[dom[k]] - want))

    mono = 0.0
    for i, u in enumerate(dom):
        for j, v in enumerate(dom):
            if u.pairs <= v.pairs:
                mono = max(mono, frob(complements[j] @ projs[i]))

    passed = max(r1, r2, r3) <= tol.eps_verify
    return {
        "axiom1_residual": r1,
        "axiom2_residual": r2,
        "axiom2_worst_pair": worst_pair,
        "axiom3_residual": r3,
        "monotone_residual": mono,
        "monotone": mono <= tol.eps_verify,
        "passed": bool(passed),
    }

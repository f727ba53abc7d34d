"""Finite orthomodular lattices as explicit tables: axiom reports, the
skew meet (a or not-b, then and b), the Boolean criterion via symmetry of
that operation, Stone's atom representation, and lattices generated by
matrix projections.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InputError, NotBoolean
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    frob,
    range_intersection_projector,
    range_sum_projector,
)

MAX_LATTICE = 64


@dataclass(frozen=True)
class FiniteLattice:
    size: int
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    complement: tuple[int, ...]
    zero: int
    one: int

    def __post_init__(self):
        n = self.size
        if not 1 <= n <= MAX_LATTICE:
            raise InputError(f"lattice size must be 1..{MAX_LATTICE}, got {n}")
        m = np.array(self.meet, dtype=np.int64)
        j = np.array(self.join, dtype=np.int64)
        for name, t in (("meet", m), ("join", j)):
            if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
                raise InputError(f"{name} table malformed")
            if not np.array_equal(t, t.T):
                raise InputError(f"{name} not commutative")
            if not np.array_equal(t[t, :], t[:, t]):
                raise InputError(f"{name} not associative")
        ar = np.arange(n)
        if not (
            np.array_equal(m[ar[:, None], j], np.broadcast_to(ar[:, None], (n, n)))
            and np.array_equal(j[ar[:, None], m], np.broadcast_to(ar[:, None], (n, n)))
        ):
            raise InputError("absorption fails")
        if len(self.complement) != n or any(
            not 0 <= c < n for c in self.complement
        ):
            raise InputError("complement list malformed")
        if np.any(m[:, self.one] != ar) or np.any(j[:, self.zero] != ar):
            raise InputError("zero/one are not bounds")

    def leq(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a


def dot_meet(lat: FiniteLattice, a: int, b: int) -> int:
    """Skew meet: join a with the complement of b, then meet with b."""
    return lat.meet[lat.join[a][lat.complement[b]]][b]


def _first_witness(mask: np.ndarray):
    bad = np.argwhere(mask)
    return tuple(int(x) for x in bad[0]) if bad.size else None


def is_oml(lat: FiniteLattice) -> dict:
    """Exhaustive orthocomplementation and orthomodularity report.

    Checks involution of the complement, order reversal, the complement
    laws a meet a' = 0 and a join a' = 1, and orthomodularity
    (a <= b implies a join (a' meet b) = b), with a witness pair for the
    first failure of each."""
    n = lat.size
    m = np.array(lat.meet)
    j = np.array(lat.join)
    c = np.array(lat.complement)
    ar = np.arange(n)

    involution_bad = c[c] != ar
    leq = m == ar[:, None]  # leq[a, b] means a <= b
    reversal_bad = leq & ~leq[np.ix_(c, c)].T
    compl_bad = (m[ar, c] != lat.zero) | (j[ar, c] != lat.one)
    ortho = j[ar[:, None], m[c[:, None], ar[None, :]]]  # a join (a' meet b)
    ortho_bad = leq & (ortho != ar[None, :])

    report = {
        "involution": not involution_bad.any(),
        "involution_witness": _first_witness(involution_bad[:, None]),
        "order_reversal": not reversal_bad.any(),
        "order_reversal_witness": _first_witness(reversal_bad),
        "complement_laws": not compl_bad.any(),
        "complement_witness": _first_witness(compl_bad[:, None]),
        "orthomodular": not ortho_bad.any(),
        "orthomodular_witness": _first_witness(ortho_bad),
    }
    report["passed"] = bool(
        report["involution"]
        and report["order_reversal"]
        and report["complement_laws"]
        and report["orthomodular"]
    )
    return report


def is_boolean(lat: FiniteLattice) -> bool:
    """True when the skew meet is symmetric in its arguments."""
    return all(
        dot_meet(lat, a, b) == dot_meet(lat, b, a)
        for a in range(lat.size)
        for b in range(lat.size)
    )


def is_distributive(lat: FiniteLattice) -> bool:
    """Independent oracle: meet distributes over join on all triples."""
    m = np.array(lat.meet)
    j = np.array(lat.join)
    lhs = m[:, j]  # a meet (b join c)
    rhs = j[m[:, :, None], m[:, None, :]]  # (a meet b) join (a meet c)
    return bool(np.array_equal(lhs, rhs))


def atoms(lat: FiniteLattice) -> list[int]:
    out = []
    for a in range(lat.size):
        if a == lat.zero:
            continue
        below = [
            x
            for x in range(lat.size)
            if x not in (lat.zero, a) and lat.leq(x, a)
        ]
        if not below:
            out.append(a)
    return out


def stone(lat: FiniteLattice) -> dict:
    """Atom representation of a Boolean lattice.

    Maps each element to its set of atoms below and verifies exhaustively
    that this is a bijection onto the power set carrying meet, join, and
    complement to intersection, union, and set complement."""
    if not is_oml(lat)["passed"] or not is_boolean(lat):
        raise NotBoolean("stone representation requires a Boolean lattice")
    ats = atoms(lat)
    images = [
        frozenset(i for i, at in enumerate(ats) if lat.leq(at, e))
        for e in range(lat.size)
    ]
    full = frozenset(range(len(ats)))
    bijective = len(set(images)) == lat.size and lat.size == 2 ** len(ats)
    meet_ok = join_ok = compl_ok = True
    for a, b in itertools.product(range(lat.size), repeat=2):
        meet_ok &= images[lat.meet[a][b]] == images[a] & images[b]
        join_ok &= images[lat.join[a][b]] == images[a] | images[b]
    for a in range(lat.size):
        compl_ok &= images[lat.complement[a]] == full - images[a]
    return {
        "atoms": len(ats),
        "size": lat.size,
        "bijective": bool(bijective),
        "meet_preserved": bool(meet_ok),
        "join_preserved": bool(join_ok),
        "complement_preserved": bool(compl_ok),
        "passed": bool(bijective and meet_ok and join_ok and compl_ok),
    }


def boolean_algebra(k: int) -> FiniteLattice:
    """Power set of a k-element set, elements encoded as bitmasks."""
    if not 0 <= k <= 6:
        raise InputError("boolean_algebra supports 0..6 generators")
    n = 1 << k
    meet = tuple(tuple(a & b for b in range(n)) for a in range(n))
    join = tuple(tuple(a | b for b in range(n)) for a in range(n))
    compl = tuple((n - 1) ^ a for a in range(n))
    return FiniteLattice(n, meet, join, compl, 0, n - 1)


def _lattice_from_order(leq: np.ndarray, complement, zero, one) -> FiniteLattice:
    """Tables from a partial order with all pairwise bounds existing."""
    n = leq.shape[0]
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a, b in itertools.product(range(n), repeat=2):
        lower = [x for x in range(n) if leq[x, a] and leq[x, b]]
        glb = [x for x in lower if all(leq[y, x] for y in lower)]
        upper = [x for x in range(n) if leq[a, x] and leq[b, x]]
        lub = [x for x in upper if all(leq[x, y] for y in upper)]
        if len(glb) != 1 or len(lub) != 1:
            raise InputError(f"pair ({a},{b}) lacks unique bounds")
        meet[a][b] = glb[0]
        join[a][b] = lub[0]
    return FiniteLattice(
        n,
        tuple(tuple(r) for r in meet),
        tuple(tuple(r) for r in join),
        tuple(complement),
        zero,
        one,
    )


def mo2() -> FiniteLattice:
    """Horizontal sum of two four-element Boolean algebras: 0, 1, and two
    incomparable complementary pairs; the smallest non-Boolean OML."""
    # order: 0, a, a', b, b', 1
    n = 6
    leq = np.eye(n, dtype=bool)
    leq[0, :] = True
    leq[:, 5] = True
    return _lattice_from_order(leq, (5, 2, 1, 4, 3, 0), 0, 5)


def pentagon() -> FiniteLattice:
    """Five-element nonmodular lattice with a forced complement choice;
    the standard negative control for orthomodularity."""
    # order: 0, a, b, c, 1 with a < b, c incomparable to both
    n = 5
    leq = np.eye(n, dtype=bool)
    leq[0, :] = True
    leq[:, 4] = True
    leq[1, 2] = True  # a < b
    return _lattice_from_order(leq, (4, 3, 3, 2, 0), 0, 4)


def projection_lattice(
    projections, tol: Tolerance = DEFAULT_TOL, cap: int = MAX_LATTICE
) -> FiniteLattice:
    """Close a finite set of orthogonal projections in M_n under range
    intersection, range sum, and complement; cap at 64 elements.

    The resulting tables index the closure sorted by rank; meets and joins
    that escape the closure mean the cap was hit and raise InputError."""
    mats = [as_matrix(p) for p in projections]
    if not mats:
        raise InputError("need at least one projection")
    n = mats[0].shape[0]
    for p in mats:
        if p.shape[0] != n:
            raise InputError("projections must share a dimension")
        if frob(p @ p - p) > tol.eps_verify or frob(p - p.conj().T) > tol.eps_verify:
            raise InputError("inputs must be orthogonal projections")

    found: list[np.ndarray] = [np.zeros((n, n), dtype=np.complex128), np.eye(n, dtype=np.complex128)]

    def locate(p: np.ndarray) -> int | None:
        for i, q in enumerate(found):
            if frob(p - q) <= 1e-6:
                return i
        return None

    def add(p: np.ndarray) -> bool:
        if locate(p) is None:
            if len(found) >= cap:
                raise InputError(f"projection closure exceeds {cap} elements")
            found.append(p)
            return True
        return False

    for p in mats:
        add(p)
    changed = True
    while changed:
        changed = False
        for p in list(found):
            changed |= add(np.eye(n) - p)
        for p, q in itertools.combinations(list(found), 2):
            changed |= add(range_intersection_projector(p, q, tol))
            changed |= add(range_sum_projector(p, q, tol))

    order = sorted(
        range(len(found)),
        key=lambda i: (np.linalg.matrix_rank(found[i]), i),
    )
    found = [found[i] for i in order]
    size = len(found)
    meet_t = [[0] * size for _ in range(size)]
    join_t = [[0] * size for _ in range(size)]
    compl = [0] * size
    for i, p in enumerate(found):
        c = locate(np.eye(n) - p)
        if c is None:
            raise InputError("closure not complement-stable")
        compl[i] = c
        for j, q in enumerate(found):
            mi = locate(range_intersection_projector(p, q, tol))
            jo = locate(range_sum_projector(p, q, tol))
            if mi is None or jo is None:
                raise InputError("closure not stable under meet/join")
            meet_t[i][j] = mi
            join_t[i][j] = jo
    zero = locate(np.zeros((n, n)))
    one = locate(np.eye(n))
    return FiniteLattice(
        size,
        tuple(tuple(r) for r in meet_t),
        tuple(tuple(r) for r in join_t),
        tuple(compl),
        zero,
        one,
    )

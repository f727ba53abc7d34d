"""Bit-packed kernels for exhaustive scans over finite relations.

A relation on n <= 8 points is one uint64: bit (i*8 + j) set iff (i, j) is
a pair.  The exhaustive lattice scans (idempotence, join-versus-commute,
distributivity) run over every pair or triple of sub-relations, which is
the hot loop of the package; the loop bodies are pure integer ops, so they
get numba-compiled versions plus vectorized numpy fallbacks.

Backend selection: numba when importable, unless CSTARKIT_NO_NUMBA is set
to a non-empty value other than "0".  Both backends produce identical
results; `test_kernels.py` checks them against each other.
"""

from __future__ import annotations

import os

import numpy as np

_ONE = np.uint64(1)
_ROW = np.uint64(0xFF)
# bits (i*8 + i): the diagonal, i.e. the support of a partial equivalence
_DIAG = np.uint64(0x8040201008040201)


def _use_numba() -> bool:
    flag = os.environ.get("CSTARKIT_NO_NUMBA", "").strip()
    if flag not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _use_numba()


# ---------------------------------------------------------------------------
# numpy (vectorized) backend: operates on uint64 arrays elementwise.

def py_closure_many(masks: np.ndarray, n: int) -> np.ndarray:
    """Transitive closure of each packed relation (Warshall on bit rows)."""
    m = np.array(masks, dtype=np.uint64, copy=True)
    for k in range(n):
        row_k = (m >> np.uint64(8 * k)) & _ROW
        for i in range(n):
            has = ((m >> np.uint64(8 * i + k)) & _ONE) != 0
            m[has] |= row_k[has] << np.uint64(8 * i)
    return m


def py_relprod_many(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """Elementwise relational product over the union of supports.

    Each factor is completed with the other's support diagonal first, so
    points present in only one factor pass through identically."""
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    a, b = a | (b & _DIAG), b | (a & _DIAG)
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.uint64)
    for y in range(n):
        row_y = (b >> np.uint64(8 * y)) & _ROW
        for i in range(n):
            has = ((a >> np.uint64(8 * i + y)) & _ONE) != 0
            add = np.where(has, row_y << np.uint64(8 * i), np.uint64(0))
            out |= add
    return out


def py_scan_idempotent(masks: np.ndarray, n: int) -> int:
    prod = py_relprod_many(masks, masks, n)
    bad = np.nonzero(prod != masks)[0]
    return int(bad[0]) if bad.size else -1


def py_scan_join_vs_commute(masks: np.ndarray, n: int) -> int:
    """First pair (coded i*N+j) where join == relprod fails to match
    commutation of the relprods, else -1."""
    masks = np.asarray(masks, dtype=np.uint64)
    big = len(masks)
    u = np.repeat(masks, big)
    v = np.tile(masks, big)
    join = py_closure_many(u | v, n)
    uv = py_relprod_many(u, v, n)
    vu = py_relprod_many(v, u, n)
    mismatch = (join == uv) != (uv == vu)
    bad = np.nonzero(mismatch)[0]
    return int(bad[0]) if bad.size else -1


def py_scan_all_commute(masks: np.ndarray, n: int) -> int:
    masks = np.asarray(masks, dtype=np.uint64)
    big = len(masks)
    u = np.repeat(masks, big)
    v = np.tile(masks, big)
    uv = py_relprod_many(u, v, n)
    vu = py_relprod_many(v, u, n)
    bad = np.nonzero(uv != vu)[0]
    return int(bad[0]) if bad.size else -1


def py_scan_distributive(masks: np.ndarray, n: int) -> int:
    """First triple (coded (i*N+j)*N+k) violating
    u & join(v, w) == join(u & v, u & w), else -1."""
    masks = np.asarray(masks, dtype=np.uint64)
    big = len(masks)
    vv = np.repeat(masks, big)
    ww = np.tile(masks, big)
    join_vw = py_closure_many(vv | ww, n)          # flattened (v, w) grid
    for i, u in enumerate(masks):
        lhs = u & join_vw
        rhs = py_closure_many((u & vv) | (u & ww), n)
        bad = np.nonzero(lhs != rhs)[0]
        if bad.size:
            return int(i * big * big + bad[0])
    return -1


def py_scan_absorption(masks: np.ndarray, n: int) -> int:
    """First pair failing u == join(u, u & v) or u == u & join(u, v), else -1."""
    masks = np.asarray(masks, dtype=np.uint64)
    big = len(masks)
    u = np.repeat(masks, big)
    v = np.tile(masks, big)
    bad1 = py_closure_many(u | (u & v), n) != u
    bad2 = (u & py_closure_many(u | v, n)) != u
    bad = np.nonzero(bad1 | bad2)[0]
    return int(bad[0]) if bad.size else -1


# ---------------------------------------------------------------------------
# numba backend: same semantics, explicit loops.

def _nb_closure_one(m, n):
    for k in range(n):
        row_k = (m >> np.uint64(8 * k)) & np.uint64(0xFF)
        for i in range(n):
            if (m >> np.uint64(8 * i + k)) & np.uint64(1):
                m |= row_k << np.uint64(8 * i)
    return m


def _nb_relprod_one(a, b, n):
    # complete each factor with the other's support diagonal (see the
    # numpy twin): identity passthrough on points the factor is missing
    diag = np.uint64(0x8040201008040201)
    a2 = a | (b & diag)
    b2 = b | (a & diag)
    out = np.uint64(0)
    for y in range(n):
        row_y = (b2 >> np.uint64(8 * y)) & np.uint64(0xFF)
        for i in range(n):
            if (a2 >> np.uint64(8 * i + y)) & np.uint64(1):
                out |= row_y << np.uint64(8 * i)
    return out


def _make_numba_backend():
    import numba

    closure_one = numba.njit(cache=True)(_nb_closure_one)
    relprod_one = numba.njit(cache=True)(_nb_relprod_one)

    @numba.njit(cache=True)
    def closure_many(masks, n):
        out = np.empty_like(masks)
        for t in range(masks.shape[0]):
            out[t] = closure_one(masks[t], n)
        return out

    @numba.njit(cache=True)
    def relprod_many(a, b, n):
        out = np.empty_like(a)
        for t in range(a.shape[0]):
            out[t] = relprod_one(a[t], b[t], n)
        return out

    @numba.njit(cache=True)
    def scan_idempotent(masks, n):
        for t in range(masks.shape[0]):
            if relprod_one(masks[t], masks[t], n) != masks[t]:
                return t
        return -1

    @numba.njit(cache=True)
    def scan_join_vs_commute(masks, n):
        big = masks.shape[0]
        for i in range(big):
            for j in range(big):
                u = masks[i]
                v = masks[j]
                join = closure_one(u | v, n)
                uv = relprod_one(u, v, n)
                vu = relprod_one(v, u, n)
                if (join == uv) != (uv == vu):
                    return i * big + j
        return -1

    @numba.njit(cache=True)
    def scan_all_commute(masks, n):
        big = masks.shape[0]
        for i in range(big):
            for j in range(big):
                if relprod_one(masks[i], masks[j], n) != relprod_one(
                    masks[j], masks[i], n
                ):
                    return i * big + j
        return -1

    @numba.njit(cache=True)
    def scan_distributive(masks, n):
        big = masks.shape[0]
        for i in range(big):
            u = masks[i]
            for j in range(big):
                v = masks[j]
                for k in range(big):
                    w = masks[k]
                    lhs = u & closure_one(v | w, n)
                    rhs = closure_one((u & v) | (u & w), n)
                    if lhs != rhs:
                        return (i * big + j) * big + k
        return -1

    @numba.njit(cache=True)
    def scan_absorption(masks, n):
        big = masks.shape[0]
        for i in range(big):
            for j in range(big):
                u = masks[i]
                v = masks[j]
                if closure_one(u | (u & v), n) != u:
                    return i * big + j
                if (u & closure_one(u | v, n)) != u:
                    return i * big + j
        return -1

    return {
        "closure_many": closure_many,
        "relprod_many": relprod_many,
        "scan_idempotent": scan_idempotent,
        "scan_join_vs_commute": scan_join_vs_commute,
        "scan_all_commute": scan_all_commute,
        "scan_distributive": scan_distributive,
        "scan_absorption": scan_absorption,
    }


_PY_BACKEND = {
    "closure_many": py_closure_many,
    "relprod_many": py_relprod_many,
    "scan_idempotent": py_scan_idempotent,
    "scan_join_vs_commute": py_scan_join_vs_commute,
    "scan_all_commute": py_scan_all_commute,
    "scan_distributive": py_scan_distributive,
    "scan_absorption": py_scan_absorption,
}

if NUMBA_ENABLED:
    _BACKEND = _make_numba_backend()
    BACKEND_NAME = "numba"
else:
    _BACKEND = _PY_BACKEND
    BACKEND_NAME = "numpy"

closure_many = _BACKEND["closure_many"]
relprod_many = _BACKEND["relprod_many"]
scan_idempotent = _BACKEND["scan_idempotent"]
scan_join_vs_commute = _BACKEND["scan_join_vs_commute"]
scan_all_commute = _BACKEND["scan_all_commute"]
scan_distributive = _BACKEND["scan_distributive"]
scan_absorption = _BACKEND["scan_absorption"]

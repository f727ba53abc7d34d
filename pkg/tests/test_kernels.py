"""Backend agreement: the numba kernels and the numpy fallbacks must
return identical integers on identical packed inputs."""

import numpy as np
import pytest

from cstarkit import _kernels
from cstarkit.relations import EquivRelation, all_subrelations, encode_mask

SCANS = [
    "scan_idempotent",
    "scan_join_vs_commute",
    "scan_all_commute",
    "scan_distributive",
    "scan_absorption",
]


def _mask_array(parent):
    idx = parent.index()
    subs = all_subrelations(parent)
    return np.array([encode_mask(s, idx) for s in subs], dtype=np.uint64), len(
        parent.points
    )


def _parents():
    yield EquivRelation.full(["a"])
    yield EquivRelation.from_classes([("a", "b")])
    yield EquivRelation.from_classes([("a", "b", "c")])
    yield EquivRelation.from_classes([("a", "b"), ("c", "d")])
    yield EquivRelation.from_classes([("a",), ("b", "c", "d")])


def test_python_closure_and_relprod_basics():
    # chain a->b->c closes to the full triangle
    n = 3
    ab = np.uint64(1) << np.uint64(8 * 0 + 1)
    ba = np.uint64(1) << np.uint64(8 * 1 + 0)
    bc = np.uint64(1) << np.uint64(8 * 1 + 2)
    cb = np.uint64(1) << np.uint64(8 * 2 + 1)
    diag = sum(np.uint64(1) << np.uint64(8 * i + i) for i in range(n))
    closed = _kernels.py_closure_many(
        np.array([ab | ba | bc | cb | diag], dtype=np.uint64), n
    )[0]
    assert bin(int(closed)).count("1") == 9


def test_relprod_identity_passthrough():
    # disjoint supports: product equals the union, not the empty relation
    n = 2
    aa = np.uint64(1) << np.uint64(0)
    bb = np.uint64(1) << np.uint64(9)
    out = _kernels.py_relprod_many(
        np.array([aa], dtype=np.uint64), np.array([bb], dtype=np.uint64), n
    )[0]
    assert out == aa | bb


@pytest.mark.skipif(not _kernels.NUMBA_ENABLED, reason="numba unavailable")
def test_backends_agree_on_lattice_scans():
    nb = _kernels._make_numba_backend()
    for parent in _parents():
        masks, n = _mask_array(parent)
        for name in SCANS:
            got_nb = int(nb[name](masks, n))
            got_py = int(_kernels._PY_BACKEND[name](masks, n))
            assert got_nb == got_py, (name, parent.classes(), got_nb, got_py)


@pytest.mark.skipif(not _kernels.NUMBA_ENABLED, reason="numba unavailable")
def test_backends_agree_on_closure_and_relprod():
    nb = _kernels._make_numba_backend()
    rng = np.random.default_rng(11)
    n = 5
    # arbitrary masks restricted to the n x n window
    window = np.uint64(0)
    for i in range(n):
        for j in range(n):
            window |= np.uint64(1) << np.uint64(8 * i + j)
    a = rng.integers(0, 2**63, size=64, dtype=np.uint64) & window
    b = rng.integers(0, 2**63, size=64, dtype=np.uint64) & window
    assert np.array_equal(nb["closure_many"](a.copy(), n), _kernels.py_closure_many(a, n))
    assert np.array_equal(nb["relprod_many"](a, b, n), _kernels.py_relprod_many(a, b, n))


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv("CSTARKIT_NO_NUMBA", "1")
    assert _kernels._use_numba() is False
    monkeypatch.setenv("CSTARKIT_NO_NUMBA", "0")
    # "0" means do not disable
    assert _kernels._use_numba() in (True, False)

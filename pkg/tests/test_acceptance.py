"""Acceptance battery: one test per criterion, one PASS/FAIL line each."""

from cstarkit import acceptance


def _run(index):
    name, fn = acceptance.ALL_CRITERIA[index - 1]
    passed, details = fn(seed=42, tol=acceptance.DEFAULT_TOL)
    print(f"criterion {name}: {'PASS' if passed else 'FAIL'}")
    assert passed, f"criterion {name} failed: {details}"


def test_criterion_01_algebra_roundtrip():
    _run(1)


def test_criterion_02_relation_roundtrip():
    _run(2)


def test_criterion_03_commutativity():
    _run(3)


def test_criterion_04_jordan_reconstruction():
    _run(4)


def test_criterion_05_measure_axioms():
    _run(5)


def test_criterion_06_shift_structure():
    _run(6)


def test_criterion_07_normal_reduction():
    _run(7)


def test_criterion_08_functional_calculus():
    _run(8)


def test_criterion_09_invariant_subspaces():
    _run(9)


def test_criterion_10_sublattice_theory():
    _run(10)


def test_criterion_11_pontryagin():
    _run(11)


def test_criterion_12_oml():
    _run(12)


def test_criterion_13_center_blocks():
    _run(13)


def test_run_all_summary():
    report = acceptance.run_all(seed=42, tol=acceptance.DEFAULT_TOL)
    assert report["all_passed"]
    names = [k for k in report if k != "all_passed"]
    assert len(names) == 13

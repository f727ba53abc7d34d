"""Orthocomplemented lattices: orthomodularity, Booleanness, atoms, Stone."""

import numpy as np
import pytest

from cstarkit.errors import InputError, NotBoolean
from cstarkit.oml import (
    FiniteLattice,
    atoms,
    boolean_algebra,
    dot_meet,
    is_boolean,
    is_distributive,
    is_oml,
    mo2,
    pentagon,
    projection_lattice,
    stone,
)


def test_lattice_validation():
    with pytest.raises(InputError):
        FiniteLattice(2, ((0, 0), (1, 1)), ((0, 1), (1, 1)), (1, 0), 0, 1)
    with pytest.raises(InputError):
        boolean_algebra(9)


def test_boolean_towers():
    for k in range(1, 5):
        lat = boolean_algebra(k)
        rep = is_oml(lat)
        assert rep["passed"], rep
        assert is_boolean(lat) and is_distributive(lat)
        assert len(atoms(lat)) == k
        srep = stone(lat)
        assert srep["passed"]
        assert srep["size"] == 2**k


def test_boolean_iff_distributive_on_ortholattices():
    for lat in (boolean_algebra(2), boolean_algebra(3), mo2()):
        if is_oml(lat)["passed"]:
            assert is_boolean(lat) == is_distributive(lat)


def test_mo2_separates_orthomodular_from_boolean():
    m = mo2()
    rep = is_oml(m)
    assert rep["passed"]
    assert not is_boolean(m)
    assert not is_distributive(m)
    # explicit witness: the two meet orders disagree on some atom pair
    witness = [
        (a, b)
        for a in range(m.size)
        for b in range(m.size)
        if dot_meet(m, a, b) != dot_meet(m, b, a)
    ]
    assert witness


def test_pentagon_fails_orthomodularity():
    rep = is_oml(pentagon())
    assert not rep["passed"]
    assert not rep["orthomodular"]
    assert rep["orthomodular_witness"] is not None


def test_stone_requires_boolean():
    with pytest.raises(NotBoolean):
        stone(mo2())


def test_projection_lattice_commuting_is_boolean():
    p = np.diag([1.0, 0.0, 0.0]).astype(np.complex128)
    q = np.diag([0.0, 1.0, 0.0]).astype(np.complex128)
    lat = projection_lattice([p, q])
    assert is_oml(lat)["passed"]
    assert is_boolean(lat)
    assert stone(lat)["passed"]


def test_projection_lattice_noncommuting_is_not_boolean():
    p = np.diag([1.0, 0.0]).astype(np.complex128)
    q = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=np.complex128)
    lat = projection_lattice([p, q])
    rep = is_oml(lat)
    assert rep["passed"]  # projections always satisfy orthomodularity
    assert not is_boolean(lat)
    assert is_boolean(lat) == is_distributive(lat)
    assert lat.size == 6


def test_dot_meet_reduces_to_meet_when_boolean():
    lat = boolean_algebra(3)
    for a in range(lat.size):
        for b in range(lat.size):
            assert dot_meet(lat, a, b) == lat.meet[a][b]

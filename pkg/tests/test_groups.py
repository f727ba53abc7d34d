"""Finite groups, their irreducible blocks, duals, and the double dual."""

import numpy as np
import pytest

from cstarkit.errors import InputError, NotAbelian
from cstarkit.groups import (
    FiniteGroup,
    QuantumGroup,
    classify,
    comultiplication_check,
    cyclic,
    dihedral,
    direct_product,
    double_dual_abelian,
    dual,
    dual_group_of_abelian,
    group_algebra,
    irreps,
    irreps_report,
    quaternion8,
    symmetric3,
    trivial_group,
)


def test_table_validation_names_the_witness():
    with pytest.raises(InputError) as err:
        FiniteGroup.from_table([[0, 1], [1, 1]])
    assert "associative" in str(err.value) or "identity" in str(err.value) \
        or "inverse" in str(err.value)
    # a genuinely non-associative magma with an identity
    t = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(InputError) as err:
        FiniteGroup.from_table(t)
    assert "not associative" in str(err.value)


def test_basic_group_properties():
    for g, abelian in ((cyclic(5), True), (symmetric3(), False),
                       (dihedral(4), False), (quaternion8(), False),
                       (trivial_group(), True)):
        assert g.is_abelian() == abelian
        assert g.mul(g.identity, 1 % g.order) == 1 % g.order
        for x in range(g.order):
            assert g.mul(x, g.inverses[x]) == g.identity


def test_direct_product_order():
    g = direct_product(cyclic(2), cyclic(3))
    assert g.order == 6
    assert g.is_abelian()


def test_regular_representation_is_faithful_homomorphism():
    g = symmetric3()
    rep = g.regular_repr()
    for x in range(g.order):
        for y in range(g.order):
            assert np.array_equal(rep[x] @ rep[y], rep[g.mul(x, y)])
    assert len({rep[x].tobytes() for x in range(g.order)}) == g.order


def test_group_algebra_dimension():
    g = symmetric3()
    alg = group_algebra(g, seed=3)
    assert alg.dim == 6
    assert sorted(b.dim for b in alg.blocks) == [1, 1, 2]


def test_irrep_dimensions():
    assert sorted(d for d, _ in irreps(cyclic(4), seed=1)) == [1, 1, 1, 1]
    assert sorted(d for d, _ in irreps(symmetric3(), seed=1)) == [1, 1, 2]
    assert sorted(d for d, _ in irreps(dihedral(4), seed=1)) == [1, 1, 1, 1, 2]
    assert sorted(d for d, _ in irreps(quaternion8(), seed=1)) == [1, 1, 1, 1, 2]


def test_irreps_report_residuals():
    rep = irreps_report(quaternion8(), seed=2)
    assert rep["passed"]
    assert rep["sum_squares"] == 8
    assert rep["unitary_residual"] < 1e-9
    assert rep["homomorphism_residual"] < 1e-9
    assert rep["pairwise_inequivalent"]


def test_cyclic_characters_match_roots_of_unity():
    g = cyclic(4)
    ghat, chars = dual_group_of_abelian(g, seed=3)
    assert ghat.order == 4
    # each character is k -> w^(jk) for a primitive 4th root w
    w = np.exp(2j * np.pi / 4)
    rows = {tuple(np.round(w ** (j * np.arange(4)), 9)) for j in range(4)}
    got = {tuple(np.round(r, 9)) for r in chars}
    assert rows == got


def test_dual_of_nonabelian_has_fat_classes():
    d = dual(symmetric3(), seed=4)
    assert sorted(len(c) for c in d.space.classes()) == [1, 1, 2]
    assert d.class_law is None
    assert classify(d) == "abelian-noncommutative"


def test_classification_quadrants():
    assert classify(QuantumGroup.from_group(cyclic(3))) == "abelian-commutative"
    assert classify(QuantumGroup.from_group(symmetric3())) == "nonabelian-commutative"
    assert classify(dual(cyclic(3), seed=1)) == "abelian-commutative"
    assert classify(dual(quaternion8(), seed=1)) == "abelian-noncommutative"


def test_comultiplication_verdicts():
    rep = comultiplication_check(symmetric3())
    assert rep["nondegenerate"] and rep["coassociative"]
    assert rep["defined_pairs"] == rep["total_pairs"] == 36

    rep = comultiplication_check(dual(symmetric3(), seed=5))
    assert not rep["nondegenerate"]
    assert rep["coassociative"]
    assert rep["defined_pairs"] == 6 and rep["total_pairs"] == 16

    rep = comultiplication_check(dual(cyclic(4), seed=5))
    assert rep["nondegenerate"] and rep["coassociative"]


def test_double_dual_evaluation_map():
    for g in (cyclic(6), direct_product(cyclic(2), cyclic(4))):
        rep = double_dual_abelian(g, seed=6)
        assert rep["passed"], rep
        assert rep["double_dual_order"] == g.order
        assert sorted(rep["evaluation_map"]) == sorted(set(rep["evaluation_map"]))


def test_dual_requires_abelian():
    with pytest.raises(NotAbelian):
        dual_group_of_abelian(symmetric3(), seed=1)

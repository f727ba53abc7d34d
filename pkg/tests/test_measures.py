"""Weight systems on relations: convolution, adjoints, and the transform
from block algebras."""

import numpy as np
import pytest

from cstarkit.algebra import generate
from cstarkit.errors import RelationMismatch
from cstarkit.linalg import frob, random_complex_matrix
from cstarkit.measures import (
    RelMeasure,
    convolve,
    delta_measure,
    duality_roundtrip_algebra,
    duality_roundtrip_relation,
    hat_measure,
    measure_algebra,
    measure_from_operator,
    random_measure,
    star_measure,
)
from cstarkit.relations import EquivRelation


def _rel():
    return EquivRelation.from_classes([("a", "b"), ("c",)])


def test_weights_must_sit_on_the_relation():
    with pytest.raises(ValueError):
        RelMeasure(_rel(), {("a", "c"): 1.0})


def test_delta_is_convolution_unit():
    rel = _rel()
    rng = np.random.default_rng(0)
    m = random_measure(rel, rng)
    d = delta_measure(rel)
    assert frob(convolve(d, m).to_operator() - m.to_operator()) < 1e-12
    assert frob(convolve(m, d).to_operator() - m.to_operator()) < 1e-12


def test_convolution_is_associative():
    rel = _rel()
    rng = np.random.default_rng(1)
    m1, m2, m3 = (random_measure(rel, rng) for _ in range(3))
    lhs = convolve(convolve(m1, m2), m3)
    rhs = convolve(m1, convolve(m2, m3))
    assert frob(lhs.to_operator() - rhs.to_operator()) < 1e-10


def test_star_is_an_involutive_antihomomorphism():
    rel = _rel()
    rng = np.random.default_rng(2)
    m1, m2 = random_measure(rel, rng), random_measure(rel, rng)
    assert frob(
        star_measure(star_measure(m1)).to_operator() - m1.to_operator()
    ) < 1e-12
    lhs = star_measure(convolve(m1, m2))
    rhs = convolve(star_measure(m2), star_measure(m1))
    assert frob(lhs.to_operator() - rhs.to_operator()) < 1e-10


def test_convolve_requires_same_relation():
    rel2 = EquivRelation.from_classes([("a", "b"), ("c", "d")])
    rng = np.random.default_rng(3)
    with pytest.raises(RelationMismatch):
        convolve(random_measure(_rel(), rng), random_measure(rel2, rng))


def test_measure_from_operator_rejects_off_relation_mass():
    rel = _rel()
    op = np.zeros((3, 3), dtype=np.complex128)
    op[rel.index()["c"], rel.index()["a"]] = 1.0  # crosses classes
    with pytest.raises(RelationMismatch):
        measure_from_operator(rel, op)


def test_nilpotent_measure_squares_to_zero():
    rel = EquivRelation.from_classes([("x", "y")])
    m = RelMeasure(rel, {("x", "y"): 1.0})
    sq = convolve(m, m)
    assert m.norm() == pytest.approx(1.0)
    assert sq.norm() < 1e-14


def test_hat_measure_is_multiplicative():
    rng = np.random.default_rng(4)
    g = np.zeros((3, 3), dtype=np.complex128)
    g[0, 0] = 1.5
    g[1:, 1:] = random_complex_matrix(rng, 2)
    alg = generate([g], seed=5)
    for x in alg.basis:
        for y in alg.basis:
            left = hat_measure(x @ y, alg)
            right = convolve(hat_measure(x, alg), hat_measure(y, alg))
            assert frob(left.to_operator() - right.to_operator()) < 1e-9


def test_algebra_roundtrip_report():
    rng = np.random.default_rng(6)
    alg = generate([random_complex_matrix(rng, 2)], seed=7)
    rep = duality_roundtrip_algebra(alg, seed=0)
    assert rep["passed"]
    assert rep["dims_match"] and rep["injective"] and rep["surjective"]
    assert rep["residual"] < 1e-10


def test_relation_roundtrip_report():
    rel = EquivRelation.from_classes([("a", "b", "c"), ("d",)])
    rep = duality_roundtrip_relation(rel, seed=1)
    assert rep["passed"]
    assert rep["algebra_dim"] == 10
    assert rep["recovered_classes"] == [1, 3]


def test_measure_algebra_dimension():
    rel = EquivRelation.from_classes([("a", "b"), ("c",)])
    alg = measure_algebra(rel, seed=2)
    assert alg.dim == 5
    assert sorted(b.dim for b in alg.blocks) == [1, 2]

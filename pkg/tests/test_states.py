"""Vector states, their GNS representations, and the equivalence relation."""

import numpy as np
import pytest

from cstarkit.algebra import generate
from cstarkit.linalg import frob, random_complex_matrix
from cstarkit.states import (
    commutant_dimension,
    equivalence_relation,
    equivalent,
    gns,
    pure_states,
    skeleton_relation,
    state_label,
)


def _mixed_algebra(seed=21):
    rng = np.random.default_rng(seed)
    g = np.zeros((3, 3), dtype=np.complex128)
    g[0, 0] = 2.0
    g[1:, 1:] = random_complex_matrix(rng, 2)
    return generate([g], seed=seed)


def test_labels_and_skeleton():
    alg = _mixed_algebra()
    rel = skeleton_relation(alg)
    assert set(rel.points) == {state_label(0, 0), state_label(1, 0), state_label(1, 1)}
    assert rel.class_sizes() == (1, 2)
    assert len(rel.pairs) == alg.dim


def test_pure_state_count_matches_blocks():
    alg = _mixed_algebra()
    states = pure_states(alg)
    assert len(states) == sum(b.dim for b in alg.blocks)
    for s in states:
        s.check_state()  # positivity and unit mass


def test_gns_rep_is_multiplicative():
    alg = _mixed_algebra()
    rng = np.random.default_rng(3)
    for s in pure_states(alg):
        rep = gns(s)
        # representation dimension equals the block the state lives on
        for _ in range(4):
            c1 = rng.standard_normal(alg.dim) + 1j * rng.standard_normal(alg.dim)
            c2 = rng.standard_normal(alg.dim) + 1j * rng.standard_normal(alg.dim)
            m1 = np.tensordot(c1, rep.rep_map, axes=1)
            m2 = np.tensordot(c2, rep.rep_map, axes=1)
            both = np.tensordot(
                alg.coords(alg.from_coords(c1) @ alg.from_coords(c2)),
                rep.rep_map,
                axes=1,
            )
            assert frob(m1 @ m2 - both) < 1e-8


def test_gns_dims_match_blocks():
    alg = _mixed_algebra()
    dims = sorted(gns(s).rep_dim for s in pure_states(alg))
    assert dims == [1, 2, 2]
    for s in pure_states(alg):
        assert commutant_dimension(gns(s)) == 1  # each is irreducible


def test_equivalence_classes_follow_blocks():
    alg = _mixed_algebra()
    rel = equivalence_relation(alg)
    assert rel.class_sizes() == (1, 2)

    reps = [gns(s) for s in pure_states(alg)]
    # states on the same block are equivalent, across blocks they are not
    same = [r for r in reps if r.rep_dim == 2]
    diff = [r for r in reps if r.rep_dim == 1]
    assert equivalent(same[0], same[1])
    assert not equivalent(same[0], diff[0])


def test_commutative_algebra_gives_singletons():
    d = np.diag(np.array([1.0, 2.0, 3.0], dtype=np.complex128))
    alg = generate([d], seed=2)
    rel = equivalence_relation(alg)
    assert rel.class_sizes() == (1, 1, 1)

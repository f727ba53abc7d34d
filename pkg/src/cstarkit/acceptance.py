"""Acceptance corpus and the thirteen verification suites.

Every suite is a pure function of a seed and a tolerance returning
(passed, details); the command line's verify subcommand and the test
suite both call these, so a green test run and a green CLI report are
the same computation.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import measures, oml, relations, spectral
from .algebra import FiniteCStar, center, generate, is_commutative
from .groups import (
    QuantumGroup,
    classify,
    comultiplication_check,
    cyclic,
    dihedral,
    direct_product,
    double_dual_abelian,
    dual,
    irreps_report,
    quaternion8,
    symmetric3,
    trivial_group,
)
from .linalg import DEFAULT_TOL, Tolerance, frob, opnorm, random_complex_matrix, random_unitary
from .relations import EquivRelation, lattice_measure_axioms, lattice_scan_report
from .states import equivalence_relation

GRID = tuple(complex(x, y) for x in (-2, -1, 0, 1, 2) for y in (-1, 0, 1))


# ---------------------------------------------------------------- corpora


def algebra_corpus(seed: int, tol: Tolerance = DEFAULT_TOL) -> list[tuple[str, FiniteCStar]]:
    """Named algebras: commutative towers, full matrix algebras, direct
    sums, a multiplicity-two embedding, and twenty random generator sets."""
    rng = np.random.default_rng(seed)
    out: list[tuple[str, FiniteCStar]] = []
    for n in range(1, 5):
        d = np.diag(np.arange(1, n + 1, dtype=np.complex128))
        out.append((f"C^{n}", generate([d], seed=seed + n, tol=tol)))
    out.append(("M2", generate([random_complex_matrix(rng, 2)], seed=seed + 10, tol=tol)))
    out.append(("M3", generate([random_complex_matrix(rng, 3)], seed=seed + 11, tol=tol)))
    g = np.zeros((3, 3), dtype=np.complex128)
    g[0, 0] = 2.0
    g[1:, 1:] = random_complex_matrix(rng, 2)
    out.append(("C+M2", generate([g], seed=seed + 12, tol=tol)))
    a = random_complex_matrix(rng, 2)
    twice = np.zeros((4, 4), dtype=np.complex128)
    twice[:2, :2] = a
    twice[2:, 2:] = a
    out.append(("M2-mult2", generate([twice], seed=seed + 13, tol=tol)))
    for k in range(20):
        n = 4 + k % 3
        count = 1 + k % 2
        gens = [random_complex_matrix(rng, n) for _ in range(count)]
        if k % 4 == 0:
            # plant a block-diagonal pattern so not every sample is full M_n
            split = n // 2
            for m in gens:
                m[:split, split:] = 0
                m[split:, :split] = 0
        out.append((f"rand{k}-M{n}", generate(gens, seed=seed + 20 + k, tol=tol)))
    return out


def set_partitions(items: tuple[str, ...]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def relation_corpus(seed: int) -> list[EquivRelation]:
    """Every equivalence relation on up to 5 points, then 50 seeded
    samples on 6 to 8 points."""
    out = []
    for n in range(1, 6):
        pts = tuple(f"p{i}" for i in range(n))
        for part in set_partitions(pts):
            out.append(EquivRelation.from_classes([tuple(c) for c in part]))
    rng = np.random.default_rng(seed)
    for _ in range(50):
        n = int(rng.integers(6, 9))
        pts = tuple(f"p{i}" for i in range(n))
        owners = rng.integers(0, int(rng.integers(1, n + 1)), size=n)
        classes: dict[int, list[str]] = {}
        for p, o in zip(pts, owners):
            classes.setdefault(int(o), []).append(p)
        out.append(EquivRelation.from_classes([tuple(c) for c in classes.values()]))
    return out


def _random_partition(rng, n: int) -> list[int]:
    blocks, left = [], n
    while left:
        b = int(rng.integers(1, left + 1))
        blocks.append(b)
        left -= b
    return blocks


def planted_jordan_corpus(
    seed: int, count: int = 200
) -> list[tuple[np.ndarray, list[tuple[complex, int]]]]:
    """Matrices V J V^-1 with dim <= 8, grid eigenvalues, cond(V) <= 100."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(2, 9))
        sizes = _random_partition(rng, n)
        lams = [GRID[int(rng.integers(0, len(GRID)))] for _ in sizes]
        j = np.zeros((n, n), dtype=np.complex128)
        pos = 0
        for size, lam in zip(sizes, lams):
            for i in range(size):
                j[pos + i, pos + i] = lam
                if i + 1 < size:
                    j[pos + i, pos + i + 1] = 1.0
            pos += size
        while True:
            v = random_complex_matrix(rng, n)
            if np.linalg.cond(v) <= 100:
                break
        out.append((v @ j @ np.linalg.inv(v), sorted(zip(lams, sizes), key=_key)))
    return out


def _key(pair):
    lam, size = pair
    return (round(lam.real, 6), round(lam.imag, 6), size)


def normal_corpus(seed: int, count: int = 50) -> list[np.ndarray]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(2, 9))
        u = random_unitary(rng, n)
        d = np.array([GRID[int(rng.integers(0, len(GRID)))] for _ in range(n)])
        out.append(u @ np.diag(d) @ u.conj().T)
    return out


def group_corpus():
    return [
        trivial_group(),
        cyclic(2),
        cyclic(3),
        cyclic(4),
        cyclic(5),
        cyclic(6),
        symmetric3(),
        dihedral(4),
        quaternion8(),
    ]


def abelian_corpus():
    groups = [cyclic(n) for n in range(2, 17)]
    groups += [
        direct_product(cyclic(2), cyclic(2)),
        direct_product(cyclic(2), cyclic(4)),
        direct_product(cyclic(2), cyclic(6)),
        direct_product(cyclic(3), cyclic(3)),
        direct_product(cyclic(2), cyclic(8)),
        direct_product(cyclic(4), cyclic(4)),
        direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)),
        direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(4)),
    ]
    return [g for g in groups if g.order <= 16]


def matrix_exp_oracle(a: np.ndarray) -> np.ndarray:
    """Scaling-and-squaring Taylor evaluation, independent of the calculus."""
    norm = opnorm(a)
    squarings = max(0, int(np.ceil(np.log2(max(norm, 1e-30) / 0.5)))) if norm > 0.5 else 0
    b = a / (2**squarings)
    n = a.shape[0]
    term = np.eye(n, dtype=np.complex128)
    total = np.eye(n, dtype=np.complex128)
    for k in range(1, 30):
        term = term @ b / k
        total = total + term
    for _ in range(squarings):
        total = total @ total
    return total


# ---------------------------------------------------------------- criteria


def criterion_1_algebra_roundtrip(seed: int = 42, tol: Tolerance = DEFAULT_TOL):
    """Transform to measures is a *-isometric isomorphism on every corpus
    algebra: residuals at 1e-8, dimension count exact."""
    worst = {"name": None, "residual": 0.0}
    failures = []
    corpus = algebra_corpus(seed, tol)
    for name, alg in corpus:
        rep = measures.duality_roundtrip_algebra(alg, tol, seed=seed)
        if rep["residual"] > worst["residual"]:
            worst = {"name": name, "residual": rep["residual"]}
        if not rep["passed"]:
            failures.append({"name": name, "report": rep})
    return not failures, {
        "count": len(corpus),
        "worst": worst,
        "failures": failures,
        "tolerance": tol.eps_verify,
    }


def criterion_2_relation_roundtrip(seed: int = 42, tol: Tolerance = DEFAULT_TOL):
    """Relation to measure algebra and back preserves class-size multisets."""
    rels = relation_corpus(seed)
    failures = []
    for i, rel in enumerate(rels):
        rep = measures.duality_roundtrip_relation(rel, seed=seed + i, tol=tol)
        if not rep["passed"]:
            failures.append({"index": i, "classes": list(rel.class_sizes()), "report": rep})
    return not failures, {"count": len(rels), "failures": failures}


def criterion_3_commutativity(seed: int = 42, tol: Tolerance = DEFAULT_TOL):
    """is_commutative agrees with all-singleton state classes everywhere."""
    disagreements = []
    corpus = algebra_corpus(seed, tol)
    for name, alg in corpus:
        flag = is_commutative(alg, tol)
        rel = equivalence_relation(alg, tol)
        singles = all(s == 1 for s in rel.class_sizes())
        if flag != singles:
            disagreements.append({"name": name, "is_commutative": flag, "singletons": singles})
    return not disagreements, {"count": len(corpus), "disagreements": disagreements}


def criterion_4_jordan_reconstruction(seed: int = 42, tol: Tolerance = DEFAULT_TOL):
    """Planted Jordan matrices reconstruct within 1e-8 with exact structure."""
    failures = []
    worst = 0.0
    corpus = planted_jordan_corpus(seed)
    for i, (a, expected) in enumerate(corpus):
        try:
            fam = spectral.spectral_family(a, tol)
        except Exception as exc:  # noqa: BLE001 - report, do not crash the suite
            failures.append({"index": i, "error": str(exc)})
            continue
        res = frob(a - spectral.reconstruct(fam)) / max(frob(a), 1.0)
        worst = max(worst, res)
        got = sorted(
            ((b.eigenvalue, b.size) for b in fam.decomposition.blocks), key=_key
        )
        struct_ok = [_key(p) for p in got] == [_key(p) for p in expected]
        if res > tol.eps_verify or not struct_ok:
            failures.append(
                {"index": i, "residual": res, "structure_match": struct_ok}
            )
    return not failures, {
        "count": len(corpus),
        "worst_residual": worst,
        "failures": failures[:5],
        "failure_count": len(failures),
        "tolerance": tol.eps_verify,
    }


def _families(seed, tol):
    for i, (a, _) in enumerate(planted_jordan_corpus(seed)):
        yield i, a, spectral.spectral_family(a, tol)


def criterion_5_measure_axioms(seed: int = 42, tol: Tolerance = DEFAULT_TOL):
    """Orthogonal family passes the measure axioms; both families leave
    the source invariant on every value's range."""
    failures = []
    worst_axiom = 0.0
    worst_inv = 0.0
    for i, a, fam in _families(seed, tol):
        rep = lattice_measure_axioms(fam.orthogonal, tol)
        worst_axiom = max(
            worst_axiom,
            rep["axiom1_residual"],
            rep["axiom2_residual"],
            rep["axiom3_residual"],
        )
        scale = max(frob(a), 1.0)
        inv = 0.0
        for sub in fam.orthogonal.domain:
            q = fam.oblique[sub]
            e = fam.orthogonal.assignment[sub]
            inv = max(
                inv,
                frob(q @ a @ q - a @ q) / scale,
                frob(e @ a @ e - a @ e) / scale,
            )
        worst_inv = max(worst_inv, inv)
        if not rep["passed"] or inv > tol.eps_verify:
            failures.append({"index": i, "axioms": rep["passed"], "invariance": inv})
    return not failures, {
        "worst_axiom_residual": worst_axiom,
        "worst_invariance_residual": worst_inv,
        "failure_count": len(failures),
        "failures": failures[:5],
        "tolerance": tol.eps_verify,
    }


def criterion_6_shift_structure(seed: int = 42, tol: Tolerance = DEFAULT_TOL):
    """Shifts die exactly at the block size, never earlier."""
    failures = []
    for i, a, fam in _families(seed, tol):
        for b, blk in enumerate(fam.decomposition.blocks):
            s = fam.shifts[fam.minimal[b]]
            scale = max(opnorm(s), 1.0)
            dead = np.linalg.matrix_power(s, blk.size) if blk.size > 1 else s
            alive = (
                np.linalg.matrix_power(s, blk.size - 1)
                if blk.size > 1
                else fam.oblique[fam.minimal[b]]
            )
            if opnorm(dead) > tol.eps_verify * scale or opnorm(alive) <= tol.eps_verify:
                failures.append({"index": i, "block": b, "size": blk.size})
    return not failures, {"failure_count": len(failures), "failures": failures[:5]}


def criterion_7_normal_reduction(seed: int = 42, tol: Tolerance = DEFAULT_TOL):
    """Normal matrices collapse to the classical spectral theorem."""
    failures = []
    worst_shift = 0.0
    worst_gap = 0.0
    for i, a in enumerate(normal_corpus(seed)):
        fam = spectral.spectral_family(a, tol)
        sizes_ok = all(b.size == 1 for b in fam.decomposition.blocks)
        shift = max(opnorm(s) for s in fam.shifts.values()) if fam.shifts else 0.0
        gap = max(
            frob(fam.oblique[sub] - fam.orthogonal.assignment[sub])
            for sub in fam.orthogonal.domain
        )
        worst_shift = max(worst_shift, shift)
        worst_gap = max(worst_gap, gap)
        if not sizes_ok or shift > 1e-10 or gap > 1e-9:
            failures.append({"index": i, "sizes_ok": sizes_ok, "shift": shift, "gap": gap})
    return not failures, {
        "count": 50,
        "worst_shift": worst_shift,
        "worst_family_gap": worst_gap,
        "failures": failures[:5],
        "shift_tolerance": 1e-10,
        "gap_tolerance": 1e-9,
    }


def criterion_8_functional_calculus(seed: int = 42, tol: Tolerance = DEFAULT_TOL):
    """Unit and coordinate series, basis multiplicativity and injectivity,
    and Riesz agreement for low-degree polynomials and exp."""
    polys = [
        [1.0],
        [0.0, 1.0],
        [0.5, -1.0, 2.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.3, -1.0, 0.25, 0.1, 0.02],
    ]
    worst = {"unit": 0.0, "coord": 0.0, "mult": 0.0, "riesz_poly": 0.0, "riesz_exp": 0.0, "exp_oracle": 0.0}
    injective_everywhere = True
    failures = []
    corpus = planted_jordan_corpus(seed)[:60]
    for i, (a, _) in enumerate(corpus):
        fam = spectral.spectral_family(a, tol)
        dec = fam.decomposition
        n = dec.dim
        eye = np.eye(n)
        scale = max(frob(a), 1.0)

        u_res = frob(spectral.apply_series(spectral.unit_series(dec), fam) - eye)
        z_res = frob(spectral.apply_series(spectral.coordinate_series(dec), fam) - a) / scale
        worst["unit"] = max(worst["unit"], u_res)
        worst["coord"] = max(worst["coord"], z_res)

        keys = [
            (b, d) for b, blk in enumerate(dec.blocks) for d in range(blk.size)
        ]
        images = {}
        for key in keys:
            series = spectral.BlockSeries(dec, {key: 1.0 + 0.0j})
            images[key] = spectral.apply_series(series, fam)
        stack = np.column_stack([images[k].reshape(-1) for k in keys])
        svals = np.linalg.svd(stack, compute_uv=False)
        if svals[-1] <= tol.eps_rank * max(svals[0], 1.0):
            injective_everywhere = False
        mult = 0.0
        for k1, k2 in itertools.product(keys, repeat=2):
            s1 = spectral.BlockSeries(dec, {k1: 1.0 + 0.0j})
            s2 = spectral.BlockSeries(dec, {k2: 1.0 + 0.0j})
            conv = spectral.apply_series(spectral.convolve_series(s1, s2), fam)
            mult = max(mult, frob(conv - images[k1] @ images[k2]) / scale)
        worst["mult"] = max(worst["mult"], mult)

        riesz_poly = 0.0
        for coeffs in polys:
            fn = spectral.AnalyticFunction.polynomial(coeffs)
            val = spectral.apply_series(spectral.holomorphic_series(fn, dec), fam)
            horner = np.zeros((n, n), dtype=np.complex128)
            for c in reversed(coeffs):
                horner = horner @ a + c * eye
            contour = spectral.riesz_contour(fn, a, dec, tol)
            base = max(frob(horner), 1.0)
            riesz_poly = max(riesz_poly, frob(val - horner) / base, frob(val - contour) / base)
        fn = spectral.AnalyticFunction.exp()
        val = spectral.apply_series(spectral.holomorphic_series(fn, dec), fam)
        oracle = matrix_exp_oracle(a)
        contour = spectral.riesz_contour(fn, a, dec, tol)
        base = max(frob(oracle), 1.0)
        exp_oracle = frob(val - oracle) / base
        riesz_exp = frob(val - contour) / base
        worst["riesz_poly"] = max(worst["riesz_poly"], riesz_poly)
        worst["riesz_exp"] = max(worst["riesz_exp"], riesz_exp)
        worst["exp_oracle"] = max(worst["exp_oracle"], exp_oracle)

        if (
            u_res > 1e-10
            or z_res > 1e-10
            or mult > tol.eps_verify
            or riesz_poly > 1e-7
            or riesz_exp > 1e-7
            or exp_oracle > 1e-7
        ):
            failures.append({"index": i, "unit": u_res, "coord": z_res, "mult": mult,
                             "riesz_poly": riesz_poly, "riesz_exp": riesz_exp})
    passed = not failures and injective_everywhere
    return passed, {
        "count": len(corpus),
        "worst": worst,
        "injective": injective_everywhere,
        "failures": failures[:5],
        "exact_tolerance": 1e-10,
        "mult_tolerance": tol.eps_verify,
        "riesz_tolerance": 1e-7,
    }


def criterion_9_invariant_subspaces(seed: int = 42, tol: Tolerance = DEFAULT_TOL):
    """1000 random matrices, dims 2..10: projection is nontrivial and
    invariant to 1e-8 relative, with zero failures."""
    rng = np.random.default_rng(seed)
    failures = []
    worst = 0.0
    for i in range(1000):
        n = int(rng.integers(2, 11))
        a = random_complex_matrix(rng, n)
        try:
            p = spectral.invariant_subspace(a, tol)
        except Exception as exc:  # noqa: BLE001
            failures.append({"index": i, "error": str(exc)})
            continue
        r = int(np.linalg.matrix_rank(p))
        res = frob((np.eye(n) - p) @ a @ p) / max(frob(a), 1.0)
        worst = max(worst, res)
        if not (0 < r < n) or res > tol.eps_verify:
            failures.append({"index": i, "rank": r, "residual": res})
    return not failures, {
        "count": 1000,
        "worst_residual": worst,
        "failure_count": len(failures),
        "failures": failures[:5],
        "tolerance": tol.eps_verify,
    }


def criterion_10_sublattice_theory(seed: int = 42, tol: Tolerance = DEFAULT_TOL):
    """Idempotence, the join/commute criterion, and distributivity iff
    all pairs commute, exhaustively on parents with up to 4 points."""
    del seed, tol
    parents = []
    for n in range(1, 5):
        pts = tuple(f"p{i}" for i in range(n))
        for part in set_partitions(pts):
            parents.append(EquivRelation.from_classes([tuple(c) for c in part]))
    failures = []
    for i, parent in enumerate(parents):
        rep = lattice_scan_report(parent)
        if not rep["passed"]:
            failures.append({"index": i, "report": {
                k: v for k, v in rep.items() if k != "count"}})
    return not failures, {"parents": len(parents), "failures": failures}


def criterion_11_pontryagin(seed: int = 42, tol: Tolerance = DEFAULT_TOL):
    """Double duals of small abelian groups, dual block structure of the
    nonabelian trio, comultiplication verdicts, quadrant classification."""
    problems = []
    for g in abelian_corpus():
        rep = double_dual_abelian(g, seed=seed, tol=tol)
        if not rep["passed"]:
            problems.append({"group": g.name, "stage": "double_dual", "report": rep})

    expected_duals = {"S3": [1, 1, 2], "D4": [1, 1, 1, 1, 2], "Q8": [1, 1, 1, 1, 2]}
    for g in (symmetric3(), dihedral(4), quaternion8()):
        rep = irreps_report(g, seed=seed, tol=tol)
        if not rep["passed"]:
            problems.append({"group": g.name, "stage": "irreps", "report": rep})
        d = dual(g, seed=seed, tol=tol)
        sizes = sorted(len(c) for c in d.space.classes())
        if sizes != expected_duals[g.name]:
            problems.append({"group": g.name, "stage": "dual_sizes", "sizes": sizes})

    for g in group_corpus():
        for obj, is_group in ((g, True), (dual(g, seed=seed, tol=tol), g.is_abelian())):
            rep = comultiplication_check(obj, tol)
            if rep["nondegenerate"] != is_group or not rep["coassociative"]:
                problems.append(
                    {"group": g.name, "stage": "comultiplication", "report": rep}
                )

    for g in group_corpus():
        want = "abelian-commutative" if g.is_abelian() else "nonabelian-commutative"
        if classify(QuantumGroup.from_group(g)) != want:
            problems.append({"group": g.name, "stage": "classify_group"})
        want_dual = "abelian-commutative" if g.is_abelian() else "abelian-noncommutative"
        if classify(dual(g, seed=seed, tol=tol)) != want_dual:
            problems.append({"group": g.name, "stage": "classify_dual"})
    return not problems, {
        "abelian_count": len(abelian_corpus()),
        "problems": problems,
    }


def criterion_12_oml(seed: int = 42, tol: Tolerance = DEFAULT_TOL):
    """MO2 separates orthomodularity from Booleanness; Stone holds on all
    small Boolean algebras; noncommuting projections are non-Boolean."""
    del seed
    problems = []
    m = oml.mo2()
    rep = oml.is_oml(m)
    witness = next(
        (
            (a, b)
            for a in range(m.size)
            for b in range(m.size)
            if oml.dot_meet(m, a, b) != oml.dot_meet(m, b, a)
        ),
        None,
    )
    if not rep["passed"] or oml.is_boolean(m) or witness is None:
        problems.append({"stage": "mo2", "report": rep, "witness": witness})

    for k in range(1, 5):
        lat = oml.boolean_algebra(k)
        srep = oml.stone(lat)
        if not (oml.is_oml(lat)["passed"] and oml.is_boolean(lat) and srep["passed"]):
            problems.append({"stage": f"boolean-2^{k}", "stone": srep})
        if oml.is_boolean(lat) != oml.is_distributive(lat):
            problems.append({"stage": f"distributive-2^{k}"})

    p = np.diag([1.0, 0.0]).astype(np.complex128)
    q = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=np.complex128)
    lat = oml.projection_lattice([p, q], tol)
    if oml.is_boolean(lat) or not oml.is_oml(lat)["passed"]:
        problems.append({"stage": "noncommuting-projections", "size": lat.size})
    if oml.is_boolean(lat) != oml.is_distributive(lat):
        problems.append({"stage": "noncommuting-distributive"})

    commuting = oml.projection_lattice(
        [np.diag([1.0, 0.0, 0.0]).astype(np.complex128),
         np.diag([0.0, 1.0, 0.0]).astype(np.complex128)],
        tol,
    )
    if not oml.is_boolean(commuting):
        problems.append({"stage": "commuting-projections", "size": commuting.size})
    return not problems, {"mo2_witness": witness, "problems": problems}


def criterion_13_center_blocks(seed: int = 42, tol: Tolerance = DEFAULT_TOL):
    """Center dimension equals the block count on the whole corpus."""
    mismatches = []
    corpus = algebra_corpus(seed, tol)
    for name, alg in corpus:
        cdim, _ = center(alg, tol)
        if cdim != len(alg.blocks):
            mismatches.append({"name": name, "center": cdim, "blocks": len(alg.blocks)})
    return not mismatches, {"count": len(corpus), "mismatches": mismatches}


ALL_CRITERIA = [
    ("1-algebra-roundtrip", criterion_1_algebra_roundtrip),
    ("2-relation-roundtrip", criterion_2_relation_roundtrip),
    ("3-commutativity", criterion_3_commutativity),
    ("4-jordan-reconstruction", criterion_4_jordan_reconstruction),
    ("5-measure-axioms", criterion_5_measure_axioms),
    ("6-shift-structure", criterion_6_shift_structure),
    ("7-normal-reduction", criterion_7_normal_reduction),
    ("8-functional-calculus", criterion_8_functional_calculus),
    ("9-invariant-subspaces", criterion_9_invariant_subspaces),
    ("10-sublattice-theory", criterion_10_sublattice_theory),
    ("11-pontryagin", criterion_11_pontryagin),
    ("12-oml", criterion_12_oml),
    ("13-center-blocks", criterion_13_center_blocks),
]


def run_all(seed: int = 42, tol: Tolerance = DEFAULT_TOL) -> dict:
    results = {}
    for name, fn in ALL_CRITERIA:
        passed, details = fn(seed, tol)
        results[name] = {"passed": passed, "details": details}
    results["all_passed"] = all(v["passed"] for k, v in results.items() if k != "all_passed")
    return results

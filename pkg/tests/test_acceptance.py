"""Acceptance checks, one marker per criterion.

The terminal summary prints one PASS/FAIL line per criterion (see conftest).
"""

import itertools
import subprocess
import sys
import time

import numpy as np
import pytest

from horncones.classical import horn_member, horn_system, horn_triples, lr_mn_system
from horncones.combinatorics import IndexSet, b_sets, hat_pq, mu, oc, opposite, subsets
from horncones.compare import semantically_equal
from horncones.coneid import ConeId
from horncones.cones import build_system
from horncones.fixtures import load_fixture
from horncones.involution import (
    b_system,
    e1_system,
    e2_system,
    sing_conditions,
    sing_stabilizes,
    sing_system,
)
from horncones.lr import lr_coefficient, lr_subset
from horncones.oracle import (
    dilation,
    eigenvalues_hermitian,
    equivalence_check,
    jacobi_eigh,
    random_hermitian,
    random_matrix,
    singular_values,
    soundness_check,
    svd,
)
from horncones.polyhedra import InequalitySystem, parse_relation

from schur_oracle import SchurOracle

TRIALS = 10_000
SING_PAIRS = [(p, q) for p in range(1, 6) for q in range(1, p + 1) if p + q <= 6]


def c(k):
    return pytest.mark.criterion(k)


# 1 -------------------------------------------------------------------------


@c(1)
def test_horn4_strict_one_count():
    script = "from horncones.classical import horn_system; print(len(horn_system(4, 'strict-one').inequalities()))"
    start = time.perf_counter()
    out = subprocess.run([sys.executable, "-c", script], capture_output=True, text=True, check=True)
    elapsed = time.perf_counter() - start
    ge = int(out.stdout)
    print(f"Horn(4) strict-one: {ge} GE relations, generated in {elapsed:.2f} s")
    assert elapsed < 10
    # stated target 52 counts GE only; the generated system has 41 GE (see the
    # reconciliation test below)
    assert ge == 52, f"{ge} GE relations generated, criterion asks for 52"


@c(1)
def test_horn4_count_reconciliation():
    s = horn_system(4, "strict-one")
    ge, eq, chamber = len(s.inequalities()), len(s.equalities()), s.chamber_matrix().shape[0]
    assert sum(len(horn_triples(r, 4, "strict-one")) for r in (1, 2, 3)) == ge == 41
    # GE + chamber orderings + the equality as two half-spaces
    assert ge + chamber + 2 * eq == 52
    # the same convention gives the 17 printed relations of E_I(4)
    e = e1_system(4)
    assert len(e.inequalities()) + e.chamber_matrix().shape[0] + 2 * len(e.equalities()) == 17


# 2 -------------------------------------------------------------------------

FIXTURE_CASES = [
    ("e1_3", lambda: e1_system(3)),
    ("e1_4", lambda: e1_system(4)),
    ("e2_2", lambda: e2_system(2)),
    ("e2_3", lambda: e2_system(3)),
    ("lr_2_2", lambda: lr_mn_system(2, 2)),
    ("b_2", lambda: b_system(2)),
    ("sing_p_2", lambda: sing_system(3, 2)),
    ("sing_3_3", lambda: sing_system(3, 3)),
]


@c(2)
@pytest.mark.parametrize("name, build", FIXTURE_CASES, ids=[n for n, _ in FIXTURE_CASES])
def test_fixture_relations_generated(name, build):
    gen = build()
    fix = load_fixture(name)
    missing = [r for r in fix.relations if not gen.contains_modulo_equalities(r)]
    assert not missing


@c(2)
@pytest.mark.parametrize("name, build", FIXTURE_CASES, ids=[n for n, _ in FIXTURE_CASES])
def test_fixture_semantic_equality(name, build):
    gen = build()
    fix = InequalitySystem(gen.cone, gen.blocks, load_fixture(name).relations)
    verdict = semantically_equal(gen, fix, trials=TRIALS, seed=0)
    print(f"{name}: {verdict}")
    assert verdict.equal, f"separating point {verdict.point} (generated: {verdict.in_a}, fixture: {verdict.in_b})"


# 3 -------------------------------------------------------------------------


def _triples(r, n):
    return {t.as_tuple() for t in horn_triples(r, n)}


@c(3)
@pytest.mark.parametrize("n", range(2, 6))
def test_horn_classical_triples(n):
    for r in range(1, n):
        ts = _triples(r, n)
        first = tuple(range(1, r + 1))
        for I, J in itertools.product(subsets(n, r), repeat=2):
            if r == 1:
                i, j = I.elements[0], J.elements[0]
                if i + j - 1 <= n:
                    assert ((i,), (j,), (i + j - 1,)) in ts
            if J.elements == first:
                assert (I.elements, first, I.elements) in ts
            if I.elements[-1] + J.elements[-1] - r <= n:
                L = tuple(i + j - k for k, (i, j) in enumerate(zip(I, J), start=1))
                assert (I.elements, J.elements, L) in ts


@c(3)
@pytest.mark.parametrize("q", [1, 2, 3])
def test_sing_classical_triples(q):
    for p in range(q, q + 2):
        n = p + q
        for i, j in itertools.product(range(1, q + 1), repeat=2):
            if i + j - 1 <= q:
                assert all(sing_conditions(IndexSet.of([n + 1 - i], n), IndexSet.of([n + 1 - j], n), IndexSet.of([i + j - 1], n)))
        for r in range(1, q + 1):
            top = IndexSet.of(range(n - r + 1, n + 1), n)
            for J in b_sets(r, p, q):
                assert all(sing_conditions(top, J, opposite(J)))
            for I, J in itertools.product(subsets(q, r), repeat=2):
                if I.elements[-1] + J.elements[-1] <= q + r:
                    K = IndexSet.of([i + j - k for k, (i, j) in enumerate(zip(I, J), start=1)], n)
                    assert all(sing_conditions(opposite(IndexSet.of(I, n)), opposite(IndexSet.of(J, n)), K))


# 4 -------------------------------------------------------------------------

SOUNDNESS_CONES = (
    [ConeId.make("horn", n=n) for n in range(1, 5)]
    + [ConeId.make("lr", m=m, n=n) for m in range(1, 4) for n in range(1, 4)]
    + [ConeId.make("e1", n=n) for n in range(1, 5)]
    + [ConeId.make("e2", n=n) for n in range(1, 4)]
    + [ConeId.make("sing", p=p, q=q) for p, q in SING_PAIRS]
    + [ConeId.make("so_odd", q=q) for q in (1, 2)]
    + [ConeId.make("a", p=p, q=q) for p, q in SING_PAIRS]
    + [ConeId.make("b", n=n) for n in range(1, 4)]
    + [ConeId.make(k, p=p, q=q) for k in "st" for p, q in [(1, 1), (2, 1), (3, 1), (2, 2)]]
)


@pytest.fixture(scope="module")
def soundness_clock():
    clock = {"total": 0.0}
    yield clock
    print(f"soundness sampling total {clock['total']:.1f} s")


@c(4)
@pytest.mark.parametrize("cone", SOUNDNESS_CONES, ids=str)
def test_soundness(cone, soundness_clock):
    start = time.perf_counter()
    rep = soundness_check(cone, trials=1000, seed=0, tol=1e-8)
    soundness_clock["total"] += time.perf_counter() - start
    assert rep["ok"], rep["violations"][:3]
    assert soundness_clock["total"] < 300


@c(4)
def test_soundness_against_sing_fixture():
    rep = soundness_check(ConeId.make("sing", p=3, q=3), 1000, 0, 1e-8, load_fixture("sing_3_3"))
    assert rep["ok"]


# 5 -------------------------------------------------------------------------


def _pairs():
    out = []
    for n in range(1, 5):
        out.append(("e1-horn", ConeId.make("e1", n=n), ConeId.make("horn", n=n)))
    for n in range(1, 4):
        out.append(("e2-lr", ConeId.make("e2", n=n), ConeId.make("lr", m=n, n=n)))
    for p, q in SING_PAIRS:
        out.append(("sing-horn", ConeId.make("sing", p=p, q=q), ConeId.make("horn", n=p + q)))
        out.append(("identity", ConeId.make("sing", p=p, q=q), ConeId.make("sing", "weak", p=p, q=q)))
    for p, q in SING_PAIRS:
        if p + q > 5:
            continue
        out.append(("a-horn", ConeId.make("a", p=p, q=q), ConeId.make("horn", n=p + q)))
        for v, w in [("nonzero", "fflp"), ("nonzero", "os-weak"), ("fflp", "os-weak")]:
            out.append(("identity", ConeId.make("a", v, p=p, q=q), ConeId.make("a", w, p=p, q=q)))
    for n in range(1, 4):
        out.append(("b-lr", ConeId.make("b", n=n), ConeId.make("lr", m=n, n=n)))
    for p, q in [(1, 1), (2, 1), (3, 1), (2, 2)]:
        out.append(("s-lr", ConeId.make("s", p=p, q=q), ConeId.make("lr", m=p + q, n=p + q)))
        out.append(("t-lr", ConeId.make("t", p=p, q=q), ConeId.make("lr", m=2 * p, n=2 * q)))
    return out


EQUIVALENCES = _pairs()


@c(5)
@pytest.mark.parametrize("embedding, source, target", EQUIVALENCES, ids=[f"{s}->{t}" for _, s, t in EQUIVALENCES])
def test_embedding_equivalence(embedding, source, target):
    rep = equivalence_check(build_system(source), embedding, build_system(target), trials=TRIALS, seed=0)
    print(f"{source} -> {target}: {rep['trials']} points, {rep['separation_count']} separations")
    assert rep["trials"] >= TRIALS
    assert rep["ok"] and rep["separation_count"] == 0, rep["violations"][:3]


# 6 -------------------------------------------------------------------------


def _box(rows, cols):
    for parts in itertools.product(range(cols + 1), repeat=rows):
        if all(a >= b for a, b in zip(parts, parts[1:])):
            yield tuple(parts)


@c(6)
def test_lr_against_schur_oracle():
    start = time.perf_counter()
    oracle = SchurOracle(4)
    box = list(_box(4, 4))
    checked = 0
    for lam in box:
        for mu_ in box:
            for nu in box:
                if sum(mu_) + sum(nu) != sum(lam):
                    continue
                assert lr_coefficient(lam, mu_, nu) == oracle.coefficient(lam, mu_, nu), (lam, mu_, nu)
                checked += 1
    elapsed = time.perf_counter() - start
    print(f"{checked} triples in the 4x4 box agree, {elapsed:.1f} s")
    assert elapsed < 60


@c(6)
def test_lr_symmetry():
    box = list(_box(4, 4))
    for lam, mu_, nu in itertools.product(box, repeat=3):
        if sum(mu_) + sum(nu) == sum(lam):
            assert lr_coefficient(lam, mu_, nu) == lr_coefficient(lam, nu, mu_)


@c(6)
def test_lr_oc_symmetry():
    for n in range(2, 8):
        for r in range(1, n):
            sets = list(subsets(n, r))
            weight = {S: sum(mu(S)) for S in sets}
            for I, J, L in itertools.product(sets, repeat=3):
                if weight[I] + weight[J] == weight[L]:
                    assert lr_subset(I, J, L) == lr_subset(oc(I), oc(J), oc(L))


@c(6)
def test_lr_saturation():
    box = list(_box(3, 3))
    for lam, mu_, nu in itertools.product(box, repeat=3):
        if sum(mu_) + sum(nu) != sum(lam):
            continue
        double = [tuple(2 * v for v in x) for x in (lam, mu_, nu)]
        assert (lr_coefficient(lam, mu_, nu) != 0) == (lr_coefficient(*double) != 0)


# 7 -------------------------------------------------------------------------


@c(7)
@pytest.mark.parametrize("n", range(2, 6))
def test_recursion_consistency(n):
    def pad(part, r):
        return list(part) + [0] * (r - len(part))

    for r in range(1, n):
        sets = list(subsets(n, r))
        recursive = {
            (I.elements, J.elements, L.elements)
            for I, J, L in itertools.product(sets, repeat=3)
            if sum(mu(I)) + sum(mu(J)) == sum(mu(L)) and horn_member(pad(mu(I), r), pad(mu(J), r), pad(mu(L), r))
        }
        assert recursive == _triples(r, n)


# 8 -------------------------------------------------------------------------


@c(8)
@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_numeric_backward_error(n):
    inf = lambda M: np.abs(M).sum(axis=-1).max()
    Ms = np.stack([random_hermitian(n, 1000 + s) for s in range(100)])
    es, Us = jacobi_eigh(Ms)
    As = np.stack([random_matrix(n, n, 2000 + s) for s in range(100)])
    Ws, ss, Vs = svd(As)
    worst = 0.0
    for M, e, U, A, W, s, V in zip(Ms, es, Us, As, Ws, ss, Vs):
        err_e = inf(M - (U * e) @ U.conj().T) / inf(M)
        err_s = inf(A - (W * s) @ V.conj().T) / max(inf(A), 1e-300)
        worst = max(worst, err_e, err_s)
    print(f"n={n}: worst relative backward error {worst:.2e}")
    assert worst <= 1e-10


@c(8)
def test_hat_matrix_spectrum():
    rng = np.random.default_rng(8)
    for _ in range(100):
        p, q = (int(v) for v in rng.integers(1, 5, 2))
        A = random_matrix(p, q, rng)
        s = singular_values(A)
        expected = np.concatenate([s, np.zeros(abs(p - q)), -s[::-1]])
        assert np.allclose(eigenvalues_hermitian(dilation(A)), expected, atol=1e-10 * max(1.0, s[0]))


# 9 -------------------------------------------------------------------------


@c(9)
def test_sing_stabilization():
    assert sing_stabilizes(3, 3)
    verdict = semantically_equal(sing_system(4, 3), sing_system(3, 3).with_relations(sing_system(3, 3).relations), trials=TRIALS)
    assert verdict.equal


# the two fixture mismatches above are gaps in the printed lists -------------


def test_lr_2_2_fixture_gap_is_genuine():
    # the fixture accepts a point that violates a generated relation which is
    # sound on realizable samples and not implied by the printed ones
    dims = {"z": 4, "x": 2, "y": 2}
    rel = parse_relation("z1 + z4 >= x2 + y2", dims)
    gen = lr_mn_system(2, 2)
    fix = load_fixture("lr_2_2")
    assert gen.contains_modulo_equalities(rel) and not fix.contains_modulo_equalities(rel)
    pt = {"z": [1085440, 1064960, 348160, -1273856], "x": [856064, -69632], "y": [507904, -69632]}
    assert fix.member(pt).member and not gen.member(pt).member
    assert [v.relation.key for v in gen.member(pt).violations] == [rel.key]
    probe = InequalitySystem(gen.cone, gen.blocks, [rel])
    assert soundness_check(ConeId.make("lr", m=2, n=2), 1000, 0, 1e-8, probe)["ok"]


def test_sing_3_3_fixture_gap_is_genuine():
    # the fixture accepts a point whose hats fail Horn(6)
    pt = {"x": [40, 40, 0], "y": [59, 18, 18], "z": [49, 49, 49]}
    assert load_fixture("sing_3_3").member(pt).member
    assert not sing_system(3, 3).member(pt).member
    assert not horn_member(*(list(hat_pq(pt[k], 3, 3)) for k in "xyz"))
    gen = {r.key for r in sing_system(3, 3).inequalities()}
    fix = {r.key for r in load_fixture("sing_3_3").inequalities()}
    assert len(fix) == 87 and fix < gen and len(gen) == 94

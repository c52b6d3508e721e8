"""Acceptance suite: one test per criterion, summarized at the end of the run."""
import io
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from liegeom import bundle_io
from liegeom import rational as R
from liegeom.affine import check_lsa
from liegeom.catalog import golden_path, load_example, standard_names
from liegeom.cli import EXIT_FAIL, EXIT_OK, run
from liegeom.complexstruct import check_complex_structure, nijenhuis, rmap_complex_structure
from liegeom.contact import (
    SemiContactData,
    _lcs_unchecked,
    check_lcs,
    check_semicontact,
    check_semisasakian,
    lcs_of_semicontact,
    split_lcs,
)
from liegeom.hessian import check_hessian_metric, kahler_from_hessian, semisasakian_from_projective_hessian
from liegeom.liecore import AltForm, abelian, ce_d, is_isomorphism, semidirect_aff, structure_invariants, validate_lie
from liegeom.numcone import (
    ConePoint,
    PotentialSpec,
    check_cone_scaling,
    check_invariance,
    check_tube,
    num_hessian,
    potential_fn,
)

from conftest import DATA, rand_form, rand_q

SEED = 20260927
e = AltForm.basis


class Criterion:
    def __init__(self, record):
        self._record = record

    def __call__(self, num: int, title: str):
        self._record("criterion", num)
        self._record("title", title)

    def detail(self, text: str):
        self._record("detail", text)


@pytest.fixture
def criterion(record_property):
    return Criterion(record_property)


def dd_vanishes(L, a: AltForm) -> bool:
    # d lands in degree > dim as the zero space
    if a.degree >= L.dim:
        return True
    b = ce_d(L, a)
    return b.degree >= L.dim or ce_d(L, b).is_zero()


def test_criterion_01_d_squared(criterion):
    criterion(1, "d o d = 0 on 200 random forms per degree per catalog algebra, < 1 s")
    rng = random.Random(SEED)
    algebras = {name: load_example(name).algebra for name in standard_names()}
    batch = [(L, rand_form(rng, L.dim, k)) for L in algebras.values() for k in range(L.dim + 1) for _ in range(200)]
    t = time.perf_counter()
    bad = sum(not dd_vanishes(L, a) for L, a in batch)
    elapsed = time.perf_counter() - t
    criterion.detail(f"{len(batch)} forms on {len(algebras)} algebras, {bad} failures, {elapsed:.3f} s")
    assert bad == 0 and elapsed < 1


LSA_NAMES = ["abelian(3)", "affR", "complex_lsa", "quaternion_lsa", "t2cone"]


def test_criterion_02_rmap_integrable(criterion):
    criterion(2, "r-map J has vanishing Nijenhuis tensor on every catalog LSA, < 1 s")
    t = time.perf_counter()
    for name in LSA_NAMES:
        b = load_example(name)
        assert check_lsa(b.algebra, b.connection).passed
        h, cs = rmap_complex_structure(b.algebra, b.connection)
        n = h.dim
        units = [R.unit(n, i) for i in range(n)]
        assert all(not any(nijenhuis(h, cs.J, X, Y)) for X in units for Y in units), name
        assert check_complex_structure(h, cs.J).passed
    elapsed = time.perf_counter() - t
    criterion.detail(f"{len(LSA_NAMES)} connections, {elapsed:.3f} s")
    assert elapsed < 1


HESSIAN_CASES = [("abelian(3)", R.identity(3)), ("t2cone", None), ("affR", R.identity(2))]


def test_criterion_03_hessian_kahler_equivalence(criterion):
    criterion(3, "Codazzi verdict agrees with dOmega = 0 on catalog data and >= 50 perturbations, < 5 s")
    rng = random.Random(SEED)
    t = time.perf_counter()
    agree = perturbed = both_fail = 0
    for name, g0 in HESSIAN_CASES:
        b = load_example(name)
        L, C = b.algebra, b.connection
        g0 = g0 if g0 is not None else b.metric("g")
        cases = [g0]
        while len(cases) < 21:
            S = [[Fraction(0)] * L.dim for _ in range(L.dim)]
            for i in range(L.dim):
                for j in range(i, L.dim):
                    S[i][j] = S[j][i] = rand_q(rng, 3, 3) / 10
            g = R.add(g0, R.mat(S))
            if R.is_positive_definite(g):
                cases.append(g)
        for k, g in enumerate(cases):
            codazzi = check_hessian_metric(L, C, g).passed
            K = kahler_from_hessian(L, C, g)
            closed = ce_d(K.algebra, K.Omega).is_zero()
            agree += codazzi == closed
            if k:
                perturbed += 1
                both_fail += not codazzi and not closed
    elapsed = time.perf_counter() - t
    total = 3 + perturbed
    criterion.detail(f"{agree}/{total} agree, {both_fail}/{perturbed} perturbations fail both, {elapsed:.2f} s")
    assert agree == total and perturbed >= 50 and elapsed < 5


def failing_semicontact() -> list[SemiContactData]:
    h3 = load_example("h3").algebra
    return [
        SemiContactData(abelian(3), R.identity(3), e(3, 0, 1), e(3, 2)),
        SemiContactData(h3, R.diag([1, 1, 2]), -e(3, 0, 1), e(3, 2)),
        SemiContactData(h3, R.zeros(3), AltForm.zero(3, 2), e(3, 2)),
        SemiContactData(h3, R.zeros(3), AltForm.zero(3, 2), e(3, 0)),
    ]


def pipeline(name):
    return semisasakian_from_projective_hessian(load_example(name).projective_data())


def test_criterion_04_semicontact_lcs_round_trip(criterion):
    criterion(4, "semi-contact holds iff the lcs check holds; split inverts the lcs construction")
    passing = [load_example("h3").semicontact_data()] + [pipeline(n).data for n in ("complex_lsa", "quaternion_lsa")]
    for S in passing:
        assert check_semicontact(S).passed and check_lcs(lcs_of_semicontact(S)).passed
        X = lcs_of_semicontact(S)
        back = split_lcs(X, R.unit(X.H.dim, 0))
        assert back.L.same_brackets(S.L) and (back.D, back.omega, back.eta) == (S.D, S.omega, S.eta)
    failing = failing_semicontact()
    for S in failing:
        assert not check_semicontact(S).passed and not check_lcs(_lcs_unchecked(S)).passed
    criterion.detail(f"{len(passing)} passing, {len(failing)} failing datasets")


def test_criterion_05_pipeline_e2(criterion):
    criterion(5, "complex_lsa pipeline gives the e(2) cover with a semi-Sasakian structure, < 1 s")
    t = time.perf_counter()
    out = pipeline("complex_lsa")
    m = out.data.L
    phi = R.mat([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    iso = m.dim == 3 and is_isomorphism(load_example("e2").algebra, m, phi)
    ok = check_semisasakian(out.data, out.J).passed
    pd = R.is_positive_definite(out.g_real)
    elapsed = time.perf_counter() - t
    criterion.detail(f"dim {m.dim}, isomorphic {iso}, semi-Sasakian {ok}, g_real PD {pd}, {elapsed:.3f} s")
    assert iso and ok and pd and elapsed < 1


def test_criterion_06_pipeline_su2(criterion):
    criterion(6, "quaternion_lsa pipeline gives su(2) x| R^4 with a semi-Sasakian structure, < 1 s")
    t = time.perf_counter()
    P = load_example("quaternion_lsa").projective_data()
    out = semisasakian_from_projective_hessian(P)
    m = out.data.L
    elapsed = time.perf_counter() - t
    base = structure_invariants(P.g_alg)
    expect = semidirect_aff(P.g_alg, [P.conn_hat.left(i) for i in range(P.n)])
    ok = check_semisasakian(out.data, out.J).passed
    criterion.detail(f"dim {m.dim}, semi-Sasakian {ok}, {elapsed:.3f} s")
    assert P.metric_G == R.identity(3)
    assert base.semisimple and base.killing_inertia == (0, 3, 0)
    assert m.dim == 7 and validate_lie(m).passed and m.same_brackets(expect)
    assert ok and R.is_positive_definite(out.g_real) and elapsed < 1


def test_criterion_07_classification(criterion):
    criterion(7, "invariants separate e2 from su2, sl2, h3 and affR x R")
    inv = {n: structure_invariants(load_example(n).algebra) for n in ("su2", "sl2", "h3", "affR_x_R", "e2")}
    assert inv["su2"].semisimple and inv["sl2"].semisimple
    assert inv["h3"].nilpotent
    a = inv["affR_x_R"]
    assert a.solvable and not a.nilpotent and not a.unimodular
    e2 = inv["e2"]
    assert e2.solvable and not e2.nilpotent and e2.unimodular
    # each candidate disagrees with e2 on at least one invariant
    keys = ("solvable", "nilpotent", "unimodular", "semisimple")
    sig = {n: tuple(getattr(v, k) for k in keys) for n, v in inv.items()}
    assert all(sig[n] != sig["e2"] for n in ("su2", "sl2", "h3", "affR_x_R"))
    criterion.detail("e2 = solvable, non-nilpotent, unimodular")


def test_criterion_08_congruence_invariance(criterion):
    criterion(8, "Hess psi congruence-invariant within 1e-6 (n = 2, 10 samples); identity matches t2cone, < 1 s")
    t = time.perf_counter()
    rep = check_invariance(PotentialSpec("log_char", 2), 10, seed=SEED, tol=1e-6)
    H = num_hessian(potential_fn(PotentialSpec("log_char", 2)), ConePoint(np.eye(2)))
    P = np.diag([2.0, 1.0, 2.0])
    g = np.array(load_example("t2cone").metric("g"), dtype=float)
    bridge = float(np.max(np.abs(P.T @ H @ P - g)))
    elapsed = time.perf_counter() - t
    criterion.detail(f"max rel error {rep.max_error:.2e}, bridge error {bridge:.2e}, {elapsed:.3f} s")
    assert rep.passed and bridge < 1e-6 and elapsed < 1


def test_criterion_09_cone_scaling(criterion):
    criterion(9, "Hess u degree-0 homogeneous within 1e-8 for q in {0.5, 2, 10}, n in {1, 2}")
    worst, satisfying = 0.0, set()
    for n in (1, 2):
        for q in (0.5, 2.0, 10.0):
            rep = check_cone_scaling(PotentialSpec("cone_power", n), q, 10, seed=SEED, tol=1e-8)
            assert rep.passed, rep.render()
            worst = max(worst, rep.max_error)
            satisfying.update(rep.extra["readings_satisfying"])
    criterion.detail(f"max rel error {worst:.2e}; readings satisfying the scaling law: {sorted(satisfying)}")
    assert satisfying == {"cone_power"}


def test_criterion_10_tube_domain(criterion):
    criterion(10, "tube-domain complex Hessian equals Hess psi within 1e-6 and is positive definite, n in {1, 2}")
    worst = 0.0
    for n in (1, 2):
        rep = check_tube(PotentialSpec("log_char", n), 10, seed=SEED, tol=1e-6)
        assert rep.passed, rep.render()
        assert all(s["positive_definite"] for s in rep.samples)
        worst = max(worst, rep.max_error)
    criterion.detail(f"max rel error {worst:.2e}")


def cli(*argv) -> tuple[int, str]:
    out = io.StringIO()
    code = run(list(argv), out, io.StringIO())
    return code, out.getvalue()


def test_criterion_11_cli_golden(criterion, tmp_path):
    criterion(11, "catalog export/parse is byte-identical; documented CLI invocations give their exit codes")
    names = standard_names()
    for name in names:
        text = golden_path(name).read_text(encoding="utf-8")
        assert bundle_io.dumps(load_example(name)) == text
        assert bundle_io.dumps(bundle_io.loads(text)) == text
    h3 = tmp_path / "h3.bundle.json"
    h3.write_text(golden_path("h3").read_text(encoding="utf-8"), encoding="utf-8")
    codes = [cli("validate", str(h3))[0]]
    src, dst = tmp_path / "complex_lsa.bundle.json", tmp_path / "out.bundle.json"
    src.write_text(golden_path("complex_lsa").read_text(encoding="utf-8"), encoding="utf-8")
    codes.append(cli("construct", "semisasakian-pipeline", str(src), "-o", str(dst))[0])
    codes.append(cli("check", "semisasakian", str(dst))[0])
    code, text = cli("check", "lcs", str(DATA / "abelian4_lcs_fail.bundle.json"))
    codes.append(code)
    criterion.detail(f"{len(names)} golden files; exit codes {codes}")
    assert codes == [EXIT_OK, EXIT_OK, EXIT_OK, EXIT_FAIL]
    assert "(1,3,4)" in text

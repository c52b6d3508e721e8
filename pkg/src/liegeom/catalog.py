"""Built-in example bundles.

Every bundle carries the verdicts it is expected to produce; the test-suite
replays them through :func:`evaluate`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import rational as R
from .affine import Connection, ProjectiveHessianData, check_lsa, check_projective, check_radiant
from .contact import LcsData, SemiContactData, check_lcs, check_lck, check_semicontact, check_semisasakian
from .complexstruct import check_complex_structure
from .hessian import check_hessian_cone, check_hessian_metric, semisasakian_from_projective_hessian
from .liecore import AltForm, LieAlgebra, abelian, direct_sum, semidirect_der, structure_invariants, validate_lie
from .report import CheckReport, DimensionError, LieGeomError, UnknownExample

ROTATION = R.mat([[0, -1], [1, 0]])


@dataclass
class Bundle:
    name: str = ""
    algebra: LieAlgebra | None = None
    connection: Connection | None = None
    forms: dict = field(default_factory=dict)
    linmaps: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)
    vectors: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.algebra is None:
            return
        n = self.algebra.dim
        if self.connection is not None and self.connection.dim != n:
            raise DimensionError("connection dimension differs from the algebra")
        for key, f in self.forms.items():
            if f.dim != n:
                raise DimensionError(f"form {key!r} has dimension {f.dim}, algebra has {n}")
        for key, v in self.vectors.items():
            if len(v) != n:
                raise DimensionError(f"vector {key!r} has length {len(v)}, algebra has {n}")

    def _need(self, table: dict, key: str, kind: str):
        if key not in table:
            raise LieGeomError(f"bundle {self.name or '<file>'} has no {kind} named {key!r}")
        return table[key]

    def form(self, key: str) -> AltForm:
        return self._need(self.forms, key, "form")

    def linmap(self, key: str) -> R.Mat:
        return self._need(self.linmaps, key, "linmap")

    def metric(self, key: str) -> R.Mat:
        return self._need(self.metrics, key, "metric")

    def vector(self, key: str) -> tuple:
        return self._need(self.vectors, key, "vector")

    def conn(self) -> Connection:
        if self.connection is None:
            raise LieGeomError(f"bundle {self.name or '<file>'} has no connection")
        return self.connection

    def semicontact_data(self) -> SemiContactData:
        return SemiContactData(self.algebra, self.linmap("D"), self.form("omega"), self.form("eta"))

    def lcs_data(self) -> LcsData:
        return LcsData(self.algebra, self.form("Omega"), self.form("theta"))

    def projective_data(self, need_metric: bool = True) -> ProjectiveHessianData:
        """Split off ``g`` using the basis vector ``E``.

        With ``need_metric=False`` a missing ``g_G`` is replaced by the
        identity, which is enough for checks that ignore the metric.
        """
        E = self.vector("E")
        units = [i for i, x in enumerate(E) if x]
        if len(units) != 1 or E[units[0]] != 1:
            raise LieGeomError("vector E must be a basis vector")
        if need_metric or "g_G" in self.metrics:
            g_G = self.metric("g_G")
        else:
            g_G = R.identity(len(E) - 1)
        return ProjectiveHessianData.from_connection(self.conn(), units[0], g_G)


# ---------------------------------------------------------------------------
# builders


def _abelian(n: int) -> Bundle:
    L = abelian(n)
    return Bundle(
        name=f"abelian({n})",
        algebra=L,
        connection=Connection.zero(L),
        metrics={"g": R.identity(n)},
        expected={
            "validate_lie": "pass",
            "check_lsa": "pass",
            "check_hessian_metric": "pass",
            "solvable": True,
            "nilpotent": True,
            "unimodular": True,
            "semisimple": False,
        },
    )


def _h3_algebra() -> LieAlgebra:
    return LieAlgebra.from_brackets(["e1", "e2", "e3"], {("e1", "e2"): {"e3": 1}})


def _h3() -> Bundle:
    L = _h3_algebra()
    return Bundle(
        name="h3",
        algebra=L,
        forms={"eta": AltForm.basis(3, 2), "omega": -AltForm.basis(3, 0, 1)},
        linmaps={"D": R.zeros(3), "D_scaling": R.diag([1, 1, 2])},
        expected={
            "validate_lie": "pass",
            "check_semicontact": "pass",
            "solvable": True,
            "nilpotent": True,
            "unimodular": True,
            "semisimple": False,
        },
        meta={"note": "contact case D = 0, eta = e^3, omega = d eta"},
    )


def _affR_algebra() -> LieAlgebra:
    return LieAlgebra.from_brackets(["E", "X"], {("E", "X"): {"X": 1}})


def _affR() -> Bundle:
    L = _affR_algebra()
    C = Connection.from_products(L, {("E", "E"): {"E": 1}, ("E", "X"): {"X": 1}})
    return Bundle(
        name="affR",
        algebra=L,
        connection=C,
        metrics={"g": R.identity(2)},
        expected={
            "validate_lie": "pass",
            "check_lsa": "pass",
            "check_hessian_metric": "fail",
            "solvable": True,
            "nilpotent": False,
            "unimodular": False,
            "semisimple": False,
        },
    )


def _affR_x_R() -> Bundle:
    L = direct_sum(_affR_algebra(), abelian(1, ("Z",)))
    return Bundle(
        name="affR_x_R",
        algebra=L,
        expected={
            "validate_lie": "pass",
            "solvable": True,
            "nilpotent": False,
            "unimodular": False,
            "semisimple": False,
        },
    )


def _e2() -> Bundle:
    L = semidirect_der(abelian(2), ROTATION).relabel(("e1", "e2", "e3"))
    return Bundle(
        name="e2",
        algebra=L,
        expected={
            "validate_lie": "pass",
            "solvable": True,
            "nilpotent": False,
            "unimodular": True,
            "semisimple": False,
        },
    )


def _su2() -> Bundle:
    L = LieAlgebra.from_brackets(
        ["e1", "e2", "e3"],
        {("e1", "e2"): {"e3": 1}, ("e2", "e3"): {"e1": 1}, ("e3", "e1"): {"e2": 1}},
    )
    return Bundle(
        name="su2",
        algebra=L,
        connection=Connection.zero(L),
        expected={
            "validate_lie": "pass",
            "check_lsa": "fail",
            "solvable": False,
            "nilpotent": False,
            "unimodular": True,
            "semisimple": True,
        },
    )


def _sl2() -> Bundle:
    L = LieAlgebra.from_brackets(
        ["h", "e", "f"],
        {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}},
    )
    return Bundle(
        name="sl2",
        algebra=L,
        expected={
            "validate_lie": "pass",
            "solvable": False,
            "nilpotent": False,
            "unimodular": True,
            "semisimple": True,
        },
    )


_PROJECTIVE_EXPECTED = {
    "validate_lie": "pass",
    "check_lsa": "pass",
    "check_radiant": "pass",
    "check_projective": "pass",
    "check_hessian_cone": "pass",
    "semisasakian_pipeline": "pass",
}


def _complex_lsa() -> Bundle:
    L = abelian(2, ("1", "i"))
    C = Connection.from_products(
        L,
        {("1", "1"): {"1": 1}, ("1", "i"): {"i": 1}, ("i", "1"): {"i": 1}, ("i", "i"): {"1": -1}},
    )
    return Bundle(
        name="complex_lsa",
        algebra=L,
        connection=C,
        metrics={"g_G": R.identity(1)},
        vectors={"xi": R.vec([1, 0]), "E": R.vec([1, 0])},
        expected=dict(_PROJECTIVE_EXPECTED, solvable=True, nilpotent=True, unimodular=True, semisimple=False),
        meta={"note": "complex multiplication on C = R^2; projective over span(i) with E = 1"},
    )


_QUAT = {  # (a, b) -> (sign, c) for a*b = sign*c on 1, i, j, k
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def _quaternion_lsa() -> Bundle:
    labels = ["1", "i", "j", "k"]
    brackets = {}
    for a, b in [("i", "j"), ("j", "k"), ("k", "i")]:
        s1, c1 = _QUAT[(a, b)]
        s2, c2 = _QUAT[(b, a)]
        assert c1 == c2
        brackets[(a, b)] = {c1: s1 - s2}
    L = LieAlgebra.from_brackets(labels, brackets)
    C = Connection.from_products(L, {ab: {c: s} for ab, (s, c) in _QUAT.items()})
    return Bundle(
        name="quaternion_lsa",
        algebra=L,
        connection=C,
        metrics={"g_G": R.identity(3)},
        vectors={"xi": R.vec([1, 0, 0, 0]), "E": R.vec([1, 0, 0, 0])},
        expected=dict(_PROJECTIVE_EXPECTED, solvable=False, nilpotent=False, unimodular=True, semisimple=False),
        meta={"note": "quaternion multiplication on H = R^4; projective over su(2) = span(i,j,k) with E = 1"},
    )


def _t2_basis() -> list[R.Mat]:
    return [R.mat([[1, 0], [0, 0]]), R.mat([[0, 1], [0, 0]]), R.mat([[0, 0], [0, 1]])]


def _orbit(a: R.Mat) -> R.Mat:
    """Orbit map at the identity for ``s(x) = s x s^T``, differentiated: a + a^T."""
    return R.add(a, R.transpose(a))


def _sym_coords(m: R.Mat) -> tuple:
    return (m[0][0], m[0][1], m[1][1])


def _t2cone() -> Bundle:
    basis = _t2_basis()
    labels = ["E11", "E12", "E22"]
    orbit_coords = R.transpose(tuple(_sym_coords(_orbit(b)) for b in basis))
    to_t2 = R.inverse(orbit_coords)

    def coords_in_t2(m: R.Mat) -> tuple:
        # matrix in the span of the basis (upper triangular)
        return (m[0][0], m[0][1], m[1][1])

    brackets = {}
    for i in range(3):
        for j in range(i + 1, 3):
            br = R.commutator(basis[i], basis[j])
            assert br[1][0] == 0
            brackets[(i, j)] = coords_in_t2(br)
    L = LieAlgebra.from_brackets(labels, brackets)
    products = {}
    for i in range(3):
        for j in range(3):
            y = _orbit(basis[j])
            act = R.add(R.matmul(basis[i], y), R.matmul(y, R.transpose(basis[i])))
            products[(i, j)] = R.matvec(to_t2, _sym_coords(act))
    C = Connection.from_products(L, products)
    g = tuple(
        tuple(Fraction(3, 2) * R.trace(R.matmul(_orbit(a), _orbit(b))) for b in basis) for a in basis
    )
    return Bundle(
        name="t2cone",
        algebra=L,
        connection=C,
        metrics={"g": g},
        expected={
            "validate_lie": "pass",
            "check_lsa": "pass",
            "check_hessian_metric": "pass",
            "solvable": True,
            "nilpotent": False,
            "unimodular": False,
            "semisimple": False,
        },
        meta={"note": "upper triangular 2x2 acting on positive definite 2x2 by s x s^T; g = Hess(-3/2 log det) at I"},
    )


def _sasaki_h3() -> Bundle:
    b = _h3()
    J = [[0] * 4 for _ in range(4)]
    J[3][0], J[0][3], J[2][1], J[1][2] = -1, 1, -1, 1
    return Bundle(
        name="sasaki_h3",
        algebra=b.algebra,
        forms={"eta": b.forms["eta"], "omega": b.forms["omega"]},
        linmaps={"D": R.zeros(3), "J": R.mat(J)},
        expected={
            "validate_lie": "pass",
            "check_semicontact": "pass",
            "check_semisasakian": "pass",
            "solvable": True,
            "nilpotent": True,
            "unimodular": True,
            "semisimple": False,
        },
        meta={"note": "J acts on R x h3 with basis (E, e1, e2, e3)"},
    )


_BUILDERS: dict[str, Callable[[], Bundle]] = {
    "h3": _h3,
    "affR": _affR,
    "affR_x_R": _affR_x_R,
    "e2": _e2,
    "su2": _su2,
    "sl2": _sl2,
    "complex_lsa": _complex_lsa,
    "quaternion_lsa": _quaternion_lsa,
    "t2cone": _t2cone,
    "sasaki_h3": _sasaki_h3,
}

_ABELIAN = re.compile(r"^abelian\((\d+)\)$")


def available() -> list[str]:
    return ["abelian(n)"] + sorted(_BUILDERS)


def standard_names() -> list[str]:
    """Concrete names covering every built-in family (abelian at n = 3)."""
    return ["abelian(3)"] + sorted(_BUILDERS)


def load_example(name: str) -> Bundle:
    m = _ABELIAN.match(name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise UnknownExample(f"abelian dimension must be positive, got {n}")
        return _abelian(n)
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise UnknownExample(f"unknown example {name!r}; available: {', '.join(available())}") from None


# ---------------------------------------------------------------------------
# replay


def _pipeline_report(b: Bundle) -> CheckReport:
    bundle = semisasakian_from_projective_hessian(b.projective_data())
    return check_semisasakian(bundle.data, bundle.J)


def _projective_report(P: ProjectiveHessianData) -> CheckReport:
    return check_projective(P.g_alg, P.conn_hat)


CHECKS: dict[str, Callable[[Bundle], CheckReport]] = {
    "validate_lie": lambda b: validate_lie(b.algebra),
    "check_lsa": lambda b: check_lsa(b.algebra, b.conn()),
    "check_radiant": lambda b: check_radiant(b.algebra, b.conn(), b.vector("xi")),
    "check_projective": lambda b: _projective_report(b.projective_data(need_metric=False)),
    "check_complex_structure": lambda b: check_complex_structure(b.algebra, b.linmap("J")),
    "check_semicontact": lambda b: check_semicontact(b.semicontact_data()),
    "check_lcs": lambda b: check_lcs(b.lcs_data()),
    "check_lck": lambda b: check_lck(b.lcs_data(), b.linmap("J")),
    "check_semisasakian": lambda b: check_semisasakian(b.semicontact_data(), b.linmap("J")),
    "check_hessian_metric": lambda b: check_hessian_metric(b.algebra, b.conn(), b.metric("g")),
    "check_hessian_cone": lambda b: check_hessian_cone(b.projective_data()),
    "semisasakian_pipeline": _pipeline_report,
}

INVARIANT_KEYS = ("solvable", "nilpotent", "unimodular", "semisimple")


def evaluate(bundle: Bundle, key: str):
    """Recompute the value recorded under ``expected[key]``."""
    if key in INVARIANT_KEYS:
        return getattr(structure_invariants(bundle.algebra), key)
    return CHECKS[key](bundle).verdict


def golden_filename(name: str) -> str:
    return name.replace("(", "").replace(")", "") + ".bundle.json"


def golden_path(name: str):
    """Shipped export of ``name`` (see :mod:`liegeom.bundle_io`)."""
    from importlib.resources import files

    return files("liegeom") / "data" / "catalog" / golden_filename(name)

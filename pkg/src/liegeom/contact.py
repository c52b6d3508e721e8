"""Semi-contact, lcs, lck and semi-Sasakian structures on Lie algebras.

Sign convention
---------------
With the differential of :mod:`liegeom.liecore`, ``d_H a = d_L a - θ ∧ D*a``
on ``H = R ⋉_D L`` for forms pulled back from ``L``.  Expanding
``dΩ = θ ∧ Ω`` for ``Ω = ω + s θ ∧ η`` gives ``dω = 0`` and
``ω + D*ω + s dη = 0``, so the semi-contact equation ``ω + D*ω - dη = 0``
forces ``s = -1``.  The same sign recovers ``η = s ι_E Ω`` on ``L``.
:data:`LEE_SIGN` freezes it; ``tests/test_contact.py`` re-derives it on h3.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import rational as R
from .complexstruct import check_complex_structure
from .liecore import (
    AltForm,
    LieAlgebra,
    change_basis,
    ce_d,
    extend_by_zero,
    interior,
    is_derivation,
    pull_derivation,
    pullback,
    semidirect_der,
    wedge,
    wedge_power,
)
from .rational import Q
from .report import CheckReport, DimensionError, PreconditionError, StructureError

LEE_SIGN = -1

ZERO = Fraction(0)


@dataclass(frozen=True)
class SemiContactData:
    L: LieAlgebra
    D: R.Mat
    omega: AltForm
    eta: AltForm

    def __post_init__(self):
        n = self.L.dim
        object.__setattr__(self, "D", R.mat(self.D))
        if R.shape(self.D) != (n, n):
            raise DimensionError("D must be dim x dim")
        if (self.omega.dim, self.omega.degree) != (n, 2) or (self.eta.dim, self.eta.degree) != (n, 1):
            raise DimensionError("omega must be a 2-form and eta a 1-form on L")


@dataclass(frozen=True)
class LcsData:
    H: LieAlgebra
    Omega: AltForm
    theta: AltForm

    def __post_init__(self):
        n = self.H.dim
        if (self.Omega.dim, self.Omega.degree) != (n, 2) or (self.theta.dim, self.theta.degree) != (n, 1):
            raise DimensionError("Omega must be a 2-form and theta a 1-form on H")


@dataclass(frozen=True)
class WeightedForm:
    """A form whose coefficients in the left-invariant frame scale as ``t^weight``."""

    form: AltForm
    weight: int

    def differential(self, L: LieAlgebra, theta_E: AltForm) -> AltForm:
        """True differential at ``t = 1``: ``d form + weight θ_E ∧ form``."""
        return ce_d(L, self.form) + self.weight * wedge(theta_E, self.form)


def _zero_check(rep: CheckReport, identity: str, form: AltForm, target: AltForm | None = None) -> None:
    diff = form if target is None else form - target
    for key in sorted(diff.coeffs):
        right = ZERO if target is None else target.coeffs.get(key, ZERO)
        rep.add(identity, key, form.coeffs.get(key, ZERO), right)


def check_semicontact(S: SemiContactData) -> CheckReport:
    L = S.L
    if L.dim % 2 == 0:
        raise DimensionError("semi-contact algebras are odd-dimensional")
    n = (L.dim - 1) // 2
    rep = CheckReport("check_semicontact")
    rep.extend(is_derivation(L, S.D))
    _zero_check(rep, "d_omega", ce_d(L, S.omega))
    _zero_check(rep, "omega+D*omega-d_eta", S.omega + pull_derivation(S.D, S.omega) - ce_d(L, S.eta))
    top = wedge(S.eta, wedge_power(S.omega, n)).top_coefficient()
    if top == 0:
        rep.add("eta^omega^n_nonzero", (), top, "nonzero")
    return rep


def lcs_of_semicontact(S: SemiContactData) -> LcsData:
    rep = check_semicontact(S)
    if not rep:
        raise PreconditionError("not semi-contact data", rep)
    return _lcs_unchecked(S)


def _lcs_unchecked(S: SemiContactData) -> LcsData:
    H = semidirect_der(S.L, S.D)
    m = H.dim
    theta = AltForm.basis(m, 0)
    omega = extend_by_zero(S.omega, m, 1)
    eta = extend_by_zero(S.eta, m, 1)
    return LcsData(H, omega + LEE_SIGN * wedge(theta, eta), theta)


def check_lcs(X: LcsData) -> CheckReport:
    H = X.H
    if H.dim % 2:
        raise DimensionError("lcs algebras are even-dimensional")
    rep = CheckReport("check_lcs")
    _zero_check(rep, "d_theta", ce_d(H, X.theta))
    if H.dim > 2:
        _zero_check(rep, "dOmega=theta^Omega", ce_d(H, X.Omega), wedge(X.theta, X.Omega))
    top = wedge_power(X.Omega, H.dim // 2).top_coefficient()
    if top == 0:
        rep.add("Omega^n_nonzero", (), top, "nonzero")
    return rep


def split_lcs(X: LcsData, E: Sequence) -> SemiContactData:
    """Recover ``(L, D, ω, η)`` with ``L = ker θ`` and ``D = ad_E|_L``.

    The basis of ``ker θ`` is ``e_i - θ(e_i) E`` for ``i != p`` where ``p`` is
    the first coordinate of ``E`` that is nonzero; when ``E = e_p`` and
    ``θ = e^p`` this is just the remaining standard basis.
    """
    H = X.H
    m = H.dim
    E = tuple(Q(x) for x in E)
    if len(E) != m:
        raise DimensionError("E has the wrong length")
    th = X.theta.to_vector()
    if R.dot(th, E) != 1:
        raise PreconditionError(f"theta(E) = {R.dot(th, E)}, need 1")
    p = next(i for i, x in enumerate(E) if x)
    others = [i for i in range(m) if i != p]
    u = [R.vadd(R.unit(m, i), R.vscale(-th[i], E)) for i in others]
    P = R.transpose(tuple([E] + u))
    Hn = change_basis(H, P)
    for a, b in combinations(range(1, m), 2):
        if Hn.c[a][b][0]:
            raise StructureError(
                f"ker theta is not an ideal: [u{a},u{b}] has E-component {Hn.c[a][b][0]}"
            )
    for b in range(1, m):
        if Hn.c[0][b][0]:
            raise StructureError(f"ker theta is not an ideal: [E,u{b}] has E-component {Hn.c[0][b][0]}")
    labels = tuple(H.labels[i] if u[k] == R.unit(m, i) else f"u{k + 1}" for k, i in enumerate(others))
    L = LieAlgebra([[Hn.c[a][b][1:] for b in range(1, m)] for a in range(1, m)], labels)
    D = R.transpose(tuple(Hn.c[0][b][1:] for b in range(1, m)))
    Om = pullback(X.Omega, P)
    omega = AltForm(m - 1, 2, {(a - 1, b - 1): v for (a, b), v in Om.coeffs.items() if a > 0})
    iota = interior(Om, R.unit(m, 0))
    eta = AltForm(m - 1, 1, {(a - 1,): LEE_SIGN * v for (a,), v in iota.coeffs.items() if a > 0})
    return SemiContactData(L, D, omega, eta)


def lck_metric(Omega: AltForm, J: R.Mat) -> R.Mat:
    """``g(X, Y) = Ω(X, JY)``."""
    return R.matmul(Omega.to_matrix(), J)


def check_metric_positive(rep: CheckReport, g: R.Mat) -> None:
    n = len(g)
    for i, j in combinations(range(n), 2):
        if g[i][j] != g[j][i]:
            rep.add("g_symmetric", (i, j), g[i][j], g[j][i])
    if R.is_symmetric(g):
        for k, minor in enumerate(R.leading_minors(g)):
            if minor <= 0:
                rep.add("g_positive_definite", tuple(range(k + 1)), minor, "> 0")
                break


def check_lck(X: LcsData, J: R.Mat) -> CheckReport:
    rep = CheckReport("check_lck")
    rep.extend(check_lcs(X), prefix="lcs")
    cx = check_complex_structure(X.H, J)
    rep.extend(cx, prefix="complex")
    if any(v.identity == "J_squared" for v in cx.violations):
        return rep
    check_metric_positive(rep, lck_metric(X.Omega, J))
    return rep


def check_semisasakian(S: SemiContactData, J: R.Mat) -> CheckReport:
    """Semi-contact data plus lck on ``R ⋉_D L`` for the given ``J``."""
    rep = CheckReport("check_semisasakian")
    sc = check_semicontact(S)
    rep.extend(sc, prefix="semicontact")
    if not sc:
        return rep
    if R.shape(J) != (S.L.dim + 1,) * 2:
        raise DimensionError("J must act on the (dim L + 1)-dimensional extension")
    rep.extend(check_lck(_lcs_unchecked(S), J), prefix="lck")
    return rep

"""Hessian and Hessian-cone metrics in an invariant frame, the Kähler
structure on ``g_∇``, and the projective-Hessian to semi-Sasakian pipeline.

A left-invariant metric ``g`` on a group with flat left-invariant ``∇`` is
locally a Hessian iff ``∇g`` is totally symmetric.  In the frame,

    T(X, Y, Z) = w θ_E(X) g(Y, Z) - g(∇_X Y, Z) - g(Y, ∇_X Z)

must be symmetric in ``X, Y``; ``w = 0`` for ordinary metrics and ``w = 2``
for the cone metric ``t² g_G + dt²`` evaluated at ``t = 1``, where ``E`` is
the scaling generator ``t ∂_t``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import rational as R
from .affine import Connection, ProjectiveHessianData, check_lsa, check_projective
from .complexstruct import check_complex_structure, rmap_complex_structure
from .contact import (
    LcsData,
    SemiContactData,
    WeightedForm,
    check_lcs,
    check_metric_positive,
    check_semisasakian,
    split_lcs,
)
from .liecore import (
    AltForm,
    LieAlgebra,
    abelian,
    direct_sum,
    permute,
    semidirect,
    validate_lie,
)
from .report import CheckReport, HessianConeViolation, PipelineStageError, PreconditionError

ZERO = Fraction(0)
CONE_WEIGHT = 2


@dataclass(frozen=True)
class KahlerData:
    algebra: LieAlgebra
    J: R.Mat
    g_real: R.Mat
    Omega: AltForm
    weight: int = 0


@dataclass(frozen=True)
class SemiSasakianBundle:
    """Output of :func:`semisasakian_from_projective_hessian`.

    ``J`` and ``g_real`` are written in the basis ``(E', m)`` of
    ``R ⋉_D m``, matching ``lcs_of_semicontact(data)``.
    """

    data: SemiContactData
    J: R.Mat
    g_real: R.Mat
    verified: bool
    kahler: KahlerData
    euler: tuple
    stages: list = field(default_factory=list)


def codazzi_tensor(C: Connection, g: R.Mat, weight: int = 0, scaling_index: int | None = None) -> list:
    n = C.dim
    prods = [[C.gamma[i][j] for j in range(n)] for i in range(n)]
    T = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for x in range(n):
        scale = weight if (scaling_index is not None and x == scaling_index) else 0
        for y in range(n):
            gy = R.matvec(g, prods[x][y])  # g(∇_x y, ·)
            for z in range(n):
                val = scale * g[y][z] - gy[z] - R.dot(g[y], prods[x][z])
                T[x][y][z] = val
    return T


def _codazzi_report(rep: CheckReport, T: list) -> None:
    n = len(T)
    for x, y in combinations(range(n), 2):
        for z in range(n):
            if T[x][y][z] != T[y][x][z]:
                rep.add("codazzi", (x, y, z), T[x][y][z], T[y][x][z])


def _metric_precondition(rep: CheckReport, g: R.Mat, n: int) -> None:
    if R.shape(g) != (n, n):
        rep.add("precondition:metric_shape", (), R.shape(g), (n, n))
        return
    check_metric_positive(rep, g)


def check_hessian_metric(L: LieAlgebra, C: Connection, g: R.Mat) -> CheckReport:
    g = R.mat(g)
    rep = CheckReport("check_hessian_metric")
    rep.extend(check_lsa(L, C), prefix="precondition:lsa")
    pre = CheckReport("metric")
    _metric_precondition(pre, g, L.dim)
    rep.extend(pre, prefix="precondition")
    if not rep:
        return rep
    _codazzi_report(rep, codazzi_tensor(C, g))
    return rep


def cone_metric(metric_G: R.Mat) -> R.Mat:
    return R.block_diag(R.mat(metric_G), R.identity(1))


def check_hessian_cone(P: ProjectiveHessianData) -> CheckReport:
    rep = CheckReport("check_hessian_cone")
    rep.extend(check_projective(P.g_alg, P.conn_hat), prefix="projective")
    if not rep:
        return rep
    g_hat = cone_metric(P.metric_G)
    pre = CheckReport("metric")
    _metric_precondition(pre, g_hat, P.n + 1)
    rep.extend(pre, prefix="cone")
    if not rep:
        return rep
    _codazzi_report(rep, codazzi_tensor(P.conn_hat, g_hat, CONE_WEIGHT, scaling_index=P.n))
    return rep


def kahler_form(J: R.Mat, g_real: R.Mat) -> AltForm:
    """``Ω(X, Y) = g(JX, Y)``."""
    return AltForm.from_matrix(R.matmul(R.transpose(J), g_real))


def kahler_from_hessian(L: LieAlgebra, C: Connection, g: R.Mat) -> KahlerData:
    g = R.mat(g)
    rep = check_lsa(L, C)
    if not rep:
        raise PreconditionError("connection is not flat and torsion-free", rep)
    if R.shape(g) != (L.dim, L.dim) or not R.is_positive_definite(g):
        raise PreconditionError("g must be symmetric positive definite")
    g_nabla, cs = rmap_complex_structure(L, C)
    g_real = R.block_diag(g, g)
    return KahlerData(g_nabla, cs.J, g_real, kahler_form(cs.J, g_real), 0)


def regroup_semidirect(
    F: LieAlgebra,
    G: LieAlgebra,
    H: LieAlgebra,
    alpha: Sequence[R.Mat],
    beta: Sequence[R.Mat],
) -> CheckReport:
    """Compare ``(F x G) ⋉_{α×β} H`` with ``F ⋉ (G ⋉_β H)`` bracket by bracket.

    Both are written on the basis (F, G, H).
    """
    comm = CheckReport("commuting_actions")
    for i, a in enumerate(alpha):
        for j, b in enumerate(beta):
            ab, ba = R.matmul(a, b), R.matmul(b, a)
            if ab != ba:
                comm.add("alpha_beta_commute", (i, j), ab, ba)
    if not comm:
        raise PreconditionError("actions of F and G on H do not commute", comm)
    left = semidirect(direct_sum(F, G), H, list(alpha) + list(beta))
    inner = semidirect(G, H, beta)
    lifted = [R.block_diag(R.zeros(G.dim), a) for a in alpha]
    right = semidirect(F, inner, lifted)
    rep = CheckReport("regroup_semidirect")
    n = left.dim
    for i, j in combinations(range(n), 2):
        if left.c[i][j] != right.c[i][j]:
            rep.add("bracket", (i, j), left.c[i][j], right.c[i][j])
    return rep


def _stage(stages: list, name: str, rep: CheckReport) -> None:
    stages.append((name, rep.verdict))
    if not rep:
        raise PipelineStageError(name, rep)


def semisasakian_from_projective_hessian(P: ProjectiveHessianData) -> SemiSasakianBundle:
    """Build semi-Sasakian data on ``g ⋉ R^{n+1}`` from a projective Hessian
    structure, verifying every intermediate identity exactly."""
    stages: list = []
    cone = check_hessian_cone(P)
    stages.append(("hessian_cone", cone.verdict))
    if not cone:
        raise HessianConeViolation("input is not a projective Hessian structure", cone)

    n = P.n
    C = P.conn_hat
    g_hat_alg = C.base
    e_idx = n
    # (1)-(2) r-map algebra and swap complex structure, basis (g, E, f_g, f_E)
    h_hat, cs = rmap_complex_structure(g_hat_alg, C)
    J = cs.J
    _stage(stages, "validate_lie", validate_lie(h_hat))
    _stage(stages, "complex_structure", check_complex_structure(h_hat, J))

    # (3)-(4) cone metric, weight 2, and its Kähler form
    g_cone = cone_metric(P.metric_G)
    g_real = R.block_diag(g_cone, g_cone)
    Omega = kahler_form(J, g_real)
    kahler = KahlerData(h_hat, J, g_real, Omega, CONE_WEIGHT)

    # (5) closedness of t^2 Ω in the scaling frame
    dim = h_hat.dim
    theta_E = AltForm.basis(dim, e_idx)
    closed = CheckReport("weighted_closedness")
    dK = WeightedForm(Omega, CONE_WEIGHT).differential(h_hat, theta_E)
    for key, v in sorted(dK.coeffs.items()):
        closed.add("d(t^2 Omega)", key, v, ZERO)
    _stage(stages, "weighted_closedness", closed)

    # (6) (R x g) ⋉ R^{n+1} = R ⋉ (g ⋉ R^{n+1}); m is an ideal
    F = abelian(1, ("E",))
    fiber = abelian(n + 1)
    alpha = [C.left(e_idx)]
    beta = [C.left(i) for i in range(n)]
    _stage(stages, "regroup", regroup_semidirect(F, P.g_alg, fiber, alpha, beta))
    order = [e_idx] + [i for i in range(dim) if i != e_idx]
    same = CheckReport("regroup_matches_rmap")
    left = semidirect(direct_sum(F, P.g_alg), fiber, alpha + beta)
    moved = permute(h_hat, order)
    for i, j in combinations(range(dim), 2):
        if left.c[i][j] != moved.c[i][j]:
            same.add("bracket", (i, j), left.c[i][j], moved.c[i][j])
    _stage(stages, "regroup_matches_rmap", same)

    ad_rep = CheckReport("ad_E_on_m")
    adE = h_hat.ad_basis(e_idx)
    for j in range(dim):
        if j == e_idx:
            continue
        want = R.unit(dim, j) if j > n else (ZERO,) * dim
        got = tuple(adE[r][j] for r in range(dim))
        if got != want:
            ad_rep.add("ad_E", (j,), got, want)
    _stage(stages, "ad_E_on_m", ad_rep)

    # (7) Ω is lcs with Lee form -w θ_E; normalise the generator so θ(E') = 1
    lee = (-CONE_WEIGHT) * theta_E
    X = LcsData(h_hat, Omega, lee)
    _stage(stages, "lcs", check_lcs(X))
    euler = R.vscale(Fraction(1, -CONE_WEIGHT), R.unit(dim, e_idx))
    data = split_lcs(X, euler)
    Pm = R.transpose(tuple([euler] + [R.unit(dim, i) for i in range(dim) if i != e_idx]))
    Pinv = R.inverse(Pm)
    J_H = R.matmul(Pinv, R.matmul(J, Pm))
    g_H = R.matmul(R.transpose(Pm), R.matmul(g_real, Pm))

    # (8) the result is semi-Sasakian
    _stage(stages, "semisasakian", check_semisasakian(data, J_H))
    return SemiSasakianBundle(data, J_H, g_H, True, kahler, euler, stages)

"""The complex structure on ``g ⋉ R^n`` attached to a flat torsion-free
connection, and the Nijenhuis integrability test."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import rational as R
from .affine import Connection, check_lsa
from .liecore import LieAlgebra, semidirect_aff
from .report import CheckReport, DimensionError, PreconditionError


@dataclass(frozen=True)
class ComplexStructure:
    base: LieAlgebra
    J: R.Mat

    def __post_init__(self):
        n = self.base.dim
        if n % 2:
            raise DimensionError("complex structures need even dimension")
        if R.matmul(self.J, self.J) != R.scale(-1, R.identity(n)):
            raise ValueError("J^2 != -Id")


def swap_structure(n: int) -> R.Mat:
    """``J e_i = f_i``, ``J f_i = -e_i`` on the basis ``(e_1..e_n, f_1..f_n)``."""
    m = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        m[n + i][i] = 1
        m[i][n + i] = -1
    return R.mat(m)


def associated_algebra(L: LieAlgebra, C: Connection) -> LieAlgebra:
    """``g_∇ = g ⋉ R^n`` with ``[e_i, f_j] = ∇_{e_i} f_j``."""
    n = L.dim
    labels = L.labels + tuple(f"f({lab})" for lab in L.labels)
    return semidirect_aff(L, [C.left(i) for i in range(n)], labels)


def rmap_complex_structure(L: LieAlgebra, C: Connection) -> tuple[LieAlgebra, ComplexStructure]:
    rep = check_lsa(L, C)
    if not rep:
        raise PreconditionError("connection is not flat and torsion-free", rep)
    g_nabla = associated_algebra(L, C)
    return g_nabla, ComplexStructure(g_nabla, swap_structure(L.dim))


def nijenhuis(L: LieAlgebra, J: R.Mat, X, Y) -> tuple:
    """``N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]`` (no 1/4)."""
    JX, JY = R.matvec(J, X), R.matvec(J, Y)
    a = L.bracket(JX, JY)
    b = R.matvec(J, L.bracket(JX, Y))
    c = R.matvec(J, L.bracket(X, JY))
    d = L.bracket(X, Y)
    return tuple(p - q - r - s for p, q, r, s in zip(a, b, c, d))


def check_complex_structure(L: LieAlgebra, J: R.Mat) -> CheckReport:
    n = L.dim
    if n % 2:
        raise DimensionError("odd-dimensional algebra cannot carry a complex structure")
    if R.shape(J) != (n, n):
        raise DimensionError("J has the wrong shape")
    rep = CheckReport("check_complex_structure")
    sq = R.matmul(J, J)
    minus_id = R.scale(-1, R.identity(n))
    if sq != minus_id:
        for i in range(n):
            for j in range(n):
                if sq[i][j] != minus_id[i][j]:
                    rep.add("J_squared", (i, j), sq[i][j], minus_id[i][j])
        return rep
    for i, j in combinations(range(n), 2):
        N = nijenhuis(L, J, R.unit(n, i), R.unit(n, j))
        if any(N):
            rep.add("nijenhuis", (i, j), N, (0,) * n)
    return rep

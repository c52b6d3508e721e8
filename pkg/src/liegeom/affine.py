"""Invariant flat torsion-free connections (left-symmetric products) and the
affine representations they define."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np
from scipy.linalg import expm

from . import rational as R
from .liecore import LieAlgebra, subalgebra
from .rational import Q
from .report import CheckReport, DimensionError, PreconditionError, StructureError

ZERO = Fraction(0)

# The float branch of exp_linear_part is accurate to this level on the
# small, well-scaled matrices that occur here.
EXP_FLOAT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Connection:
    """``∇_{e_i} e_j = sum_k gamma[i][j][k] e_k``, i.e. the product ``e_i · e_j``."""

    base: LieAlgebra
    gamma: tuple

    def __post_init__(self):
        n = self.base.dim
        g = tuple(tuple(tuple(Q(x) for x in row) for row in plane) for plane in self.gamma)
        if len(g) != n or any(len(p) != n or any(len(r) != n for r in p) for p in g):
            raise DimensionError("connection coefficients must be n x n x n with n = base.dim")
        object.__setattr__(self, "gamma", g)

    @classmethod
    def from_products(cls, base: LieAlgebra, products: Mapping) -> "Connection":
        """Build from ``{(a, b): a·b}`` with indices or labels; unlisted products vanish."""
        n = base.dim
        pos = {lab: i for i, lab in enumerate(base.labels)}

        def ix(a):
            return pos[a] if isinstance(a, str) else a

        g = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (a, b), val in products.items():
            if isinstance(val, Mapping):
                v = [ZERO] * n
                for k, x in val.items():
                    v[ix(k)] = Q(x)
            else:
                v = [Q(x) for x in val]
            g[ix(a)][ix(b)] = v
        return cls(base, g)

    @classmethod
    def zero(cls, base: LieAlgebra) -> "Connection":
        n = base.dim
        return cls(base, tuple(R.zeros(n) for _ in range(n)))

    @property
    def dim(self) -> int:
        return self.base.dim

    def __eq__(self, other) -> bool:
        return isinstance(other, Connection) and self.base == other.base and self.gamma == other.gamma

    def __hash__(self):
        return hash((self.base, self.gamma))

    def left(self, i: int) -> R.Mat:
        """Matrix of ``∇_{e_i}`` (left multiplication by ``e_i``)."""
        return R.transpose(self.gamma[i])

    def nabla(self, X: Sequence) -> R.Mat:
        out = R.zeros(self.dim)
        for i, x in enumerate(X):
            if x:
                out = R.add(out, R.scale(x, self.left(i)))
        return out

    def product(self, u: Sequence, v: Sequence) -> tuple:
        return R.matvec(self.nabla(u), v)

    def basis_product(self, i: int, j: int) -> tuple:
        return self.gamma[i][j]

    def permuted(self, order: Sequence[int]) -> "Connection":
        """Same connection in the basis ``e'_a = e_{order[a]}``."""
        o = list(order)
        if sorted(o) != list(range(self.dim)):
            raise ValueError("order must be a permutation")
        c = self.base.c
        base = LieAlgebra(
            [[[c[o[a]][o[b]][o[k]] for k in range(self.dim)] for b in range(self.dim)] for a in range(self.dim)],
            tuple(self.base.labels[a] for a in o),
        )
        g = [[[self.gamma[o[a]][o[b]][o[k]] for k in range(self.dim)] for b in range(self.dim)] for a in range(self.dim)]
        return Connection(base, g)


def bracket_from_connection(C: Connection) -> LieAlgebra:
    """The algebra whose bracket is the commutator of the product."""
    n = C.dim
    c = [[[C.gamma[i][j][k] - C.gamma[j][i][k] for k in range(n)] for j in range(n)] for i in range(n)]
    return LieAlgebra(c, C.base.labels)


def _assoc(C: Connection, i: int, j: int, k: int) -> tuple:
    n = C.dim
    x, y = R.unit(n, i), R.unit(n, j)
    yz = C.basis_product(j, k)
    xy = C.basis_product(i, j)
    return tuple(a - b for a, b in zip(C.product(x, yz), C.product(xy, R.unit(n, k))))


def _check_dims(L: LieAlgebra, C: Connection) -> None:
    if L.dim != C.dim:
        raise DimensionError("connection and algebra dimensions differ")


def check_torsion(L: LieAlgebra, C: Connection) -> CheckReport:
    _check_dims(L, C)
    rep = CheckReport("torsion_free")
    for i, j in combinations(range(L.dim), 2):
        left = tuple(a - b for a, b in zip(C.gamma[i][j], C.gamma[j][i]))
        if left != L.c[i][j]:
            rep.add("torsion", (i, j), left, L.c[i][j])
    return rep


def check_lsa(L: LieAlgebra, C: Connection) -> CheckReport:
    """Torsion-free and left-symmetric: ``(X,Y,Z) = (Y,X,Z)`` for the
    associator ``(X,Y,Z) = X(YZ) - (XY)Z``."""
    rep = CheckReport("check_lsa")
    rep.extend(check_torsion(L, C))
    n = L.dim
    for i, j in combinations(range(n), 2):
        for k in range(n):
            a, b = _assoc(C, i, j, k), _assoc(C, j, i, k)
            if a != b:
                rep.add("left_symmetry", (i, j, k), a, b)
    return rep


def check_flat(L: LieAlgebra, C: Connection) -> CheckReport:
    """Curvature-free: ``[∇_X, ∇_Y] = ∇_{[X,Y]}`` on basis pairs."""
    _check_dims(L, C)
    rep = CheckReport("flat")
    for i, j in combinations(range(L.dim), 2):
        left = R.commutator(C.left(i), C.left(j))
        right = C.nabla(L.c[i][j])
        if left != right:
            rep.add("curvature", (i, j), left, right)
    return rep


@dataclass(frozen=True)
class AffineRep:
    """``mats[i] = [[∇_{e_i}, e_i], [0, 0]]`` in gl(n+1)."""

    base: LieAlgebra
    mats: tuple

    def linear_part(self, i: int) -> R.Mat:
        n = self.base.dim
        return tuple(r[:n] for r in self.mats[i][:n])

    def translation(self, i: int) -> tuple:
        n = self.base.dim
        return tuple(r[n] for r in self.mats[i][:n])


def aff_bracket(A: R.Mat, B: R.Mat) -> R.Mat:
    """Commutator in aff(R^n), written blockwise as ``[A,B] ⋉ (A b - B a)``."""
    n = len(A) - 1
    a_lin, b_lin = tuple(r[:n] for r in A[:n]), tuple(r[:n] for r in B[:n])
    a_tr, b_tr = tuple(r[n] for r in A[:n]), tuple(r[n] for r in B[:n])
    lin = R.commutator(a_lin, b_lin)
    tr = R.vadd(R.matvec(a_lin, b_tr), R.vscale(-1, R.matvec(b_lin, a_tr)))
    rows = [tuple(lin[i]) + (tr[i],) for i in range(n)]
    rows.append((ZERO,) * (n + 1))
    return tuple(rows)


def etale_rep(L: LieAlgebra, C: Connection) -> AffineRep:
    rep = check_lsa(L, C)
    if not rep:
        raise PreconditionError("connection is not a left-symmetric structure on L", rep)
    n = L.dim
    mats = []
    for i in range(n):
        lin = C.left(i)
        rows = [tuple(lin[r]) + (Fraction(int(r == i)),) for r in range(n)]
        rows.append((ZERO,) * (n + 1))
        mats.append(tuple(rows))
    for i, j in combinations(range(n), 2):
        target = R.zeros(n + 1)
        for k, x in enumerate(L.c[i][j]):
            if x:
                target = R.add(target, R.scale(x, mats[k]))
        if aff_bracket(mats[i], mats[j]) != target or R.commutator(mats[i], mats[j]) != target:
            raise StructureError(f"affine representation fails to be a homomorphism at ({i + 1},{j + 1})")
    return AffineRep(L, tuple(mats))


def exp_linear_part(C: Connection, X: Sequence):
    """``exp(∇_X)``.

    Returns an exact Fraction matrix (tuple of rows) when ``∇_X`` is
    nilpotent, otherwise a float ndarray from scaling-and-squaring, accurate
    to about :data:`EXP_FLOAT_TOL`.
    """
    M = C.nabla(X)
    n = len(M)
    power = R.identity(n)
    terms = [power]
    for k in range(1, n + 1):
        power = R.scale(Fraction(1, k), R.matmul(power, M))
        if R.is_zero(power):
            out = terms[0]
            for t in terms[1:]:
                out = R.add(out, t)
            return out
        terms.append(power)
    return expm(np.array(M, dtype=float))


def check_radiant(L: LieAlgebra, C: Connection, xi: Sequence) -> CheckReport:
    """``∇_{e_i} ξ = e_i`` for every basis element."""
    _check_dims(L, C)
    if len(xi) != L.dim:
        raise DimensionError("ξ has the wrong length")
    xi = tuple(Q(x) for x in xi)
    rep = CheckReport("check_radiant")
    for i in range(L.dim):
        left = R.matvec(C.left(i), xi)
        if left != R.unit(L.dim, i):
            rep.add("radiant", (i,), left, R.unit(L.dim, i))
    return rep


def check_projective(G_alg: LieAlgebra, C_hat: Connection) -> CheckReport:
    """Projective structure on ``g`` given by ``C_hat`` on ``g ⊕ RE``, E last.

    Requires ``∇_X E = ∇_E X = X`` on g and ``∇_E E = E``.
    """
    n = G_alg.dim
    H = C_hat.base
    if H.dim != n + 1:
        raise DimensionError("C_hat must live on g ⊕ RE")
    e = n
    for i in range(n):
        if any(H.c[e][i]):
            raise StructureError(f"[E, e{i + 1}] != 0: the extension must be the direct product g x R")
        if any(H.c[i][j] != G_alg.c[i][j] + (ZERO,) for j in range(n)):
            raise StructureError("bracket of C_hat.base does not restrict to g")
    rep = CheckReport("check_projective")
    rep.extend(check_lsa(H, C_hat), prefix="lsa")
    for i in range(n + 1):
        ei = R.unit(n + 1, i)
        if C_hat.basis_product(i, e) != ei:
            rep.add("nabla_X_E", (i,), C_hat.basis_product(i, e), ei)
        if C_hat.basis_product(e, i) != ei:
            rep.add("nabla_E_X", (i,), C_hat.basis_product(e, i), ei)
    return rep


@dataclass(frozen=True)
class ProjectiveHessianData:
    """Input of the semi-Sasakian construction.

    ``conn_hat`` lives on ``g ⊕ RE`` with ``E`` the last basis element;
    ``metric_G`` is the metric on ``g``.
    """

    g_alg: LieAlgebra
    conn_hat: Connection
    metric_G: R.Mat

    def __post_init__(self):
        n = self.g_alg.dim
        if self.conn_hat.dim != n + 1:
            raise DimensionError("conn_hat must have dimension dim g + 1")
        m = R.mat(self.metric_G)
        if R.shape(m) != (n, n):
            raise DimensionError("metric_G must be n x n")
        if not R.is_symmetric(m):
            raise ValueError("metric_G must be symmetric")
        object.__setattr__(self, "metric_G", m)

    @property
    def n(self) -> int:
        return self.g_alg.dim

    @classmethod
    def from_connection(cls, C: Connection, e_index: int, metric_G) -> "ProjectiveHessianData":
        """Move basis element ``e_index`` to the end and split off ``g``."""
        n = C.dim
        order = [i for i in range(n) if i != e_index] + [e_index]
        Ch = C.permuted(order)
        g = subalgebra(Ch.base, [R.unit(n, i) for i in range(n - 1)], Ch.base.labels[:-1])
        return cls(g, Ch, metric_G)

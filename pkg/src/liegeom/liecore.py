"""Structure-constant Lie algebras and left-invariant exterior calculus.

Conventions
-----------
* ``c[i][j][k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
* A matrix ``M`` acts on column vectors: ``M e_j = sum_i M[i][j] e_i``.
* ``e^I = e^{i1} ^ ... ^ e^{ik}`` with ``e^I(e_{i1}, ..., e_{ik}) = 1``
  (determinant normalisation, no 1/k! factors).
* Chevalley-Eilenberg differential
  ``(d a)(X_0..X_k) = sum_{i<j} (-1)^{i+j} a([X_i, X_j], X_0..^i..^j..X_k)``,
  so ``d a (X, Y) = -a([X, Y])`` on 1-forms.

Indices are 0-based throughout the Python API.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import rational as R
from .rational import Q
from .report import CheckReport, DimensionError, PreconditionError, StructureError

ZERO = Fraction(0)


def sort_sign(idx: Sequence[int]) -> tuple[int, tuple]:
    """Sign of the permutation sorting ``idx`` and the sorted tuple.

    Returns ``(0, ())`` when an index repeats.
    """
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    # insertion sort counting transpositions; k is tiny
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


# ---------------------------------------------------------------------------
# Lie algebras


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    c: tuple
    labels: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.c)
        c = tuple(tuple(tuple(Q(x) for x in row) for row in plane) for plane in self.c)
        if any(len(p) != n or any(len(r) != n for r in p) for p in c):
            raise DimensionError("structure constants must be n x n x n")
        object.__setattr__(self, "c", c)
        labels = tuple(self.labels) or tuple(f"e{i + 1}" for i in range(n))
        if len(labels) != n:
            raise DimensionError("one label per basis element")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_brackets(cls, basis: int | Sequence[str], brackets: Mapping | None = None) -> "LieAlgebra":
        """Build from the nonzero brackets ``{(i, j): value}``.

        ``basis`` is a dimension or a list of labels; ``i``, ``j`` and the keys
        of dict-valued entries may be 0-based indices or labels.  Each pair is
        given once; the opposite bracket is filled in by antisymmetry.
        """
        labels = [f"e{i + 1}" for i in range(basis)] if isinstance(basis, int) else list(basis)
        n = len(labels)
        pos = {lab: i for i, lab in enumerate(labels)}

        def ix(a):
            return pos[a] if isinstance(a, str) else a

        c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (a, b), val in (brackets or {}).items():
            i, j = ix(a), ix(b)
            if isinstance(val, Mapping):
                v = [ZERO] * n
                for k, x in val.items():
                    v[ix(k)] = Q(x)
            else:
                v = [Q(x) for x in val]
            for k in range(n):
                c[i][j][k] = v[k]
                c[j][i][k] = -v[k]
        return cls(c, tuple(labels))

    @property
    def dim(self) -> int:
        return len(self.c)

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.c == other.c and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.c, self.labels))

    def same_brackets(self, other: "LieAlgebra") -> bool:
        return self.c == other.c

    def relabel(self, labels: Sequence[str]) -> "LieAlgebra":
        return LieAlgebra(self.c, tuple(labels))

    def basis_bracket(self, i: int, j: int) -> tuple:
        return self.c[i][j]

    def _nonzero(self, i: int, j: int) -> list[tuple[int, Fraction]]:
        key = ("nz", i, j)
        hit = self._cache.get(key)
        if hit is None:
            hit = [(k, x) for k, x in enumerate(self.c[i][j]) if x]
            self._cache[key] = hit
        return hit

    def bracket(self, u: Sequence, v: Sequence) -> tuple:
        n = self.dim
        out = [ZERO] * n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, x in self._nonzero(i, j):
                    out[k] += a * b * x
        return tuple(out)

    def ad(self, x: Sequence) -> R.Mat:
        """Matrix of ``ad_x``; column ``j`` is ``[x, e_j]``."""
        cols = [self.bracket(x, R.unit(self.dim, j)) for j in range(self.dim)]
        return R.transpose(tuple(cols))

    def ad_basis(self, i: int) -> R.Mat:
        return R.transpose(tuple(self.c[i][j] for j in range(self.dim)))


def abelian(n: int, labels: Sequence[str] = ()) -> LieAlgebra:
    return LieAlgebra(tuple(R.zeros(n) for _ in range(n)), tuple(labels))


def validate_lie(L: LieAlgebra) -> CheckReport:
    rep = CheckReport("validate_lie")
    n = L.dim
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if L.c[i][j][k] != -L.c[j][i][k]:
                    rep.add("antisymmetry", (i, j, k), L.c[i][j][k], -L.c[j][i][k])
    for i, j, k in combinations(range(n), 3):
        ei, ej, ek = (R.unit(n, t) for t in (i, j, k))
        jac = R.vadd(
            R.vadd(L.bracket(L.bracket(ei, ej), ek), L.bracket(L.bracket(ej, ek), ei)),
            L.bracket(L.bracket(ek, ei), ej),
        )
        if any(jac):
            rep.add("jacobi", (i, j, k), jac, (ZERO,) * n)
    return rep


def is_derivation(L: LieAlgebra, D: R.Mat) -> CheckReport:
    n = L.dim
    if R.shape(D) != (n, n):
        raise DimensionError(f"derivation must be {n}x{n}, got {R.shape(D)}")
    rep = CheckReport("is_derivation")
    cols = [tuple(D[r][j] for r in range(n)) for j in range(n)]
    for i, j in combinations(range(n), 2):
        left = R.matvec(D, L.c[i][j])
        right = R.vadd(L.bracket(cols[i], R.unit(n, j)), L.bracket(R.unit(n, i), cols[j]))
        if left != right:
            rep.add("derivation", (i, j), left, right)
    return rep


def check_homomorphism(A: LieAlgebra, B: LieAlgebra, phi: R.Mat) -> CheckReport:
    """``phi`` (B.dim x A.dim) preserves brackets on all basis pairs of A."""
    rep = CheckReport("homomorphism")
    if R.shape(phi) != (B.dim, A.dim):
        raise DimensionError("phi has the wrong shape")
    cols = [tuple(phi[r][j] for r in range(B.dim)) for j in range(A.dim)]
    for i, j in combinations(range(A.dim), 2):
        left = R.matvec(phi, A.c[i][j])
        right = B.bracket(cols[i], cols[j])
        if left != right:
            rep.add("bracket", (i, j), left, right)
    return rep


def is_isomorphism(A: LieAlgebra, B: LieAlgebra, phi: R.Mat) -> bool:
    return A.dim == B.dim and R.det(phi) != 0 and check_homomorphism(A, B, phi).passed


def change_basis(L: LieAlgebra, P: R.Mat, labels: Sequence[str] = ()) -> LieAlgebra:
    """Structure constants in the basis given by the columns of ``P``."""
    n = L.dim
    Pinv = R.inverse(P)
    cols = [tuple(P[r][j] for r in range(n)) for j in range(n)]
    c = [[R.matvec(Pinv, L.bracket(cols[i], cols[j])) for j in range(n)] for i in range(n)]
    return LieAlgebra(c, tuple(labels))


def permute(L: LieAlgebra, order: Sequence[int]) -> LieAlgebra:
    """Same algebra in the reordered basis ``e'_a = e_{order[a]}``."""
    o = list(order)
    if sorted(o) != list(range(L.dim)):
        raise ValueError("order must be a permutation")
    n = L.dim
    c = [[[L.c[o[a]][o[b]][o[k]] for k in range(n)] for b in range(n)] for a in range(n)]
    return LieAlgebra(c, tuple(L.labels[a] for a in o))


def coordinates(basis: Sequence[Sequence], v: Sequence) -> tuple:
    """Coordinates of ``v`` in the span of ``basis``; StructureError if outside."""
    k = len(basis)
    n = len(v)
    aug = tuple(tuple(basis[j][i] for j in range(k)) + (v[i],) for i in range(n))
    m, piv = R.rref(aug)
    if k in piv:
        raise StructureError("vector is not in the span")
    x = [ZERO] * k
    for r, p in enumerate(piv):
        x[p] = m[r][k]
    return tuple(x)


def subalgebra(L: LieAlgebra, basis: Sequence[Sequence], labels: Sequence[str] = ()) -> LieAlgebra:
    k = len(basis)
    c = [[[ZERO] * k for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            try:
                c[i][j] = list(coordinates(basis, L.bracket(basis[i], basis[j])))
            except StructureError:
                raise StructureError(f"span not closed under bracket at ({i + 1},{j + 1})") from None
    return LieAlgebra(c, tuple(labels))


def semidirect(F: LieAlgebra, K: LieAlgebra, derivations: Sequence[R.Mat], labels: Sequence[str] = ()) -> LieAlgebra:
    """``F ⋉ K`` with basis (F, K) and ``[f_i, k] = derivations[i] k``."""
    if len(derivations) != F.dim:
        raise DimensionError("one derivation per basis element of F")
    rep = CheckReport("semidirect_action")
    for i, D in enumerate(derivations):
        sub = is_derivation(K, D)
        if not sub:
            rep.extend(sub, prefix=f"derivation[{i + 1}]")
    for i, j in combinations(range(F.dim), 2):
        left = R.commutator(derivations[i], derivations[j])
        right = R.zeros(K.dim)
        for k, x in enumerate(F.c[i][j]):
            if x:
                right = R.add(right, R.scale(x, derivations[k]))
        if left != right:
            rep.add("homomorphism", (i, j), left, right)
    if not rep:
        raise PreconditionError("action is not a homomorphism into Der(K)", rep)
    f, m = F.dim, K.dim
    n = f + m
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(f):
        for j in range(f):
            c[i][j][:f] = list(F.c[i][j])
    for i in range(m):
        for j in range(m):
            c[f + i][f + j][f:] = list(K.c[i][j])
    for i in range(f):
        for j in range(m):
            col = [derivations[i][r][j] for r in range(m)]
            c[i][f + j][f:] = col
            c[f + j][i][f:] = [-x for x in col]
    labels = tuple(labels) or (F.labels + K.labels)
    return LieAlgebra(c, labels)


def semidirect_der(L: LieAlgebra, D: R.Mat, label: str = "E") -> LieAlgebra:
    """``R ⋉_D L``: new first basis element ``E`` with ``[E, e_i] = D e_i``."""
    rep = is_derivation(L, D)
    if not rep:
        raise PreconditionError("D is not a derivation", rep)
    return semidirect(abelian(1, (label,)), L, [D])


def semidirect_aff(L: LieAlgebra, linear_parts: Sequence[R.Mat], labels: Sequence[str] = ()) -> LieAlgebra:
    """``L ⋉ R^m`` with ``[e_i, f_j] = linear_parts[i] f_j`` and ``[f, f] = 0``."""
    if not linear_parts:
        raise DimensionError("need one linear part per basis element")
    m = len(linear_parts[0])
    if any(R.shape(A) != (m, m) for A in linear_parts):
        raise DimensionError("linear parts must all be m x m")
    K = abelian(m, tuple(f"f{j + 1}" for j in range(m)))
    return semidirect(L, K, linear_parts, labels)


def direct_sum(A: LieAlgebra, B: LieAlgebra) -> LieAlgebra:
    return semidirect(A, B, [R.zeros(B.dim)] * A.dim)


# ---------------------------------------------------------------------------
# Alternating forms


@dataclass(frozen=True, eq=False)
class AltForm:
    dim: int
    degree: int
    coeffs: Mapping[tuple, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.degree:
            raise DimensionError("negative degree")
        clean: dict[tuple, Fraction] = {}
        for key, val in dict(self.coeffs).items():
            key = tuple(key)
            if len(key) != self.degree or any(not 0 <= k < self.dim for k in key):
                raise DimensionError(f"bad multi-index {key} for degree {self.degree} on dim {self.dim}")
            if any(key[i] >= key[i + 1] for i in range(len(key) - 1)):
                raise ValueError(f"multi-index {key} is not strictly increasing; use AltForm.from_terms")
            val = Q(val)
            if val:
                clean[key] = val
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def from_terms(cls, dim: int, degree: int, terms: Mapping) -> "AltForm":
        """Accepts unsorted / repeated multi-indices and normalises signs."""
        acc: dict[tuple, Fraction] = defaultdict(Fraction)
        for key, val in terms.items():
            s, k = sort_sign(key)
            if s:
                acc[k] += s * Q(val)
        return cls(dim, degree, acc)

    @classmethod
    def basis(cls, dim: int, *idx: int) -> "AltForm":
        return cls.from_terms(dim, len(idx), {tuple(idx): 1})

    @classmethod
    def zero(cls, dim: int, degree: int) -> "AltForm":
        return cls(dim, degree, {})

    @classmethod
    def from_matrix(cls, M: R.Mat) -> "AltForm":
        """2-form with ``a(e_i, e_j) = M[i][j]``; M must be antisymmetric."""
        n = len(M)
        for i in range(n):
            for j in range(i, n):
                if M[i][j] != -M[j][i]:
                    raise ValueError("matrix is not antisymmetric")
        return cls(n, 2, {(i, j): M[i][j] for i, j in combinations(range(n), 2)})

    @classmethod
    def from_vector(cls, v: Sequence) -> "AltForm":
        return cls(len(v), 1, {(i,): x for i, x in enumerate(v)})

    def to_matrix(self) -> R.Mat:
        if self.degree != 2:
            raise DimensionError("only 2-forms have a matrix")
        n = self.dim
        return tuple(tuple(self.at((i, j)) for j in range(n)) for i in range(n))

    def to_vector(self) -> tuple:
        if self.degree != 1:
            raise DimensionError("only 1-forms have a vector")
        return tuple(self.coeffs.get((i,), ZERO) for i in range(self.dim))

    def at(self, idx: Sequence[int]) -> Fraction:
        """Value on the basis tuple ``(e_{idx[0]}, ...)``."""
        s, k = sort_sign(idx)
        return s * self.coeffs.get(k, ZERO) if s else ZERO

    def __call__(self, *vectors: Sequence) -> Fraction:
        if len(vectors) != self.degree:
            raise DimensionError("wrong number of arguments")
        total = ZERO
        for key, a in self.coeffs.items():
            total += a * R.det(tuple(tuple(v[i] for v in vectors) for i in key))
        return total

    def _check(self, other: "AltForm") -> None:
        if (self.dim, self.degree) != (other.dim, other.degree):
            raise DimensionError("forms live in different spaces")

    def __add__(self, other: "AltForm") -> "AltForm":
        self._check(other)
        acc = dict(self.coeffs)
        for k, v in other.coeffs.items():
            acc[k] = acc.get(k, ZERO) + v
        return AltForm(self.dim, self.degree, acc)

    def __neg__(self) -> "AltForm":
        return AltForm(self.dim, self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "AltForm") -> "AltForm":
        return self + (-other)

    def __mul__(self, c) -> "AltForm":
        c = Q(c)
        return AltForm(self.dim, self.degree, {k: c * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AltForm)
            and (self.dim, self.degree) == (other.dim, other.degree)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.dim, self.degree, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def top_coefficient(self) -> Fraction:
        if self.degree != self.dim:
            raise DimensionError("not a top-degree form")
        return self.coeffs.get(tuple(range(self.dim)), ZERO)

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"AltForm(0; deg {self.degree}, dim {self.dim})"
        terms = " + ".join(
            f"{v}*e^{''.join(str(i + 1) for i in k) or '()'}" for k, v in sorted(self.coeffs.items())
        )
        return f"AltForm({terms})"


def _d_matrix(L: LieAlgebra, k: int) -> dict:
    key = ("d", k)
    rows = L._cache.get(key)
    if rows is not None:
        return rows
    rows = {}
    for A in combinations(range(L.dim), k + 1):
        row: dict[tuple, Fraction] = defaultdict(Fraction)
        for a in range(k + 1):
            for b in range(a + 1, k + 1):
                sgn = -1 if (a + b) % 2 else 1
                rest = A[:a] + A[a + 1:b] + A[b + 1:]
                for m, cval in L._nonzero(A[a], A[b]):
                    s, J = sort_sign((m,) + rest)
                    if s:
                        row[J] += sgn * s * cval
        row = {J: v for J, v in row.items() if v}
        if row:
            rows[A] = row
    L._cache[key] = rows
    return rows


def ce_d(L: LieAlgebra, alpha: AltForm) -> AltForm:
    """Chevalley-Eilenberg differential of a left-invariant form."""
    if alpha.dim != L.dim:
        raise DimensionError("form and algebra dimensions differ")
    if alpha.degree >= L.dim:
        raise DimensionError(f"degree {alpha.degree} form has no differential on a {L.dim}-dim algebra")
    out = {}
    coeffs = alpha.coeffs
    for A, row in _d_matrix(L, alpha.degree).items():
        s = ZERO
        for J, x in row.items():
            a = coeffs.get(J)
            if a:
                s += x * a
        if s:
            out[A] = s
    return AltForm(L.dim, alpha.degree + 1, out)


def wedge(alpha: AltForm, beta: AltForm) -> AltForm:
    if alpha.dim != beta.dim:
        raise DimensionError("forms on different spaces")
    deg = alpha.degree + beta.degree
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    if deg <= alpha.dim:
        for I, a in alpha.coeffs.items():
            for K, b in beta.coeffs.items():
                s, M = sort_sign(I + K)
                if s:
                    acc[M] += s * a * b
    return AltForm(alpha.dim, deg, acc)


def wedge_power(alpha: AltForm, k: int) -> AltForm:
    out = AltForm(alpha.dim, 0, {(): 1})
    for _ in range(k):
        out = wedge(out, alpha)
    return out


def interior(alpha: AltForm, X: Sequence) -> AltForm:
    """``(i_X a)(Y_1..) = a(X, Y_1..)``."""
    if alpha.degree < 1:
        raise DimensionError("cannot contract a 0-form")
    if len(X) != alpha.dim:
        raise DimensionError("vector has the wrong length")
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    for I, a in alpha.coeffs.items():
        for p, m in enumerate(I):
            x = X[m]
            if x:
                acc[I[:p] + I[p + 1:]] += (-1) ** p * x * a
    return AltForm(alpha.dim, alpha.degree - 1, acc)


def pull_derivation(D: R.Mat, alpha: AltForm) -> AltForm:
    """``(D* a)(X_1..X_k) = sum_i a(X_1.., D X_i, ..X_k)``."""
    n = alpha.dim
    if R.shape(D) != (n, n):
        raise DimensionError("derivation and form dimensions differ")
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    for A in combinations(range(n), alpha.degree):
        total = ZERO
        for i, ai in enumerate(A):
            for b in range(n):
                d = D[b][ai]
                if d:
                    total += d * alpha.at(A[:i] + (b,) + A[i + 1:])
        if total:
            acc[A] = total
    return AltForm(n, alpha.degree, acc)


def pullback(alpha: AltForm, P: R.Mat) -> AltForm:
    """Components of ``alpha`` in the basis given by the columns of ``P``."""
    n = alpha.dim
    cols = [tuple(P[r][j] for r in range(n)) for j in range(len(P[0]))]
    m = len(cols)
    out = {}
    for A in combinations(range(m), alpha.degree):
        v = alpha(*(cols[a] for a in A))
        if v:
            out[A] = v
    return AltForm(m, alpha.degree, out)


def restrict(alpha: AltForm, vectors: Sequence[Sequence]) -> AltForm:
    """Components of ``alpha`` on the listed vectors (a sub-basis)."""
    m = len(vectors)
    out = {}
    for A in combinations(range(m), alpha.degree):
        v = alpha(*(vectors[a] for a in A))
        if v:
            out[A] = v
    return AltForm(m, alpha.degree, out)


def extend_by_zero(alpha: AltForm, dim: int, offset: int) -> AltForm:
    """Push a form on ``R^m`` into ``R^dim`` shifting indices by ``offset``."""
    return AltForm(dim, alpha.degree, {tuple(i + offset for i in k): v for k, v in alpha.coeffs.items()})


# ---------------------------------------------------------------------------
# Invariants


def _bracket_span(L: LieAlgebra, A: Sequence, B: Sequence) -> list:
    return R.row_basis(L.bracket(a, b) for a in A for b in B)


@dataclass
class StructureInvariants:
    derived_series: list[int]
    lower_central_series: list[int]
    solvable: bool
    nilpotent: bool
    unimodular: bool
    killing_form: R.Mat
    killing_inertia: tuple[int, int, int]
    semisimple: bool
    ad_traces: tuple = ()

    @property
    def nilpotency_length(self) -> int | None:
        """Number of steps for the lower central series to reach 0."""
        return len(self.lower_central_series) - 1 if self.nilpotent else None

    def to_dict(self) -> dict:
        return {
            "derived_series": self.derived_series,
            "lower_central_series": self.lower_central_series,
            "solvable": self.solvable,
            "nilpotent": self.nilpotent,
            "unimodular": self.unimodular,
            "semisimple": self.semisimple,
            "killing_form": [[str(x) for x in r] for r in self.killing_form],
            "killing_inertia": list(self.killing_inertia),
            "ad_traces": [str(x) for x in self.ad_traces],
        }


def _series(L: LieAlgebra, step) -> list[int]:
    n = L.dim
    current = [R.unit(n, i) for i in range(n)]
    dims = [n]
    while current:
        nxt = step(current)
        if len(nxt) == len(current):
            break
        current = nxt
        dims.append(len(current))
    return dims


def structure_invariants(L: LieAlgebra) -> StructureInvariants:
    n = L.dim
    full = [R.unit(n, i) for i in range(n)]
    derived = _series(L, lambda S: _bracket_span(L, S, S))
    lower = _series(L, lambda S: _bracket_span(L, full, S))
    ads = [L.ad_basis(i) for i in range(n)]
    traces = tuple(R.trace(a) for a in ads)
    killing = tuple(tuple(R.trace(R.matmul(ads[i], ads[j])) for j in range(n)) for i in range(n))
    return StructureInvariants(
        derived_series=derived,
        lower_central_series=lower,
        solvable=derived[-1] == 0,
        nilpotent=lower[-1] == 0,
        unimodular=all(t == 0 for t in traces),
        killing_form=killing,
        killing_inertia=R.inertia(killing),
        semisimple=n > 0 and R.det(killing) != 0,
        ad_traces=traces,
    )

"""Exact dense linear algebra over the rationals.

Matrices are tuples of row tuples of :class:`fractions.Fraction`.  Vectors are
plain tuples.  Everything here is small-dimensional (n <= 16) so no attempt is
made at fraction-free elimination.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple
Mat = tuple


def Q(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused on purpose: they would silently leak rounding into
    identities that are checked exactly.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def fmt(x: Fraction) -> str:
    return str(x)


def vec(xs: Iterable) -> Vec:
    return tuple(Q(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Mat:
    out = tuple(tuple(Q(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def zeros(n: int, m: int | None = None) -> Mat:
    m = n if m is None else m
    return tuple((Fraction(0),) * m for _ in range(n))


def identity(n: int) -> Mat:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def unit(n: int, i: int) -> Vec:
    return tuple(Fraction(int(k == i)) for k in range(n))


def diag(entries: Sequence) -> Mat:
    n = len(entries)
    return tuple(tuple(Q(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def block_diag(*blocks: Mat) -> Mat:
    n = sum(len(b) for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for r in b:
            rows.append((Fraction(0),) * offset + tuple(r) + (Fraction(0),) * (n - offset - len(r)))
        offset += len(b)
    return tuple(rows)


def shape(a: Mat) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def matmul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a)


def matvec(a: Mat, v: Vec) -> Vec:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def scale(c, a: Mat) -> Mat:
    c = Q(c)
    return tuple(tuple(c * x for x in r) for r in a)


def commutator(a: Mat, b: Mat) -> Mat:
    return sub(matmul(a, b), matmul(b, a))


def trace(a: Mat) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def is_zero(a: Mat) -> bool:
    return all(x == 0 for r in a for x in r)


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vscale(c, u: Vec) -> Vec:
    c = Q(c)
    return tuple(c * x for x in u)


def dot(u: Vec, v: Vec) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def bilinear(b: Mat, u: Vec, v: Vec) -> Fraction:
    return dot(u, matvec(b, v))


def rref(a: Mat) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Q(x) for x in r] for r in a]
    rows, cols = shape(a)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Mat) -> int:
    return len(rref(a)[1]) if a else 0


def row_basis(vectors: Iterable[Vec]) -> list[Vec]:
    """A canonical (RREF) basis of the span of ``vectors``."""
    vs = [tuple(v) for v in vectors]
    if not vs:
        return []
    m, piv = rref(tuple(vs))
    return [tuple(m[i]) for i in range(len(piv))]


def nullspace(a: Mat) -> list[Vec]:
    rows, cols = shape(a)
    m, piv = rref(a)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -m[i][f]
        basis.append(tuple(v))
    return basis


def det(a: Mat) -> Fraction:
    n = len(a)
    m = [[Q(x) for x in r] for r in a]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def inverse(a: Mat) -> Mat:
    n = len(a)
    aug = tuple(tuple(r) + identity(n)[i] for i, r in enumerate(a))
    m, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(m[i][n:]) for i in range(n))


def solve(a: Mat, b: Vec) -> Vec:
    """Unique solution of ``a x = b`` for square nonsingular ``a``."""
    return matvec(inverse(a), b)


def leading_minors(a: Mat) -> list[Fraction]:
    return [det(tuple(r[:k] for r in a[:k])) for k in range(1, len(a) + 1)]


def is_symmetric(a: Mat) -> bool:
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(i))


def is_positive_definite(a: Mat) -> bool:
    """Sylvester's criterion, exact."""
    return is_symmetric(a) and all(m > 0 for m in leading_minors(a))


def inertia(a: Mat) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric matrix, by exact
    congruence diagonalisation."""
    n = len(a)
    m = [[Q(x) for x in r] for r in a]
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if m[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i < j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j: makes m[i][i] = 2 m[i][j] != 0
            for r in range(n):
                m[r][i] += m[r][j]
            for c in range(n):
                m[i][c] += m[j][c]
            k = i
        piv = m[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for i in active:
            f = m[i][k] / piv
            if f:
                for c in range(n):
                    m[i][c] -= f * m[k][c]
                for r in range(n):
                    m[r][i] -= f * m[r][k]
    return pos, neg, n - pos - neg

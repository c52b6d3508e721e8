"""Floating-point checks on the cone of positive definite symmetric matrices.

Points are handled in the coordinates ``(x_ij)_{i <= j}`` ordered row by row,
so for ``n = 2`` the coordinates are ``(x11, x12, x22)``.  Potentials:

* ``log_char``:   ``psi(x) = -((n+1)/2) log det x``
* ``char``:       ``exp(psi)``
* ``cone_power``: ``u = exp(psi)^(-2/N) = det(x)^(2/n)``, homogeneous of degree 2

Finite-difference steps are scaled by the smallest eigenvalue of the point, so
a check at ``q x`` uses ``q`` times the step used at ``x``.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .report import DomainError, PreconditionError

KINDS = ("log_char", "char", "cone_power")
DEFAULT_STEP = 1e-4
MIN_STEP, MAX_STEP = 1e-6, 1e-2
SYM_TOL = 1e-12
# balances O(h^2) truncation against rounding in psi for the congruence check
INVARIANCE_STEP = 2e-4


def cone_dim(n: int) -> int:
    return n * (n + 1) // 2


def coord_index(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


def to_coords(x: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    return np.array([x[i, j] for i, j in coord_index(n)])


def from_coords(c: Sequence[float], n: int) -> np.ndarray:
    x = np.zeros((n, n))
    for v, (i, j) in zip(c, coord_index(n)):
        x[i, j] = x[j, i] = v
    return x


def coord_direction(n: int, a: int) -> np.ndarray:
    """Symmetric matrix of the a-th coordinate direction."""
    e = np.zeros(cone_dim(n))
    e[a] = 1.0
    return from_coords(e, n)


def _is_pd(x: np.ndarray) -> bool:
    try:
        np.linalg.cholesky(x)
    except np.linalg.LinAlgError:
        return False
    return True


@dataclass(frozen=True)
class ConePoint:
    x: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        if x.ndim != 2 or x.shape[0] != x.shape[1]:
            raise DomainError("cone point must be a square matrix")
        if np.max(np.abs(x - x.T), initial=0.0) > SYM_TOL:
            raise DomainError("cone point is not symmetric")
        x = (x + x.T) / 2
        if not _is_pd(x):
            raise DomainError("cone point is not positive definite")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def coords(self) -> np.ndarray:
        return to_coords(self.x)

    def scale(self) -> float:
        return float(np.linalg.eigvalsh(self.x)[0])


@dataclass(frozen=True)
class PotentialSpec:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.n < 1:
            raise ValueError("n must be positive")

    @property
    def N(self) -> int:
        return cone_dim(self.n)


def _logdet(x: np.ndarray) -> float:
    sign, ld = np.linalg.slogdet(x)
    if sign <= 0 or not _is_pd(x):
        raise DomainError("point left the cone")
    return float(ld)


def potential_fn(P: PotentialSpec) -> Callable[[np.ndarray], float]:
    c = (P.n + 1) / 2

    if P.kind == "log_char":
        return lambda x: -c * _logdet(x)
    if P.kind == "char":
        return lambda x: float(np.exp(-c * _logdet(x)))
    return lambda x: float(np.exp((2 / P.n) * _logdet(x)))


def potential(P: PotentialSpec, p: ConePoint) -> float:
    if p.n != P.n:
        raise ValueError("point size does not match the potential")
    return potential_fn(P)(p.x)


def num_hessian(
    f: Callable[[np.ndarray], float],
    p: ConePoint,
    h: float = DEFAULT_STEP,
    relative: bool = True,
    shrink: int = 8,
) -> np.ndarray:
    """Central second differences of ``f`` in cone coordinates.

    With ``relative`` the step is ``h`` times the smallest eigenvalue of
    ``p``.  If an evaluation leaves the cone the step is halved up to
    ``shrink`` times before a :class:`DomainError` is raised.
    """
    if not MIN_STEP <= h <= MAX_STEP:
        raise ValueError(f"step must lie in [{MIN_STEP}, {MAX_STEP}]")
    step = h * p.scale() if relative else h
    for _ in range(shrink + 1):
        try:
            return _central(f, p.x, step)
        except DomainError:
            step /= 2
    raise DomainError("finite-difference stencil leaves the cone")


def _central(f, x: np.ndarray, h: float) -> np.ndarray:
    n = x.shape[0]
    N = cone_dim(n)
    dirs = [coord_direction(n, a) * h for a in range(N)]
    f0 = f(x)
    H = np.empty((N, N))
    for a in range(N):
        H[a, a] = (f(x + dirs[a]) - 2 * f0 + f(x - dirs[a])) / h**2
        for b in range(a):
            pp = f(x + dirs[a] + dirs[b])
            pm = f(x + dirs[a] - dirs[b])
            mp = f(x - dirs[a] + dirs[b])
            mm = f(x - dirs[a] - dirs[b])
            H[a, b] = H[b, a] = (pp - pm - mp + mm) / (4 * h**2)
    return H


def exact_log_char_hessian(p: ConePoint) -> np.ndarray:
    """Closed form ``((n+1)/2) tr(x^-1 U_a x^-1 U_b)``."""
    n = p.n
    xi = np.linalg.inv(p.x)
    U = [xi @ coord_direction(n, a) for a in range(cone_dim(n))]
    c = (n + 1) / 2
    return np.array([[c * np.trace(A @ B) for B in U] for A in U])


def congruence_matrix(s: np.ndarray) -> np.ndarray:
    """Matrix of ``U -> s U s^T`` on cone coordinates."""
    n = s.shape[0]
    cols = [to_coords(s @ coord_direction(n, a) @ s.T) for a in range(cone_dim(n))]
    return np.array(cols).T


def random_point(rng: np.random.Generator, n: int) -> ConePoint:
    a = rng.normal(size=(n, n))
    return ConePoint(a @ a.T / n + np.eye(n))


def random_triangular(rng: np.random.Generator, n: int) -> np.ndarray:
    s = np.tril(rng.uniform(-0.5, 0.5, size=(n, n)), -1)
    s[np.diag_indices(n)] = rng.uniform(0.5, 1.5, size=n)
    return s


def _rel(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)) / np.max(np.abs(b)))


@dataclass
class NumReport:
    name: str
    tol: float
    max_error: float = 0.0
    samples: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.max_error <= self.tol) and all(s.get("ok", True) for s in self.samples)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def __bool__(self) -> bool:
        return self.passed

    def record(self, point: ConePoint, metric: np.ndarray, error: float, **kw) -> None:
        self.max_error = max(self.max_error, error)
        row = {"point": point.coords.tolist(), "metric": np.asarray(metric).tolist(), "error": error}
        row.update(kw)
        self.samples.append(row)

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "verdict": self.verdict,
            "tol": self.tol,
            "max_error": self.max_error,
            **self.extra,
            "samples": self.samples,
        }

    def render(self) -> str:
        lines = [f"{self.name}: {self.verdict} (max error {self.max_error:.3e}, tol {self.tol:.1e})"]
        for k, v in self.extra.items():
            lines.append(f"  {k}: {v}")
        for i, s in enumerate(self.samples, 1):
            flags = " ".join(f"{k}={v}" for k, v in s.items() if k not in ("point", "metric", "error"))
            lines.append(f"  sample {i}: error {s['error']:.3e} {flags}".rstrip())
        return "\n".join(lines)


def dump_csv(report: NumReport, path) -> None:
    """One row per sample: point coordinates, flattened metric, error."""
    if not report.samples:
        return
    npt = len(report.samples[0]["point"])
    nm = len(report.samples[0]["metric"])
    header = [f"x{k + 1}" for k in range(npt)]
    header += [f"g{a + 1}_{b + 1}" for a in range(nm) for b in range(nm)]
    header.append("error")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for s in report.samples:
            flat = [v for row in s["metric"] for v in row]
            w.writerow([repr(v) for v in s["point"] + flat + [s["error"]]])


def check_invariance(
    P: PotentialSpec,
    samples: int,
    seed: int = 0,
    tol: float = 1e-6,
    h: float = INVARIANCE_STEP,
    s_matrices: Sequence[np.ndarray] | None = None,
) -> NumReport:
    """``M_s^T H(s x s^T) M_s = H(x)`` for random lower-triangular ``s``."""
    if P.kind != "log_char":
        raise PreconditionError("invariance is checked for log_char only")
    rng = np.random.default_rng(seed)
    f = potential_fn(P)
    rep = NumReport(f"invariance(n={P.n})", tol)
    for k in range(samples):
        p = random_point(rng, P.n)
        s = s_matrices[k] if s_matrices is not None else random_triangular(rng, P.n)
        M = congruence_matrix(s)
        H = num_hessian(f, p, h)
        moved = ConePoint(s @ p.x @ s.T)
        pulled = M.T @ num_hessian(f, moved, h) @ M
        rep.record(p, H, _rel(pulled, H))
    return rep


def _scaling_error(P: PotentialSpec, p: ConePoint, q: float, h: float) -> tuple[float, np.ndarray]:
    f = potential_fn(P)
    H = num_hessian(f, p, h)
    pulled = q**2 * num_hessian(f, ConePoint(q * p.x), h)
    return _rel(pulled, q**2 * H), H


def check_cone_scaling(
    P: PotentialSpec,
    q: float,
    samples: int,
    seed: int = 0,
    tol: float = 1e-8,
    h: float = 1e-3,
) -> NumReport:
    """``lambda_q^* Hess u = q^2 Hess u``, i.e. ``Hess u(q x) = Hess u(x)``.

    The same comparison is run for the other two potentials; ``extra``
    lists which readings satisfy the scaling law.  Positive definiteness of
    ``Hess u`` is recorded per sample, not required.
    """
    if P.kind != "cone_power":
        raise PreconditionError("scaling is checked for cone_power")
    if q <= 0:
        raise ValueError("q must be positive")
    rng = np.random.default_rng(seed)
    rep = NumReport(f"cone_scaling(n={P.n}, q={q:g})", tol)
    others = {k: 0.0 for k in KINDS if k != P.kind}
    for _ in range(samples):
        p = random_point(rng, P.n)
        err, H = _scaling_error(P, p, q, h)
        rep.record(p, H, err, positive_definite=_is_pd((H + H.T) / 2))
        for k in others:
            others[k] = max(others[k], _scaling_error(PotentialSpec(k, P.n), p, q, h)[0])
    errors = {P.kind: rep.max_error, **others}
    rep.extra["reading_errors"] = errors
    rep.extra["readings_satisfying"] = [k for k in KINDS if errors[k] <= tol]
    return rep


def tube_kahler(P: PotentialSpec, y: ConePoint, real_part=None, h: float = DEFAULT_STEP) -> np.ndarray:
    """Complex Hessian ``d^2 F / dz_a dzbar_b`` of ``F(x + i y) = 4 psi(y)``.

    All four real blocks are differenced; the ``x`` blocks vanish because
    ``F`` ignores the real part.
    """
    if P.kind != "log_char":
        raise PreconditionError("tube_kahler needs the log_char potential")
    N = P.N
    x0 = np.zeros(N) if real_part is None else np.asarray(real_part, dtype=float)
    psi = potential_fn(P)

    def F(z: np.ndarray) -> float:
        return 4 * psi(from_coords(z[N:], P.n))

    base = np.concatenate([x0, y.coords])
    step = h * y.scale()
    full = _central_flat(F, base, step)
    xx, yy = full[:N, :N], full[N:, N:]
    xy, yx = full[:N, N:], full[N:, :N]
    return (xx + yy + 1j * (xy - yx)) / 4


def _central_flat(F, z: np.ndarray, h: float) -> np.ndarray:
    m = len(z)
    E = np.eye(m) * h
    f0 = F(z)
    H = np.empty((m, m))
    for a in range(m):
        H[a, a] = (F(z + E[a]) - 2 * f0 + F(z - E[a])) / h**2
        for b in range(a):
            H[a, b] = H[b, a] = (
                F(z + E[a] + E[b]) - F(z + E[a] - E[b]) - F(z - E[a] + E[b]) + F(z - E[a] - E[b])
            ) / (4 * h**2)
    return H


def check_tube(P: PotentialSpec, samples: int, seed: int = 0, tol: float = 1e-6, h: float = DEFAULT_STEP) -> NumReport:
    """Tube-domain complex Hessian against the closed-form Hessian of psi."""
    rng = np.random.default_rng(seed)
    rep = NumReport(f"tube_kahler(n={P.n})", tol)
    for _ in range(samples):
        y = random_point(rng, P.n)
        re = rng.normal(size=P.N)
        K = tube_kahler(P, y, re, h)
        exact = exact_log_char_hessian(y)
        err = float(np.max(np.abs(K - exact)) / np.max(np.abs(exact)))
        herm = bool(np.allclose(K, K.conj().T, atol=1e-12))
        pd = _is_pd((K.real + K.real.T) / 2) and not np.any(K.imag)
        rep.record(y, K.real, err, hermitian=herm, positive_definite=pd, ok=herm and pd)
    return rep

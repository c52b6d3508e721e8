import random
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

from liegeom import rational as R
from liegeom.liecore import AltForm

DATA = Path(__file__).parent / "data"

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def rand_q(rng: random.Random, span: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_form(rng: random.Random, dim: int, degree: int, density: float = 0.7) -> AltForm:
    coeffs = {}
    for key in combinations(range(dim), degree):
        if rng.random() < density:
            coeffs[key] = rand_q(rng)
    return AltForm(dim, degree, coeffs)


def rand_matrix(rng: random.Random, rows: int, cols: int | None = None) -> R.Mat:
    cols = rows if cols is None else cols
    return tuple(tuple(rand_q(rng) for _ in range(cols)) for _ in range(rows))


@st.composite
def forms(draw, dim: int, degree: int):
    keys = list(combinations(range(dim), degree))
    vals = draw(st.lists(small_rationals, min_size=len(keys), max_size=len(keys)))
    return AltForm(dim, degree, dict(zip(keys, vals)))


def ce_d_oracle(L, alpha: AltForm) -> AltForm:
    """Differential from its defining sum, evaluated on basis vectors."""
    n, k = L.dim, alpha.degree
    e = [R.unit(n, i) for i in range(n)]
    out = {}
    for idx in combinations(range(n), k + 1):
        X = [e[i] for i in idx]
        total = Fraction(0)
        for a in range(k + 1):
            for b in range(a + 1, k + 1):
                rest = [X[t] for t in range(k + 1) if t not in (a, b)]
                total += (-1) ** (a + b) * alpha(L.bracket(X[a], X[b]), *rest)
        out[idx] = total
    return AltForm(n, k + 1, out)


@pytest.fixture
def rng():
    return random.Random(20260927)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and rep.when == "call":
                lines.append((props["criterion"], outcome, props.get("title", ""), props.get("detail", "")))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for num, outcome, title, detail in sorted(lines):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {verdict}  {title}" + (f"  [{detail}]" if detail else ""))

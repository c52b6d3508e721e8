"""JSON bundle files.

Indices in files are 1-based and every scalar is a string (``"3"``,
``"-1/2"``) or a JSON integer; floats are rejected.  :func:`dumps` is
canonical, so exporting a parsed file reproduces it byte for byte.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import rational as R
from .affine import Connection
from .catalog import Bundle
from .liecore import AltForm, LieAlgebra
from .report import LieGeomError

FIELDS = ("dim", "basis", "brackets", "connection", "forms", "linmaps", "metrics", "vectors", "expected", "meta")
REQUIRED = ("dim", "basis")


class BundleParseError(LieGeomError, ValueError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


def _scalar(v: Any, loc: str) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise BundleParseError(loc, f"expected an integer or 'p/q' string, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        if any(ch in v for ch in ".eE"):
            raise BundleParseError(loc, f"decimal notation is not allowed: {v!r}")
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise BundleParseError(loc, f"not an exact rational: {v!r}") from None
    raise BundleParseError(loc, f"expected a scalar, got {type(v).__name__}")


def _fmt(x: Fraction) -> str:
    return str(Fraction(x))


def _index(s: str, dim: int, loc: str) -> int:
    try:
        k = int(s)
    except ValueError:
        raise BundleParseError(loc, f"bad index {s!r}") from None
    if not 1 <= k <= dim:
        raise BundleParseError(loc, f"index {k} outside 1..{dim}")
    return k - 1


def _expect(v: Any, kind: type, loc: str):
    if not isinstance(v, kind) or isinstance(v, bool):
        raise BundleParseError(loc, f"expected {kind.__name__}, got {type(v).__name__}")
    return v


def _vector(v: Any, n: int, loc: str) -> tuple:
    _expect(v, list, loc)
    if len(v) != n:
        raise BundleParseError(loc, f"expected {n} entries, got {len(v)}")
    return tuple(_scalar(x, f"{loc}[{k}]") for k, x in enumerate(v))


def _matrix(v: Any, loc: str, rows: int | None = None, cols: int | None = None) -> R.Mat:
    _expect(v, list, loc)
    if rows is not None and len(v) != rows:
        raise BundleParseError(loc, f"expected {rows} rows, got {len(v)}")
    if not v:
        raise BundleParseError(loc, "empty matrix")
    width = cols if cols is not None else len(_expect(v[0], list, f"{loc}[0]"))
    return tuple(_vector(r, width, f"{loc}[{k}]") for k, r in enumerate(v))


def _form(v: Any, dim: int, loc: str) -> AltForm:
    _expect(v, dict, loc)
    extra = set(v) - {"degree", "coeffs"}
    if extra:
        raise BundleParseError(loc, f"unknown field {sorted(extra)[0]!r}")
    for key in ("degree", "coeffs"):
        if key not in v:
            raise BundleParseError(loc, f"missing field {key!r}")
    deg = _expect(v["degree"], int, f"{loc}.degree")
    if not 0 <= deg <= dim:
        raise BundleParseError(f"{loc}.degree", f"degree {deg} outside 0..{dim}")
    coeffs = {}
    for key, val in _expect(v["coeffs"], dict, f"{loc}.coeffs").items():
        kl = f"{loc}.coeffs[{key!r}]"
        parts = key.split(",") if key else []
        if len(parts) != deg:
            raise BundleParseError(kl, f"expected {deg} indices")
        idx = tuple(_index(p, dim, kl) for p in parts)
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise BundleParseError(kl, "indices must be strictly increasing")
        coeffs[idx] = _scalar(val, kl)
    return AltForm(dim, deg, coeffs)


def from_document(doc: Any) -> Bundle:
    _expect(doc, dict, "$")
    for key in doc:
        if key not in FIELDS:
            raise BundleParseError(f"$.{key}", "unknown field")
    for key in REQUIRED:
        if key not in doc:
            raise BundleParseError("$", f"missing field {key!r}")
    dim = _expect(doc["dim"], int, "$.dim")
    if dim < 1:
        raise BundleParseError("$.dim", "dimension must be positive")
    basis = _expect(doc["basis"], list, "$.basis")
    if len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise BundleParseError("$.basis", f"expected {dim} strings")
    if len(set(basis)) != dim:
        raise BundleParseError("$.basis", "labels must be distinct")

    c = [[(Fraction(0),) * dim for _ in range(dim)] for _ in range(dim)]
    for key, val in _expect(doc.get("brackets", {}), dict, "$.brackets").items():
        loc = f"$.brackets[{key!r}]"
        parts = key.split(",")
        if len(parts) != 2:
            raise BundleParseError(loc, "key must be 'i,j'")
        i, j = (_index(p, dim, loc) for p in parts)
        if i >= j:
            raise BundleParseError(loc, "key must satisfy i < j")
        v = _vector(val, dim, loc)
        c[i][j] = v
        c[j][i] = tuple(-x for x in v)
    try:
        L = LieAlgebra(c, tuple(basis))
    except (ValueError, LieGeomError) as exc:
        raise BundleParseError("$.brackets", str(exc)) from None

    conn = None
    if "connection" in doc:
        loc = "$.connection"
        raw = _expect(doc["connection"], list, loc)
        if len(raw) != dim:
            raise BundleParseError(loc, f"expected {dim} blocks")
        gamma = [_matrix(block, f"{loc}[{i}]", dim, dim) for i, block in enumerate(raw)]
        conn = Connection(L, gamma)

    def table(name: str, parse):
        return {
            k: parse(v, f"$.{name}[{k!r}]")
            for k, v in _expect(doc.get(name, {}), dict, f"$.{name}").items()
        }

    forms = table("forms", lambda v, loc: _form(v, dim, loc))
    linmaps = table("linmaps", lambda v, loc: _matrix(v, loc))
    metrics = table("metrics", lambda v, loc: _matrix(v, loc))
    vectors = table("vectors", lambda v, loc: _vector(v, dim, loc))
    expected = _expect(doc.get("expected", {}), dict, "$.expected")
    for k, v in expected.items():
        if v not in ("pass", "fail", True, False):
            raise BundleParseError(f"$.expected[{k!r}]", "value must be 'pass', 'fail', true or false")
    meta = _expect(doc.get("meta", {}), dict, "$.meta")
    name = meta.get("name", "") if isinstance(meta.get("name", ""), str) else ""
    meta = {k: v for k, v in meta.items() if k != "name"}
    return Bundle(name, L, conn, forms, linmaps, metrics, vectors, dict(expected), meta)


def loads(text: str) -> Bundle:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return from_document(doc)


def load(path) -> Bundle:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _mat_doc(M) -> list:
    return [[_fmt(x) for x in row] for row in M]


def to_document(b: Bundle) -> dict:
    if b.algebra is None:
        raise LieGeomError("a bundle file needs an algebra")
    L = b.algebra
    n = L.dim
    doc: dict = {"dim": n, "basis": list(L.labels)}
    doc["brackets"] = {
        f"{i + 1},{j + 1}": [_fmt(x) for x in L.c[i][j]]
        for i in range(n)
        for j in range(i + 1, n)
        if any(L.c[i][j])
    }
    if b.connection is not None:
        doc["connection"] = [_mat_doc(block) for block in b.connection.gamma]
    if b.forms:
        doc["forms"] = {
            k: {
                "degree": f.degree,
                "coeffs": {",".join(str(i + 1) for i in key): _fmt(v) for key, v in sorted(f.coeffs.items())},
            }
            for k, f in sorted(b.forms.items())
        }
    for name in ("linmaps", "metrics"):
        tab = getattr(b, name)
        if tab:
            doc[name] = {k: _mat_doc(M) for k, M in sorted(tab.items())}
    if b.vectors:
        doc["vectors"] = {k: [_fmt(x) for x in v] for k, v in sorted(b.vectors.items())}
    if b.expected:
        doc["expected"] = dict(sorted(b.expected.items()))
    meta = dict(b.meta)
    if b.name:
        meta["name"] = b.name
    if meta:
        doc["meta"] = dict(sorted(meta.items()))
    return doc


def _encode(obj, level: int = 0) -> str:
    """JSON with lists of scalars kept on one line."""
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_encode(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if all(not isinstance(x, (list, dict)) for x in obj):
            return "[" + ", ".join(json.dumps(x, ensure_ascii=False) for x in obj) + "]"
        return "[\n" + ",\n".join(inner + _encode(x, level + 1) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)


def dumps(b: Bundle) -> str:
    return _encode(to_document(b)) + "\n"


def dump(b: Bundle, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(b))

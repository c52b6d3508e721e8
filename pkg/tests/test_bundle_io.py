import json
from fractions import Fraction

import pytest
from hypothesis import given, settings

from liegeom import bundle_io
from liegeom import rational as R
from liegeom.bundle_io import BundleParseError, dumps, loads
from liegeom.catalog import Bundle, golden_path, load_example, standard_names
from liegeom.liecore import AltForm, abelian

from conftest import DATA, forms

MINIMAL = {"dim": 2, "basis": ["E", "X"], "brackets": {"1,2": ["0", "1"]}}


def same_data(a: Bundle, b: Bundle) -> bool:
    return (
        a.name == b.name
        and a.algebra.labels == b.algebra.labels
        and a.algebra.same_brackets(b.algebra)
        and (a.connection is None) == (b.connection is None)
        and (a.connection is None or a.connection.gamma == b.connection.gamma)
        and (a.forms, a.linmaps, a.metrics, a.vectors, a.expected, a.meta)
        == (b.forms, b.linmaps, b.metrics, b.vectors, b.expected, b.meta)
    )


@pytest.mark.parametrize("name", standard_names())
def test_golden_byte_identical(name):
    text = golden_path(name).read_text(encoding="utf-8")
    assert dumps(load_example(name)) == text
    assert dumps(loads(text)) == text


@pytest.mark.parametrize("name", standard_names())
def test_parse_is_identity_on_data(name):
    b = load_example(name)
    assert same_data(loads(dumps(b)), b)


def test_file_round_trip(tmp_path):
    b = load_example("quaternion_lsa")
    path = tmp_path / "q.json"
    bundle_io.dump(b, path)
    assert same_data(bundle_io.load(path), b)


def test_minimal_document():
    b = bundle_io.from_document(MINIMAL)
    assert b.algebra.c[0][1] == (0, 1) and b.algebra.c[1][0] == (0, -1)
    assert b.connection is None and b.name == ""


def test_integers_and_fractions_accepted():
    doc = dict(MINIMAL, metrics={"g": [[2, "1/2"], ["1/2", "-3"]]})
    assert bundle_io.from_document(doc).metric("g") == R.mat([[2, Fraction(1, 2)], [Fraction(1, 2), -3]])


@settings(max_examples=30, deadline=None)
@given(forms(4, 2))
def test_random_forms_round_trip(w):
    b = Bundle("w", abelian(4), forms={"w": w})
    assert loads(dumps(b)).form("w") == w


def error(doc) -> BundleParseError:
    with pytest.raises(BundleParseError) as exc:
        bundle_io.from_document(doc)
    return exc.value


@pytest.mark.parametrize(
    "patch,location",
    [
        ({"metrics": {"g": [["1.5", "0"], ["0", "1"]]}}, "$.metrics['g'][0][0]"),
        ({"metrics": {"g": [[1.5, 0], [0, 1]]}}, "$.metrics['g'][0][0]"),
        ({"vectors": {"E": ["1e3", "0"]}}, "$.vectors['E'][0]"),
        ({"extra": 1}, "$.extra"),
        ({"brackets": {"1,3": ["0", "1"]}}, "$.brackets['1,3']"),
        ({"brackets": {"2,1": ["0", "1"]}}, "$.brackets['2,1']"),
        ({"brackets": {"1,2": ["0"]}}, "$.brackets['1,2']"),
        ({"forms": {"w": {"degree": 2, "coeffs": {"2,1": "1"}}}}, "$.forms['w'].coeffs['2,1']"),
        ({"forms": {"w": {"degree": 2}}}, "$.forms['w']"),
        ({"forms": {"w": {"degree": 3, "coeffs": {}}}}, "$.forms['w'].degree"),
        ({"connection": [[["0", "0"], ["0", "0"]]]}, "$.connection"),
        ({"expected": {"validate_lie": "maybe"}}, "$.expected['validate_lie']"),
        ({"dim": 3}, "$.basis"),
        ({"basis": ["E", "E"]}, "$.basis"),
    ],
)
def test_parse_error_locations(patch, location):
    assert error(dict(MINIMAL, **patch)).location == location


def test_missing_required():
    assert "dim" in str(error({"basis": ["a"]}))


def test_json_syntax_error_location():
    with pytest.raises(BundleParseError) as exc:
        loads('{\n  "dim": 2,\n  "basis": ["E" "X"]\n}')
    assert exc.value.location == "line 3 column 17"


def test_failing_fixture_parses():
    b = bundle_io.load(DATA / "abelian4_lcs_fail.bundle.json")
    assert b.algebra.dim == 4
    assert b.form("Omega") == AltForm.basis(4, 0, 1) + AltForm.basis(4, 2, 3)


def test_output_is_sorted_json():
    doc = json.loads(dumps(load_example("sasaki_h3")))
    for key in ("forms", "linmaps", "expected", "meta"):
        assert list(doc[key]) == sorted(doc[key])

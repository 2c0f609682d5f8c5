import os
import pathlib

import pytest

import spacetime_audit as sa

DATA = pathlib.Path(os.environ.get("SPACETIME_DATA_DIR", pathlib.Path(__file__).parents[2] / "data"))


def test_canonical_form():
    assert sa.canonical("x*2 + x") == "3*x"
    assert sa.canonical("(x^2 - 1)/(x - 1)") == "x + 1"


def test_load_example():
    spec = sa.load_spec(str(DATA / "example_10_1.st"))
    assert spec.dim == 4
    assert spec.coords == ["x1", "x2", "x3", "x4"]
    assert spec.metric(2, 2) == "2*x1^2"
    assert spec.has_structure and not spec.has_fluid


def test_analyze_christoffel():
    doc = sa.analyze(DATA / "example_10_1.st")
    gamma = {tuple(c["indices"]): c["value"] for c in doc["tensors"]["christoffel"]}
    assert gamma == {
        (1, 2, 2): "-2*x1",
        (2, 1, 2): "1/x1",
        (2, 3, 3): "-3*x2/(2*x1^2)",
        (3, 2, 3): "1/x2",
    }


def test_numeric_point():
    spec = sa.load_spec(str(DATA / "example_10_1.st"))
    import json

    doc = json.loads(sa.render(spec, "analyze", numeric="x1=1,x2=1/2,x3=0,x4=0"))
    ricci = doc["tensors"]["ricci"]
    assert ricci == [{"indices": [1, 2], "value": "-2"}]


def test_soliton_check():
    doc = sa.check(DATA / "dust_soliton.st", "soliton")
    assert doc["checks"][0]["outcome"] == "steady"


def test_errors():
    with pytest.raises(sa.ParseError, match="metric not symmetric"):
        sa.parse_spec("dim 2\ncoords x y\ng 1 2 = x\ng 2 1 = y\n")
    spec = sa.parse_spec("dim 2\ncoords x y\ng 1 1 = 1\ng 2 2 = 1\n", "flat")
    with pytest.raises(sa.InputError):
        sa.check(spec, "no-such-check")
    with pytest.raises(sa.Error):
        sa.check(spec, "mqe")
    assert "soliton" in sa.known_checks()

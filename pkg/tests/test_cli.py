import io
import json
import shutil
import subprocess
import sys

import pytest

from hyperadj.cli import main

from helpers import FIXTURES, printed_matrix


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def fx(name):
    return str(FIXTURES / name)


def write_problem(tmp_path, text, **extra):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"variables": ["x", "y", "z"], "hypersurface": text, **extra}))
    return str(p)


def test_order():
    assert call("order", fx("fixture.json")) == (0, "phi1: 9\n", "")


def test_adjoints_fixture():
    code, out, _ = call("adjoints", fx("fixture_by_path.json"))
    assert code == 0
    assert out.split() == [
        "y^3", "x*y*z", "y^2*z", "x*z^2", "y*z^2", "z^3", "y^2*w",
        "x*z*w", "y*z*w", "z^2*w", "y*w^2", "z*w^2", "w^3",
    ]


def test_adjoints_is_deterministic():
    runs = [call("adjoints", fx("trinodal_quartic.json"), "--n", "1")[1] for _ in range(2)]
    assert runs[0] == runs[1] == "x*y\nx*z\ny*z\n"


def test_validate():
    code, out, _ = call("validate", fx("fixture.json"))
    assert code == 0
    assert "divisor phi1" in out and "status: pass" in out


def test_validate_failure(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({
        "variables": ["x", "y", "z", "w"],
        "hypersurface": "x*y*z - w^3",
        "divisors": [fx("fixture_divisor.json")],
    }))
    code, out, err = call("validate", str(p))
    assert code == 1
    assert "status: fail" in out
    assert err.startswith("error: ValidationFailed:")


def test_dump_matrix(tmp_path):
    dest = tmp_path / "m.txt"
    assert call("dump-matrix", fx("fixture.json"), "--out", str(dest))[0] == 0
    lines = dest.read_text().splitlines()
    assert lines[0].startswith("columns 20: x^3 x^2*y")
    assert lines[1] == "divisor phi1: alpha=9 bound=9 rows=13"
    rows = [[int(v) for v in ln.split(": ", 1)[1].split()] for ln in lines[2:]]
    assert rows == printed_matrix()
    code, out, _ = call("dump-matrix", fx("fixture.json"))
    assert out == dest.read_text()


def test_genus():
    assert call("genus", fx("nodal_cubic.json"))[1] == "0\n"
    assert call("genus", fx("fermat_quartic.json"))[1] == "3\n"


def test_puiseux_then_adjoints(tmp_path):
    d = tmp_path / "divs"
    code, out, _ = call("puiseux", fx("trinodal_quartic.json"), "--out", str(d))
    assert code == 0 and len(out.splitlines()) == len(list(d.glob("*.json")))
    code, out, _ = call("adjoints", fx("trinodal_quartic.json"), "--n", "1", "--divisors", str(d))
    assert out == "x*y\nx*z\ny*z\n"
    code, text, _ = call("puiseux", fx("cuspidal_cubic.json"))
    assert json.loads(text)[0]["images"] == ["t^2", "t^3", "1"]


def test_options_override(tmp_path):
    p = write_problem(tmp_path, "x^4 + y^4 + z^4")
    assert call("adjoints", p)[1] == "x\ny\nz\n"
    assert len(call("adjoints", p, "--m", "2")[1].split()) == 6
    assert call("adjoints", p, "--n", "-1")[1] == "1\n"


@pytest.mark.parametrize(
    "payload,code,kind",
    [
        ({"variables": ["x", "y", "z"], "hypersurface": "x^2 + +"}, 2, "SyntaxError"),
        ({"variables": ["x", "y", "z"], "hypersurface": "x*y - z^2", "bogus": 1}, 2, "FormatError"),
        ({"variables": ["x", "y", "z"], "hypersurface": "x*y - z"}, 2, "NonHomogeneous"),
        ({"variables": ["x", "y", "z", "w"], "hypersurface": "x*y*z - w^3"}, 2, "InputError"),
    ],
)
def test_error_exit_codes(tmp_path, payload, code, kind):
    p = tmp_path / "e.json"
    p.write_text(json.dumps(payload))
    got, out, err = call("adjoints", str(p))
    assert got == code
    assert err.startswith(f"error: {kind}:")
    assert out == ""


def test_missing_file_and_usage(tmp_path):
    assert call("order", str(tmp_path / "nope.json"))[0] == 2
    assert call("frobnicate")[0] == 2


def test_short_image_exits_with_precision_code(tmp_path):
    data = json.loads((FIXTURES / "fixture_divisor.json").read_text())
    data["images"][3] = "-8/s*alpha*t^3 + O(t^5)"
    data.pop("adjoint_order")
    p = tmp_path / "short.json"
    p.write_text(json.dumps(data))
    code, _, err = call("adjoints", fx("fixture.json"), "--divisors", str(p))
    assert code == 3
    assert err.startswith("error: PrecisionExhausted:")


@pytest.mark.skipif(shutil.which("hyperadj") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["hyperadj", "order", fx("fixture.json")], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "phi1: 9\n"


def test_module_entry():
    res = subprocess.run([sys.executable, "-m", "hyperadj.cli", "genus", fx("cuspidal_cubic.json")],
                         capture_output=True, text=True)
    assert res.stdout == "0\n"

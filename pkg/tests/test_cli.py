import io
import json

from gcontact.cli import main


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def test_build_small():
    code, out = run(["build", "G2"])
    assert code == 0
    assert "dim g = 14" in out
    code, out = run(["build", "B4"])
    assert code == 0
    assert "dim g = 36" in out


def test_build_unknown_type():
    code, out = run(["build", "X9"])
    assert code == 2


def test_emit_plane_pair():
    code, out = run(["emit", "E", "G2", "--format", "latex"])
    assert code == 0
    assert "u_{xx} = \\frac{1}{3} u_{yy}^{3}" in out
    code, out = run(["emit", "E", "G2"])
    assert "u_xx = 1/3*uyy^3" in out
    assert "u_xy = 1/2*uyy^2" in out


def test_emit_parametric_json():
    code, out = run(["emit", "F", "D4", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["type"] == "parametric-F"
    assert data["n"] == 4


def test_emit_monge_b3():
    code, out = run(["emit", "monge", "B3"])
    assert code == 0
    assert "Z_x = U_xx*U_xy" in out
    assert "(True)" in out


def test_emit_generators_json():
    code, out = run(["emit", "generators", "F4", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["dim"] == 52
    assert len(data["generators"]) == 52


def test_emit_appendix():
    code, out = run(["emit", "appendix", "D4"])
    assert code == 0
    assert "matches the recorded display: True" in out


def test_emit_V():
    code, out = run(["emit", "V", "G2", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["type"] == "cone-field"


def test_verify_reports_json_schema():
    code, out = run(["verify", "envelope", "G2", "--seed", "3"])
    assert code == 0
    data = json.loads(out)
    assert data["suite"] == "envelope"
    assert data["seed"] == 3
    for c in data["checks"]:
        assert set(c) == {"name", "cite", "expected", "got", "pass"}
        assert c["pass"] is True


def test_verify_unknown_type():
    code, out = run(["verify", "closure", "X9"])
    assert code == 2


def test_verify_txt_format():
    code, out = run(["verify", "eds", "G2", "--format", "txt"])
    assert code == 0
    assert "checks passed" in out

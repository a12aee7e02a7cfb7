import json
import os
import subprocess
import sys

import pytest

from facequotient import gen_lens, gen_platonic_space, gen_trivial_sphere
from facequotient import cli
from facequotient.complex import dumps, loads
from facequotient.report import InvariantViolation, analyze, contract_report, render_text


@pytest.fixture
def scheme_file(tmp_path):
    def write(scheme, name="s.json"):
        path = tmp_path / name
        path.write_text(dumps(scheme))
        return str(path)
    return write


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestReport:
    def test_lens(self):
        rep = analyze(gen_lens(5, 2))
        assert rep["degree"] == 5 and rep["euler_characteristic"] == 1
        assert rep["group"]["h1"]["text"] == "Z_5"
        assert rep["lens_shell"] == 5
        assert rep["manifold"]["is_manifold"]
        assert rep["g2_orbits"]["orbits"] == [[0], [1]]
        assert rep["notes"] == []

    def test_sphere_note(self):
        rep = analyze(gen_trivial_sphere(3))
        assert rep["flat"] and rep["surface"]["kind"] == "disk"
        assert rep["group"]["triviality"] == "trivial"
        assert rep["notes"] and rep["notes"][0]["certified"] is False
        assert "3-sphere" in rep["notes"][0]["claim"]

    def test_contract_quaternion(self):
        rep = contract_report(gen_platonic_space("quaternion"))
        assert rep["deformation"]["nonflat_circles"] == 3
        assert rep["deformation"]["euler_characteristic"] == 1
        assert rep["deformation"]["group"]["h1"]["text"] == "Z_2 ⊕ Z_2"

    def test_contract_lens(self):
        rep = contract_report(gen_lens(5, 2))
        assert rep["deformation"]["nonflat_circles"] == 1
        assert rep["deformation"]["quotient"] == rep["quotient"]

    def test_text(self):
        text = render_text(contract_report(gen_lens(5, 2)))
        assert "H1: Z_5" in text and "after contraction:" in text

    def test_deterministic(self):
        a = json.dumps(analyze(gen_platonic_space("poincare")))
        b = json.dumps(analyze(gen_platonic_space("poincare")))
        assert a == b


class TestCli:
    def test_analyze(self, scheme_file, capsys):
        code, out, _ = run(["analyze", scheme_file(gen_lens(5, 2))], capsys)
        assert code == 0
        rep = json.loads(out)
        assert rep["degree"] == 5 and rep["lens_shell"] == 5

    def test_analyze_text_to_file(self, scheme_file, tmp_path, capsys):
        out_path = tmp_path / "r.txt"
        code, out, _ = run(["analyze", scheme_file(gen_trivial_sphere(3)), "--format", "text",
                            "--out", str(out_path)], capsys)
        assert code == 0 and out == ""
        assert "surface: disk" in out_path.read_text()

    def test_malformed(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"vertices": [\n')
        code, _, err = run(["analyze", str(bad)], capsys)
        assert code == 2 and "line" in err

    def test_invalid_scheme(self, tmp_path, capsys):
        data = json.loads(dumps(gen_trivial_sphere(3)))
        data["pairing"] = []
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(data))
        code, _, err = run(["analyze", str(bad)], capsys)
        assert code == 2 and "fixed point" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, _ = run(["analyze", str(tmp_path / "nope.json")], capsys)
        assert code == 2

    def test_internal_violation(self, scheme_file, capsys, monkeypatch):
        def boom(_):
            raise InvariantViolation("p0 is not an involution")
        monkeypatch.setattr(cli, "analyze", boom)
        code, _, err = run(["analyze", scheme_file(gen_lens(5, 2))], capsys)
        assert code == 3 and "invariant" in err

    def test_gen(self, capsys):
        code, out, _ = run(["gen", "lens", "5", "2"], capsys)
        assert code == 0 and loads(out) == gen_lens(5, 2)
        code, out, _ = run(["gen", "random", "--base", "cube", "--seed", "3"], capsys)
        assert code == 0 and loads(out).meta["seed"] == 3
        code, _, _ = run(["gen", "lens", "4", "2"], capsys)
        assert code == 2
        code, _, _ = run(["gen", "sphere"], capsys)
        assert code == 2

    def test_contract(self, scheme_file, capsys):
        path = scheme_file(gen_platonic_space("quaternion"))
        code, out, _ = run(["contract", path, "--strategy", "gamma-tree"], capsys)
        assert code == 0 and json.loads(out)["deformation"]["nonflat_circles"] == 3
        lens = scheme_file(gen_lens(5, 2), "lens.json")
        code, out, _ = run(["contract", lens], capsys)
        assert json.loads(out)["deformation"]["nonflat_circles"] == 1

    def test_contract_explicit(self, scheme_file, capsys):
        code, out, _ = run(["contract", scheme_file(gen_trivial_sphere(3)), "--edges", "0,1"], capsys)
        assert code == 0
        d = json.loads(out)["deformation"]
        assert len(d["quotient"]["vertices"]) == 1 and len(d["log"]) == 2
        code, _, err = run(["contract", scheme_file(gen_lens(5, 2), "l.json"), "--edges", "0"], capsys)
        assert code == 2 and "loop" in err
        code, _, _ = run(["contract", scheme_file(gen_lens(5, 2), "l.json"), "--edges", "x"], capsys)
        assert code == 2

    def test_gamma(self, scheme_file, capsys):
        code, out, _ = run(["gamma", scheme_file(gen_lens(5, 2))], capsys)
        assert code == 0 and 'v0 -- v0 [label="order=5"' in out
        code, out, _ = run(["gamma", scheme_file(gen_trivial_sphere(2), "t.json")], capsys)
        assert out == "graph gamma {\n}\n"

    def test_fuzz(self, tmp_path, capsys):
        code, out, _ = run(["fuzz", "--base", "tetrahedron", "--count", "10", "--seed", "7",
                            "--out", str(tmp_path / "camp")], capsys)
        assert code == 0
        summary = json.loads(out)
        assert summary["count"] == 10 and summary["seed0"] == 7
        assert (tmp_path / "camp" / "campaign.csv").exists()
        assert json.loads((tmp_path / "camp" / "summary.json").read_text()) == summary

    def test_fuzz_zero(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["fuzz", "--count", "0"])
        assert exc.value.code == 2


def test_console_script(tmp_path):
    env = {**os.environ, "FQ_DETERMINISTIC": "1"}
    out = subprocess.run([sys.executable, "-m", "facequotient.cli", "gen", "quaternion"],
                         capture_output=True, text=True, env=env, check=True)
    assert loads(out.stdout) == gen_platonic_space("quaternion")

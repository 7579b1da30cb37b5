import csv
import io
import json
import math
import re
import subprocess
import sys

import pytest

from hyperradial.cli import EVAL_HEADER, main
from hyperradial.eigenfunction import evaluate
from hyperradial.geometry import Space


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestEval:
    def test_trivial_eigenvalue(self, capsys):
        code, out, _ = run(capsys, "eval", "--k", "2", "--rho", "1", "--mu", "0", "--r", "0:5:11")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == EVAL_HEADER == "r,re_phi,im_phi,err"
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 11
        assert all(float(r["re_phi"]) == 1.0 and float(r["im_phi"]) == 0.0 for r in rows)

    def test_matches_library(self, capsys):
        code, out, _ = run(capsys, "eval", "--k", "2", "--rho", "1", "--mu", "1", "--r", "1")
        assert code == 0
        row = list(csv.DictReader(io.StringIO(out)))[0]
        rep = evaluate(Space(2), 1.0, 1.0)
        assert float(row["re_phi"]) == rep.value.real
        assert float(row["im_phi"]) == rep.value.imag
        assert float(row["err"]) == rep.error_estimate

    def test_complex_mu_json(self, capsys):
        code, out, _ = run(capsys, "eval", "--k", "3", "--mu", "2+1i", "--r", "0:1:3",
                           "--format", "json")
        doc = json.loads(out)
        assert code == 0 and doc["schema"] == "hyperradial.eval/1"
        assert doc["mu"] == [2.0, 1.0] and len(doc["rows"]) == 3

    def test_malformed_range(self, capsys, tmp_path):
        target = tmp_path / "out.csv"
        code, out, err = run(capsys, "eval", "--k", "2", "--mu", "1", "--r", "5:0:11",
                             "--out", str(target))
        assert code != 0
        assert not target.exists()
        assert len(err.strip().splitlines()) == 1

    def test_usage_error(self, capsys):
        code, _, _ = run(capsys, "eval", "--k", "2", "--mu", "one", "--r", "1")
        assert code == 2

    def test_missing_flag_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["eval", "--k", "2", "--r", "1"])
        assert info.value.code == 2

    def test_domain_error(self, capsys):
        code, _, _ = run(capsys, "eval", "--k", "0", "--mu", "1", "--r", "1")
        assert code == 1


class TestRegion:
    def test_svg_anchors(self, capsys):
        code, out, _ = run(capsys, "region", "--k", "2", "--rho", "1", "--p", "1")
        assert code == 0 and out.startswith("<?xml")
        pts = {(float(a), float(b)) for a, b in re.findall(r'data-re="([^"]+)" data-im="([^"]+)"', out)}
        expect = [(2.0, 0.0), (0.0, 2 * math.sqrt(2)), (0.0, -2 * math.sqrt(2))]
        for x, y in expect:
            assert any(abs(x - a) < 1e-12 and abs(y - b) < 1e-12 for a, b in pts)
        assert "<polygon" in out

    def test_csv_row_count(self, capsys):
        code, out, _ = run(capsys, "region", "--k", "3", "--p", "0.5", "--format", "csv", "--n", "57")
        assert code == 0
        assert len(out.splitlines()) == 58

    def test_json_vertex_moves_with_p(self, capsys):
        _, a, _ = run(capsys, "region", "--k", "2", "--p", "1", "--format", "json")
        _, b, _ = run(capsys, "region", "--k", "2", "--p", "0.5", "--format", "json")
        assert json.loads(b)["anchors"]["vertex"][0] < json.loads(a)["anchors"]["vertex"][0]

    def test_nonpositive_p(self, capsys):
        code, _, _ = run(capsys, "region", "--k", "2", "--p", "0")
        assert code == 1


class TestCertify:
    def test_threshold_in_report(self, capsys):
        code, out, err = run(capsys, "certify", "--k", "2", "--rho", "1", "--mu", "2", "--nu", "1")
        doc = json.loads(out)
        assert code == 0
        assert doc["T"] == pytest.approx(math.pi / 2, rel=1e-15)
        assert doc["verdict"] in {"PASS", "INCONCLUSIVE"}
        assert {"T", "clipped", "min_separation", "argmin_r", "verdict"} <= set(doc)
        assert "T=1.5708" in err

    def test_real_ray(self, capsys):
        _, out, _ = run(capsys, "certify", "--k", "2", "--mu", "-1", "--nu", "0.5")
        assert '"T": "inf"' in out
        assert json.loads(out)["clipped"] is True

    def test_equal_rejected(self, capsys):
        code, _, _ = run(capsys, "certify", "--k", "2", "--mu", "1", "--nu", "1")
        assert code == 1


class TestCollide:
    def test_excludes_trivial(self, capsys):
        code, out, _ = run(capsys, "collide", "--k", "2", "--alpha", "1", "--r0", "1",
                           "--re-min", "-2", "--re-max", "4", "--n-re", "4", "--n-im", "3")
        doc = json.loads(out)
        assert code == 0 and doc["collisions"]
        for c in doc["collisions"]:
            beta = complex(*c["beta"])
            assert abs(beta - 1) > 1e-6
            assert c["residual"] < 1e-9
            assert c["outside_strip"] and c["halfwidth"] > doc["bound"]

    def test_empty_with_note(self, capsys):
        code, out, _ = run(capsys, "collide", "--k", "2", "--alpha", "1", "--r0", "1",
                           "--re-min", "1", "--re-max", "1", "--im-min", "0.001",
                           "--im-max", "0.001", "--n-re", "1", "--n-im", "1")
        doc = json.loads(out)
        assert code == 0
        assert doc["collisions"] == [] and doc["note"].startswith("search failure")

    def test_invalid_r0(self, capsys):
        code, _, _ = run(capsys, "collide", "--k", "2", "--alpha", "1", "--r0", "-1")
        assert code == 1


def test_output_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("HYPERRADIAL_OUT_DIR", str(tmp_path))
    code, out, err = run(capsys, "region", "--k", "2", "--p", "1", "--out", "fig/region.svg")
    assert code == 0 and out == ""
    target = tmp_path / "fig" / "region.svg"
    assert target.read_text().startswith("<?xml")
    assert list(target.parent.iterdir()) == [target]


@pytest.mark.parametrize("argv", [
    ["certify", "--k", "2", "--mu", "2", "--nu", "1+0.5i", "--n-grid", "60"],
    ["collide", "--k", "2", "--alpha", "1", "--r0", "1", "--n-re", "3", "--n-im", "2"],
])
def test_byte_identical_files(tmp_path, capsys, argv):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hyperradial", "eval", "--k", "1", "--mu", "0",
                          "--r", "0.5"], capture_output=True, text=True, check=True)
    assert res.stdout.splitlines()[0] == EVAL_HEADER

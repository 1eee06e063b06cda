import json
import xml.etree.ElementTree as ET
from fractions import Fraction as F

import pytest

from fillcurve import cli
from fillcurve.knopp import chain_from_json_dict
from fillcurve.lance_thomas import map_from_json_dict
from fillcurve.verify import CheckReport, CheckResult


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestMeasure:
    def test_knopp_json(self, capsys):
        code, out, _ = run(capsys, "measure", "--family", "knopp",
                           "--beta", "1/2", "--depth", "3")
        assert code == 0
        payload = json.loads(out)
        assert payload["rows"][3] == {"n": 3, "value": "9/16", "residual": "1/16"}

    def test_lt_json(self, capsys):
        code, out, _ = run(capsys, "measure", "--family", "lt",
                           "--alpha", "1/2", "--depth", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["target_area"] == "1/4"
        assert payload["rows"][2]["value"] == "25/64"

    def test_csv_flag(self, capsys):
        code, out, _ = run(capsys, "measure", "--family", "knopp",
                           "--beta", "1/2", "--depth", "2", "--csv")
        assert code == 0
        assert out.splitlines() == ["n,value,residual", "0,1/1,1/2",
                                    "1,3/4,1/4", "2,5/8,1/8"]


class TestArc:
    def test_values(self, capsys):
        code, out, _ = run(capsys, "arc", "--family", "knopp", "--beta", "1/2",
                           "--n", "2", "--j", "1", "--horizon", "3")
        assert code == 0
        payload = json.loads(out)
        assert payload["value"] == "9/64"
        assert payload["limit"] == "1/8"
        assert payload["residual"] == "1/64"

    def test_lt_rejected(self, capsys):
        code, _, err = run(capsys, "arc", "--family", "lt", "--alpha", "1/2",
                           "--n", "1", "--j", "0", "--horizon", "2")
        assert code == 2
        assert "knopp" in err


class TestEval:
    def test_dyadic_exact(self, capsys):
        code, out, _ = run(capsys, "eval", "--family", "knopp", "--beta", "1/2",
                           "--t", "1/2", "--depth", "4")
        assert code == 0
        payload = json.loads(out)
        assert payload["point"] == ["1/1", "1/1"]
        assert payload["error_radius_sq"] == "0/1"

    def test_lt_joint(self, capsys):
        code, out, _ = run(capsys, "eval", "--family", "lt", "--alpha", "1/2",
                           "--t", "1/2", "--depth", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["point"] == ["1/2", "1/2"]
        assert payload["error_radius_sq"] == "0/1"

    def test_out_of_range_t(self, capsys):
        code, _, err = run(capsys, "eval", "--family", "knopp", "--beta", "1/2",
                           "--t", "3/2", "--depth", "2")
        assert code == 2
        assert "error" in err


class TestBuild:
    def test_knopp_file_round_trip(self, capsys, tmp_path):
        out_file = tmp_path / "chain.json"
        code, _, _ = run(capsys, "build", "--family", "knopp", "--beta", "1/2",
                         "--depth", "3", "--out", str(out_file))
        assert code == 0
        data = json.loads(out_file.read_text())
        chain = chain_from_json_dict(data)
        assert chain.depth == 3 and len(chain.triangles) == 8

    def test_lt_stdout(self, capsys):
        code, out, _ = run(capsys, "build", "--family", "lt", "--alpha", "1/2",
                           "--depth", "2")
        assert code == 0
        pmap = map_from_json_dict(json.loads(out))
        assert pmap.segment_count == 31


class TestVerify:
    def test_passes_and_writes_report(self, capsys, tmp_path):
        report_file = tmp_path / "report.json"
        code, out, _ = run(capsys, "verify", "--family", "lt", "--alpha", "1/2",
                           "--depth", "3", "--report", str(report_file))
        assert code == 0
        stdout_payload = json.loads(out)
        file_payload = json.loads(report_file.read_text())
        assert stdout_payload == file_payload
        assert stdout_payload["all_passed"] is True

    def test_knopp_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--family", "knopp",
                           "--beta", "3/4", "--depth", "5")
        assert code == 0
        assert json.loads(out)["all_passed"] is True

    def test_failed_checks_exit_one(self, capsys, monkeypatch):
        failing = CheckReport("knopp", {"beta": "1/2", "depth": 1}, (
            CheckResult("area_total", False, "forced failure", "n/a", 0.0),
        ))
        monkeypatch.setattr(cli.verify, "check_knopp", lambda chain: failing)
        code, out, _ = run(capsys, "verify", "--family", "knopp",
                           "--beta", "1/2", "--depth", "1")
        assert code == 1
        assert json.loads(out)["all_passed"] is False


class TestReparam:
    def test_demo_square(self, capsys):
        code, out, _ = run(capsys, "reparam", "--family", "knopp",
                           "--beta", "1/2", "--demo-square", "--horizon", "4")
        assert code == 0
        payload = json.loads(out)
        assert payload["left_limit"] == "1/8"
        assert payload["right_limit"] == "3/8"
        assert payload["rows"][1] == {"horizon": 3, "left": "9/64",
                                      "right": "27/64"}

    def test_demo_square_needs_knopp(self, capsys):
        code, _, err = run(capsys, "reparam", "--family", "lt", "--alpha", "1/2",
                           "--demo-square")
        assert code == 2
        assert "knopp" in err

    def test_profile_csv_stdout(self, capsys):
        code, out, _ = run(capsys, "reparam", "--family", "lt", "--alpha", "1/2",
                           "--depth", "1", "--profile-csv", "-")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "t,area"
        assert len(lines) == 6  # 4 interval ends + t=0 + header

    def test_profile_csv_file(self, capsys, tmp_path):
        target = tmp_path / "profile.csv"
        code, out, _ = run(capsys, "reparam", "--family", "knopp", "--beta", "1/2",
                           "--depth", "2", "--profile-csv", str(target),
                           "--decimal")
        assert code == 0
        assert json.loads(out)["breakpoints"] == 5
        lines = target.read_text().strip().splitlines()
        assert lines[0] == "t,area,t_decimal,area_decimal"
        assert lines[1] == "0/1,0/1,0,0"

    def test_apply_lt(self, capsys):
        code, out, _ = run(capsys, "reparam", "--family", "lt", "--alpha", "1/2",
                           "--depth", "2", "--apply")
        assert code == 0
        payload = json.loads(out)
        assert payload["homogeneous_at_breakpoints"] is True
        assert all(row["area"] == row["target"] for row in payload["rows"])

    def test_exactly_one_action_required(self, capsys):
        code, _, err = run(capsys, "reparam", "--family", "knopp", "--beta", "1/2")
        assert code == 2
        assert "exactly one" in err
        code, _, _ = run(capsys, "reparam", "--family", "knopp", "--beta", "1/2",
                         "--demo-square", "--apply")
        assert code == 2


class TestRender:
    def test_knopp_svg_file(self, capsys, tmp_path):
        target = tmp_path / "fig.svg"
        code, _, _ = run(capsys, "render", "--family", "knopp", "--beta", "1/2",
                         "--depth", "4", "--out", str(target), "--show-polyline")
        assert code == 0
        root = ET.fromstring(target.read_text())
        ns = "{http://www.w3.org/2000/svg}"
        assert len(root.findall(f"{ns}polygon")) == 16
        assert len(root.findall(f"{ns}polyline")) == 1

    def test_lt_svg_stdout(self, capsys):
        code, out, _ = run(capsys, "render", "--family", "lt", "--alpha", "1/2",
                           "--depth", "2")
        assert code == 0
        root = ET.fromstring(out)
        ns = "{http://www.w3.org/2000/svg}"
        assert len(root.findall(f"{ns}rect")) == 16


class TestUsageErrors:
    def test_malformed_rational_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["measure", "--family", "knopp", "--beta", "0.5",
                      "--depth", "2"])
        assert exc.value.code == 2

    def test_missing_beta(self, capsys):
        code, _, err = run(capsys, "measure", "--family", "knopp", "--depth", "2")
        assert code == 2
        assert "--beta" in err

    def test_missing_depth(self, capsys):
        code, _, err = run(capsys, "measure", "--family", "knopp", "--beta", "1/2")
        assert code == 2
        assert "--depth" in err

    def test_out_of_range_beta(self, capsys):
        code, _, err = run(capsys, "measure", "--family", "knopp",
                           "--beta", "3/2", "--depth", "2")
        assert code == 2
        assert "between 0 and 1" in err

    def test_negative_depth(self, capsys):
        code, _, _ = run(capsys, "measure", "--family", "knopp", "--beta", "1/2",
                         "--depth", "-1")
        assert code == 2

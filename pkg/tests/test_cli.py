import json
import os

import pytest

from cmcurves.cli import main
from cmcurves.report import build_report, report_to_json

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture(scope="module")
def q_report():
    return build_report("Q")


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return {
        "triple_curve": write(
            "triple.ideal", "ring Q[x,y,w,u]\nx*u\ny*u - x^2\nu^2\n"
        ),
        "triple_image": write("image.ideal", "ring Q[x,y,z,w]\nz\nx^3\n"),
        "nodal_image": write(
            "nodal.ideal", "ring Q[x,y,z,w]\nz\nx^3 + x^2*w - y^2*w\n"
        ),
        "map": write(
            "standard.map",
            "ring Q[x,y,z,w]\nring Q[x,y,w,u]\nx -> x\ny -> y\nz -> 0\nw -> w\n",
        ),
        "family": write(
            "family.ideal",
            "ring Q(t)[x,y,w,u]\nx*u\ny*u - x*(x + t*y)\nu^2\n",
        ),
        "bad": write("bad.ideal", "ring Q[x]\nx^\n"),
    }


def test_groebner_command(files, capsys):
    assert main(["groebner", files["triple_curve"]]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out == ["u^2", "x*u", "x^2 - y*u"]


def test_groebner_lex_order(files, capsys):
    assert main(["groebner", files["triple_curve"], "--order", "lex"]) == 0
    out = capsys.readouterr().out
    assert "x*u" in out


def test_image_command(files, capsys):
    assert main(["image", files["triple_curve"], "--map", files["map"]]) == 0
    out = capsys.readouterr().out
    assert out.splitlines() == ["ring Q[x,y,z,w]", "z", "x^3"]


def test_hilbert_command(files, capsys):
    assert main(["hilbert", files["triple_curve"]]) == 0
    assert (
        capsys.readouterr().out.strip()
        == "HP = 3*t + 1 ; degree 3 ; genus 0 ; regularity <= 0"
    )
    assert main(["hilbert", files["nodal_image"], "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {
        "hilbert_polynomial": "3*t",
        "regularity_index": 1,
        "degree": 3,
        "genus": 1,
    }


def test_classify_command(files, capsys):
    assert main(["classify", files["triple_image"], "--point", "0,0,0,1"]) == 0
    assert "case IX" in capsys.readouterr().out
    assert main(["classify", files["nodal_image"], "--point", "0,0,0,1",
                 "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["case"] == "I"


def test_classify_rejects_non_cubic(files, capsys):
    assert main(["classify", files["triple_curve"], "--point", "0,0,0,1"]) == 2


def test_family_commands(files, capsys):
    assert main(["family", "fiber", files["family"], "--at", "0"]) == 0
    out = capsys.readouterr().out
    assert "ring Q[x,y,w,u]" in out and "u^2" in out
    assert main(["family", "image", files["family"]]) == 0
    out = capsys.readouterr().out
    assert "x^3 + t*x^2*y" in out
    assert main(["family", "probe", files["family"], "--samples", "0,1,-2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["pass"] and payload["generic_hp"] == "3*t + 1"


def test_deform_command(files, capsys):
    assert main(["deform", files["triple_curve"]]) == 0
    out = capsys.readouterr().out
    assert out.startswith("dimension 12")


def test_deform_tangent_command(capsys):
    assert main(["deform", "--tangent-cm"]) == 0
    out = capsys.readouterr().out
    assert "raw parameters 28" in out
    assert "tangent dimension 12" in out
    assert "NOT invariant" not in out


def test_verify_command(capsys):
    assert main(["verify", "catalog"]) == 0
    out = capsys.readouterr().out
    assert out.count("[pass]") == 9
    assert out.strip().endswith("overall: pass")


def test_parse_error_exit_code(files, capsys):
    assert main(["groebner", files["bad"]]) == 2
    assert "parse error" in capsys.readouterr().err


def test_missing_file_exit_code(capsys):
    assert main(["hilbert", "/nonexistent/nowhere.ideal"]) == 2


def test_report_runs_and_exit_code(capsys):
    assert main(["report", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["overall"] is True
    assert payload["schema"] == 1
    assert "generated_at" not in payload


def test_report_is_deterministic(q_report):
    assert report_to_json(build_report("Q")) == report_to_json(q_report)


def test_report_timestamp_excluded_from_comparison(q_report):
    with_stamp = build_report("Q", timestamp="2026-01-01T00:00:00Z")
    stripped = dict(with_stamp)
    stripped.pop("generated_at")
    assert stripped == q_report


def test_report_matches_golden_fixture(q_report):
    golden_path = os.path.join(FIXTURES, "report_q.json")
    with open(golden_path, "r", encoding="utf-8") as fh:
        golden = json.load(fh)
    assert q_report == golden


def test_field_override_flag(files, capsys):
    assert main(["hilbert", files["triple_curve"], "--field", "GF7"]) == 0
    assert "3*t + 1" in capsys.readouterr().out
    assert main(["classify", files["triple_image"], "--point", "0,0,0,1",
                 "--field", "GF5", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["case"] == "IX"


def test_probe_failure_exit_code(tmp_path, capsys):
    broken = tmp_path / "broken.ideal"
    broken.write_text(
        "ring Q(t)[x,y,z,w]\nx*z - t*y*w\nx^3\n", encoding="utf-8"
    )
    assert main(["family", "probe", str(broken), "--samples", "0,1"]) == 1


def test_report_over_gf5(capsys):
    assert main(["report", "--field", "GF5"]) == 0
    out = capsys.readouterr().out
    assert "overall: pass" in out

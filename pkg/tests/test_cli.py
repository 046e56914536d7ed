"""Test the command-line interface and its exit codes."""
import json

import pytest
from click.testing import CliRunner

from stabkit import __version__
from stabkit.cli.main import cli, cli_main
from stabkit.workflows.models import Report


@pytest.fixture
def runner():
    return CliRunner()


def _report(path):
    return Report.from_json(path.read_text(encoding="utf-8"))


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_help_lists_commands(runner):
    result = runner.invoke(cli, ["--help"])
    assert result.exit_code == 0
    for command in ("validate", "hn", "walls", "deform", "dist", "qext", "cy2"):
        assert command in result.output


def test_hn(runner, data_dir, tmp_path):
    out = tmp_path / "hn.json"
    result = runner.invoke(cli, [
        "hn",
        "--input", str(data_dir / "a2_projective.json"),
        "--charge", str(data_dir / "a2_unstable_charge.json"),
        "--json", str(out),
        "--csv", str(tmp_path / "hn.csv"),
    ])
    assert result.exit_code == 0
    report = _report(out)
    assert report.passed
    assert report.result["semistable"] is False
    assert (tmp_path / "hn.csv").exists()


def test_hn_prints_report_without_json_target(runner, data_dir):
    result = runner.invoke(cli, [
        "hn",
        "--input", str(data_dir / "a2_projective.json"),
        "--charge", str(data_dir / "a2_semistable_charge.json"),
    ])
    assert result.exit_code == 0
    assert '"semistable": true' in result.output


def test_deform(runner, data_dir, tmp_path):
    out = tmp_path / "deform.json"
    result = runner.invoke(cli, [
        "deform",
        "--sigma", str(data_dir / "a2_sigma.json"),
        "--q", str(data_dir / "a2_form.json"),
        "--path", str(data_dir / "a2_path.json"),
        "--report", str(out),
    ])
    assert result.exit_code == 0
    assert _report(out).result["passed"] is True


def test_cy2_kernel_root_fails_the_check(runner, data_dir, write_doc, tmp_path):
    out = tmp_path / "cy2.json"
    z = write_doc("kernel_root.json", {"Z": [["0", "0"], ["1", "1"]]})
    result = runner.invoke(cli, [
        "cy2",
        "--lattice", str(data_dir / "hyperbolic_plane.json"),
        "--z", str(z),
        "--certify", str(out),
    ])
    assert result.exit_code == 1
    report = _report(out)
    assert not report.passed
    assert report.error.witness == [1, -1]


def test_heart_violation_fails_with_witness(runner, write_doc, tmp_path):
    out = tmp_path / "violation.json"
    s1 = write_doc("s1.json", {"field": 2, "vertices": 2, "arrows": [[0, 1]], "dims": [1, 0]})
    z = write_doc("positive.json", {"Z": [["1", "0"], ["0", "1"]]})
    result = runner.invoke(cli, ["hn", "--input", str(s1), "--charge", str(z), "--json", str(out)])
    assert result.exit_code == 1
    report = _report(out)
    assert report.error.type == "HeartViolationError"
    assert report.error.witness == [1, 0]


def test_missing_input_file(runner, data_dir, tmp_path):
    result = runner.invoke(cli, [
        "hn",
        "--input", str(tmp_path / "absent.json"),
        "--charge", str(data_dir / "a2_unstable_charge.json"),
    ])
    assert result.exit_code == 2


def test_reports_are_deterministic(runner, data_dir, tmp_path):
    texts = []
    for name in ("first.json", "second.json"):
        out = tmp_path / name
        runner.invoke(cli, [
            "cy2",
            "--lattice", str(data_dir / "hyperbolic_plane.json"),
            "--z", str(data_dir / "hyperbolic_charge.json"),
            "--json", str(out),
        ])
        texts.append(_report(out).to_json(include_timing=False))
    assert texts[0] == texts[1]
    assert json.loads(texts[0])["result"]["member"] is True


def test_argparse_entry_point(data_dir, tmp_path):
    out = tmp_path / "qext.json"
    code = cli_main([
        "qext",
        "--q", str(data_dir / "degenerate_form.json"),
        "--out", str(out),
    ])
    assert code == 0
    assert _report(out).passed
    assert cli_main(["--version"]) == 0

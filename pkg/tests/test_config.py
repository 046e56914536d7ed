"""Test configuration loading, run models, document decoding and the runner."""
import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

from stabkit.errors import InputError
from stabkit.utils import codec
from stabkit.utils.config_loader import ConfigLoader, get_config, reset_config
from stabkit.utils.file_utils import FileUtils
from stabkit.workflows.models import ErrorInfo, Report, RunConfig
from stabkit.workflows.runner import EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK, run
from tests.conftest import rc


def test_packaged_defaults():
    config = get_config()
    assert config.get("enumeration.budget") == 10_000_000
    assert config.get("deformation.steps") == 8
    assert config.get("deformation.norm_margin") == "1/2"
    assert config.get("render.viewbox") == 600
    assert config.get("missing.key", "fallback") == "fallback"


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("STABKIT_BUDGET", "5000")
    reset_config()
    assert get_config().get("enumeration.budget") == 5000


def test_loader_substitution(tmp_path, monkeypatch):
    monkeypatch.setenv("STABKIT_TEST_STEPS", "3")
    monkeypatch.delenv("STABKIT_TEST_MISSING", raising=False)
    path = tmp_path / "custom.yaml"
    path.write_text(
        "deformation:\n"
        "  steps: ${STABKIT_TEST_STEPS:-8}\n"
        "  label: run-${STABKIT_TEST_STEPS}\n"
        "  margin: ${STABKIT_TEST_MISSING:-1/4}\n",
        encoding="utf-8",
    )
    loader = ConfigLoader(path)
    assert loader.get("deformation.steps") == 3
    assert loader.get("deformation.label") == "run-3"
    assert loader.get("deformation.margin") == "1/4"
    loader.set("walls.refine_width", "1/100")
    assert loader.config["walls"]["refine_width"] == "1/100"


def test_missing_config_file_gives_empty_settings(tmp_path):
    assert ConfigLoader(tmp_path / "absent.yaml").config == {}


@pytest.fixture
def hn_inputs(data_dir):
    return {
        "object": data_dir / "a2_projective.json",
        "charge": data_dir / "a2_unstable_charge.json",
    }


def test_from_settings_uses_config_defaults(hn_inputs):
    config = RunConfig.from_settings("hn", hn_inputs)
    assert config.steps == 8
    assert config.budget == 10_000_000
    assert config.margin == Fraction(1, 2)
    assert config.width == Fraction(1, 10 ** 9)


def test_from_settings_overrides(hn_inputs, tmp_path):
    config = RunConfig.from_settings("hn", hn_inputs, steps=3, tolerance=None,
                                     json_out=tmp_path / "r.json")
    assert config.steps == 3
    assert config.tolerance == pytest.approx(1e-9)
    assert config.json_out == tmp_path / "r.json"


def test_required_inputs(data_dir):
    with pytest.raises(ValidationError):
        RunConfig.from_settings("hn", {"object": data_dir / "a2_projective.json"})


def test_inputs_must_exist(hn_inputs, tmp_path):
    with pytest.raises(ValidationError):
        RunConfig.from_settings("hn", {**hn_inputs, "charge": tmp_path / "nope.json"})


@pytest.mark.parametrize("margin", ["0", "-1/2"])
def test_norm_margin_must_be_positive(hn_inputs, margin):
    with pytest.raises(ValidationError):
        RunConfig(command="hn", inputs=hn_inputs, norm_margin=margin)


def test_unknown_command(hn_inputs):
    with pytest.raises(ValidationError):
        RunConfig(command="plot", inputs=hn_inputs)


def test_report_round_trip():
    report = Report(
        command="cy2",
        inputs={"lattice": "u.json"},
        passed=False,
        exit_code=1,
        result={"C": "1"},
        error=ErrorInfo(type="NotInP0Error", message="root in kernel", witness=[1, -1]),
        timing_seconds=0.25,
    )
    text = report.to_json(include_timing=False)
    assert "timing_seconds" not in json.loads(text)
    restored = Report.from_json(text)
    assert restored.error.witness == [1, -1]
    assert restored.to_json(include_timing=False) == text


def test_require_reports_missing_keys():
    with pytest.raises(InputError, match="missing"):
        codec.require({"rank": 2}, "charge")
    with pytest.raises(InputError):
        codec.require([1, 2], "charge")


def test_charge_document_ranks_must_agree():
    doc = codec.parse_charge_document({"Z": [["1", "0"], ["0", "1"]], "Q": [[1, 0], [0, -1]]})
    assert doc.rank == 2
    with pytest.raises(InputError, match="ranks disagree"):
        codec.parse_charge_document({"rank": 3, "Z": [["1", "0"], ["0", "1"]]})
    with pytest.raises(InputError):
        codec.parse_charge_document({"rank": 2, "Z": [["1", "0"], ["0", "1"]]}, schema="form")


def test_sample_accepts_a_bare_list(data_dir):
    p1 = json.loads((data_dir / "a2_projective.json").read_text(encoding="utf-8"))
    (shifted,) = codec.parse_sample([{**p1, "shift": 1}])
    assert shifted.shift == 1
    assert shifted.dims == (1, 1)


def test_jsonable():
    value = {"t": Fraction(1, 2), "z": rc(0, 1), "class": (1, -1), "none": None}
    assert codec.jsonable(value) == {"t": "1/2", "z": ["0", "1"], "class": [1, -1], "none": None}


def test_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError, match="Malformed"):
        FileUtils.read_json(path)
    with pytest.raises(InputError):
        codec.load_document(tmp_path / "missing.json")


def test_csv_round_trip(tmp_path):
    path = tmp_path / "rows.csv"
    assert FileUtils.write_csv(path, ["t", "status"], [["1/4", "unstable"], ["3/4", "stable"]]) == 2
    assert FileUtils.read_csv(path) == [{"t": "1/4", "status": "unstable"},
                                        {"t": "3/4", "status": "stable"}]


def test_run_hn(hn_inputs, tmp_path):
    config = RunConfig.from_settings("hn", hn_inputs, json_out=tmp_path / "hn.json",
                                     svg_out=tmp_path / "hn.svg")
    code, report = run(config)
    assert code == EXIT_OK
    assert report.passed
    assert len(report.result["polygon"]) == 3
    assert Report.from_json((tmp_path / "hn.json").read_text(encoding="utf-8")).exit_code == EXIT_OK
    assert (tmp_path / "hn.svg").read_text(encoding="utf-8").startswith("<?xml")


def test_run_reports_input_errors(data_dir, write_doc):
    inputs = {"object": data_dir / "a2_projective.json",
              "charge": write_doc("no_charge.json", {"Q": [[0, 1], [1, 0]]})}
    code, report = run(RunConfig.from_settings("hn", inputs))
    assert code == EXIT_INPUT
    assert report.error.type == "InputError"


def test_run_reports_failed_checks(data_dir, write_doc):
    inputs = {"lattice": data_dir / "hyperbolic_plane.json",
              "z": write_doc("kernel_root.json", {"Z": [["0", "0"], ["1", "1"]]})}
    code, report = run(RunConfig.from_settings("cy2", inputs))
    assert code == EXIT_CHECK_FAILED
    assert not report.passed
    assert report.error.witness == [1, -1]

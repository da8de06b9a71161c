"""Tests for settings resolution, artifact writing and the command-line entry point."""

import csv
import json
from pathlib import Path

import numpy as np
import pytest

from santalo.cli.artifacts import ArtifactWriter, profile_figure
from santalo.cli.main import COMMAND_HELP, build_parser, main
from santalo.cli.settings import RunSettings, load_settings, read_config_file
from santalo.cli.suites import SUITES
from santalo.commons import ErrorCode, SantaloError
from santalo.reports import LevelReport, LevelRow


@pytest.fixture
def workdir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


def _manifest(directory: Path) -> dict:
    return json.loads((directory / "manifest.json").read_text(encoding="utf-8"))


# -- parser ----------------------------------------------------------------------------


def test_every_command_has_a_suite():
    assert set(COMMAND_HELP) == set(SUITES)


def test_parser_reads_common_flags():
    args = build_parser().parse_args(["polar", "--seed", "3", "--fast", "--n", "2", "--times", "0,1"])
    assert args.command == "polar"
    assert (args.seed, args.fast, args.n, args.times) == (3, True, 2, "0,1")
    assert args.svg_timestamp is None


@pytest.mark.parametrize("argv", [[], ["bogus"], ["polar", "--transform", "x"], ["rearrange", "--seed", "one"]])
def test_usage_errors_exit_with_two(argv, workdir):
    assert main(argv) == 2


# -- settings --------------------------------------------------------------------------


def test_defaults(workdir):
    settings = load_settings({})
    assert settings.seed == 0
    assert settings.times == [0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0]
    assert settings.output_dir == Path("santalo-out")
    assert settings.flow.radial_step == pytest.approx(0.01)


def test_flags_beat_config_beat_environment(workdir, monkeypatch):
    monkeypatch.setenv("SANTALO_SEED", "5")
    monkeypatch.setenv("SANTALO_WORKERS", "3")
    config = _write(workdir / "run.conf", "# base\nseed = 7\nlambda-grid = 16  # fewer levels\n")
    assert load_settings({}).seed == 5
    from_file = load_settings({}, config)
    assert (from_file.seed, from_file.lambda_grid, from_file.workers) == (7, 16, 3)
    assert load_settings({"seed": 9, "fast": None}, config).seed == 9


def test_nested_keys_from_file_and_environment(workdir, monkeypatch):
    monkeypatch.setenv("SANTALO_FLOW__RADIAL_STEP", "0.05")
    assert load_settings({}).flow.radial_step == pytest.approx(0.05)
    config = _write(workdir / "run.conf", "flow__radial_step = 0.02\ntelemetry__log_level = DEBUG\n")
    settings = load_settings({}, config)
    assert settings.flow.radial_step == pytest.approx(0.02)
    assert settings.telemetry.log_level == "DEBUG"


def test_times_accept_comma_lists(workdir):
    assert load_settings({"times": "0, 0.5,2"}).times == [0.0, 0.5, 2.0]


def test_fast_divides_budgets():
    assert RunSettings(fast=True).scaled(500) == 62
    assert RunSettings(fast=True).scaled(3) == 1
    assert RunSettings().scaled(500) == 500


def test_config_file_errors(workdir):
    with pytest.raises(SantaloError) as missing:
        read_config_file(workdir / "absent.conf")
    assert missing.value.code is ErrorCode.CONFIG_ERROR
    with pytest.raises(SantaloError) as malformed:
        read_config_file(_write(workdir / "bad.conf", "seed 3\n"))
    assert malformed.value.code is ErrorCode.CONFIG_ERROR
    assert malformed.value.details["line"] == 1


def test_unknown_config_keys_are_rejected(workdir):
    with pytest.raises(SantaloError) as top:
        load_settings({}, _write(workdir / "typo.conf", "sead = 3\n"))
    assert top.value.code is ErrorCode.CONFIG_ERROR
    assert top.value.details["key"] == "sead"
    with pytest.raises(SantaloError) as nested:
        load_settings({}, _write(workdir / "nested.conf", "flow__radial_stp = 0.02\n"))
    assert nested.value.details["key"] == "flow__radial_stp"
    with pytest.raises(SantaloError) as scalar:
        load_settings({}, _write(workdir / "scalar.conf", "seed__x = 1\n"))
    assert scalar.value.details["key"] == "seed"


def test_invalid_values_name_the_field(workdir):
    with pytest.raises(SantaloError) as excinfo:
        load_settings({"n": 5})
    assert excinfo.value.code is ErrorCode.CONFIG_ERROR
    assert excinfo.value.details["field"] == "n"


# -- artifacts -------------------------------------------------------------------------


def _level_report() -> LevelReport:
    rows = [
        LevelRow(level=0.5, mass_f=1.0, mass_rearranged=1.0, error_bound=0.1, verdict=True),
        LevelRow(level=float("inf"), mass_f=2.0, mass_rearranged=2.5, error_bound=0.1, verdict=False),
    ]
    return LevelReport(check="equimeasurability", rows=rows)


def test_report_artifacts(tmp_path):
    writer = ArtifactWriter(tmp_path / "out")
    names = writer.write_report("rearrange/equimeasurability", _level_report())
    assert names == ["rearrange/equimeasurability.json", "rearrange/equimeasurability.csv"]
    assert writer.written == names
    with (tmp_path / "out" / names[1]).open(encoding="utf-8") as handle:
        table = list(csv.reader(handle))
    assert table[0] == ["lambda", "mass_f", "mass_rearranged", "error_bound", "verdict"]
    assert table[1][-1] == "pass"
    assert table[2][0] == "inf"
    document = json.loads((tmp_path / "out" / names[0]).read_text(encoding="utf-8"))
    assert document["verdict"] is False
    assert document["rows"][0]["lambda"] == 0.5


def test_figures_are_reproducible_without_timestamp(tmp_path):
    writer = ArtifactWriter(tmp_path, svg_timestamp=False)
    radii = np.linspace(0.0, 3.0, 31)
    for name in ("a.svg", "b.svg"):
        writer.write_figure(name, profile_figure(radii, radii, 0.5 * radii * radii))
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()


# -- runs ------------------------------------------------------------------------------


def _hj_run(directory: Path) -> int:
    return main(
        [
            "hj-compare",
            "--t",
            "0.5",
            "--instances",
            "1",
            "--lambda-grid",
            "8",
            "--output-dir",
            str(directory),
        ]
    )


def test_run_writes_manifest_and_reports(workdir):
    status = _hj_run(workdir / "out")
    assert status in (0, 1)
    manifest = _manifest(workdir / "out")
    assert manifest["command"] == "hj-compare"
    assert manifest["exit_status"] == status
    assert manifest["seeds"] == [0]
    assert manifest["config"]["t"] == 0.5
    assert [check["name"] for check in manifest["checks"]] == ["hopf_lax_comparison", "hopf_lax_translated"]
    assert "total" in manifest["timings"]
    for name in manifest["artifacts"]:
        assert (workdir / "out" / name).is_file()
    assert status == (0 if all(check["verdict"] for check in manifest["checks"]) else 1)


def test_planar_legendre_suite_runs_to_a_verdict(workdir):
    out = workdir / "legendre"
    status = main(["legendre", "--seed", "1", "--instances", "1", "--lambda-grid", "8", "--output-dir", str(out)])
    manifest = _manifest(out)
    assert manifest["error"] is None
    assert status in (0, 1)
    assert [check["name"] for check in manifest["checks"]] == [
        "legendre_comparison",
        "legendre_unit_determinant",
        "biconjugation",
        "order_reversal",
    ]
    assert status == (0 if all(check["verdict"] for check in manifest["checks"]) else 1)


def test_reruns_produce_identical_tables(workdir):
    _hj_run(workdir / "first")
    _hj_run(workdir / "second")
    first = (workdir / "first" / "hopf_lax_translated.csv").read_bytes()
    assert first == (workdir / "second" / "hopf_lax_translated.csv").read_bytes()


def test_invalid_settings_still_write_a_manifest(workdir):
    assert main(["transform-compare", "--n", "5", "--output-dir", str(workdir / "bad")]) == 2
    manifest = _manifest(workdir / "bad")
    assert manifest["exit_status"] == 2
    assert manifest["error"]["code"] == "config_error"


def test_numerical_errors_exit_with_three(workdir):
    assert main(["extremize", "--transform", "t", "--output-dir", str(workdir / "t")]) == 3
    manifest = _manifest(workdir / "t")
    assert manifest["error"]["code"] == "unsupported_pair"
    assert manifest["checks"] == []

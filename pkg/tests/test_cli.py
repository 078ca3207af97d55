import json

import pytest
from click.testing import CliRunner

from modalsim.calibration import CalibrationData
from modalsim.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


SCENARIO = {
    "config": {"n_agents": 20, "ticks": 5, "seeds": [1, 2]},
    "events": [{"at": 1, "action": "set_value", "mode": "bus", "criterion": "time", "value": 80}],
}


def write_scenario(path, doc=None):
    path.write_text(json.dumps(doc if doc is not None else SCENARIO))
    return str(path)


class TestCalibrate:
    def test_happy_path(self, runner, tmp_path, synthetic_survey):
        survey = tmp_path / "survey.csv"
        survey.write_text(synthetic_survey)
        out = tmp_path / "calib.json"
        result = runner.invoke(
            main, ["calibrate", "--survey", str(survey), "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        calib = CalibrationData.from_json(out.read_text())
        assert calib.provenance["source"] == str(survey)

    def test_caps_option(self, runner, tmp_path, synthetic_survey):
        survey = tmp_path / "survey.csv"
        survey.write_text(synthetic_survey)
        out = tmp_path / "calib.json"
        result = runner.invoke(
            main,
            ["calibrate", "--survey", str(survey), "--out", str(out),
             "--caps", "walk=10,bike=55,car=195,bus=100"],
        )
        assert result.exit_code == 0, result.output

    def test_bad_caps_spec_exit_2(self, runner, tmp_path, synthetic_survey):
        survey = tmp_path / "survey.csv"
        survey.write_text(synthetic_survey)
        result = runner.invoke(
            main,
            ["calibrate", "--survey", str(survey), "--out", str(tmp_path / "c.json"),
             "--caps", "walk=ten"],
        )
        assert result.exit_code == 2
        assert "invalid caps spec" in result.output

    def test_bad_schema_exit_2(self, runner, tmp_path):
        survey = tmp_path / "survey.csv"
        survey.write_text("foo,bar\n1,2\n")
        result = runner.invoke(
            main, ["calibrate", "--survey", str(survey), "--out", str(tmp_path / "c.json")]
        )
        assert result.exit_code == 2
        assert "unrecognized survey schema" in result.output

    def test_missing_survey_file(self, runner, tmp_path):
        result = runner.invoke(
            main, ["calibrate", "--survey", str(tmp_path / "nope.csv"), "--out", "x"]
        )
        assert result.exit_code == 2


class TestRun:
    def test_csv_outputs(self, runner, tmp_path):
        scenario = write_scenario(tmp_path / "scn.json")
        out = tmp_path / "out"
        result = runner.invoke(main, ["run", "--scenario", scenario, "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert (out / "seed_1.csv").exists()
        assert (out / "seed_2.csv").exists()
        assert (out / "aggregate.csv").exists()
        lines = (out / "seed_1.csv").read_text().splitlines()
        assert len(lines) == 6  # header + 5 ticks

    def test_json_format(self, runner, tmp_path):
        scenario = write_scenario(tmp_path / "scn.json")
        out = tmp_path / "out"
        result = runner.invoke(
            main, ["run", "--scenario", scenario, "--out", str(out), "--format", "json"]
        )
        assert result.exit_code == 0, result.output
        data = json.loads((out / "seed_1.json").read_text())
        assert len(data) == 5
        assert not (out / "aggregate.csv").exists()

    def test_runs_deterministic(self, runner, tmp_path):
        scenario = write_scenario(tmp_path / "scn.json")
        texts = []
        for sub in ("a", "b"):
            out = tmp_path / sub
            assert runner.invoke(main, ["run", "--scenario", scenario, "--out", str(out)]).exit_code == 0
            texts.append((out / "seed_1.csv").read_bytes())
        assert texts[0] == texts[1]

    def test_invalid_scenario_exit_2(self, runner, tmp_path):
        scenario = write_scenario(tmp_path / "scn.json", {"config": {"n_agent": 5}})
        result = runner.invoke(main, ["run", "--scenario", scenario])
        assert result.exit_code == 2
        assert "invalid scenario" in result.output

    def test_unparseable_json_exit_2(self, runner, tmp_path):
        path = tmp_path / "scn.json"
        path.write_text("{nope")
        result = runner.invoke(main, ["run", "--scenario", str(path)])
        assert result.exit_code == 2

    def test_custom_calibration_file(self, runner, tmp_path, calib):
        calib_path = tmp_path / "calib.json"
        calib_path.write_text(calib.to_json())
        scenario = write_scenario(tmp_path / "scn.json")
        result = runner.invoke(
            main,
            ["run", "--scenario", scenario, "--calibration", str(calib_path),
             "--out", str(tmp_path / "out")],
        )
        assert result.exit_code == 0, result.output

    def test_corrupt_calibration_exit_2(self, runner, tmp_path):
        calib_path = tmp_path / "calib.json"
        calib_path.write_text('{"wrong": true}')
        scenario = write_scenario(tmp_path / "scn.json")
        result = runner.invoke(
            main, ["run", "--scenario", scenario, "--calibration", str(calib_path)]
        )
        assert result.exit_code == 2
        assert "cannot load calibration" in result.output


class TestReport:
    def test_figures_next_to_series(self, runner, tmp_path):
        scenario = write_scenario(tmp_path / "scn.json")
        out = tmp_path / "out"
        assert runner.invoke(main, ["run", "--scenario", scenario, "--out", str(out)]).exit_code == 0
        result = runner.invoke(
            main, ["report", "--series", str(out / "seed_1.csv"), "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        for name in ("modal_shares.png", "satisfaction.png", "decisions.png"):
            assert (out / name).exists()

    def test_foreign_csv_exit_2(self, runner, tmp_path):
        path = tmp_path / "junk.csv"
        path.write_text("a,b\n1,2\n")
        result = runner.invoke(main, ["report", "--series", str(path)])
        assert result.exit_code == 2


class TestTopLevel:
    def test_version(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0 and "modalsim" in result.output

    def test_help_lists_subcommands(self, runner):
        result = runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        for cmd in ("calibrate", "run", "report", "serve"):
            assert cmd in result.output

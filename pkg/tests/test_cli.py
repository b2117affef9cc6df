import json

from click.testing import CliRunner

from rdematel.cli import cli
from rdematel.fixtures import _read

import pytest


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def bundle_path(tmp_path):
    p = tmp_path / "study.json"
    p.write_bytes(_read("fbsc_study.json"))
    return str(p)


class TestValidate:
    def test_valid_bundle(self, runner, bundle_path):
        result = runner.invoke(cli, ["validate", bundle_path])
        assert result.exit_code == 0
        assert "OK" in result.output

    def test_invalid_bundle_exits_2_with_diagnostics(self, runner, tmp_path):
        doc = json.loads(_read("fbsc_study.json"))
        doc["criteria"][1]["id"] = "I1"
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(doc))
        result = runner.invoke(cli, ["validate", str(p)])
        assert result.exit_code == 2
        assert "duplicate" in result.output

    def test_out_of_scale_judgment_names_cell(self, runner, tmp_path):
        doc = {
            "scale": {"min": 0, "max": 4},
            "criteria": [{"id": "A"}, {"id": "B"}],
            "respondents": [{"id": "r1"}],
            "matrices": {"r1": [[0, 5], [1, 0]]},
        }
        p = tmp_path / "scale.json"
        p.write_text(json.dumps(doc))
        result = runner.invoke(cli, ["validate", str(p)])
        assert result.exit_code == 2
        assert "r1" in result.output

    def test_missing_file_exits_3(self, runner):
        result = runner.invoke(cli, ["validate", "/nonexistent/bundle.json"])
        assert result.exit_code == 3


class TestAnalyze:
    def test_writes_artifact_set(self, runner, bundle_path, tmp_path):
        out = tmp_path / "out"
        result = runner.invoke(cli, ["analyze", bundle_path, "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert (out / "results.csv").exists()
        assert (out / "report.json").exists()
        assert (out / "network.dot").exists()
        assert "tau_strategy: max-total-sum" in result.output

    def test_byte_identical_reruns(self, runner, bundle_path, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            assert runner.invoke(cli, ["analyze", bundle_path, "--out", str(out)]).exit_code == 0
        for name in ("results.csv", "report.json", "network.dot"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_config_flags_respected(self, runner, bundle_path, tmp_path):
        out = tmp_path / "out"
        result = runner.invoke(
            cli,
            ["analyze", bundle_path, "--tau", "max-upper-sum", "--crispify", "global-crisp",
             "--threshold", "fixed:0.5", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        report = json.loads((out / "report.json").read_text())
        assert report["config"]["tau_strategy"] == "max-upper-sum"
        assert report["config"]["crispify_mode"] == "global-crisp"
        assert report["config"]["threshold_q"] == 0.5

    def test_env_var_configuration(self, runner, bundle_path, tmp_path):
        out = tmp_path / "out"
        result = runner.invoke(
            cli,
            ["analyze", bundle_path, "--out", str(out)],
            env={"RDEMATEL_ANALYZE_TAU_STRATEGY": "max-upper-sum"},
            auto_envvar_prefix="RDEMATEL",
        )
        assert result.exit_code == 0, result.output
        report = json.loads((out / "report.json").read_text())
        assert report["config"]["tau_strategy"] == "max-upper-sum"

    def test_one_criterion_bundle_rejected(self, runner, tmp_path):
        doc = {
            "criteria": [{"id": "A"}],
            "respondents": [],
            "rough_group": [[[0, 0]]],
        }
        p = tmp_path / "tiny.json"
        p.write_text(json.dumps(doc))
        result = runner.invoke(cli, ["analyze", str(p), "--out", str(tmp_path / "o")])
        assert result.exit_code == 2


class TestGraph:
    def test_dot_on_stdout(self, runner, bundle_path):
        result = runner.invoke(cli, ["graph", bundle_path])
        assert result.exit_code == 0
        assert result.output.startswith("digraph influence {")

    def test_fixed_threshold_above_max_empties_edges(self, runner, bundle_path):
        result = runner.invoke(cli, ["graph", bundle_path, "--threshold", "fixed:99"])
        assert result.exit_code == 0
        assert "->" not in result.output


class TestReproducePaper:
    def test_default_run_passes(self, runner, tmp_path):
        out = tmp_path / "repro"
        result = runner.invoke(cli, ["reproduce-paper", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "crisp_x: NOT-COMPARABLE" in result.output
        assert "FAIL" not in result.output.replace("NOT-COMPARABLE", "")
        assert (out / "deviations.csv").exists()

    def test_literal_tau_reading_fails(self, runner):
        result = runner.invoke(cli, ["reproduce-paper", "--tau", "max-upper-sum"])
        assert result.exit_code == 2
        assert "FAIL" in result.output


class TestSynth:
    def test_round_trips_through_validate_and_analyze(self, runner, tmp_path):
        p = tmp_path / "synth.json"
        result = runner.invoke(cli, ["synth", "--criteria", "4", "--experts", "5", "--seed", "7", "--out", str(p)])
        assert result.exit_code == 0
        assert runner.invoke(cli, ["validate", str(p)]).exit_code == 0
        out = tmp_path / "out"
        assert runner.invoke(cli, ["analyze", str(p), "--out", str(out)]).exit_code == 0

    def test_seed_determinism(self, runner):
        r1 = runner.invoke(cli, ["synth", "--criteria", "3", "--experts", "2", "--seed", "42"])
        r2 = runner.invoke(cli, ["synth", "--criteria", "3", "--experts", "2", "--seed", "42"])
        r3 = runner.invoke(cli, ["synth", "--criteria", "3", "--experts", "2", "--seed", "43"])
        assert r1.output == r2.output
        assert r1.output != r3.output

import importlib
import io
import json

import polars as pl
import pytest

from app import app
from physics import vacuum
from physics.errors import NonConvergence
from physics.vacuum import ChargedFieldSpec
from physics.verify import CheckResult

QUIET = ["--log-level", "ERROR"]

verify_commands = importlib.import_module("app.cli.verify")
common = importlib.import_module("app.cli.common")


def _json(runner, *args):
    result = runner.invoke(app, [*QUIET, *args])
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def test_blackbody_csv(runner):
    args = ["blackbody", "--x-min", "0.01", "--x-max", "10", "--points", "100"]
    result = runner.invoke(app, [*QUIET, *args, "--format", "csv"])
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert lines[0] == "# points=100"
    assert "# x_min=0.01" in lines
    frame = pl.read_csv(io.StringIO(result.stdout), comment_prefix="#")
    assert frame.columns == ["x", "occupation", "energy", "energy_with_zpe", "excess"]
    assert frame.height == 100
    assert frame["x"][0] == 0.01
    assert frame["x"][-1] == 10.0
    # identical invocations give identical bytes
    assert runner.invoke(app, [*QUIET, *args, "--format", "csv"]).stdout == (
        result.stdout
    )


def test_blackbody_si_temperature(runner):
    doc = _json(
        runner,
        "blackbody",
        "--temperature-k",
        "300",
        "--omega-min",
        "1e13",
        "--omega-max",
        "1e14",
        "--points",
        "5",
    )
    assert doc["columns"][:2] == ["omega", "x"]
    assert doc["params"]["temperature_k"] == 300.0


def test_blackbody_pole_is_a_validation_error(runner):
    result = runner.invoke(
        app, [*QUIET, "blackbody", "--x-min", "-1", "--x-max", "1", "--points", "3"]
    )
    assert result.exit_code == 2


def test_twoslit_json(runner):
    doc = _json(
        runner,
        "twoslit",
        "--lambda-um",
        "0.58",
        "--d-um",
        "50",
        "--w-um",
        "5",
        "--D-m",
        "1",
        "--mode",
        "closed",
        "--format",
        "json",
    )
    assert set(doc) == {"params", "columns", "rows"}
    assert doc["columns"] == ["x_m", "intensity"]
    assert len(doc["rows"]) == 1001
    assert doc["params"]["D_m"] == 1.0
    intensities = [row[1] for row in doc["rows"]]
    assert max(intensities) == intensities[500]


def test_twoslit_bad_geometry(runner):
    result = runner.invoke(app, [*QUIET, "twoslit", "--w-um", "60"])
    assert result.exit_code == 2


def test_pair_rate_record(runner):
    doc = _json(runner, "pair-rate", "--eps", "1", "--spin", "0")
    assert doc["columns"][:3] == ["value", "terms_used", "last_term"]
    assert len(doc["rows"]) == 1
    expected = vacuum.pair_rate_boson(1.0, ChargedFieldSpec()).value
    assert doc["rows"][0][0] == pytest.approx(expected, rel=1e-15)


def test_pair_rate_validation(runner):
    assert runner.invoke(app, [*QUIET, "pair-rate", "--eps", "0"]).exit_code == 2
    assert runner.invoke(app, [*QUIET, "pair-rate", "--spin", "0.3"]).exit_code == 2


def test_non_convergence_exit_code(runner, monkeypatch):
    def exhausted(*_):
        raise NonConvergence("budget exhausted")

    monkeypatch.setattr(vacuum, "pair_rate_spin", exhausted)
    assert runner.invoke(app, [*QUIET, "pair-rate"]).exit_code == 3


def test_usage_error(runner):
    assert runner.invoke(app, ["pair-rate", "--no-such-flag"]).exit_code == 2


@pytest.mark.parametrize(
    "args, column",
    [
        (["pair-rate-1d", "--eps", "2"], "series_value"),
        (["vacuum-energy", "--points", "3"], "energy_density"),
        (["magnetization", "--b-tesla-critical", "0.5"], "magnetization"),
        (["unruh", "--accel-m-s2", "9.81", "--eps", "0.5"], "temperature_k"),
        (["path", "--accel", "2", "--branch", "backward"], "interval"),
        (["single-slit", "--minima", "2"], "intensity"),
        (["aperture", "--rings", "2", "--points", "11"], "intensity"),
        (["state-count", "--levels", "3"], "radius_m"),
        (["maxwell-check", "--helicity", "-1"], "imag"),
    ],
)
def test_every_command_emits_a_document(runner, args, column):
    doc = _json(runner, *args)
    assert column in doc["columns"]
    assert doc["rows"]


def test_single_slit_reports_the_first_minimum(runner):
    doc = _json(runner, "single-slit")
    assert doc["params"]["first_minimum_over_D"] == pytest.approx(4.825e-5, rel=1e-9)


def test_maxwell_check_commutator(runner):
    doc = _json(
        runner, "maxwell-check", "--direction", "1", "1", "0", "--helicity", "-1"
    )
    rows = {row[0]: row[1:] for row in doc["rows"]}
    assert rows["spin_algebra_residual"] == [0.0, 0.0]
    assert rows["commutator_forward-forward"] == pytest.approx([0.0, -1.0], abs=1e-12)
    assert rows["expected_commutator"] == [0.0, -1.0]
    assert rows["commutator_backward-backward"] == pytest.approx(
        [0.0, -1.0], abs=1e-12
    )
    assert not [name for name in rows if "mixed" in name]


def test_path_interval_is_invariant(runner):
    doc = _json(runner, "path", "--accel", "2", "--points", "5")
    assert [row[2] for row in doc["rows"]] == pytest.approx([0.25] * 5, rel=1e-12)


def test_output_file(runner, tmp_path):
    path = tmp_path / "rate.json"
    result = runner.invoke(app, [*QUIET, "pair-rate-1d", "--output", str(path)])
    assert result.exit_code == 0
    assert result.stdout == ""
    assert json.loads(path.read_text())["columns"][0] == "value"


def test_config_file_and_flag_precedence(runner, tmp_path):
    path = tmp_path / "params.json"
    path.write_text(json.dumps({"eps": 2.0, "spin": 0.5}))
    doc = _json(runner, "--config", str(path), "pair-rate")
    assert doc["params"]["eps"] == 2.0
    assert doc["params"]["spin"] == 0.5
    doc = _json(runner, "--config", str(path), "pair-rate", "--eps", "0.5")
    assert doc["params"]["eps"] == 0.5


def test_log_level_from_environment(runner, monkeypatch):
    monkeypatch.setenv("ZPO_LOG_LEVEL", "ERROR")
    result = runner.invoke(app, ["pair-rate"])
    assert result.exit_code == 0


def test_verify_maxwell(runner):
    result = runner.invoke(app, [*QUIET, "verify", "maxwell"])
    assert result.exit_code == 0, result.output
    frame = pl.read_csv(io.StringIO(result.stdout), comment_prefix="#")
    assert frame["passed"].cast(pl.String).to_list() == ["true"] * frame.height
    assert set(frame["suite"].to_list()) == {"maxwell"}


def test_verify_failure_exit_code(runner, monkeypatch):
    failing = CheckResult(suite="maxwell", name="x", passed=False, measured=1, limit=0)
    monkeypatch.setattr(verify_commands, "run_suite", lambda _: [failing])
    result = runner.invoke(app, [*QUIET, "verify", "maxwell"])
    assert result.exit_code == 1


def test_verify_unknown_suite(runner):
    assert runner.invoke(app, ["verify", "optics"]).exit_code == 2


def test_run_config_names_the_invoked_command(runner, monkeypatch):
    logged = []
    monkeypatch.setattr(
        common.logger, "debug", lambda message, *args: logged.append(message % args)
    )
    result = runner.invoke(app, [*QUIET, "pair-rate-1d", "--eps", "0.5"])
    assert result.exit_code == 0, result.output
    config = json.loads(logged[-1].removeprefix("Emitting "))
    assert config["subcommand"] == "pair-rate-1d"
    assert config["parameters"]["eps"] == 0.5
    assert config["output_format"] == "json"


def test_unknown_log_level_in_environment_falls_back(runner, monkeypatch):
    monkeypatch.setenv("ZPO_LOG_LEVEL", "verbose")
    result = runner.invoke(app, ["pair-rate-1d"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["columns"][0] == "value"


def test_every_command_has_help(runner):
    names = {command.name for command in app.registered_commands}
    assert names == {
        "blackbody",
        "vacuum-energy",
        "magnetization",
        "pair-rate",
        "pair-rate-1d",
        "unruh",
        "path",
        "twoslit",
        "single-slit",
        "aperture",
        "maxwell-check",
        "state-count",
        "verify",
    }
    for command in app.registered_commands:
        assert command.help
        result = runner.invoke(app, [command.name, "--help"])
        assert result.exit_code == 0, result.output

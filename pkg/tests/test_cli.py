import json
import re

from click.testing import CliRunner

from yangw.cli import main


def strip_timing(report):
    def clean(obj):
        if isinstance(obj, dict):
            return {k: clean(v) for k, v in obj.items()
                    if k not in ("wall_ms", "report")}
        if isinstance(obj, list):
            return [clean(x) for x in obj]
        return obj
    return clean(report)


def test_jacobi_pass_exit_zero(tmp_path):
    runner = CliRunner()
    rep = tmp_path / "rep.json"
    res = runner.invoke(main, ["jacobi", "--m", "2", "--n", "2",
                               "--u", "2,1", "--q", "1,1",
                               "--report", str(rep)])
    assert res.exit_code == 0, res.output
    data = json.loads(rep.read_text())
    assert data["summary"]["failed"] == 0
    assert data["summary"]["total"] == data["summary"]["passed"]


def test_invalid_config_usage_error():
    runner = CliRunner()
    res = runner.invoke(main, ["miura", "--u", "1,2", "--q", "1,1"])
    assert res.exit_code == 2
    res = runner.invoke(main, ["jacobi", "--m", "nope"])
    assert res.exit_code == 2


def test_report_deterministic(tmp_path):
    runner = CliRunner()
    reports = []
    for name in ("a.json", "b.json"):
        rep = tmp_path / name
        res = runner.invoke(main, ["presentation", "--m", "2", "--n", "2",
                                   "--degree", "1", "--report", str(rep)])
        assert res.exit_code == 0, res.output
        reports.append(strip_timing(json.loads(rep.read_text())))
    assert json.dumps(reports[0], sort_keys=True) == json.dumps(reports[1], sort_keys=True)


def test_failing_variant_exits_nonzero(tmp_path):
    runner = CliRunner()
    rep = tmp_path / "rep.json"
    res = runner.invoke(main, ["ev", "--m", "2", "--n", "3", "--degree", "1",
                               "--variant", "printed", "--report", str(rep)])
    assert res.exit_code == 1
    data = json.loads(rep.read_text())
    assert data["summary"]["failed"] > 0
    failing = [r for r in data["checks"] if r["status"] == "fail"]
    assert any("counterexample" in r for r in failing)


def test_d0_closed_command():
    runner = CliRunner()
    res = runner.invoke(main, ["d0-closed", "--u", "3,1", "--q", "2,1"])
    assert res.exit_code == 0, res.output
    assert "d0-closed" in res.output

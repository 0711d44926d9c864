"""测试命令行：输出与退出码"""
import json

import pytest
from click.testing import CliRunner

import cli as cli_module
import controllers.verification_controller as controller_module
from cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, cli
from services.report_storage_service import ReportStorageService


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def test_nf(runner):
    result = runner.invoke(cli, ["nf", "z1'*z1 + z2'*z2", "--json"])
    assert result.exit_code == EXIT_OK
    payload = json.loads(result.stdout)
    assert payload["kind"] == "algebra"


def test_nf_syntax_error_shows_caret(runner):
    result = runner.invoke(cli, ["nf", "z1 + * z2"])
    assert result.exit_code == EXIT_USAGE
    assert "^" in result.stderr


def test_nf_type_error(runner):
    assert runner.invoke(cli, ["nf", "t + z1"]).exit_code == EXIT_USAGE


def test_star_json(runner):
    result = runner.invoke(cli, ["star", "z1", "z2", "--json"])
    assert result.exit_code == EXIT_OK
    assert "u" in json.loads(result.stdout)["text"]


def test_star_rejects_forms(runner):
    assert runner.invoke(cli, ["star", "d(z1)", "z2"]).exit_code == EXIT_USAGE


@pytest.mark.parametrize("args", [
    ["lconn", "-n", "1"], ["lconn", "-n", "-2", "--deformed"], ["idem", "-n", "1"],
])
def test_checked_commands_pass(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == EXIT_OK, result.output


def test_lconn_json(runner):
    payload = json.loads(runner.invoke(cli, ["lconn", "-n", "2", "--json"]).stdout)
    assert payload["pairs"] == 4
    assert all(check["passed"] for check in payload["checks"])


def test_lv(runner):
    result = runner.invoke(cli, ["lv", "z2", "1", "--json"])
    assert result.exit_code == EXIT_OK
    assert runner.invoke(cli, ["lv", "z1", "2"]).exit_code == EXIT_USAGE


def test_ver_and_connection(runner):
    assert runner.invoke(cli, ["ver", "d(z1)"]).exit_code == EXIT_OK
    assert runner.invoke(cli, ["ver", "z1"]).exit_code == EXIT_USAGE
    assert runner.invoke(cli, ["connection", "--deformed"]).exit_code == EXIT_OK
    assert runner.invoke(cli, ["connection", "--alpha", "d(z1)"]).exit_code == EXIT_USAGE


def test_covd_and_gauge(runner):
    assert runner.invoke(cli, ["covd", "z1"]).exit_code == EXIT_OK
    assert runner.invoke(cli, ["gauge", "z"]).exit_code == EXIT_OK
    assert runner.invoke(cli, ["gauge", "z1"]).exit_code == EXIT_USAGE


def test_verify_tampered_exits_failed(runner):
    result = runner.invoke(cli, ["verify", "strong-connection", "--nmax", "1", "--tamper", "--json"])
    assert result.exit_code == EXIT_FAILED
    assert json.loads(result.stdout)["status"] == "failed"


def test_verify_result_id_tampered(runner):
    result = runner.invoke(cli, ["verify", "def2.1", "--nmax", "1", "--tamper", "--json"])
    assert result.exit_code == EXIT_FAILED
    report = json.loads(result.stdout)
    assert report["suite_id"] == "def2.1"
    assert report["status"] == "failed"
    assert any(check["residual"] for check in report["checks"])


def test_domain_errors_exit_usage(runner):
    result = runner.invoke(cli, ["covd", "d(z1)"])
    assert result.exit_code == EXIT_USAGE
    assert "水平" in result.stderr
    assert runner.invoke(cli, ["covd", "d(z1)", "--deformed"]).exit_code == EXIT_USAGE
    assert runner.invoke(cli, ["covd", "z1", "--alpha", "z1 * d(z1)"]).exit_code == EXIT_USAGE
    assert runner.invoke(cli, ["lv", "z1 + z1s", "1"]).exit_code == EXIT_USAGE


def test_zero_denominator_exits_usage(runner):
    result = runner.invoke(cli, ["nf", "1/0"])
    assert result.exit_code == EXIT_USAGE
    assert "^" in result.stderr
    assert runner.invoke(cli, ["covd", "z1 * 2/0"]).exit_code == EXIT_USAGE


def test_verify_unknown_suite(runner):
    result = runner.invoke(cli, ["verify", "bogus"])
    assert result.exit_code == EXIT_USAGE


@pytest.fixture
def tmp_storage(monkeypatch, tmp_path):
    def factory():
        return ReportStorageService(str(tmp_path / "reports"))

    monkeypatch.setattr(controller_module, "ReportStorageService", factory)
    monkeypatch.setattr(cli_module, "ReportStorageService", factory)
    return tmp_path


def test_verify_with_output(runner, tmp_storage):
    target = tmp_storage / "scalars.json"
    result = runner.invoke(cli, ["verify", "scalars", "--seed", "5", "--output", str(target)])
    assert result.exit_code == EXIT_OK
    assert json.loads(target.read_text(encoding="utf-8"))["seed"] == 5


def test_suites_and_history(runner, tmp_storage):
    assert "homotopy" in runner.invoke(cli, ["suites"]).stdout
    assert "暂无验证历史" in runner.invoke(cli, ["history"]).stdout
    runner.invoke(cli, ["verify", "scalars", "--output", str(tmp_storage / "r.json")])
    assert "scalars" in runner.invoke(cli, ["history"]).stdout

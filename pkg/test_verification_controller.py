"""测试验证控制器：套件调度、负对照与异常隔离"""
import pytest

from controllers.verification_controller import VerificationController, available_suites
from controllers.verification_suites import SUITE_ALIASES, SUITES
from models.report_models import ReportStatus, SuiteRequest
from services.report_storage_service import ReportStorageService
from utils.errors import UnknownSuiteError


@pytest.fixture
def controller(tmp_path):
    return VerificationController(ReportStorageService(str(tmp_path)))


def test_available_suites():
    suites = available_suites()
    assert suites[0] == "scalars"
    assert suites[-1] == "all"
    assert "homotopy" in suites and "gauge-intertwine" in suites


def test_result_ids_resolve_to_suites(controller):
    for suite_id in ("def2.1", "lemma4.15", "prop5.1", "prop6.3"):
        assert suite_id in available_suites()
    for suite_id, target in SUITE_ALIASES.items():
        assert target in SUITES
        assert controller.resolve(suite_id) == [target]
    assert controller.resolve("all") == list(SUITES)


async def test_scalars_suite_passes(controller):
    report = await controller.run_suite(SuiteRequest(suite_id="scalars", seed=3))
    assert report.status == ReportStatus.PASSED
    assert report.passed
    assert report.seed == 3
    assert report.checks == sorted(report.checks, key=lambda check: check.name)
    assert report.bounds["degree"] == controller.settings.degree_bound


async def test_same_seed_same_checks(controller):
    first = await controller.run_suite(SuiteRequest(suite_id="scalars", seed=11))
    second = await controller.run_suite(SuiteRequest(suite_id="scalars", seed=11))
    assert [c.dict() for c in first.checks] == [c.dict() for c in second.checks]


async def test_unknown_suite(controller):
    with pytest.raises(UnknownSuiteError):
        await controller.run_suite(SuiteRequest(suite_id="no-such-suite"))


async def test_tampered_strong_connection_fails(controller):
    report = await controller.run_suite(SuiteRequest(suite_id="strong-connection", nmax=2, tamper=True))
    assert report.status == ReportStatus.FAILED
    assert report.failed_checks
    assert all("splitting[n=1" in check.name for check in report.failed_checks)


async def test_tampered_result_id_fails(controller):
    report = await controller.run_suite(SuiteRequest(suite_id="def2.1", nmax=2, tamper=True))
    assert report.suite_id == "def2.1"
    assert report.status == ReportStatus.FAILED
    assert all("splitting[n=1" in check.name for check in report.failed_checks)


async def test_suite_exception_becomes_error_report(controller, monkeypatch):
    def broken(ctx):
        raise ArithmeticError("boom")

    monkeypatch.setitem(SUITES, "scalars", broken)
    report = await controller.run_suite(SuiteRequest(suite_id="scalars"))
    assert report.status == ReportStatus.ERROR
    assert "boom" in report.error_message
    assert report.failed_checks[0].name == "scalars:exception"


async def test_run_and_save(controller, tmp_path):
    report, path = await controller.run_and_save(SuiteRequest(suite_id="scalars"))
    assert path.startswith(str(tmp_path))
    history = await controller.storage_service.load_history()
    assert len(history) == 1
    assert history[0]["suite_id"] == "scalars"
    assert history[0]["status"] == report.status.value

"""测试报告存储：原子写入、历史追加与损坏文件"""
import os

import pytest

from models.report_models import CheckResult, ReportStatus, VerificationReport
from services.report_storage_service import ReportStorageService


@pytest.fixture
def storage(tmp_path):
    return ReportStorageService(str(tmp_path / "reports"))


def sample_report(status=ReportStatus.PASSED):
    checks = [CheckResult.ok("b_check"), CheckResult.ok("a_check", count=2)]
    if status is ReportStatus.FAILED:
        checks.append(CheckResult.fail("c_check", "z1 - z2"))
    return VerificationReport(suite_id="demo", status=status, checks=checks, wall_time_s=0.5,
                              bounds={"degree": 2, "nmax": 3}, seed=42)


def test_creates_reports_dir(storage):
    assert os.path.isdir(storage.reports_dir)


async def test_save_and_load_report(storage):
    report = sample_report()
    path = await storage.save_report(report)
    assert os.path.exists(path)
    loaded = await storage.load_report(path)
    assert loaded.suite_id == "demo"
    assert [check.name for check in loaded.checks] == ["a_check", "b_check"]
    assert loaded.checks[0].details == {"count": 2}


async def test_history_is_appended(storage):
    await storage.save_report(sample_report())
    await storage.save_report(sample_report(ReportStatus.FAILED))
    history = await storage.load_history()
    assert [entry["status"] for entry in history] == ["passed", "failed"]
    assert history[1]["checks_failed"] == 1
    assert history[1]["checks_total"] == 3
    assert history[0]["seed"] == 42
    assert history[0]["bounds"] == {"degree": 2, "nmax": 3}


async def test_explicit_path(storage, tmp_path):
    target = str(tmp_path / "out" / "report.json")
    assert await storage.save_report(sample_report(), target) == target
    assert os.path.exists(target)
    assert not [name for name in os.listdir(tmp_path / "out") if name.endswith(".tmp")]


async def test_missing_and_corrupt_files(storage, tmp_path):
    assert await storage.load_history() == []
    corrupt = tmp_path / "broken.json"
    corrupt.write_text("{not json", encoding="utf-8")
    assert await storage.load_json_file(str(corrupt)) == []
    assert await storage.load_report(str(corrupt)) is None

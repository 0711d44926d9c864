from typing import Any, Dict, Iterable, List

from models.report_models import CheckResult, VerificationReport
from utils.logger import get_logger

MAX_PASSED_SHOWN = 20


class ReportView:
    """报告视图类，负责把验证报告与计算结果显示给用户"""

    def __init__(self, verbose: bool = False):
        self.verbose = verbose
        self.logger = get_logger('report_view')

    def display_report(self, report: VerificationReport):
        """显示套件报告：失败项全部列出，通过项在 verbose 时列出"""
        self.logger.info(f"显示验证报告: {report.suite_id} ({report.status.value})",
                         source_file=__file__, source_module="ReportView")

        failed = report.failed_checks
        print("\n" + "=" * 60)
        print(f"套件: {report.suite_id}")
        print(f"状态: {report.status.value}")
        print(f"检查: {len(report.checks)} 项，失败 {len(failed)} 项")
        print(f"耗时: {report.wall_time_s:.3f}s   种子: {report.seed}")
        print(f"上限: {self._bounds_text(report.bounds)}")
        if report.error_message:
            print("-" * 40)
            print(f"错误: {report.error_message}")

        if failed:
            print("-" * 40)
            print("失败的检查:")
            for check in failed:
                print(f"  ✗ {check.name}")
                print(f"      残差: {check.residual}")

        if self.verbose:
            passed = [check for check in report.checks if check.passed]
            print("-" * 40)
            print("通过的检查:")
            for check in passed[:MAX_PASSED_SHOWN]:
                print(f"  ✓ {check.name}")
            if len(passed) > MAX_PASSED_SHOWN:
                print(f"  ... 另有 {len(passed) - MAX_PASSED_SHOWN} 项")

        if report.certificate:
            print("-" * 40)
            print("证书:")
            for key, value in report.certificate.items():
                print(f"  {key}: {value}")
        print("=" * 60 + "\n")

    @staticmethod
    def _bounds_text(bounds: Dict[str, int]) -> str:
        return ", ".join(f"{k}={v}" for k, v in sorted(bounds.items())) or "-"

    @staticmethod
    def display_checks(title: str, checks: Iterable[CheckResult]):
        """显示一组单独运行的检查（CLI 的 idem、galois-check 等子命令）"""
        checks = list(checks)
        print("\n" + "=" * 50)
        print(title)
        print("-" * 30)
        for check in checks:
            mark = "✓" if check.passed else "✗"
            line = f"  {mark} {check.name}"
            if not check.passed:
                line += f"  残差: {check.residual}"
            print(line)
        print("=" * 50 + "\n")

    @staticmethod
    def display_value(label: str, text: str):
        print(f"{label}: {text}")

    @staticmethod
    def display_suite_list(suite_ids: List[str]):
        print("\n可用的验证套件:")
        print("-" * 30)
        for i, suite_id in enumerate(suite_ids, 1):
            print(f"{i}. {suite_id}")
        print()

    @staticmethod
    def display_history(entries: List[Dict[str, Any]]):
        if not entries:
            print("暂无验证历史")
            return
        print("\n" + "=" * 50)
        print("验证历史:")
        print("-" * 30)
        for entry in entries:
            print(f"{entry.get('timestamp', '未知')}  {entry.get('suite_id', '?')}  "
                  f"{entry.get('status', '?')}  ({entry.get('checks_failed', 0)}/{entry.get('checks_total', 0)} 失败)")
        print("=" * 50 + "\n")

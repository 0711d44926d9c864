"""验证控制器 - 套件调度、异常隔离与报告组装"""
import asyncio
import time
from typing import Dict, List, Optional, Tuple

from controllers.verification_suites import SUITE_ALIASES, SUITES, SuiteContext, SuiteOutcome
from models.report_models import CheckResult, ReportStatus, SuiteRequest, VerificationReport
from services.report_storage_service import ReportStorageService
from utils.config import get_settings
from utils.enhanced_logger import logger
from utils.errors import UnknownSuiteError

ALL_SUITES = "all"


def available_suites() -> List[str]:
    return list(SUITES) + list(SUITE_ALIASES) + [ALL_SUITES]


class VerificationController:
    """运行验证套件；套件内的异常记录为失败的检查，不向上抛出"""

    def __init__(self, storage_service: Optional[ReportStorageService] = None):
        self.settings = get_settings()
        self.storage_service = storage_service
        logger.info("VerificationController initialized successfully")

    def resolve(self, suite_id: str) -> List[str]:
        if suite_id == ALL_SUITES:
            return list(SUITES)
        suite_id = SUITE_ALIASES.get(suite_id, suite_id)
        if suite_id not in SUITES:
            logger.warning(f"未知的验证套件: {suite_id}")
            raise UnknownSuiteError(suite_id, available_suites())
        return [suite_id]

    def context_for(self, request: SuiteRequest) -> SuiteContext:
        return SuiteContext(
            seed=self.settings.seed if request.seed is None else request.seed,
            degree=request.degree_bound or self.settings.degree_bound,
            nmax=request.nmax or self.settings.nmax,
            tamper=request.tamper,
        )

    def bounds(self, context: SuiteContext) -> Dict[str, int]:
        return {
            "degree": context.degree,
            "nmax": context.nmax,
            "gb_degree_bound": self.settings.gb_degree_bound,
        }

    def execute(self, suite_id: str, context: SuiteContext) -> SuiteOutcome:
        """同步执行单个套件"""
        logger.log_process_step(f"suite:{suite_id}", "started", {
            "seed": context.seed,
            "degree": context.degree,
            "nmax": context.nmax,
            "tamper": context.tamper
        })
        logger.start_timer(f"suite:{suite_id}")
        try:
            outcome = SUITES[suite_id](context)
        except Exception as e:
            logger.log_error_with_context(e, {
                "function": "execute",
                "suite_id": suite_id,
                "seed": context.seed
            })
            logger.log_process_step(f"suite:{suite_id}", "failed", {
                "error_type": type(e).__name__,
                "error_message": str(e)
            })
            message = f"{type(e).__name__}: {e}"
            return SuiteOutcome([CheckResult.fail(f"{suite_id}:exception", message)], error=message)

        elapsed = logger.end_timer(f"suite:{suite_id}")
        failed = sum(1 for check in outcome.checks if not check.passed)
        logger.log_process_step(f"suite:{suite_id}", "completed", {
            "checks": len(outcome.checks),
            "failed": failed,
            "elapsed_s": round(elapsed, 4)
        })
        return outcome

    async def run_suite(self, request: SuiteRequest) -> VerificationReport:
        """运行一个套件或 all；多个套件在线程中并发执行，按名称确定性合并"""
        suite_ids = self.resolve(request.suite_id)
        context = self.context_for(request)
        logger.log_computation_input(request.dict(), source="verification_request")
        start = time.perf_counter()

        outcomes = await asyncio.gather(*(
            asyncio.to_thread(self.execute, suite_id, self.context_for(request)) for suite_id in suite_ids
        ))
        report = self._assemble(request.suite_id, list(zip(suite_ids, outcomes)), context,
                                time.perf_counter() - start)

        logger.log_performance_metrics("run_suite", {
            "suite_id": report.suite_id,
            "suites": len(suite_ids),
            "checks": len(report.checks),
            "failed": len(report.failed_checks),
            "wall_time_s": report.wall_time_s
        })
        return report

    async def run_all(self, **bounds) -> VerificationReport:
        return await self.run_suite(SuiteRequest(suite_id=ALL_SUITES, **bounds))

    async def run_and_save(self, request: SuiteRequest, path: Optional[str] = None) -> Tuple[VerificationReport, str]:
        report = await self.run_suite(request)
        storage = self.storage_service or ReportStorageService()
        saved = await storage.save_report(report, path)
        return report, saved

    def _assemble(self, suite_id: str, outcomes: List[Tuple[str, SuiteOutcome]], context: SuiteContext,
                  wall_time: float) -> VerificationReport:
        prefixed = len(outcomes) > 1
        checks: List[CheckResult] = []
        certificates = {}
        errors = []
        for name, outcome in outcomes:
            for check in outcome.checks:
                checks.append(check.copy(update={"name": f"{name}/{check.name}"}) if prefixed else check)
            if outcome.certificate is not None:
                certificates[name] = outcome.certificate
            if outcome.error:
                errors.append(f"{name}: {outcome.error}")

        if errors:
            status = ReportStatus.ERROR
        elif all(check.passed for check in checks):
            status = ReportStatus.PASSED
        else:
            status = ReportStatus.FAILED

        if not certificates:
            certificate = None
        elif prefixed:
            certificate = certificates
        else:
            certificate = next(iter(certificates.values()))

        return VerificationReport(
            suite_id=suite_id,
            status=status,
            checks=checks,
            wall_time_s=round(wall_time, 4),
            bounds=self.bounds(context),
            seed=context.seed,
            certificate=certificate,
            error_message="; ".join(errors) or None,
        )

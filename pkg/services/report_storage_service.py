"""报告存储服务 - 验证报告的异步 JSON 持久化

报告先写入同目录临时文件再 os.replace，读者不会看到半写的文件。
verification_history.json 只追加摘要，不覆盖旧记录。
"""
import asyncio
import json
import os
import uuid
from datetime import datetime
from typing import Any, Dict, List, Optional

import aiofiles

from models.report_models import VerificationReport
from utils.config import get_settings
from utils.enhanced_logger import logger

HISTORY_FILE = "verification_history.json"


class ReportStorageService:
    """报告目录缺省为项目根目录下的 reports_dir"""

    def __init__(self, reports_dir: str = None):
        if reports_dir is None:
            current_dir = os.path.dirname(os.path.abspath(__file__))
            project_root = os.path.dirname(current_dir)
            self.reports_dir = os.path.join(project_root, get_settings().reports_dir)
        else:
            self.reports_dir = reports_dir
        self._history_lock = asyncio.Lock()

        logger.log_process_step("report_storage_init", "started", {
            "reports_dir": self.reports_dir,
            "absolute_path": os.path.abspath(self.reports_dir)
        })

        if not os.path.exists(self.reports_dir):
            logger.warning(f"报告目录不存在: {self.reports_dir}")
            try:
                os.makedirs(self.reports_dir, exist_ok=True)
                logger.info(f"创建报告目录: {self.reports_dir}")
            except OSError as e:
                logger.log_error_with_context(e, {
                    "function": "__init__",
                    "reports_dir": self.reports_dir
                })

        logger.log_process_step("report_storage_init", "completed", {
            "reports_dir_exists": os.path.exists(self.reports_dir)
        })

    @property
    def history_path(self) -> str:
        return os.path.join(self.reports_dir, HISTORY_FILE)

    async def write_json_atomic(self, path: str, payload: Any):
        """临时文件 + os.replace"""
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        tmp_path = os.path.join(directory, f".{os.path.basename(path)}.{uuid.uuid4().hex}.tmp")
        try:
            async with aiofiles.open(tmp_path, "w", encoding="utf-8") as f:
                await f.write(json.dumps(payload, ensure_ascii=False, indent=2))
            os.replace(tmp_path, path)
        finally:
            if os.path.exists(tmp_path):
                os.remove(tmp_path)

    async def save_report(self, report: VerificationReport, path: Optional[str] = None) -> str:
        """写入完整报告，返回文件路径"""
        if path is None:
            stamp = datetime.now().strftime("%Y%m%d_%H%M%S_%f")
            path = os.path.join(self.reports_dir, f"{report.suite_id}_{stamp}.json")
        logger.log_process_step("save_report", "started", {"suite_id": report.suite_id, "path": path})
        await self.write_json_atomic(path, json.loads(report.json()))
        await self.append_history(report, path)
        logger.log_process_step("save_report", "completed", {
            "suite_id": report.suite_id,
            "status": report.status.value,
            "checks": len(report.checks)
        })
        return path

    async def load_json_file(self, path: str) -> Any:
        """异步读取 JSON；文件缺失或损坏时返回空列表"""
        logger.log_process_step("load_json_file", "started", {"path": path})
        if not os.path.exists(path):
            logger.warning(f"文件不存在: {path}")
            return []
        try:
            async with aiofiles.open(path, "r", encoding="utf-8") as f:
                content = await f.read()
            data = json.loads(content)
            logger.log_process_step("load_json_file", "completed", {
                "path": path,
                "data_type": type(data).__name__
            })
            return data
        except json.JSONDecodeError as e:
            logger.log_error_with_context(e, {
                "function": "load_json_file",
                "path": path,
                "error_type": "JSONDecodeError"
            })
            return []

    async def load_report(self, path: str) -> Optional[VerificationReport]:
        data = await self.load_json_file(path)
        if not isinstance(data, dict):
            return None
        return VerificationReport.parse_obj(data)

    async def load_history(self) -> List[Dict[str, Any]]:
        data = await self.load_json_file(self.history_path)
        return data if isinstance(data, list) else []

    async def append_history(self, report: VerificationReport, path: Optional[str] = None):
        entry = {
            "timestamp": datetime.now().isoformat(),
            "suite_id": report.suite_id,
            "status": report.status.value,
            "checks_total": len(report.checks),
            "checks_failed": len(report.failed_checks),
            "wall_time_s": report.wall_time_s,
            "seed": report.seed,
            "bounds": report.bounds,
            "report_path": path,
        }
        async with self._history_lock:
            history = await self.load_history()
            history.append(entry)
            await self.write_json_atomic(self.history_path, history)
        logger.log_process_step("append_history", "completed", {"entries": len(history)})

#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
系统日志记录组件

记录验证系统的操作：套件运行、报告读写、API 调用。
文件按日期分割写入 log_dir；控制台输出走 stderr，保证 --json 的 stdout 干净。
"""

import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

from utils.config import get_settings

SYSTEM_FORMAT = ('%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - '
                 '%(module)s.%(funcName)s - %(message)s')

STATUS_LEVELS = {
    'success': logging.INFO,
    'info': logging.INFO,
    'warning': logging.WARNING,
    'failure': logging.ERROR,
}


class SystemLogger:
    """系统日志记录器，消息可附带 source_file / source_module 上下文"""

    def __init__(self, name: str = "hopf_system", log_level: Optional[str] = None):
        settings = get_settings()
        self.logger = logging.getLogger(name)
        self.logger.setLevel(getattr(logging, (log_level or settings.log_level).upper()))

        # 同名记录器只挂一次处理器
        if not self.logger.handlers:
            handlers = [logging.StreamHandler(sys.stderr)]
            if settings.log_to_file:
                directory = Path(settings.log_dir)
                directory.mkdir(parents=True, exist_ok=True)
                handlers.append(logging.FileHandler(directory / f"system_{datetime.now():%Y%m%d}.log",
                                                    encoding='utf-8'))
            for handler in handlers:
                handler.setFormatter(logging.Formatter(SYSTEM_FORMAT))
                self.logger.addHandler(handler)

    def debug(self, message: str, extra: Optional[Dict[str, Any]] = None,
              source_file: Optional[str] = None, source_module: Optional[str] = None):
        self._log(logging.DEBUG, message, extra, source_file, source_module)

    def info(self, message: str, extra: Optional[Dict[str, Any]] = None,
             source_file: Optional[str] = None, source_module: Optional[str] = None):
        self._log(logging.INFO, message, extra, source_file, source_module)

    def warning(self, message: str, extra: Optional[Dict[str, Any]] = None,
                source_file: Optional[str] = None, source_module: Optional[str] = None):
        self._log(logging.WARNING, message, extra, source_file, source_module)

    def error(self, message: str, extra: Optional[Dict[str, Any]] = None,
              source_file: Optional[str] = None, source_module: Optional[str] = None):
        self._log(logging.ERROR, message, extra, source_file, source_module)

    def _log(self, level: int, message: str, extra: Optional[Dict[str, Any]],
             source_file: Optional[str], source_module: Optional[str]):
        context = dict(extra or {})
        context.update({key: value for key, value in (('source_file', source_file),
                                                      ('source_module', source_module)) if value})
        self.logger.log(level, message, extra=context or None)

    def log_operation(self, operation: str, status: str, details: Optional[Dict] = None,
                      source_file: Optional[str] = None, source_module: Optional[str] = None):
        """
        记录操作日志

        Args:
            operation: 操作描述（如 "verify strong-connection"）
            status: success / info / warning / failure，决定日志级别
            details: 操作详细信息
        """
        message = f"Operation: {operation} | Status: {status}"
        if details:
            message += f" | Details: {details}"
        self._log(STATUS_LEVELS.get(status.lower(), logging.INFO), message,
                  {'operation': operation, 'status': status}, source_file, source_module)

    def log_data_access(self, operation: str, data_type: str, data_id: Optional[str] = None,
                        success: bool = True, source_file: Optional[str] = None,
                        source_module: Optional[str] = None):
        """报告与历史文件的读写"""
        self.log_operation(f"Data {operation}", "success" if success else "failure",
                           {'data_type': data_type, 'data_id': data_id}, source_file, source_module)

    def log_api_call(self, endpoint: str, method: str, status_code: Optional[int] = None,
                     response_time: Optional[float] = None, source_file: Optional[str] = None,
                     source_module: Optional[str] = None):
        """状态码 < 400 记为 success"""
        status = 'success' if status_code and status_code < 400 else 'failure'
        self.log_operation(f"API Call: {method} {endpoint}", status, {
            'endpoint': endpoint,
            'method': method,
            'status_code': status_code,
            'response_time': response_time
        }, source_file, source_module)


def get_logger(name: str = "hopf_system", log_level: Optional[str] = None) -> SystemLogger:
    return SystemLogger(name, log_level)

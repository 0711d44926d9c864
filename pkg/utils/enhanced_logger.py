#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
结构化计算日志

每条事件是一行 `前缀: JSON`，前缀区分事件类型：
- COMPUTATION_INPUT  计算输入（表达式文本、边界参数、种子）
- PROCESS_STEP       流程节点（套件开始/完成、Gröbner 完备化、强联络递归）
- PERFORMANCE        性能指标
- ERROR_CONTEXT      带上下文的异常
"""

import json
import logging
import sys
import time
import traceback
from datetime import datetime
from functools import wraps
from pathlib import Path
from typing import Any, Dict, Optional

from utils.config import get_settings

FILE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d - %(funcName)s] - %(message)s'
CONSOLE_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


class ComputationLogger:
    """验证系统的结构化日志记录器；同名实例共享处理器"""

    def __init__(self, name: str = "hopf_computation", log_level: Optional[str] = None):
        settings = get_settings()
        self.logger = logging.getLogger(name)
        self.logger.setLevel(getattr(logging, (log_level or settings.log_level).upper()))
        if not self.logger.handlers:
            self._attach_handlers(Path(settings.log_dir), settings.log_to_file)
        self.performance_timers: Dict[str, float] = {}

    def _attach_handlers(self, log_dir: Path, log_to_file: bool):
        """文件用详细格式，控制台（stderr）用简洁格式"""
        if log_to_file:
            log_dir.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_dir / f"computation_{datetime.now():%Y%m%d}.log",
                                               encoding='utf-8')
            file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
            self.logger.addHandler(file_handler)
        console = logging.StreamHandler(sys.stderr)
        console.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        self.logger.addHandler(console)

    def _event(self, prefix: str, event_type: str, payload: Dict[str, Any], level: int = logging.INFO):
        entry = {"type": event_type, "timestamp": datetime.now().isoformat(), **payload}
        try:
            text = json.dumps(entry, ensure_ascii=False, default=str)
        except (TypeError, ValueError) as e:
            self.error(f"Failed to serialize {event_type}: {e}")
            return
        self.logger.log(level, f"{prefix}: {text}")

    def log_computation_input(self, input_data: Dict[str, Any], source: str = "unknown"):
        self._event("COMPUTATION_INPUT", "computation_input", {
            "source": source,
            "data": input_data,
            "data_size": len(str(input_data))
        })

    def log_process_step(self, step_name: str, status: str, details: Dict[str, Any] = None):
        self._event("PROCESS_STEP", "process_step", {
            "step_name": step_name,
            "status": status,
            "details": details or {}
        })

    def log_error_with_context(self, error: Exception, context: Dict[str, Any] = None):
        """在 except 块内调用，traceback 取当前异常"""
        self._event("ERROR_CONTEXT", "error_with_context", {
            "error_type": type(error).__name__,
            "error_message": str(error),
            "traceback": traceback.format_exc(),
            "context": context or {}
        }, logging.ERROR)

    def log_performance_metrics(self, operation: str, metrics: Dict[str, Any]):
        self._event("PERFORMANCE", "performance_metrics", {"operation": operation, "metrics": metrics})

    def start_timer(self, timer_name: str):
        self.performance_timers[timer_name] = time.perf_counter()
        self.debug(f"Started timer: {timer_name}")

    def end_timer(self, timer_name: str) -> float:
        """耗时（秒）；未启动的计时器返回 0.0"""
        started = self.performance_timers.pop(timer_name, None)
        if started is None:
            self.warning(f"Timer {timer_name} not found")
            return 0.0
        duration = time.perf_counter() - started
        self.info(f"Timer {timer_name} completed in {duration:.3f} seconds")
        return duration

    def debug(self, message: str, extra: Optional[Dict[str, Any]] = None):
        self.logger.debug(message, extra=extra or {})

    def info(self, message: str, extra: Optional[Dict[str, Any]] = None):
        self.logger.info(message, extra=extra or {})

    def warning(self, message: str, extra: Optional[Dict[str, Any]] = None):
        self.logger.warning(message, extra=extra or {})

    def error(self, message: str, extra: Optional[Dict[str, Any]] = None):
        self.logger.error(message, extra=extra or {})


def log_process_step(step_name: str):
    """装饰器：函数调用前后各记一个流程节点，异常时记 failed 并继续抛出"""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            logger.log_process_step(step_name, "started", {"function": func.__name__})
            started = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                logger.log_process_step(step_name, "failed", {
                    "function": func.__name__,
                    "error_type": type(e).__name__,
                    "error": str(e)
                })
                raise
            logger.log_process_step(step_name, "completed", {
                "function": func.__name__,
                "elapsed_s": round(time.perf_counter() - started, 4)
            })
            return result

        return wrapper
    return decorator


# 全局日志实例
logger = ComputationLogger()

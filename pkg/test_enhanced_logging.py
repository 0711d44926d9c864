"""测试结构化日志：流程节点、计时、错误上下文与系统操作日志"""
import json
import logging

import pytest

from utils.enhanced_logger import ComputationLogger, log_process_step, logger
from utils.logger import SystemLogger, get_logger


def payloads(caplog, prefix):
    return [json.loads(record.getMessage()[len(prefix):]) for record in caplog.records
            if record.getMessage().startswith(prefix)]


@pytest.fixture
def computation_caplog(caplog):
    caplog.set_level(logging.DEBUG, logger="hopf_computation")
    return caplog


def test_process_step_is_json(computation_caplog):
    logger.log_process_step("suite:scalars", "completed", {"checks": 7})
    entry = payloads(computation_caplog, "PROCESS_STEP: ")[-1]
    assert entry["step_name"] == "suite:scalars"
    assert entry["status"] == "completed"
    assert entry["details"] == {"checks": 7}


def test_computation_input_handles_non_json_values(computation_caplog):
    logger.log_computation_input({"expression": "z1 ** z2", "order": object()}, source="test")
    entry = payloads(computation_caplog, "COMPUTATION_INPUT: ")[-1]
    assert entry["source"] == "test"
    assert entry["data"]["expression"] == "z1 ** z2"


def test_timers(computation_caplog):
    logger.start_timer("groebner")
    assert logger.end_timer("groebner") >= 0.0
    assert logger.end_timer("groebner") == 0.0
    assert any("Timer groebner not found" in record.getMessage() for record in computation_caplog.records)


def test_error_with_context(computation_caplog):
    try:
        raise ArithmeticError("monomial inverse")
    except ArithmeticError as e:
        logger.log_error_with_context(e, {"function": "inverse"})
    entry = payloads(computation_caplog, "ERROR_CONTEXT: ")[-1]
    assert entry["error_type"] == "ArithmeticError"
    assert entry["context"] == {"function": "inverse"}
    assert "monomial inverse" in entry["traceback"]


def test_performance_metrics(computation_caplog):
    logger.log_performance_metrics("run_suite", {"checks": 3, "wall_time_s": 0.1})
    assert payloads(computation_caplog, "PERFORMANCE: ")[-1]["metrics"]["checks"] == 3


def test_process_step_decorator(computation_caplog):
    @log_process_step("square")
    def square(x):
        return x * x

    @log_process_step("explode")
    def explode():
        raise ValueError("bad degree")

    assert square(3) == 9
    with pytest.raises(ValueError):
        explode()
    steps = [(entry["step_name"], entry["status"]) for entry in payloads(computation_caplog, "PROCESS_STEP: ")]
    assert ("square", "started") in steps and ("square", "completed") in steps
    assert ("explode", "failed") in steps


def test_handlers_are_not_duplicated():
    first = ComputationLogger("hopf_computation_test")
    second = ComputationLogger("hopf_computation_test")
    assert first.logger is second.logger
    assert len(second.logger.handlers) == len(first.logger.handlers)


def test_system_logger_operations(caplog):
    caplog.set_level(logging.DEBUG, logger="hopf_test_system")
    system = get_logger("hopf_test_system")
    assert isinstance(system, SystemLogger)
    system.log_operation("verify scalars", "warning", {"failed": 1}, source_module="test")
    system.log_data_access("read", "verification_history", success=False)
    system.log_api_call("/api/suites", "GET", 200, 0.01)
    levels = [record.levelno for record in caplog.records]
    assert levels == [logging.WARNING, logging.ERROR, logging.INFO]
    assert caplog.records[0].source_module == "test"
    assert caplog.records[2].status == "success"

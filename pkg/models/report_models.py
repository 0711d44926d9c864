"""验证报告数据模型 - Pydantic"""
from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, root_validator, validator


class ReportStatus(str, Enum):
    """报告状态"""
    PASSED = "passed"
    FAILED = "failed"
    ERROR = "error"


class CheckResult(BaseModel):
    """单项检查结果：通过当且仅当残差为空"""
    name: str = Field(..., description="检查名称")
    passed: bool = Field(..., description="是否通过")
    residual: Optional[str] = Field(None, description="残差（表达式语法），通过时为空")
    details: Dict[str, Any] = Field(default_factory=dict, description="附加信息（相位、计数等）")

    @root_validator(skip_on_failure=True)
    def residual_matches_flag(cls, values):
        passed, residual = values.get("passed"), values.get("residual")
        if passed and residual is not None:
            raise ValueError("通过的检查不能带残差")
        if not passed and residual is None:
            raise ValueError("失败的检查必须给出残差")
        return values

    @classmethod
    def ok(cls, name: str, **details) -> "CheckResult":
        return cls(name=name, passed=True, details=details)

    @classmethod
    def fail(cls, name: str, residual: str, **details) -> "CheckResult":
        return cls(name=name, passed=False, residual=residual or "(empty residual)", details=details)

    @classmethod
    def compare(cls, name: str, lhs, rhs, **details) -> "CheckResult":
        """比较两个精确值；失败时残差为 lhs − rhs 的文本"""
        if lhs == rhs:
            return cls.ok(name, **details)
        try:
            residual = (lhs - rhs).to_text()
        except (TypeError, AttributeError):
            residual = f"{_text(lhs)} != {_text(rhs)}"
        return cls.fail(name, residual, **details)


def _text(value) -> str:
    return value.to_text() if hasattr(value, "to_text") else repr(value)


class VerificationReport(BaseModel):
    """套件报告"""
    suite_id: str = Field(..., description="套件ID")
    status: ReportStatus = Field(ReportStatus.PASSED, description="汇总状态")
    checks: List[CheckResult] = Field(default_factory=list, description="检查列表（按名称排序）")
    wall_time_s: float = Field(0.0, ge=0.0, description="耗时（秒）")
    bounds: Dict[str, int] = Field(default_factory=dict, description="使用的次数上限")
    seed: int = Field(..., description="抽样种子")
    certificate: Optional[Dict[str, Any]] = Field(None, description="结构化证书（同伦等）")
    created_at: str = Field(default_factory=lambda: datetime.now().isoformat(), description="生成时间")
    error_message: Optional[str] = Field(None, description="错误信息")

    @validator("checks")
    def sort_checks(cls, v):
        return sorted(v, key=lambda check: check.name)

    @property
    def passed(self) -> bool:
        return self.status is ReportStatus.PASSED

    @property
    def failed_checks(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]


class SuiteRequest(BaseModel):
    """套件运行请求"""
    suite_id: str = Field(..., description="套件ID或 all")
    seed: Optional[int] = Field(None, description="抽样种子，缺省取配置")
    degree_bound: Optional[int] = Field(None, ge=1, le=8, description="抽样次数上限")
    nmax: Optional[int] = Field(None, ge=1, le=8, description="|n| 上限")
    tamper: bool = Field(False, description="注入被破坏的强联络（负对照）")


class EvalRequest(BaseModel):
    """表达式求值请求"""
    expression: str = Field(..., min_length=1, description="表达式文本")
    deformed: bool = Field(False, description="楔积与作用是否使用 θ 形变")


class EvalResult(BaseModel):
    """表达式求值结果"""
    status: str = Field(..., description="处理状态")
    kind: Optional[str] = Field(None, description="值的类型")
    text: Optional[str] = Field(None, description="规范型文本")
    value: Optional[Any] = Field(None, description="JSON 形式的值")
    error_message: Optional[str] = Field(None, description="错误信息")

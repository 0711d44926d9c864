"""运行配置 - 环境变量与 .env 文件"""
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseSettings, Field, validator

# 加载环境变量
load_dotenv()


class Settings(BaseSettings):
    """验证系统配置，环境变量前缀 HOPF_"""

    log_level: str = Field("INFO", description="日志级别")
    log_dir: str = Field("logs", description="日志目录")
    log_to_file: bool = Field(True, description="是否写入日志文件")
    reports_dir: str = Field("reports", description="验证报告输出目录")
    seed: int = Field(20240601, description="抽样随机种子")
    gb_degree_bound: int = Field(20, ge=2, description="Gröbner 完备化的次数上限")
    degree_bound: int = Field(2, ge=1, le=8, description="验证套件的抽样次数上限")
    nmax: int = Field(6, ge=1, description="强联络递归的默认 |n| 上限")
    strict_phase_units: bool = Field(True, description="非同伦模块中禁止出现 w 单位")
    api_host: str = Field("0.0.0.0", description="API 监听地址")
    api_port: int = Field(5000, description="API 端口")

    @validator("log_level")
    def validate_level(cls, v):
        if v.upper() not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"未知的日志级别: {v}")
        return v.upper()

    class Config:
        env_prefix = "HOPF_"
        env_file = ".env"


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """获取全局配置（只构建一次）"""
    return Settings()

"""
应用配置模块
所有数值容差均可通过 JCK_ 前缀的环境变量或 .env 文件覆盖
"""
from typing import Optional

from dotenv import load_dotenv
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# 加载环境变量
load_dotenv()


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="JCK_", extra="ignore")

    # 应用配置
    PROJECT_NAME: str = "JordanKit"
    VERSION: str = "0.1.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # 几何谓词
    EPSILON: float = 1e-12  # 相切判定的相对裕度
    CONVEXITY_TOL: float = 1e-12
    ROUND_TOL: float = 1e-9  # 识别圆的离散化
    CIRCLE_VERTICES: int = 128  # 解析圆输出时的顶点数

    # 树与计数
    ENUMERATION_MAX_N: int = 10
    COUNT_MAX_N: int = 6

    # 共形映射 (zipper)
    ZIPPER_POINTS: int = 256
    ZIPPER_MAX_REFINE: int = 4
    BOUNDARY_TOL: float = 1e-3  # 相对直径
    EVAL_GUARD: float = 1e-9
    LINEAR_BRANCH_T: float = 1e-4
    FOLLOWER_VERTEX_BUDGET: int = 128
    CONFORMAL_SNAP_TOL: float = 1e-3

    # 收缩参数求解
    SHRINK_T_GRID: int = 33
    SHRINK_ANGLE_SAMPLES: int = 256
    SHRINK_REL_TOL: float = 1e-6
    SHRINK_MAX_ITER: int = 200

    # 辫群
    BRAID_REDUCTION_BUDGET: int = 200000

    # 输出
    SVG_PRECISION: int = 9
    MAX_WORKERS: int = 1  # 1 表示顺序执行

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"不支持的日志级别: {v}")
        return level

    @field_validator("MAX_WORKERS", "ZIPPER_POINTS", "CIRCLE_VERTICES", "SHRINK_T_GRID")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("必须为正整数")
        return v


def pick(value: Optional[float], default: float) -> float:
    """调用方未显式给出参数时回退到全局配置"""
    return default if value is None else value


# 全局配置实例
settings = Settings()

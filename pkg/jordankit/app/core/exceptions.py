"""
异常定义
每个异常携带命令行退出码: 2 表示输入无效, 3 表示数值失败
"""
from typing import List, Optional


class JordanKitError(Exception):
    """所有业务异常的基类"""

    exit_code: int = 2

    def __init__(self, message: str, *, details: Optional[List[str]] = None):
        super().__init__(message)
        self.message = message
        self.details = list(details or [])

    def __str__(self) -> str:
        if not self.details:
            return self.message
        return self.message + "\n" + "\n".join(f"  - {d}" for d in self.details)


class InvalidInputError(JordanKitError):
    """文档无法解析或不满足模块约束"""

    exit_code = 2


class InvalidConfigurationError(InvalidInputError):
    """构型存在相交、自交等问题"""


class PreconditionError(InvalidInputError):
    """管线前置条件不满足 (例如凸管线遇到非凸曲线)"""

    def __init__(self, message: str, *, curve: Optional[int] = None, details: Optional[List[str]] = None):
        super().__init__(message, details=details)
        self.curve = curve


class TreeMismatchError(InvalidInputError):
    """群元素与树、辫子与划分之间不一致"""


class RangeError(InvalidInputError):
    """参数超出允许范围"""


class NumericalError(JordanKitError):
    """数值计算失败"""

    exit_code = 3


class DiskMapError(NumericalError):
    """共形映射构造或求值失败"""

    def __init__(self, message: str, *, curve: Optional[int] = None, details: Optional[List[str]] = None):
        super().__init__(message, details=details)
        self.curve = curve


class ConvergenceError(NumericalError):
    """迭代求解未收敛"""


class BraidUndecidedError(NumericalError):
    """柄约化超出预算, 无法给出判定"""

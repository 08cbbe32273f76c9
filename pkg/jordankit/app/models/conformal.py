"""
共形映射与圆化调度模型
"""
import math
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from ..core.exceptions import InvalidInputError
from .curve import PolyCurve


@dataclass(frozen=True)
class ShrinkParameter:
    """收缩参数 y ∈ [0, 1)"""

    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.y) and 0.0 <= self.y < 1.0):
            raise InvalidInputError(f"收缩参数必须位于 [0, 1): {self.y}")


@dataclass(frozen=True, eq=False)
class DiskMap:
    """单个 Jordan 区域的数值 Riemann 映射 γ: 单位圆盘 -> 区域

    由 zipper 算法的初等映射链组成, betas/cs 为各步 slit 映射参数,
    zeta0 为第一个边界点在最后一步前的像 (math.inf 表示无穷远)。
    """

    domain: PolyCurve
    center: complex
    z0: complex
    z1: complex
    betas: np.ndarray
    cs: np.ndarray
    zeta0: float
    sign: float
    q: complex
    rotation: complex
    derivative_at_center: complex
    boundary_points: np.ndarray
    boundary_angles: np.ndarray
    map_error: float
    diameter: float
    refinement: int = 0

    def __post_init__(self) -> None:
        for name in ("betas", "cs", "boundary_points", "boundary_angles"):
            getattr(self, name).setflags(write=False)
        if self.derivative_at_center == 0:
            raise InvalidInputError("映射在中心处的导数不能为零")

    @property
    def size(self) -> int:
        """边界点数"""
        return len(self.boundary_points)


@dataclass(frozen=True)
class StageDescriptor:
    """单个阶段: 激活深度为 index 的曲线, followers[i] 是激活曲线 i 的全部后代 (0 起始下标)

    disk_maps 与 shrink 在阶段开始时由曲线的当前位置构造, 规划时为空;
    已经是圆的激活曲线不构造映射, 不出现在这两个字典中。
    """

    index: int
    active: Tuple[int, ...]
    followers: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    disk_maps: Dict[int, DiskMap] = field(default_factory=dict)
    shrink: Dict[int, ShrinkParameter] = field(default_factory=dict)


@dataclass(frozen=True)
class RetractSchedule:
    """d + 1 个阶段, 由浅到深执行; execute_schedule 返回填好映射的副本"""

    stages: Tuple[StageDescriptor, ...]
    frame_count: int

    @property
    def total_frames(self) -> int:
        return 1 + self.frame_count * len(self.stages)

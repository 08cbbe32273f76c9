"""
Jordan 曲线模型
平面点统一用复数表示: x + iy
"""
from dataclasses import dataclass
from typing import Iterator, Tuple, Union

import numpy as np

from ..core.exceptions import InvalidInputError


def signed_area(xy: np.ndarray) -> float:
    """鞋带公式求有向面积, 逆时针为正"""
    x, y = xy[:, 0], xy[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PolyCurve:
    """闭合多边形曲线

    首尾不重复, 构造时统一为逆时针方向 (保留第一个顶点)。
    """

    vertices: np.ndarray

    def __post_init__(self) -> None:
        xy = np.array(self.vertices, dtype=float)
        if xy.ndim != 2 or xy.shape[1] != 2:
            raise InvalidInputError("顶点必须是二维坐标列表")
        if len(xy) > 3 and np.array_equal(xy[0], xy[-1]):
            xy = xy[:-1]
        if len(xy) < 3:
            raise InvalidInputError(f"曲线至少需要 3 个顶点, 实际为 {len(xy)}")
        if not np.all(np.isfinite(xy)):
            raise InvalidInputError("顶点坐标必须是有限实数")
        if signed_area(xy) < 0:
            xy = np.concatenate([xy[:1], xy[:0:-1]])
        object.__setattr__(self, "vertices", _readonly(xy))

    @classmethod
    def from_points(cls, points: np.ndarray) -> "PolyCurve":
        pts = np.asarray(points, dtype=complex)
        return cls(np.column_stack([pts.real, pts.imag]))

    @property
    def points(self) -> np.ndarray:
        return self.vertices[:, 0] + 1j * self.vertices[:, 1]

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyCurve) and np.array_equal(self.vertices, other.vertices)


@dataclass(frozen=True, eq=False)
class RoundCurve:
    """解析圆

    管线内部以圆心和半径精确表示, directions 为单位复数, 仅在输出时离散为
    center + radius * directions。
    """

    center: complex
    radius: float
    directions: np.ndarray

    def __post_init__(self) -> None:
        center = complex(self.center)
        radius = float(self.radius)
        if not (np.isfinite(center) and np.isfinite(radius)) or radius <= 0:
            raise InvalidInputError(f"圆的参数无效: center={center}, radius={radius}")
        dirs = np.array(self.directions, dtype=complex).ravel()
        if len(dirs) < 3:
            raise InvalidInputError("圆至少需要 3 个离散方向")
        dirs = dirs / np.abs(dirs)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", radius)
        object.__setattr__(self, "directions", _readonly(dirs))

    @classmethod
    def discretized(cls, center: complex, radius: float, count: int) -> "RoundCurve":
        angles = 2.0 * np.pi * np.arange(count) / count
        return cls(center, radius, np.exp(1j * angles))

    @property
    def points(self) -> np.ndarray:
        return self.center + self.radius * self.directions

    @property
    def vertices(self) -> np.ndarray:
        pts = self.points
        return np.column_stack([pts.real, pts.imag])

    def __len__(self) -> int:
        return len(self.directions)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RoundCurve)
            and self.center == other.center
            and self.radius == other.radius
            and np.array_equal(self.directions, other.directions)
        )


Curve = Union[PolyCurve, RoundCurve]


@dataclass(frozen=True)
class JordanConfiguration:
    """有序曲线列表, 位置即标号"""

    curves: Tuple[Curve, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "curves", tuple(self.curves))

    def __len__(self) -> int:
        return len(self.curves)

    def __iter__(self) -> Iterator[Curve]:
        return iter(self.curves)

    def __getitem__(self, index: int) -> Curve:
        return self.curves[index]


@dataclass(frozen=True)
class CurveMetrics:
    """中心 c, 内半径 r (到曲线的最小距离), 外半径 R (到顶点的最大距离)"""

    center: complex
    inradius: float
    outradius: float

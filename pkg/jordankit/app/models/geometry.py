"""
圆构型模型
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Tuple

from ..core.exceptions import InvalidInputError


@dataclass(frozen=True)
class Circle:
    """平面上的圆 (圆心 x, y 与半径 r)"""

    x: float
    y: float
    r: float

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in (self.x, self.y, self.r)):
            raise InvalidInputError(f"圆的参数必须是有限实数: ({self.x}, {self.y}, {self.r})")
        if self.r <= 0:
            raise InvalidInputError(f"圆的半径必须为正: {self.r}")

    @property
    def center(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class CircleConfiguration:
    """有序圆列表, 位置即标号 1..n"""

    circles: Tuple[Circle, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "circles", tuple(self.circles))

    def __len__(self) -> int:
        return len(self.circles)

    def __iter__(self) -> Iterator[Circle]:
        return iter(self.circles)

    def __getitem__(self, index: int) -> Circle:
        return self.circles[index]


class PairClass(str, Enum):
    """两圆之间的位置关系"""

    NESTED_FIRST_IN_SECOND = "NestedFirstInSecond"
    NESTED_SECOND_IN_FIRST = "NestedSecondInFirst"
    SEPARATE = "Separate"
    INTERSECTING = "Intersecting"

    def swapped(self) -> "PairClass":
        if self is PairClass.NESTED_FIRST_IN_SECOND:
            return PairClass.NESTED_SECOND_IN_FIRST
        if self is PairClass.NESTED_SECOND_IN_FIRST:
            return PairClass.NESTED_FIRST_IN_SECOND
        return self


@dataclass(frozen=True)
class ValidationReport:
    """校验结果

    violations 中每一项是违规对象的 1 起始下标元组, 单元素元组表示单条曲线自身的问题。
    """

    ok: bool
    violations: Tuple[Tuple[int, ...], ...] = ()
    messages: Tuple[str, ...] = ()

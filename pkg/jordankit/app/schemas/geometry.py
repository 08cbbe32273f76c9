"""
圆与曲线构型的文档模型
"""
import math
from typing import List, Tuple

import numpy as np
from pydantic import Field, field_validator

from ..models.curve import Curve, JordanConfiguration, PolyCurve
from ..models.geometry import Circle, CircleConfiguration, ValidationReport
from .base import BaseSchema


class CircleSchema(BaseSchema):
    """单个圆"""

    x: float = Field(..., description="圆心横坐标")
    y: float = Field(..., description="圆心纵坐标")
    r: float = Field(..., gt=0, description="半径")

    @field_validator("x", "y", "r")
    def validate_finite(cls, v):
        if not math.isfinite(v):
            raise ValueError("坐标与半径必须是有限数")
        return v


class CirclesDocument(BaseSchema):
    """圆构型文档, 列表顺序即标号 1..n"""

    circles: List[CircleSchema] = Field(default_factory=list, description="圆列表")

    def to_model(self) -> CircleConfiguration:
        return CircleConfiguration(tuple(Circle(c.x, c.y, c.r) for c in self.circles))

    @classmethod
    def from_model(cls, c: CircleConfiguration) -> "CirclesDocument":
        return cls(circles=[CircleSchema(x=k.x, y=k.y, r=k.r) for k in c])


class CurveSchema(BaseSchema):
    """单条闭多边形曲线"""

    vertices: List[Tuple[float, float]] = Field(..., min_length=3, description="顶点 [x, y] 列表")

    @field_validator("vertices")
    def validate_vertices(cls, v):
        if not all(math.isfinite(x) and math.isfinite(y) for x, y in v):
            raise ValueError("顶点坐标必须是有限数")
        return v

    @classmethod
    def from_curve(cls, curve: Curve) -> "CurveSchema":
        return cls(vertices=[(float(x), float(y)) for x, y in curve.vertices])


class CurvesDocument(BaseSchema):
    """曲线构型文档"""

    curves: List[CurveSchema] = Field(default_factory=list, description="曲线列表")

    def to_model(self) -> JordanConfiguration:
        return JordanConfiguration(tuple(PolyCurve(np.array(c.vertices, dtype=float)) for c in self.curves))

    @classmethod
    def from_model(cls, j: JordanConfiguration) -> "CurvesDocument":
        return cls(curves=[CurveSchema.from_curve(c) for c in j])


class FrameDocument(BaseSchema):
    """圆化过程中的一帧"""

    t: float = Field(..., ge=0, le=1, description="全局时刻")
    stage: int = Field(..., ge=0, description="所在阶段序号")
    curves: List[CurveSchema] = Field(default_factory=list, description="该帧的曲线")


class ValidationReportDocument(BaseSchema):
    """校验报告"""

    ok: bool
    violations: List[List[int]] = Field(default_factory=list, description="违规的曲线或圆 (1 起始)")
    messages: List[str] = Field(default_factory=list)

    @classmethod
    def from_model(cls, report: ValidationReport) -> "ValidationReportDocument":
        return cls(
            ok=report.ok,
            violations=[list(v) for v in report.violations],
            messages=list(report.messages),
        )


class StageDiagnosticsDocument(BaseSchema):
    """共形圆化的单阶段诊断"""

    stage: int
    active: List[int] = Field(default_factory=list, description="本阶段实际构造圆盘映射的曲线")
    y: dict = Field(default_factory=dict, description="曲线 -> 收缩参数")
    map_error: dict = Field(default_factory=dict, description="曲线 -> 边界误差")

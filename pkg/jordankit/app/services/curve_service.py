"""
Jordan 曲线服务
曲线校验、嵌套树、中心与度量, 以及凸曲线构型的分阶段圆化
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import shapely
from shapely.geometry import LinearRing, Point, Polygon
from shapely.ops import polylabel

from ..core.config import pick, settings
from ..core.exceptions import InvalidConfigurationError, InvalidInputError, PreconditionError
from ..models.curve import (
    Curve,
    CurveMetrics,
    JordanConfiguration,
    PolyCurve,
    RoundCurve,
    signed_area,
)
from ..models.geometry import Circle, CircleConfiguration, PairClass, ValidationReport
from ..models.tree import RootedTree
from .geometry_service import geometry_service
from .tree_service import tree_service

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConvexPlan:
    """凸圆化的预计算数据"""

    curves: Tuple[Curve, ...]
    tree: RootedTree
    depths: Tuple[int, ...]
    dmax: int
    metrics: Tuple[CurveMetrics, ...]
    descendants: Tuple[Tuple[int, ...], ...]


class CurveService:
    """Jordan 曲线服务"""

    # ---- 基本几何 ----

    def as_round_curve(self, curve: Curve, tol: Optional[float] = None) -> Optional[RoundCurve]:
        """识别圆的离散化: 全部顶点到面积中心的距离在 tol 内相等时返回解析圆"""
        if isinstance(curve, RoundCurve):
            return curve
        tol = pick(tol, settings.ROUND_TOL)
        xy = curve.vertices
        if abs(signed_area(xy)) <= 0.0:
            return None
        centroid = Polygon(xy).centroid
        c = complex(centroid.x, centroid.y)
        offsets = curve.points - c
        dist = np.abs(offsets)
        mean = float(dist.mean())
        if mean <= 0 or (dist.max() - dist.min()) > tol * mean:
            return None
        return RoundCurve(c, mean, offsets / dist)

    def working_curve(self, curve: Curve) -> Curve:
        """管线内部表示: 圆的离散化换成解析圆"""
        return self.as_round_curve(curve) or curve

    def curve_center(self, p: Curve) -> complex:
        """曲线中心

        面积中心严格位于内部时取面积中心, 否则取到边界距离最大的内点。
        """
        if isinstance(p, RoundCurve):
            return p.center
        polygon = Polygon(p.vertices)
        if polygon.area <= 0 or not polygon.is_valid:
            raise InvalidInputError("退化多边形没有中心")
        centroid = polygon.centroid
        if polygon.contains(centroid):
            return complex(centroid.x, centroid.y)
        tolerance = self.diameter(p) * 1e-6
        deepest = polylabel(polygon, tolerance=tolerance)
        logger.debug(f"面积中心不在内部, 改用最深内点 ({deepest.x}, {deepest.y})")
        return complex(deepest.x, deepest.y)

    def curve_metrics(self, p: Curve) -> CurveMetrics:
        """中心、内半径 r 与外半径 R"""
        c = self.curve_center(p)
        if isinstance(p, RoundCurve):
            return CurveMetrics(center=c, inradius=p.radius, outradius=p.radius)
        r = Point(c.real, c.imag).distance(LinearRing(p.vertices))
        big_r = float(np.abs(p.points - c).max())
        return CurveMetrics(center=c, inradius=float(r), outradius=big_r)

    def is_round(self, p: Curve, tol: float) -> bool:
        if isinstance(p, RoundCurve) or math.isinf(tol):
            return True
        m = self.curve_metrics(p)
        return (m.outradius - m.inradius) / m.inradius <= tol

    def is_convex(self, p: Curve, tol: Optional[float] = None) -> bool:
        """严格凸性: 相邻单位边向量的叉积全部大于 tol"""
        if isinstance(p, RoundCurve):
            return True
        tol = pick(tol, settings.CONVEXITY_TOL)
        pts = p.points
        edges = np.roll(pts, -1) - pts
        lengths = np.abs(edges)
        if np.any(lengths == 0):
            return False
        units = edges / lengths
        cross = (np.conj(units) * np.roll(units, -1)).imag
        return bool(np.all(cross > tol))

    def diameter(self, p: Curve) -> float:
        if isinstance(p, RoundCurve):
            return 2.0 * p.radius
        hull = shapely.MultiPoint(p.vertices).convex_hull
        pts = np.asarray(hull.exterior.coords) if hasattr(hull, "exterior") else np.asarray(hull.coords)
        z = pts[:, 0] + 1j * pts[:, 1]
        return float(np.abs(z[:, None] - z[None, :]).max())

    def area(self, p: Curve) -> float:
        if isinstance(p, RoundCurve):
            return math.pi * p.radius ** 2
        return abs(signed_area(p.vertices))

    def region_contains(self, p: Curve, points: np.ndarray) -> np.ndarray:
        """点是否严格位于曲线围成的有界区域内"""
        pts = np.asarray(points, dtype=complex)
        if isinstance(p, RoundCurve):
            return np.abs(pts - p.center) < p.radius
        return shapely.contains_xy(Polygon(p.vertices), pts.real, pts.imag)

    def densify(self, p: Curve, budget: int) -> PolyCurve:
        """细分各边直到顶点数不少于 budget"""
        pts = p.points
        if len(pts) >= budget:
            return p if isinstance(p, PolyCurve) else PolyCurve.from_points(pts)
        per_edge = math.ceil(budget / len(pts))
        fractions = np.arange(per_edge) / per_edge
        nxt = np.roll(pts, -1)
        dense = (pts[:, None] + (nxt - pts)[:, None] * fractions[None, :]).ravel()
        return PolyCurve.from_points(dense)

    def circles_to_curves(self, c: CircleConfiguration, vertices: Optional[int] = None) -> JordanConfiguration:
        """把圆构型离散为正多边形构型"""
        count = int(pick(vertices, settings.CIRCLE_VERTICES))
        angles = 2.0 * np.pi * np.arange(count) / count
        ring = np.exp(1j * angles)
        return JordanConfiguration(
            tuple(PolyCurve.from_points(circle.center + circle.r * ring) for circle in c)
        )

    def apply_similarity(
        self, j: JordanConfiguration, rotation: float, scale: float, translation: complex
    ) -> JordanConfiguration:
        """对全部曲线施加保向相似变换 z -> scale * e^{i rotation} z + translation"""
        factor = scale * complex(math.cos(rotation), math.sin(rotation))
        out: List[Curve] = []
        for curve in j:
            if isinstance(curve, RoundCurve):
                out.append(
                    RoundCurve(
                        factor * curve.center + translation,
                        abs(scale) * curve.radius,
                        curve.directions * (factor / abs(factor)),
                    )
                )
            else:
                out.append(PolyCurve.from_points(factor * curve.points + translation))
        return JordanConfiguration(tuple(out))

    # ---- 校验与嵌套 ----

    def validate_curves(self, j: JordanConfiguration, eps: Optional[float] = None) -> ValidationReport:
        """校验曲线构型: 每条曲线简单且两两不交"""
        eps = pick(eps, settings.EPSILON)
        violations: List[Tuple[int, ...]] = []
        messages: List[str] = []
        rings: Dict[int, LinearRing] = {}
        for i, curve in enumerate(j):
            if isinstance(curve, RoundCurve):
                continue
            ring = LinearRing(curve.vertices)
            rings[i] = ring
            if not ring.is_simple:
                violations.append((i + 1,))
                messages.append(f"曲线 {i + 1} 不是简单闭曲线")
            elif abs(signed_area(curve.vertices)) <= 0.0:
                violations.append((i + 1,))
                messages.append(f"曲线 {i + 1} 退化为零面积")
        n = len(j)
        for a in range(n):
            for b in range(a + 1, n):
                if self._pair_intersects(j[a], j[b], rings.get(a), rings.get(b), eps):
                    violations.append((a + 1, b + 1))
                    messages.append(f"曲线 {a + 1} 与曲线 {b + 1} 相交")
        return ValidationReport(ok=not violations, violations=tuple(violations), messages=tuple(messages))

    def _pair_intersects(
        self,
        a: Curve,
        b: Curve,
        ring_a: Optional[LinearRing],
        ring_b: Optional[LinearRing],
        eps: float,
    ) -> bool:
        if isinstance(a, RoundCurve) and isinstance(b, RoundCurve):
            tag = geometry_service.classify_pair(
                Circle(a.center.real, a.center.imag, a.radius),
                Circle(b.center.real, b.center.imag, b.radius),
                eps,
            )
            return tag is PairClass.INTERSECTING
        if isinstance(a, RoundCurve):
            return self._round_poly_intersects(a, b, ring_b, eps)
        if isinstance(b, RoundCurve):
            return self._round_poly_intersects(b, a, ring_a, eps)
        assert ring_a is not None and ring_b is not None
        return bool(ring_a.intersects(ring_b))

    def _round_poly_intersects(
        self, circle: RoundCurve, poly: Curve, ring: Optional[LinearRing], eps: float
    ) -> bool:
        ring = ring if ring is not None else LinearRing(poly.vertices)
        r = circle.radius
        far = float(np.abs(poly.points - circle.center).max())
        if far < r * (1.0 - eps):
            return False
        near = Point(circle.center.real, circle.center.imag).distance(ring)
        return not near > r * (1.0 + eps)

    def require_valid(self, j: JordanConfiguration) -> None:
        report = self.validate_curves(j)
        if not report.ok:
            raise InvalidConfigurationError("曲线构型无效", details=list(report.messages))

    def curve_nesting_tree(self, j: JordanConfiguration) -> RootedTree:
        """父顶点为严格包含该曲线的最小曲线, 没有则为根"""
        self.require_valid(j)
        return self._nesting_tree(j)

    def _nesting_tree(self, j: JordanConfiguration) -> RootedTree:
        n = len(j)
        reps = np.array([curve.points[0] for curve in j], dtype=complex)
        areas = [self.area(curve) for curve in j]
        inside = np.zeros((n, n), dtype=bool)  # inside[a, b]: b 在 a 内
        for a, curve in enumerate(j):
            if n > 1:
                inside[a] = self.region_contains(curve, reps)
            inside[a, a] = False
        parents = []
        for b in range(n):
            containers = [a for a in range(n) if inside[a, b]]
            parents.append(min(containers, key=lambda a: areas[a]) + 1 if containers else 0)
        return RootedTree(tuple(parents), labeled=True)

    # ---- 凸圆化 ----

    def convex_plan(self, j: JordanConfiguration) -> ConvexPlan:
        """校验前置条件并预计算中心、度量与后代"""
        curves = tuple(self.working_curve(curve) for curve in j)
        working = JordanConfiguration(curves)
        self.require_valid(working)
        for i, curve in enumerate(curves):
            if not self.is_convex(curve):
                raise PreconditionError(f"曲线 {i + 1} 不是凸的, 不能使用凸圆化管线", curve=i + 1)
        tree = self._nesting_tree(working)
        depth = tree_service.depth_index(tree)
        metrics = tuple(self.curve_metrics(curve) for curve in curves)
        descendants = tuple(tuple(v - 1 for v in tree_service.descendants(tree, i + 1)) for i in range(len(curves)))
        return ConvexPlan(
            curves=curves,
            tree=tree,
            depths=depth.depths,
            dmax=depth.dmax,
            metrics=metrics,
            descendants=descendants,
        )

    def convex_retract_frame(self, j: JordanConfiguration, t: float) -> JordanConfiguration:
        """全局时刻 t 的凸圆化帧

        t 均匀分成 dmax+1 段, 第一段执行最深的阶段 s = dmax+1, 最后一段执行 s = 1。
        阶段 s 中深度为 s-1 的曲线径向收缩到内切圆, 其后代 (已是圆) 随之做相似变换。
        """
        if not 0.0 <= t <= 1.0:
            raise InvalidInputError(f"t 必须位于 [0, 1]: {t}")
        plan = self.convex_plan(j)
        stages = plan.dmax + 1
        q = min(int(math.floor(t * stages)), stages - 1)
        tau = min(t * stages - q, 1.0)
        curves = list(plan.curves)
        for done in range(q):
            curves = self._convex_stage(plan, curves, stages - done, 1.0)
        return JordanConfiguration(tuple(self._convex_stage(plan, curves, stages - q, tau)))

    def convex_retract_frames(self, j: JordanConfiguration, frames_per_stage: int) -> List[JordanConfiguration]:
        """初始帧加上每个阶段 frames_per_stage 帧"""
        if frames_per_stage < 1:
            raise InvalidInputError(f"每阶段帧数必须为正: {frames_per_stage}")
        plan = self.convex_plan(j)
        stages = plan.dmax + 1
        curves = list(plan.curves)
        frames = [JordanConfiguration(tuple(curves))]
        for q in range(stages):
            s = stages - q
            for f in range(1, frames_per_stage + 1):
                frames.append(JordanConfiguration(tuple(self._convex_stage(plan, curves, s, f / frames_per_stage))))
            curves = list(frames[-1].curves)
            logger.debug(f"凸圆化阶段 s={s} 完成")
        logger.info(f"凸圆化完成: {len(j)} 条曲线, {stages} 个阶段, {len(frames)} 帧")
        return frames

    def _convex_stage(self, plan: ConvexPlan, curves: Sequence[Curve], s: int, tau: float) -> List[Curve]:
        out = list(curves)
        if tau <= 0.0:
            return out
        for i, depth in enumerate(plan.depths):
            if depth != s - 1 or isinstance(plan.curves[i], RoundCurve):
                continue
            m = plan.metrics[i]
            out[i] = self._contract(curves[i], m.center, m.inradius, tau)
            lam = 1.0 - tau * (m.outradius - m.inradius) / m.outradius
            for k in plan.descendants[i]:
                out[k] = self._follow(curves[k], m.center, lam)
        return out

    def _contract(self, curve: Curve, c: complex, r: float, tau: float) -> Curve:
        offsets = curve.points - c
        dist = np.abs(offsets)
        units = offsets / dist
        if tau >= 1.0:
            return RoundCurve(c, r, units)
        return PolyCurve.from_points(c + units * ((1.0 - tau) * dist + tau * r))

    def _follow(self, curve: Curve, c: complex, lam: float) -> Curve:
        if lam == 1.0:
            return curve
        if isinstance(curve, RoundCurve):
            return RoundCurve(c + (curve.center - c) * lam, curve.radius * lam, curve.directions)
        return PolyCurve.from_points(c + (curve.points - c) * lam)


# 全局服务实例
curve_service = CurveService()

"""
共形圆化服务
数值 Riemann 映射、收缩参数求解与非凸构型的分阶段圆化管线
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from scipy.optimize import bisect
from shapely.geometry import Point, Polygon

from ..core.config import pick, settings
from ..core.exceptions import ConvergenceError, DiskMapError, InvalidInputError, NumericalError
from ..core.tasks import task_manager
from ..models.conformal import DiskMap, RetractSchedule, ShrinkParameter, StageDescriptor
from ..models.curve import Curve, JordanConfiguration, PolyCurve, RoundCurve
from ..models.tree import RootedTree
from . import zipper
from .curve_service import curve_service
from .tree_service import tree_service

logger = logging.getLogger(__name__)

YValue = Union[ShrinkParameter, float]


@dataclass(frozen=True)
class ActiveState:
    """一个激活曲线在本阶段的映射数据"""

    index: int
    disk_map: DiskMap
    y: float
    preimages: Dict[int, np.ndarray]


class ConformalService:
    """共形圆化服务"""

    # ---- 圆盘映射 ----

    def build_disk_map(self, p: Curve, center: Optional[complex] = None, tol: Optional[float] = None) -> DiskMap:
        """构造 γ: 单位圆盘 -> p 围成的区域, γ(0) = center, γ'(0) > 0

        边界点从 ZIPPER_POINTS 开始逐级加倍, 直到边界误差不超过 tol。

        Args:
            p: 区域边界曲线
            center: 区域内点, 默认取曲线中心
            tol: 相对直径的边界误差容差

        Returns:
            DiskMap
        """
        tol = pick(tol, settings.BOUNDARY_TOL)
        c = curve_service.curve_center(p) if center is None else complex(center)
        if isinstance(p, RoundCurve):
            inside = abs(c - p.center) < p.radius
        else:
            inside = Polygon(p.vertices).contains(Point(c.real, c.imag))
        if not inside:
            raise DiskMapError(f"中心 {c} 不在曲线内部")
        diameter = curve_service.diameter(p)
        best: Optional[DiskMap] = None
        for level in range(settings.ZIPPER_MAX_REFINE + 1):
            count = settings.ZIPPER_POINTS * 2 ** level
            boundary = zipper.refine_points(p, count)
            disk_map = zipper.build(p, c, boundary, diameter, refinement=level)
            logger.debug(f"zipper: {disk_map.size} 个边界点, 边界误差 {disk_map.map_error:.3e}")
            if best is None or disk_map.map_error < best.map_error:
                best = disk_map
            if disk_map.map_error <= tol:
                logger.info(
                    f"圆盘映射构造完成: {disk_map.size} 个边界点, 边界误差 {disk_map.map_error:.3e}"
                )
                return disk_map
        err = best.map_error if best is not None else math.inf
        raise DiskMapError(f"加密 {settings.ZIPPER_MAX_REFINE} 次后边界误差仍为 {err:.3e}, 超过 {tol}")

    def map_forward(self, m: DiskMap, z: Union[complex, np.ndarray], guard: Optional[float] = None):
        """γ(z), 要求 |z| ≤ 1 - guard; z = 0 精确返回中心"""
        guard = pick(guard, settings.EVAL_GUARD)
        arr = np.asarray(z, dtype=complex)
        if np.any(np.abs(arr) > 1.0 - guard + 1e-15):
            raise DiskMapError(f"求值点超出圆盘的有效范围 |z| ≤ 1 - {guard}")
        out = zipper.evaluate(m, arr)
        out = np.where(arr == 0, m.center, out)
        return complex(out) if out.ndim == 0 else out

    def map_inverse(self, m: DiskMap, w: Union[complex, np.ndarray]):
        """γ⁻¹(w), 要求 w 严格位于区域内部"""
        arr = np.asarray(w, dtype=complex)
        flat = arr.ravel()
        inside = curve_service.region_contains(m.domain, flat)
        if not np.all(inside):
            raise DiskMapError(f"有 {int((~inside).sum())} 个点不在区域内部")
        out = zipper.evaluate_inverse(m, arr)
        out = np.where(arr == m.center, 0.0, out)
        if np.any(~np.isfinite(out)) or np.any(np.abs(out) >= 1.0):
            raise DiskMapError("逆映射结果不在单位圆盘内")
        return complex(out) if out.ndim == 0 else out

    # ---- 收缩与圆化同伦 ----

    def shrink_phi(self, y: YValue, s: float, z: Union[complex, np.ndarray]):
        """φ_y(s, z) = (1 - ys)·z"""
        factor = 1.0 - _y_value(y) * s
        if np.ndim(z) == 0:
            return factor * complex(z)
        return factor * np.asarray(z, dtype=complex)

    def rounding_h(self, m: DiskMap, y: YValue, t: float, z: Union[complex, np.ndarray]):
        """h(t, z) = c + (γ(t(1-y)z) - c)/t, t 不超过 LINEAR_BRANCH_T 时取线性分支 c + (1-y)γ'(0)z"""
        if not 0.0 <= t <= 1.0:
            raise InvalidInputError(f"t 必须位于 [0, 1]: {t}")
        yv = _y_value(y)
        arr = np.asarray(z, dtype=complex)
        if t <= settings.LINEAR_BRANCH_T:
            out = m.center + (1.0 - yv) * m.derivative_at_center * arr
        else:
            out = m.center + (np.asarray(self.map_forward(m, t * (1.0 - yv) * arr)) - m.center) / t
        return complex(out) if np.ndim(out) == 0 else out

    def sup_radius(self, m: DiskMap, y: float) -> float:
        """M(y): t 网格与边界采样角上 |h(t, e^{iθ}) - c| 的最大值"""
        guard = settings.EVAL_GUARD
        idx = zipper.sample_indices(m.size, settings.SHRINK_ANGLE_SAMPLES)
        ts = np.linspace(0.0, 1.0, settings.SHRINK_T_GRID)
        best = (1.0 - y) * abs(m.derivative_at_center)
        ts = ts[ts > settings.LINEAR_BRANCH_T]
        radii = ts * (1.0 - y)
        exact = radii >= 1.0 - guard
        if np.any(exact):
            dist = float(np.abs(m.boundary_points[idx] - m.center).max())
            best = max(best, float((dist / ts[exact]).max()))
        inner = ts[~exact]
        if inner.size:
            dirs = np.exp(1j * m.boundary_angles[idx])
            pts = (inner * (1.0 - y))[:, None] * dirs[None, :]
            img = zipper.evaluate(m, pts.ravel()).reshape(pts.shape)
            best = max(best, float((np.abs(img - m.center).max(axis=1) / inner).max()))
        return best

    def solve_shrink_parameter(self, m: DiskMap, r: float) -> ShrinkParameter:
        """二分求 y 使 M(y) = r; M(0) ≤ r 时取 y = 0"""
        if r <= 0:
            raise InvalidInputError(f"内半径必须为正: {r}")

        def residual(y: float) -> float:
            return self.sup_radius(m, y) - r

        if residual(0.0) <= 0:
            return ShrinkParameter(0.0)
        upper = 1.0 - 1e-12
        if residual(upper) >= 0:
            raise ConvergenceError("M(y) 在 y → 1 时仍不小于内半径")
        try:
            y = bisect(
                residual,
                0.0,
                upper,
                xtol=settings.SHRINK_REL_TOL * 1e-3,
                maxiter=settings.SHRINK_MAX_ITER,
            )
        except RuntimeError as e:
            logger.error(f"收缩参数二分失败: {e}", exc_info=True)
            raise ConvergenceError(f"收缩参数二分未收敛: {e}") from e
        err = abs(residual(y))
        if err > settings.SHRINK_REL_TOL * r:
            raise ConvergenceError(f"收缩参数残差 {err:.3e} 超过 {settings.SHRINK_REL_TOL} × r")
        logger.debug(f"收缩参数 y = {y:.9f}")
        return ShrinkParameter(float(y))

    # ---- 分阶段管线 ----

    def plan_schedule(self, tree: RootedTree, frames_per_stage: int) -> RetractSchedule:
        """阶段 k = 0..d 激活深度为 k 的曲线, 其后代作为跟随者"""
        depth = tree_service.depth_index(tree)
        stages = []
        for k in range(depth.dmax + 1):
            active = tuple(i for i, d in enumerate(depth.depths) if d == k)
            followers = {
                i: tuple(v - 1 for v in tree_service.descendants(tree, i + 1)) for i in active
            }
            stages.append(StageDescriptor(index=k, active=active, followers=followers))
        return RetractSchedule(stages=tuple(stages), frame_count=frames_per_stage)

    def conformal_retract(self, j: JordanConfiguration, frames_per_stage: int) -> List[JordanConfiguration]:
        frames, _ = self.execute_schedule(j, frames_per_stage)
        return frames

    def conformal_retract_with_diagnostics(
        self, j: JordanConfiguration, frames_per_stage: int
    ) -> Tuple[List[JordanConfiguration], List[Dict[str, object]]]:
        """分阶段圆化, 附带每阶段的收缩参数与边界误差"""
        frames, schedule = self.execute_schedule(j, frames_per_stage)
        diagnostics: List[Dict[str, object]] = [
            {
                "stage": stage.index,
                "active": [i + 1 for i in stage.disk_maps],
                "y": {str(i + 1): p.y for i, p in stage.shrink.items()},
                "map_error": {str(i + 1): m.map_error for i, m in stage.disk_maps.items()},
            }
            for stage in schedule.stages
        ]
        return frames, diagnostics

    def execute_schedule(
        self, j: JordanConfiguration, frames_per_stage: int
    ) -> Tuple[List[JordanConfiguration], RetractSchedule]:
        """非凸构型的分阶段圆化

        每个阶段前半段沿 γ∘φ_y 把区域收缩, 后半段沿 h 把它拉成圆;
        全部阶段结束后把接近圆的曲线替换为精确圆, 必要时再走一次凸圆化。

        Returns:
            (帧列表, 填入每条激活曲线圆盘映射与收缩参数的调度)
        """
        if frames_per_stage < 1:
            raise InvalidInputError(f"每阶段帧数必须为正: {frames_per_stage}")
        curves: List[Curve] = [curve_service.working_curve(c) for c in j]
        working = JordanConfiguration(tuple(curves))
        tree = curve_service.curve_nesting_tree(working)
        schedule = self.plan_schedule(tree, frames_per_stage)
        frames = [working]
        executed: List[StageDescriptor] = []

        for stage in schedule.stages:
            pending = [i for i in stage.active if not isinstance(curves[i], RoundCurve)]
            snapshot = list(curves)
            states = task_manager.run_stage(
                f"conformal-{stage.index}",
                lambda i: self._prepare_active(i, snapshot, stage.followers[i]),
                pending,
            )
            for f in range(1, frames_per_stage + 1):
                tau = f / frames_per_stage
                moved = list(curves)
                for state in states:
                    for k, curve in self._stage_positions(state, tau).items():
                        moved[k] = curve
                frames.append(JordanConfiguration(tuple(moved)))
            curves = list(frames[-1].curves)
            executed.append(
                replace(
                    stage,
                    disk_maps={s.index: s.disk_map for s in states},
                    shrink={s.index: ShrinkParameter(s.y) for s in states},
                )
            )

        snapped = [self._snap(curve) for curve in curves]
        if any(not isinstance(curve, RoundCurve) for curve in snapped):
            logger.info("仍有曲线未圆化, 追加凸圆化阶段")
            tail = curve_service.convex_retract_frames(JordanConfiguration(tuple(snapped)), frames_per_stage)
            frames.extend(tail[1:])
        elif any(a is not b for a, b in zip(snapped, curves)):
            frames[-1] = JordanConfiguration(tuple(snapped))
        logger.info(f"共形圆化完成: {len(j)} 条曲线, {len(schedule.stages)} 个阶段, {len(frames)} 帧")
        return frames, replace(schedule, stages=tuple(executed))

    def _prepare_active(self, i: int, curves: List[Curve], followers: Tuple[int, ...]) -> ActiveState:
        curve = curves[i]
        try:
            metrics = curve_service.curve_metrics(curve)
            disk_map = self.build_disk_map(curve, metrics.center)
            y = self.solve_shrink_parameter(disk_map, metrics.inradius)
            preimages = {}
            for k in followers:
                dense = curve_service.densify(curves[k], settings.FOLLOWER_VERTEX_BUDGET)
                preimages[k] = self.map_inverse(disk_map, dense.points)
        except DiskMapError as e:
            logger.error(f"曲线 {i + 1} 的圆盘映射失败: {e}", exc_info=True)
            raise DiskMapError(f"曲线 {i + 1} 的圆盘映射失败: {e.message}", curve=i + 1) from e
        except NumericalError as e:
            logger.error(f"曲线 {i + 1} 的数值计算失败: {e}", exc_info=True)
            raise
        logger.info(f"曲线 {i + 1}: y = {y.y:.6g}, 边界误差 {disk_map.map_error:.3e}, 跟随者 {len(followers)} 条")
        return ActiveState(index=i, disk_map=disk_map, y=y.y, preimages=preimages)

    def _stage_positions(self, state: ActiveState, tau: float) -> Dict[int, Curve]:
        """阶段内时刻 tau 时激活曲线及其跟随者的位置"""
        m, y = state.disk_map, state.y
        c = m.center
        guard = settings.EVAL_GUARD
        everything = np.arange(m.size)
        out: Dict[int, Curve] = {}
        if tau <= 0.5:
            radius = 1.0 - 2.0 * tau * y
            out[state.index] = PolyCurve.from_points(zipper.evaluate_on_circle(m, radius, everything, guard))
            for k, zeta in state.preimages.items():
                out[k] = PolyCurve.from_points(zipper.evaluate(m, radius * zeta))
            return out
        t = 2.0 - 2.0 * tau
        if t <= settings.LINEAR_BRANCH_T:
            scale = (1.0 - y) * abs(m.derivative_at_center)
            out[state.index] = RoundCurve(c, scale, np.exp(1j * m.boundary_angles))
            for k, zeta in state.preimages.items():
                out[k] = PolyCurve.from_points(c + scale * zeta)
            return out
        radius = t * (1.0 - y)
        out[state.index] = PolyCurve.from_points(c + (zipper.evaluate_on_circle(m, radius, everything, guard) - c) / t)
        for k, zeta in state.preimages.items():
            out[k] = PolyCurve.from_points(c + (zipper.evaluate(m, radius * zeta) - c) / t)
        return out

    def _snap(self, curve: Curve) -> Curve:
        """接近圆的多边形替换为精确圆"""
        if isinstance(curve, RoundCurve) or not curve_service.is_round(curve, settings.CONFORMAL_SNAP_TOL):
            return curve
        metrics = curve_service.curve_metrics(curve)
        offsets = curve.points - metrics.center
        radius = 0.5 * (metrics.inradius + metrics.outradius)
        return RoundCurve(metrics.center, radius, offsets / np.abs(offsets))


def _y_value(y: YValue) -> float:
    return y.y if isinstance(y, ShrinkParameter) else float(y)


# 全局服务实例
conformal_service = ConformalService()

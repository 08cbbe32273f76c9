"""
圆构型服务
两两位置判定、构型校验、嵌套树提取与平面序
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import pick, settings
from ..core.exceptions import InvalidConfigurationError
from ..models.geometry import Circle, CircleConfiguration, PairClass, ValidationReport
from ..models.tree import RootedTree

logger = logging.getLogger(__name__)


class GeometryService:
    """圆构型服务"""

    def classify_pair(self, a: Circle, b: Circle, eps: Optional[float] = None) -> PairClass:
        """判定两圆的位置关系

        Args:
            a: 第一个圆
            b: 第二个圆
            eps: 相对严格裕度, 距离相切不足该裕度时视为相交

        Returns:
            PairClass 标签
        """
        eps = pick(eps, settings.EPSILON)
        dx, dy = a.x - b.x, a.y - b.y
        d2 = dx * dx + dy * dy
        margin = eps * (a.r + b.r) ** 2
        if d2 - (a.r + b.r) ** 2 > margin:
            return PairClass.SEPARATE
        if (a.r - b.r) ** 2 - d2 > margin:
            if a.r < b.r:
                return PairClass.NESTED_FIRST_IN_SECOND
            return PairClass.NESTED_SECOND_IN_FIRST
        return PairClass.INTERSECTING

    def validate_configuration(
        self, c: CircleConfiguration, eps: Optional[float] = None
    ) -> ValidationReport:
        """校验圆构型, 违规以报告形式返回而不抛出异常"""
        violations: List[Tuple[int, ...]] = []
        messages: List[str] = []
        circles = c.circles
        for i in range(len(circles)):
            for j in range(i + 1, len(circles)):
                if self.classify_pair(circles[i], circles[j], eps) is PairClass.INTERSECTING:
                    violations.append((i + 1, j + 1))
                    messages.append(f"圆 {i + 1} 与圆 {j + 1} 相交或相切")
        if violations:
            logger.debug(f"圆构型校验发现 {len(violations)} 处违规")
        return ValidationReport(ok=not violations, violations=tuple(violations), messages=tuple(messages))

    def require_valid(self, c: CircleConfiguration) -> None:
        report = self.validate_configuration(c)
        if not report.ok:
            raise InvalidConfigurationError("圆构型无效", details=list(report.messages))

    def circle_nesting_tree(self, c: CircleConfiguration) -> RootedTree:
        """提取带标号的嵌套树: 父顶点为真包含该圆的最小圆, 没有则为根"""
        self.require_valid(c)
        circles = c.circles
        parents = []
        for j, inner in enumerate(circles):
            best, best_r = 0, float("inf")
            for i, outer in enumerate(circles):
                if i == j:
                    continue
                if self.classify_pair(inner, outer) is PairClass.NESTED_FIRST_IN_SECOND and outer.r < best_r:
                    best, best_r = i + 1, outer.r
            parents.append(best)
        return RootedTree(tuple(parents), labeled=True)

    def planar_child_order(self, c: CircleConfiguration, t: RootedTree) -> RootedTree:
        """按圆心的字典序 (先 x 后 y) 排列每个顶点的孩子"""
        if t.n != len(c):
            raise InvalidConfigurationError(f"树有 {t.n} 个顶点, 构型有 {len(c)} 个圆")
        order = []
        for v in range(t.n + 1):
            kids = sorted(t.children(v), key=lambda k: (c[k - 1].x, c[k - 1].y, k))
            order.append(tuple(kids))
        return RootedTree(t.parents, labeled=t.labeled, labels=t.labels, child_order=tuple(order))

    def forget_nested(self, c: CircleConfiguration) -> Tuple[CircleConfiguration, Tuple[int, ...]]:
        """只保留不被任何圆包含的圆

        Returns:
            (新构型, 保留圆在原构型中的 1 起始标号)
        """
        tree = self.circle_nesting_tree(c)
        kept = tree.children(0)
        return CircleConfiguration(tuple(c[v - 1] for v in kept)), kept

    def realize_tree(self, t: RootedTree, rng: Optional[np.random.Generator] = None) -> CircleConfiguration:
        """把有根树实现为圆构型, 第 v 个圆对应顶点 v

        根的孩子半径为 1, 沿 x 轴间隔 3 排列; 半径 ρ 的圆若有 k 个孩子,
        孩子半径为 ρ/(3k), 圆心沿一条过父圆心的直径均匀排列 (有 rng 时随机旋转)。
        """
        centers = {}
        radii = {}
        for j, v in enumerate(t.children(0)):
            centers[v] = complex(3.0 * j, 0.0)
            radii[v] = 1.0
        stack = list(t.children(0))
        while stack:
            v = stack.pop()
            kids = t.children(v)
            if not kids:
                continue
            rho, k = radii[v], len(kids)
            angle = float(rng.uniform(0.0, 2.0 * np.pi)) if rng is not None else 0.0
            axis = complex(np.cos(angle), np.sin(angle))
            for j, child in enumerate(kids):
                offset = -rho + (2 * j + 1) * rho / k
                centers[child] = centers[v] + offset * axis
                radii[child] = rho / (3.0 * k)
                stack.append(child)
        circles = tuple(
            Circle(centers[v].real, centers[v].imag, radii[v]) for v in range(1, t.n + 1)
        )
        return CircleConfiguration(circles)

    def apply_similarity(
        self, c: CircleConfiguration, rotation: float, scale: float, translation: complex
    ) -> CircleConfiguration:
        """对全部圆施加保向相似变换 z -> scale * e^{i rotation} z + translation"""
        factor = scale * complex(np.cos(rotation), np.sin(rotation))
        out = []
        for circle in c:
            z = factor * circle.center + translation
            out.append(Circle(z.real, z.imag, abs(scale) * circle.r))
        return CircleConfiguration(tuple(out))

    def permute(self, c: CircleConfiguration, order: Sequence[int]) -> CircleConfiguration:
        """按 0 起始下标序列重排圆 (即重新标号)"""
        return CircleConfiguration(tuple(c[i] for i in order))


# 全局服务实例
geometry_service = GeometryService()

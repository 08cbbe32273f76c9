"""
随机构型采样服务
按树形均匀抽样后递归打包圆, 并统计观察到的连通分支数
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Set

import numpy as np

from ..core.config import settings
from ..core.exceptions import RangeError
from ..models.curve import Curve, JordanConfiguration, PolyCurve, RoundCurve
from ..models.geometry import CircleConfiguration
from ..models.tree import RootedTree
from .geometry_service import geometry_service
from .tree_service import tree_service

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComponentCount:
    """分支计数结果"""

    n: int
    samples: int
    labeled: bool
    enumerated: int
    observed: int


class SamplerService:
    """随机构型采样服务"""

    def random_tree(self, n: int, rng: np.random.Generator, labeled: bool = False) -> RootedTree:
        """均匀抽取一棵树

        不带标号时在树形中均匀抽取; 带标号时对 {0..n}^n 做拒绝采样, 接受率为 1/(n+1)。
        """
        if labeled:
            while True:
                parents = tuple(int(p) for p in rng.integers(0, n + 1, size=n))
                if tree_service.is_parent_array(parents):
                    return RootedTree(parents, labeled=True)
        codes = tree_service.enumerate_trees(n)
        return tree_service.tree_from_code(codes[int(rng.integers(len(codes)))])

    def random_similarity(self, rng: np.random.Generator):
        """随机保向相似变换 (旋转角, 缩放, 平移)"""
        rotation = float(rng.uniform(0.0, 2.0 * math.pi))
        scale = float(math.exp(rng.uniform(-1.0, 1.0)))
        translation = complex(*rng.normal(0.0, 5.0, size=2))
        return rotation, scale, translation

    def random_circle_configuration(
        self, n: int, rng: np.random.Generator, labeled: bool = False, tree: Optional[RootedTree] = None
    ) -> CircleConfiguration:
        """随机圆构型

        不带标号时对圆的顺序做随机重排, 带标号时第 v 个圆对应顶点 v。
        """
        t = tree if tree is not None else self.random_tree(n, rng, labeled)
        c = geometry_service.realize_tree(t, rng)
        c = geometry_service.apply_similarity(c, *self.random_similarity(rng))
        if not labeled:
            c = geometry_service.permute(c, [int(i) for i in rng.permutation(len(c))])
        return c

    def random_convex_configuration(
        self, n: int, rng: np.random.Generator, vertices: int = 24, round_probability: float = 0.2
    ) -> JordanConfiguration:
        """随机凸曲线构型: 把每个圆换成外接于它的椭圆多边形, 部分保留为圆"""
        c = self.random_circle_configuration(n, rng)
        curves: List[Curve] = []
        for circle in c:
            if rng.random() < round_probability:
                curves.append(RoundCurve.discretized(circle.center, circle.r, settings.CIRCLE_VERTICES))
                continue
            a, b = circle.r * rng.uniform(1.0, 1.25, size=2)
            theta = 2.0 * np.pi * np.arange(vertices) / vertices
            tilt = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
            curves.append(PolyCurve.from_points(circle.center + tilt * (a * np.cos(theta) + 1j * b * np.sin(theta))))
        return JordanConfiguration(tuple(curves))

    def random_nonconvex_configuration(
        self, n: int, rng: np.random.Generator, vertices: int = 64
    ) -> JordanConfiguration:
        """随机非凸曲线构型: 每个圆换成五瓣花形 r(θ) = ρ(1.15 + 0.15 cos 5θ)"""
        c = self.random_circle_configuration(n, rng)
        curves: List[Curve] = []
        theta = 2.0 * np.pi * np.arange(vertices) / vertices
        for circle in c:
            phase = float(rng.uniform(0.0, 2.0 * np.pi))
            radius = circle.r * (1.15 + 0.15 * np.cos(5.0 * theta))
            curves.append(PolyCurve.from_points(circle.center + radius * np.exp(1j * (theta + phase))))
        return JordanConfiguration(tuple(curves))

    def count_components(
        self, n: int, samples: Optional[int] = None, seed: Optional[int] = None, labeled: bool = False
    ) -> ComponentCount:
        """比较枚举的分支数与随机构型中观察到的不同嵌套树数

        Args:
            n: 圆的个数, 1 ≤ n ≤ COUNT_MAX_N
            samples: 采样次数, 缺省为枚举数的 10 倍
            seed: 随机种子
            labeled: 按带标号分支计数

        Returns:
            ComponentCount
        """
        if not 1 <= n <= settings.COUNT_MAX_N:
            raise RangeError(f"n 必须在 1 到 {settings.COUNT_MAX_N} 之间: {n}")
        rng = np.random.default_rng(seed)
        if labeled:
            enumerated = len(tree_service.enumerate_labeled_trees(n))
        else:
            enumerated = len(tree_service.enumerate_trees(n))
        if samples is None:
            samples = 10 * enumerated
        if samples < 0:
            raise RangeError(f"采样次数不能为负: {samples}")
        seen: Set[object] = set()
        for _ in range(samples):
            c = self.random_circle_configuration(n, rng, labeled=labeled)
            tree = geometry_service.circle_nesting_tree(c)
            seen.add(tree.parents if labeled else tree_service.canonical_code(tree))
        logger.info(f"n={n} 的分支计数: 枚举 {enumerated}, 观察 {len(seen)} (采样 {samples})")
        return ComponentCount(n=n, samples=samples, labeled=labeled, enumerated=enumerated, observed=len(seen))


# 全局服务实例
sampler_service = SamplerService()

"""
有根树模型
"""
from dataclasses import dataclass, field
from typing import List, NewType, Optional, Tuple

from ..core.exceptions import InvalidInputError

# 排序后的括号串标准形
CanonicalCode = NewType("CanonicalCode", str)


@dataclass(frozen=True)
class RootedTree:
    """有根树

    顶点 0 为根, parents[v - 1] 是顶点 v 的父顶点。labels 记录每个位置的原始标号,
    child_order 记录平面序 (下标 0 为根), 二者都是可选的派生数据。
    """

    parents: Tuple[int, ...] = ()
    labeled: bool = False
    labels: Optional[Tuple[int, ...]] = None
    child_order: Optional[Tuple[Tuple[int, ...], ...]] = None
    _children: Tuple[Tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False, default=()
    )

    def __post_init__(self) -> None:
        parents = tuple(int(p) for p in self.parents)
        n = len(parents)
        object.__setattr__(self, "parents", parents)
        for v, p in enumerate(parents, start=1):
            if not 0 <= p <= n or p == v:
                raise InvalidInputError(f"顶点 {v} 的父顶点 {p} 无效")
        # 每个顶点沿父链必须在 n 步内到达根
        for v in range(1, n + 1):
            u, steps = v, 0
            while u != 0:
                u = parents[u - 1]
                steps += 1
                if steps > n:
                    raise InvalidInputError(f"父关系存在环 (经过顶点 {v})")
        if self.labels is not None:
            labels = tuple(int(x) for x in self.labels)
            if len(labels) != n or len(set(labels)) != n:
                raise InvalidInputError("标号数量必须与顶点数一致且互不相同")
            object.__setattr__(self, "labels", labels)

        buckets: List[List[int]] = [[] for _ in range(n + 1)]
        for v, p in enumerate(parents, start=1):
            buckets[p].append(v)
        if self.child_order is not None:
            order = tuple(tuple(int(c) for c in row) for row in self.child_order)
            if len(order) != n + 1 or any(
                sorted(order[v]) != buckets[v] for v in range(n + 1)
            ):
                raise InvalidInputError("平面序与父关系不一致")
            object.__setattr__(self, "child_order", order)
            object.__setattr__(self, "_children", order)
        else:
            object.__setattr__(self, "_children", tuple(tuple(b) for b in buckets))

    @property
    def n(self) -> int:
        """非根顶点数"""
        return len(self.parents)

    def children(self, v: int = 0) -> Tuple[int, ...]:
        return self._children[v]

    def parent(self, v: int) -> int:
        return self.parents[v - 1]

    def label(self, v: int) -> int:
        return self.labels[v - 1] if self.labels is not None else v


@dataclass(frozen=True)
class ChildPartition:
    """根的孩子位置 1..m 的划分, 同一块内的子树同构"""

    m: int
    blocks: Tuple[Tuple[int, ...], ...] = ()

    def block_of(self, position: int) -> Tuple[int, ...]:
        for block in self.blocks:
            if position in block:
                return block
        raise KeyError(position)

    @property
    def is_discrete(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)


@dataclass(frozen=True)
class DepthIndex:
    """d_j = j 的非根真祖先数, dmax 为其最大值 (空树约定为 0)"""

    depths: Tuple[int, ...]
    dmax: int

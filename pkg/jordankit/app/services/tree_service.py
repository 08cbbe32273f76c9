"""
有根树服务
标准形、同构判定、枚举、深度索引、孩子划分与根层限制
"""
import itertools
import logging
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.config import settings
from ..core.exceptions import InvalidInputError, RangeError
from ..models.tree import CanonicalCode, ChildPartition, DepthIndex, RootedTree

logger = logging.getLogger(__name__)


class TreeService:
    """有根树服务"""

    def subtree_codes(self, t: RootedTree) -> Dict[int, str]:
        """自底向上计算每个顶点子树的 AHU 编码"""
        codes: Dict[int, str] = {}
        for v in reversed(self.preorder(t)):
            codes[v] = "(" + "".join(sorted(codes[c] for c in t.children(v))) + ")"
        return codes

    def canonical_code(self, t: RootedTree) -> CanonicalCode:
        """与顶点编号无关的标准编码"""
        return CanonicalCode(self.subtree_codes(t)[0])

    def preorder(self, t: RootedTree, v: int = 0) -> List[int]:
        order, stack = [], [v]
        while stack:
            u = stack.pop()
            order.append(u)
            stack.extend(reversed(t.children(u)))
        return order

    def trees_isomorphic(self, a: RootedTree, b: RootedTree, labeled: Optional[bool] = None) -> bool:
        """判定两棵树是否相等

        labeled 为 None 时, 两棵树都带标号则按带标号比较。
        带标号模式比较父数组, 否则比较标准编码。
        """
        if labeled is None:
            labeled = a.labeled and b.labeled
        if labeled:
            return a.parents == b.parents and self.labels_of(a) == self.labels_of(b)
        return self.canonical_code(a) == self.canonical_code(b)

    def labels_of(self, t: RootedTree) -> Tuple[int, ...]:
        return tuple(t.label(v) for v in range(1, t.n + 1))

    def enumerate_trees(self, n: int) -> List[CanonicalCode]:
        """枚举 n 个非根顶点的全部有根树 (按编码排序, 无重复)"""
        if not 0 <= n <= settings.ENUMERATION_MAX_N:
            raise RangeError(f"n 必须在 0 到 {settings.ENUMERATION_MAX_N} 之间: {n}")
        return list(_enumerate_codes(n))

    def enumerate_labeled_trees(self, n: int) -> List[RootedTree]:
        """枚举全部带标号有根树, 共 (n+1)^(n-1) 棵"""
        if not 0 <= n <= settings.COUNT_MAX_N:
            raise RangeError(f"n 必须在 0 到 {settings.COUNT_MAX_N} 之间: {n}")
        trees = []
        for parents in itertools.product(range(n + 1), repeat=n):
            if self.is_parent_array(parents):
                trees.append(RootedTree(tuple(parents), labeled=True))
        return trees

    def is_parent_array(self, parents: Sequence[int]) -> bool:
        n = len(parents)
        for v in range(1, n + 1):
            u, steps = v, 0
            while u != 0:
                u = parents[u - 1]
                steps += 1
                if u == v or steps > n:
                    return False
        return True

    def tree_from_code(self, code: str) -> RootedTree:
        """解析标准编码, 顶点按先序编号, 孩子按编码中的顺序排列"""
        parents: List[int] = []
        stack: List[int] = []
        next_id = -1
        for ch in code:
            if ch == "(":
                if next_id >= 0 and not stack:
                    raise InvalidInputError(f"树编码只能有一个根: {code!r}")
                next_id += 1
                if stack:
                    parents.append(stack[-1])
                stack.append(next_id)
            elif ch == ")":
                if not stack:
                    raise InvalidInputError(f"树编码括号不匹配: {code!r}")
                stack.pop()
            else:
                raise InvalidInputError(f"树编码中出现非法字符: {ch!r}")
        if stack or next_id < 0:
            raise InvalidInputError(f"无效的树编码: {code!r}")
        return RootedTree(tuple(parents))

    def child_partition(self, t: RootedTree) -> ChildPartition:
        """按子树编码对根的孩子位置分块

        带标号的树各子树标号不同, 划分总是离散的。
        """
        kids = t.children(0)
        m = len(kids)
        if t.labeled:
            return ChildPartition(m=m, blocks=tuple((i,) for i in range(1, m + 1)))
        codes = self.subtree_codes(t)
        groups: Dict[str, List[int]] = {}
        for position, v in enumerate(kids, start=1):
            groups.setdefault(codes[v], []).append(position)
        blocks = tuple(tuple(groups[code]) for code in sorted(groups))
        return ChildPartition(m=m, blocks=blocks)

    def depth_index(self, t: RootedTree) -> DepthIndex:
        depths = [0] * t.n
        for v in self.preorder(t)[1:]:
            p = t.parent(v)
            depths[v - 1] = 0 if p == 0 else depths[p - 1] + 1
        return DepthIndex(depths=tuple(depths), dmax=max(depths, default=0))

    def restrict_to_root_children(self, t: RootedTree) -> RootedTree:
        """只保留根和根的孩子, 带标号时保留原标号"""
        kids = t.children(0)
        labels: Optional[Tuple[int, ...]] = tuple(t.label(v) for v in kids)
        if labels == tuple(range(1, len(kids) + 1)):
            labels = None
        return RootedTree((0,) * len(kids), labeled=t.labeled, labels=labels)

    def descendants(self, t: RootedTree, v: int) -> List[int]:
        """v 的全部真后代"""
        return self.preorder(t, v)[1:]

    def subtree(self, t: RootedTree, v: int, canonical: bool = True) -> Tuple[RootedTree, Tuple[int, ...]]:
        """以 v 为根的子树

        canonical 为真时孩子按编码排序 (编码相同按顶点号), 得到的树与
        tree_from_code(子树编码) 完全一致; 否则孩子按顶点号排序并保留标号。

        Returns:
            (子树, embedding), embedding[k] 是子树顶点 k 在 t 中的顶点号, embedding[0] = v
        """
        codes = self.subtree_codes(t) if canonical else {}
        order: List[int] = []
        parents: List[int] = []
        index: Dict[int, int] = {}
        stack = [v]
        while stack:
            u = stack.pop()
            index[u] = len(order)
            order.append(u)
            if u != v:
                parents.append(index[t.parent(u)])
            kids = t.children(u)
            if canonical:
                kids = tuple(sorted(kids, key=lambda k: (codes[k], k)))
            else:
                kids = tuple(sorted(kids))
            stack.extend(reversed(kids))
        if canonical:
            sub = RootedTree(tuple(parents))
        else:
            sub = RootedTree(
                tuple(parents), labeled=t.labeled, labels=tuple(t.label(u) for u in order[1:])
            )
        return sub, tuple(order)

    def forget_labels(self, t: RootedTree) -> RootedTree:
        return RootedTree(t.parents)

    def relabel(self, t: RootedTree, perm: Sequence[int]) -> RootedTree:
        """按 perm 重新编号: 原顶点 v 变为 perm[v - 1]"""
        n = t.n
        parents = [0] * n
        for v in range(1, n + 1):
            p = t.parent(v)
            parents[perm[v - 1] - 1] = 0 if p == 0 else perm[p - 1]
        return RootedTree(tuple(parents), labeled=t.labeled)


@lru_cache(maxsize=None)
def _enumerate_codes(n: int) -> Tuple[CanonicalCode, ...]:
    """在 n-1 个顶点的每棵树的每个顶点上挂一片叶子, 按编码去重"""
    if n == 0:
        return (CanonicalCode("()"),)
    service = TreeService()
    seen = set()
    for code in _enumerate_codes(n - 1):
        base = service.tree_from_code(code)
        for v in range(base.n + 1):
            grown = RootedTree(base.parents + (v,))
            seen.add(service.canonical_code(grown))
    codes = tuple(sorted(seen))
    logger.debug(f"n={n} 的有根树共 {len(codes)} 棵")
    return codes


# 全局服务实例
tree_service = TreeService()

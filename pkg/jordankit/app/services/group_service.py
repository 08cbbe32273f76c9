"""
辫树自同构群服务
半直积乘法、逆元、到树自同构群的投影、纯元判定以及阶的计算
"""
import logging
import math
from collections import Counter
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from ..core.exceptions import TreeMismatchError
from ..models.braid import BAutElement, BraidWord, Permutation, TreeAutomorphism
from ..models.tree import RootedTree
from .braid_service import braid_service
from .tree_service import tree_service

logger = logging.getLogger(__name__)


class GroupService:
    """辫树自同构群服务"""

    # ---- 置换 ----

    def permutation_compose(self, p: Permutation, q: Permutation) -> Permutation:
        """(p ∘ q)(i) = p(q(i))"""
        if p.m != q.m:
            raise TreeMismatchError(f"置换大小不一致: {p.m} 与 {q.m}")
        return Permutation(tuple(p(q(i)) for i in range(1, p.m + 1)))

    def permutation_inverse(self, p: Permutation) -> Permutation:
        images = [0] * p.m
        for i in range(1, p.m + 1):
            images[p(i) - 1] = i
        return Permutation(tuple(images))

    # ---- 树结构 ----

    def child_trees(self, t: RootedTree) -> List[Tuple[RootedTree, Tuple[int, ...]]]:
        """每个根孩子位置上的子树及其嵌入

        不带标号时子树取其编码对应的标准树, 带标号时保留子树标号。
        """
        return [tree_service.subtree(t, v, canonical=not t.labeled) for v in t.children(0)]

    def same_tree(self, a: RootedTree, b: RootedTree) -> bool:
        return (
            a.parents == b.parents
            and a.labeled == b.labeled
            and tree_service.labels_of(a) == tree_service.labels_of(b)
        )

    def aut_order(self, t: RootedTree) -> int:
        """|Aut(T)| = ∏|Aut(T(v_i))| · ∏(块大小)!, 按不带标号的形状计算"""
        return _aut_order_of_code(tree_service.canonical_code(t))

    def pure_signature(self, t: RootedTree) -> Tuple[int, ...]:
        """全部顶点 (含根) 的非零孩子数, 降序排列"""
        counts = (len(t.children(v)) for v in range(t.n + 1))
        return tuple(sorted((c for c in counts if c > 0), reverse=True))

    def enumerate_automorphisms(self, t: RootedTree) -> List[TreeAutomorphism]:
        """回溯穷举全部保持父关系的顶点双射"""
        order = tree_service.preorder(t)[1:]
        found: List[TreeAutomorphism] = []
        mapping: Dict[int, int] = {0: 0}
        used = set()

        def search(k: int) -> Iterator[None]:
            if k == len(order):
                yield None
                return
            v = order[k]
            for u in t.children(mapping[t.parent(v)]):
                if u in used or len(t.children(u)) != len(t.children(v)):
                    continue
                mapping[v] = u
                used.add(u)
                yield from search(k + 1)
                used.discard(u)
                del mapping[v]

        for _ in search(0):
            found.append(TreeAutomorphism(t, tuple(mapping[v] for v in range(1, t.n + 1))))
        return found

    def automorphism_compose(self, f: TreeAutomorphism, g: TreeAutomorphism) -> TreeAutomorphism:
        """(f ∘ g)(v) = f(g(v))"""
        if not self.same_tree(f.tree, g.tree):
            raise TreeMismatchError("两个自同构不在同一棵树上")
        return TreeAutomorphism(f.tree, tuple(f(g(v)) for v in range(1, f.tree.n + 1)))

    # ---- 群元素 ----

    def identity_element(self, t: RootedTree) -> BAutElement:
        m = len(t.children(0))
        children = tuple(self.identity_element(sub) for sub, _ in self.child_trees(t))
        return BAutElement(tree=t, braid=BraidWord(m), children=children)

    def validate_element(self, a: BAutElement) -> None:
        """检查辫子股数、块约束以及每个孩子所在的子树"""
        t = a.tree
        m = len(t.children(0))
        if a.braid.strands != m:
            raise TreeMismatchError(f"辫子股数 {a.braid.strands} 与根的孩子数 {m} 不一致")
        if len(a.children) != m:
            raise TreeMismatchError(f"孩子元素数 {len(a.children)} 与根的孩子数 {m} 不一致")
        partition = tree_service.child_partition(t)
        if not braid_service.braid_in_block_subgroup(a.braid, partition):
            raise TreeMismatchError("辫子的置换把某个位置移出了它的同构块")
        for position, ((sub, _), child) in enumerate(zip(self.child_trees(t), a.children), start=1):
            if not self.same_tree(sub, child.tree):
                raise TreeMismatchError(f"位置 {position} 的孩子元素不在对应子树上")
            self.validate_element(child)

    def baut_compose(self, a: BAutElement, b: BAutElement) -> BAutElement:
        """半直积乘法 (g, β)(g', β') = (g · β(g'), ββ')

        结果的辫子为两者拼接, 位置 i 的孩子为 a_i · b_{σ_a⁻¹(i)}。
        """
        if not self.same_tree(a.tree, b.tree):
            raise TreeMismatchError("两个元素不在同一棵树上")
        return self._compose(a, b)

    def _compose(self, a: BAutElement, b: BAutElement) -> BAutElement:
        sigma_inv = self.permutation_inverse(braid_service.braid_permutation(a.braid))
        children = tuple(
            self._compose(a.children[i - 1], b.children[sigma_inv(i) - 1])
            for i in range(1, len(a.children) + 1)
        )
        return BAutElement(tree=a.tree, braid=braid_service.braid_concat(a.braid, b.braid), children=children)

    def baut_inverse(self, a: BAutElement) -> BAutElement:
        """逆元: 辫子取逆, 位置 i 的孩子为 (a_{σ(i)})⁻¹"""
        sigma = braid_service.braid_permutation(a.braid)
        children = tuple(self.baut_inverse(a.children[sigma(i) - 1]) for i in range(1, len(a.children) + 1))
        return BAutElement(tree=a.tree, braid=braid_service.braid_inverse(a.braid), children=children)

    def baut_is_trivial(self, a: BAutElement, budget: Optional[int] = None) -> bool:
        """全部层级的辫子都平凡"""
        if not braid_service.braid_is_trivial(a.braid, budget):
            return False
        return all(self.baut_is_trivial(child, budget) for child in a.children)

    def baut_equal(self, a: BAutElement, b: BAutElement) -> bool:
        """a = b 当且仅当 a · b⁻¹ 平凡"""
        return self.baut_is_trivial(self.baut_compose(a, self.baut_inverse(b)))

    def baut_project(self, a: BAutElement) -> TreeAutomorphism:
        """投影到 Aut(T): 根的孩子按辫子的置换移动, 子树内部按孩子元素的投影移动"""
        t = a.tree
        sigma = braid_service.braid_permutation(a.braid)
        subtrees = self.child_trees(t)
        images = [0] * t.n
        for i in range(1, len(subtrees) + 1):
            target = sigma(i)
            inner = self.baut_project(a.children[target - 1])
            source_embedding = subtrees[i - 1][1]
            target_embedding = subtrees[target - 1][1]
            for k, x in enumerate(source_embedding):
                images[x - 1] = target_embedding[inner(k)]
        return TreeAutomorphism(t, tuple(images))

    def baut_is_pure(self, a: BAutElement) -> bool:
        return self.baut_project(a).is_identity()

    def random_element(
        self, t: RootedTree, rng: np.random.Generator, pure_factors: int = 2, conjugator_length: int = 3
    ) -> BAutElement:
        """随机元素: 块内随机置换对应的辫子, 再乘若干个纯辫子 w σ_i^{±2} w⁻¹"""
        m = len(t.children(0))
        partition = tree_service.child_partition(t)
        images = list(range(1, m + 1))
        for block in partition.blocks:
            for src, dst in zip(block, rng.permutation(block)):
                images[src - 1] = int(dst)
        word = list(braid_service.sorting_word(Permutation(tuple(images)), rng).word)
        if m >= 2:
            for _ in range(pure_factors):
                i = int(rng.integers(1, m))
                e = int(rng.choice([-1, 1]))
                conj = braid_service.random_word(m, int(rng.integers(0, conjugator_length + 1)), rng)
                word.extend(conj.word)
                word.extend((e * i, e * i))
                word.extend(braid_service.braid_inverse(conj).word)
        children = tuple(
            self.random_element(sub, rng, pure_factors, conjugator_length) for sub, _ in self.child_trees(t)
        )
        return BAutElement(tree=t, braid=BraidWord(m, tuple(word)), children=children)


@lru_cache(maxsize=None)
def _aut_order_of_code(code: str) -> int:
    tree = tree_service.tree_from_code(code)
    codes = tree_service.subtree_codes(tree)
    kid_codes = [codes[v] for v in tree.children(0)]
    order = 1
    for child_code in kid_codes:
        order *= _aut_order_of_code(child_code)
    for size in Counter(kid_codes).values():
        order *= math.factorial(size)
    return order


# 全局服务实例
group_service = GroupService()

"""
辫群服务
置换投影、块子群判定与字问题 (柄约化, 自由群作用作为对照)
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import settings
from ..core.exceptions import BraidUndecidedError, TreeMismatchError
from ..models.braid import BraidWord, Permutation
from ..models.tree import ChildPartition

logger = logging.getLogger(__name__)

# 自由群的约化字: 正负整数 ±k 表示 x_k^{±1}
FreeWord = Tuple[int, ...]


class BraidService:
    """辫群服务"""

    def braid_permutation(self, b: BraidWord) -> Permutation:
        """遗忘交叉信息后的置换 s_{i1} ∘ s_{i2} ∘ ... ∘ s_{ik}"""
        images = list(range(1, b.strands + 1))
        for g in b.word:
            i = abs(g)
            images[i - 1], images[i] = images[i], images[i - 1]
        return Permutation(tuple(images))

    def braid_in_block_subgroup(self, b: BraidWord, p: ChildPartition) -> bool:
        """置换是否把每个元素映到它自己所在的块"""
        if b.strands != p.m:
            raise TreeMismatchError(f"辫子股数 {b.strands} 与划分大小 {p.m} 不一致")
        perm = self.braid_permutation(b)
        return all(perm(i) in p.block_of(i) for i in range(1, p.m + 1))

    def braid_inverse(self, b: BraidWord) -> BraidWord:
        return BraidWord(b.strands, tuple(-g for g in reversed(b.word)))

    def braid_concat(self, a: BraidWord, b: BraidWord) -> BraidWord:
        if a.strands != b.strands:
            raise TreeMismatchError(f"辫子股数不一致: {a.strands} 与 {b.strands}")
        return BraidWord(a.strands, a.word + b.word)

    def handle_reduce(self, word: Sequence[int], budget: Optional[int] = None) -> Tuple[int, ...]:
        """柄约化直到不含任何柄

        每次约化结束位置最靠左的柄 σ_i^e v σ_i^{-e} (v 只含下标大于 i 的生成元),
        把 v 中每个 σ_{i+1}^d 换成 σ_{i+1}^{-e} σ_i^d σ_{i+1}^e。
        """
        budget = settings.BRAID_REDUCTION_BUDGET if budget is None else budget
        w = list(word)
        steps = 0
        while True:
            handle = self._first_handle(w)
            if handle is None:
                return tuple(w)
            steps += 1
            if steps > budget:
                logger.warning(f"柄约化超过预算 {budget}, 当前字长 {len(w)}")
                raise BraidUndecidedError(f"柄约化超过 {budget} 步仍未结束")
            start, end = handle
            i = abs(w[start])
            e = 1 if w[start] > 0 else -1
            middle: List[int] = []
            for g in w[start + 1:end]:
                if abs(g) == i + 1:
                    d = 1 if g > 0 else -1
                    middle.extend((-e * (i + 1), d * i, e * (i + 1)))
                else:
                    middle.append(g)
            w = w[:start] + middle + w[end + 1:]

    def _first_handle(self, w: Sequence[int]) -> Optional[Tuple[int, int]]:
        for end in range(1, len(w)):
            i = abs(w[end])
            for start in range(end - 1, -1, -1):
                g = abs(w[start])
                if g == i:
                    if w[start] == -w[end]:
                        return start, end
                    break
                if g < i:
                    break
        return None

    def braid_is_trivial(self, b: BraidWord, budget: Optional[int] = None) -> bool:
        """b 是否代表辫群单位元: 柄约化后为空字"""
        return len(self.handle_reduce(b.word, budget)) == 0

    def free_group_action(self, b: BraidWord) -> List[FreeWord]:
        """辫子在秩 m 自由群上的 Artin 作用, 返回 x_1..x_m 的像

        σ_i: x_i -> x_i x_{i+1} x_i⁻¹, x_{i+1} -> x_i; σ_i⁻¹: x_i -> x_{i+1}, x_{i+1} -> x_{i+1}⁻¹ x_i x_{i+1}
        """
        images: List[FreeWord] = [(k,) for k in range(1, b.strands + 1)]
        for g in b.word:
            i = abs(g)
            if g > 0:
                rule = {i: (i, i + 1, -i), i + 1: (i,)}
            else:
                rule = {i: (i + 1,), i + 1: (-(i + 1), i, i + 1)}
            images = [_substitute(img, rule) for img in images]
        return images

    def free_group_is_trivial(self, b: BraidWord) -> bool:
        """自由群作用是否为恒等 (Artin 作用忠实, 可作对照判定)"""
        return all(img == (k,) for k, img in enumerate(self.free_group_action(b), start=1))

    def random_word(self, strands: int, length: int, rng: np.random.Generator) -> BraidWord:
        if strands < 2 or length == 0:
            return BraidWord(strands)
        gens = rng.integers(1, strands, size=length)
        signs = rng.choice([-1, 1], size=length)
        return BraidWord(strands, tuple(int(g * s) for g, s in zip(gens, signs)))

    def sorting_word(self, target: Permutation, rng: np.random.Generator) -> BraidWord:
        """置换为 target 的辫子: 冒泡排序的逆序交换, 交叉方向随机"""
        images = list(target.images)
        swaps: List[int] = []
        for end in range(len(images) - 1, 0, -1):
            for k in range(end):
                if images[k] > images[k + 1]:
                    images[k], images[k + 1] = images[k + 1], images[k]
                    swaps.append(k + 1)
        word = tuple(int(i * rng.choice([-1, 1])) for i in reversed(swaps))
        return BraidWord(target.m, word)


def _substitute(word: FreeWord, rule: dict) -> FreeWord:
    out: List[int] = []
    for letter in word:
        k = abs(letter)
        piece = rule.get(k, (k,))
        if letter < 0:
            piece = tuple(-x for x in reversed(piece))
        for x in piece:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


# 全局服务实例
braid_service = BraidService()

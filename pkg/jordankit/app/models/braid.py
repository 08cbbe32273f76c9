"""
置换、辫子与树自同构模型
"""
from dataclasses import dataclass
from typing import Tuple

from ..core.exceptions import InvalidInputError
from .tree import RootedTree


@dataclass(frozen=True)
class Permutation:
    """{1..m} 上的双射, images[i - 1] 为 i 的像"""

    images: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InvalidInputError(f"不是合法的置换: {list(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images, start=1))


@dataclass(frozen=True)
class BraidWord:
    """m 股辫子的 Artin 生成元字, 正负号表示交叉方向"""

    strands: int
    word: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 0:
            raise InvalidInputError(f"股数不能为负: {self.strands}")
        word = tuple(int(g) for g in self.word)
        for g in word:
            if g == 0 or abs(g) > self.strands - 1:
                raise InvalidInputError(f"生成元 {g} 超出 {self.strands} 股辫群的范围")
        object.__setattr__(self, "word", word)

    def __len__(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class TreeAutomorphism:
    """树自同构, images[v - 1] 为非根顶点 v 的像 (根固定)"""

    tree: RootedTree
    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(i) for i in self.images)
        n = self.tree.n
        if sorted(images) != list(range(1, n + 1)):
            raise InvalidInputError("顶点映射不是双射")
        for v in range(1, n + 1):
            p = self.tree.parent(v)
            mapped_parent = 0 if p == 0 else images[p - 1]
            if self.tree.parent(images[v - 1]) != mapped_parent:
                raise InvalidInputError(f"顶点映射在顶点 {v} 处不保持父关系")
        object.__setattr__(self, "images", images)

    def __call__(self, v: int) -> int:
        return 0 if v == 0 else self.images[v - 1]

    def is_identity(self) -> bool:
        return all(img == v for v, img in enumerate(self.images, start=1))


@dataclass(frozen=True)
class BAutElement:
    """辫树自同构群的元素

    braid 作用于根的 m 个孩子位置; children[i] 是第 i 个位置子树上的元素,
    位置编号取辫子作用之前的编号。
    """

    tree: RootedTree
    braid: BraidWord
    children: Tuple["BAutElement", ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))

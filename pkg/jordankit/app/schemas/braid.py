"""
辫子与辫树自同构群元素的文档模型
"""
from typing import List

from pydantic import Field, field_validator, model_validator

from ..models.braid import BraidWord, TreeAutomorphism
from .base import BaseSchema
from .tree import TreeDocument


class BraidDocument(BaseSchema):
    """辫子文档: 股数与生成元字 (±i 表示 σ_i^{±1})"""

    strands: int = Field(..., ge=0, description="股数")
    word: List[int] = Field(default_factory=list, description="生成元字")

    @model_validator(mode="after")
    def validate_word(self):
        for g in self.word:
            if g == 0 or abs(g) > self.strands - 1:
                raise ValueError(f"生成元 {g} 超出 {self.strands} 股辫群的范围")
        return self

    def to_model(self) -> BraidWord:
        return BraidWord(self.strands, tuple(self.word))

    @classmethod
    def from_model(cls, b: BraidWord) -> "BraidDocument":
        return cls(strands=b.strands, word=list(b.word))


class ElementNode(BaseSchema):
    """元素的递归结构, children 与根的孩子位置一一对应"""

    braid: BraidDocument
    children: List["ElementNode"] = Field(default_factory=list)


class ElementDocument(BaseSchema):
    """树文档与其上的群元素"""

    tree: TreeDocument
    element: ElementNode


class AutomorphismDocument(BaseSchema):
    """树自同构文档, images[v-1] 为顶点 v 的像"""

    tree: TreeDocument
    images: List[int] = Field(default_factory=list)

    @field_validator("images")
    def validate_images(cls, v):
        if sorted(v) != list(range(1, len(v) + 1)):
            raise ValueError("images 必须是 1..n 的排列")
        return v

    @classmethod
    def from_model(cls, f: TreeAutomorphism) -> "AutomorphismDocument":
        return cls(tree=TreeDocument.from_model(f.tree), images=list(f.images))


ElementNode.model_rebuild()

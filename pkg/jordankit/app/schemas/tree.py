"""
有根树文档模型
"""
from typing import List, Optional

from pydantic import Field, field_validator, model_validator

from ..models.tree import RootedTree
from .base import BaseSchema


class TreeDocument(BaseSchema):
    """有根树文档, parents[v-1] 为顶点 v 的父顶点, 0 表示根"""

    parents: List[int] = Field(default_factory=list, description="父数组")
    labeled: bool = Field(False, description="顶点编号是否为有意义的标号")
    labels: Optional[List[int]] = Field(None, description="每个位置的原始标号")

    @field_validator("parents")
    def validate_parents(cls, v):
        if any(p < 0 or p > len(v) for p in v):
            raise ValueError("父顶点必须在 0..n 之间")
        return v

    @model_validator(mode="after")
    def validate_labels(self):
        if self.labels is not None and len(self.labels) != len(self.parents):
            raise ValueError("labels 的长度必须等于顶点数")
        return self

    def to_model(self) -> RootedTree:
        labels = tuple(self.labels) if self.labels is not None else None
        return RootedTree(tuple(self.parents), labeled=self.labeled, labels=labels)

    @classmethod
    def from_model(cls, t: RootedTree) -> "TreeDocument":
        labels = list(t.labels) if t.labels is not None else None
        return cls(parents=list(t.parents), labeled=t.labeled, labels=labels)


class TreeResult(BaseSchema):
    """嵌套树输出"""

    tree: TreeDocument
    code: str = Field(..., description="标准编码")
    depths: List[int] = Field(default_factory=list, description="各顶点的深度")

"""
命令输出文档
"""
from typing import List, Optional

from pydantic import Field

from .base import BaseSchema
from .tree import TreeDocument


class ClassifyResult(BaseSchema):
    """两个构型是否位于同一连通分支"""

    same_component: bool
    labeled: bool = False
    tree_a: TreeDocument
    tree_b: TreeDocument
    code_a: str
    code_b: str


class ComponentCountResult(BaseSchema):
    """枚举分支数与观察分支数"""

    n: int = Field(..., ge=1)
    samples: int = Field(..., ge=0)
    labeled: bool = False
    seed: Optional[int] = None
    enumerated: int
    observed: int


class AutOrderResult(BaseSchema):
    aut_order: int = Field(..., ge=1, description="|Aut(T)|")


class SignatureResult(BaseSchema):
    pure_signature: List[int] = Field(default_factory=list, description="纯辫子因子的股数, 降序")


class VerdictResult(BaseSchema):
    """布尔判定"""

    verdict: bool

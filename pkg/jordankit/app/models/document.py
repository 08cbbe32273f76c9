"""
输入文档模型
"""
from dataclasses import dataclass
from enum import Enum
from typing import Union

from .braid import BAutElement, BraidWord
from .curve import JordanConfiguration
from .geometry import CircleConfiguration
from .tree import RootedTree


class DocumentKind(str, Enum):
    CIRCLES = "circles"
    CURVES = "curves"
    TREE = "tree"
    BRAID = "braid"
    BAUT = "baut"


Payload = Union[CircleConfiguration, JordanConfiguration, RootedTree, BraidWord, BAutElement]


@dataclass(frozen=True)
class Document:
    """已校验的文档, payload 为对应的领域值"""

    kind: DocumentKind
    payload: Payload

"""
文档服务
JSON 文档的读取、类型识别、校验与序列化
"""
import json
import logging
from pathlib import Path
from typing import Any, List, Union

from pydantic import ValidationError

from ..core.exceptions import InvalidInputError, TreeMismatchError
from ..models.braid import BAutElement, BraidWord
from ..models.curve import JordanConfiguration
from ..models.document import Document, DocumentKind
from ..models.geometry import CircleConfiguration
from ..models.tree import RootedTree
from ..schemas.base import BaseSchema
from ..schemas.braid import BraidDocument, ElementDocument, ElementNode
from ..schemas.geometry import CirclesDocument, CurvesDocument
from ..schemas.tree import TreeDocument
from .group_service import group_service

logger = logging.getLogger(__name__)

# 按顺序检查的识别键
_KIND_KEYS = (
    ("element", DocumentKind.BAUT),
    ("circles", DocumentKind.CIRCLES),
    ("curves", DocumentKind.CURVES),
    ("strands", DocumentKind.BRAID),
    ("parents", DocumentKind.TREE),
)


class DocumentService:
    """文档服务"""

    def load(self, path: Union[str, Path]) -> Document:
        """读取 UTF-8 JSON 文件并解析为文档"""
        try:
            text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise InvalidInputError(f"无法读取文件 {path}: {e}") from e
        logger.debug(f"读取文档 {path}")
        return self.parse(text)

    def parse(self, text: str) -> Document:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidInputError(f"JSON 格式错误: {e}") from e
        return self.from_data(data)

    def detect_kind(self, data: Any) -> DocumentKind:
        if isinstance(data, dict):
            for key, kind in _KIND_KEYS:
                if key in data:
                    return kind
        raise InvalidInputError("无法识别文档类型")

    def from_data(self, data: Any) -> Document:
        """按识别出的类型校验并转换为领域值"""
        kind = self.detect_kind(data)
        try:
            if kind is DocumentKind.CIRCLES:
                payload = CirclesDocument.model_validate(data).to_model()
            elif kind is DocumentKind.CURVES:
                payload = CurvesDocument.model_validate(data).to_model()
            elif kind is DocumentKind.TREE:
                payload = TreeDocument.model_validate(data).to_model()
            elif kind is DocumentKind.BRAID:
                payload = BraidDocument.model_validate(data).to_model()
            else:
                payload = self.element_from_document(ElementDocument.model_validate(data))
        except ValidationError as e:
            raise InvalidInputError(f"{kind.value} 文档校验失败", details=_error_lines(e)) from e
        return Document(kind=kind, payload=payload)

    def element_from_document(self, doc: ElementDocument) -> BAutElement:
        element = self._element(doc.tree.to_model(), doc.element)
        group_service.validate_element(element)
        return element

    def _element(self, tree: RootedTree, node: ElementNode) -> BAutElement:
        subtrees = group_service.child_trees(tree)
        if len(node.children) != len(subtrees):
            raise TreeMismatchError(f"孩子元素数 {len(node.children)} 与根的孩子数 {len(subtrees)} 不一致")
        children = tuple(self._element(sub, child) for (sub, _), child in zip(subtrees, node.children))
        return BAutElement(tree=tree, braid=node.braid.to_model(), children=children)

    def element_node(self, a: BAutElement) -> ElementNode:
        return ElementNode(
            braid=BraidDocument.from_model(a.braid),
            children=[self.element_node(child) for child in a.children],
        )

    def to_schema(self, value: Any) -> BaseSchema:
        """领域值转换为对应的文档模型"""
        if isinstance(value, CircleConfiguration):
            return CirclesDocument.from_model(value)
        if isinstance(value, JordanConfiguration):
            return CurvesDocument.from_model(value)
        if isinstance(value, RootedTree):
            return TreeDocument.from_model(value)
        if isinstance(value, BraidWord):
            return BraidDocument.from_model(value)
        if isinstance(value, BAutElement):
            return ElementDocument(tree=TreeDocument.from_model(value.tree), element=self.element_node(value))
        raise TypeError(f"不支持序列化的类型: {type(value).__name__}")

    def dumps(self, value: Any) -> str:
        """序列化为单行 JSON, 同一输入总是得到相同的字节"""
        doc = value if isinstance(value, BaseSchema) else self.to_schema(value)
        return doc.model_dump_json(exclude_none=True)

    def require_kind(self, doc: Document, *kinds: DocumentKind) -> Document:
        if doc.kind not in kinds:
            expected = ", ".join(k.value for k in kinds)
            raise InvalidInputError(f"需要 {expected} 文档, 实际为 {doc.kind.value}")
        return doc


def _error_lines(e: ValidationError) -> List[str]:
    lines = []
    for err in e.errors():
        loc = ".".join(str(x) for x in err.get("loc", ()))
        lines.append(f"{loc}: {err.get('msg')}")
    return lines


# 全局服务实例
document_service = DocumentService()

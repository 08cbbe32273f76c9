"""
子命令共用的输入输出工具
"""
import argparse
import sys
from typing import Union

from ..core.exceptions import InvalidInputError
from ..models.curve import JordanConfiguration
from ..models.document import Document, DocumentKind
from ..models.geometry import CircleConfiguration
from ..models.tree import RootedTree
from ..services.curve_service import curve_service
from ..services.document_service import document_service
from ..services.geometry_service import geometry_service

Configuration = Union[CircleConfiguration, JordanConfiguration]


def add_input(parser: argparse.ArgumentParser, multiple: bool = False) -> None:
    if multiple:
        parser.add_argument("--input", dest="inputs", action="append", required=True, help="输入文档 (可重复)")
    else:
        parser.add_argument("--input", required=True, help="输入文档路径")


def emit(text: str) -> None:
    """写到标准输出, 日志只走标准错误"""
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def load_configuration(path: str) -> Configuration:
    doc = document_service.require_kind(document_service.load(path), DocumentKind.CIRCLES, DocumentKind.CURVES)
    return doc.payload


def nesting_tree(c: Configuration) -> RootedTree:
    if isinstance(c, CircleConfiguration):
        return geometry_service.circle_nesting_tree(c)
    return curve_service.curve_nesting_tree(c)


def tree_of(doc: Document) -> RootedTree:
    """从树, 元素或构型文档中取出树"""
    if doc.kind is DocumentKind.TREE:
        return doc.payload
    if doc.kind is DocumentKind.BAUT:
        return doc.payload.tree
    if doc.kind in (DocumentKind.CIRCLES, DocumentKind.CURVES):
        return nesting_tree(doc.payload)
    raise InvalidInputError(f"{doc.kind.value} 文档中没有树")

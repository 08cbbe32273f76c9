"""
tree: 输出构型的嵌套树与标准编码
"""
import argparse

from ..schemas.tree import TreeDocument, TreeResult
from ..services.tree_service import tree_service
from .common import add_input, emit, load_configuration, nesting_tree


def register(subparsers) -> None:
    parser = subparsers.add_parser("tree", help="提取嵌套树")
    add_input(parser)
    parser.add_argument("--labeled", action="store_true", help="保留标号")
    parser.set_defaults(handler=cmd_tree)


def cmd_tree(args: argparse.Namespace) -> int:
    t = nesting_tree(load_configuration(args.input))
    if not args.labeled:
        t = tree_service.forget_labels(t)
    depths = tree_service.depth_index(t).depths
    result = TreeResult(tree=TreeDocument.from_model(t), code=tree_service.canonical_code(t), depths=list(depths))
    emit(result.model_dump_json(exclude_none=True))
    return 0

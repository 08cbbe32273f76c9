"""
classify: 判定两个构型是否位于同一连通分支
"""
import argparse

from ..core.exceptions import InvalidInputError
from ..schemas.results import ClassifyResult
from ..schemas.tree import TreeDocument
from ..services.tree_service import tree_service
from .common import add_input, emit, load_configuration, nesting_tree


def register(subparsers) -> None:
    parser = subparsers.add_parser("classify", help="比较两个构型的嵌套树")
    add_input(parser, multiple=True)
    parser.add_argument("--labeled", action="store_true", help="按带标号分支比较")
    parser.set_defaults(handler=cmd_classify)


def cmd_classify(args: argparse.Namespace) -> int:
    if len(args.inputs) != 2:
        raise InvalidInputError(f"classify 需要恰好两个输入, 实际为 {len(args.inputs)}")
    a, b = (nesting_tree(load_configuration(path)) for path in args.inputs)
    if not args.labeled:
        a, b = tree_service.forget_labels(a), tree_service.forget_labels(b)
    same = tree_service.trees_isomorphic(a, b, labeled=args.labeled)
    result = ClassifyResult(
        same_component=same,
        labeled=args.labeled,
        tree_a=TreeDocument.from_model(a),
        tree_b=TreeDocument.from_model(b),
        code_a=tree_service.canonical_code(a),
        code_b=tree_service.canonical_code(b),
    )
    emit(result.model_dump_json(exclude_none=True))
    return 0 if same else 1

"""
group: 辫树自同构群的运算
"""
import argparse
from typing import List

import numpy as np

from ..core.exceptions import InvalidInputError
from ..models.braid import BAutElement
from ..models.document import DocumentKind
from ..schemas.braid import AutomorphismDocument
from ..schemas.results import AutOrderResult, SignatureResult, VerdictResult
from ..services.document_service import document_service
from ..services.group_service import group_service
from .common import add_input, emit, tree_of


def register(subparsers) -> None:
    parser = subparsers.add_parser("group", help="辫树自同构群运算")
    actions = parser.add_subparsers(dest="action", required=True)

    for name, handler, help_text in (
        ("aut-order", cmd_aut_order, "树自同构群的阶"),
        ("signature", cmd_signature, "纯子群的辫群因子"),
        ("project", cmd_project, "投影到树自同构"),
        ("is-pure", cmd_is_pure, "是否为纯元素"),
        ("is-trivial", cmd_is_trivial, "是否为单位元"),
        ("inverse", cmd_inverse, "逆元"),
    ):
        sub = actions.add_parser(name, help=help_text)
        add_input(sub)
        sub.set_defaults(handler=handler)

    compose = actions.add_parser("compose", help="按输入顺序相乘")
    add_input(compose, multiple=True)
    compose.set_defaults(handler=cmd_compose)

    random = actions.add_parser("random", help="在给定树上生成随机元素")
    add_input(random)
    random.add_argument("--seed", type=int, default=0, help="随机种子")
    random.set_defaults(handler=cmd_random)


def _element(path: str) -> BAutElement:
    doc = document_service.require_kind(document_service.load(path), DocumentKind.BAUT)
    return doc.payload


def cmd_aut_order(args: argparse.Namespace) -> int:
    t = tree_of(document_service.load(args.input))
    emit(AutOrderResult(aut_order=group_service.aut_order(t)).model_dump_json())
    return 0


def cmd_signature(args: argparse.Namespace) -> int:
    t = tree_of(document_service.load(args.input))
    emit(SignatureResult(pure_signature=list(group_service.pure_signature(t))).model_dump_json())
    return 0


def cmd_project(args: argparse.Namespace) -> int:
    f = group_service.baut_project(_element(args.input))
    emit(AutomorphismDocument.from_model(f).model_dump_json(exclude_none=True))
    return 0


def cmd_is_pure(args: argparse.Namespace) -> int:
    emit(VerdictResult(verdict=group_service.baut_is_pure(_element(args.input))).model_dump_json())
    return 0


def cmd_is_trivial(args: argparse.Namespace) -> int:
    emit(VerdictResult(verdict=group_service.baut_is_trivial(_element(args.input))).model_dump_json())
    return 0


def cmd_inverse(args: argparse.Namespace) -> int:
    emit(document_service.dumps(group_service.baut_inverse(_element(args.input))))
    return 0


def cmd_compose(args: argparse.Namespace) -> int:
    elements: List[BAutElement] = [_element(path) for path in args.inputs]
    if len(elements) < 2:
        raise InvalidInputError("compose 至少需要两个输入")
    product = elements[0]
    for other in elements[1:]:
        product = group_service.baut_compose(product, other)
    emit(document_service.dumps(product))
    return 0


def cmd_random(args: argparse.Namespace) -> int:
    t = tree_of(document_service.load(args.input))
    element = group_service.random_element(t, np.random.default_rng(args.seed))
    emit(document_service.dumps(element))
    return 0

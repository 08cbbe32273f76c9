"""
命令行子命令
"""
import argparse

from ... import __version__
from . import classify, components, group, retract, tree, validate


def build_parser() -> argparse.ArgumentParser:
    """创建 jck 解析器并注册全部子命令"""
    parser = argparse.ArgumentParser(prog="jck", description="平面 Jordan 曲线构型与辫树自同构群工具")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="日志级别, 缺省取 JCK_LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in (validate, tree, classify, components, retract, group):
        module.register(subparsers)
    return parser

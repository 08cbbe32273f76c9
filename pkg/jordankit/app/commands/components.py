"""
count-components: 枚举分支数与随机构型观察到的分支数
"""
import argparse

from ..schemas.results import ComponentCountResult
from ..services.sampler_service import sampler_service
from .common import emit


def register(subparsers) -> None:
    parser = subparsers.add_parser("count-components", help="统计 n 个圆的构型空间的连通分支")
    parser.add_argument("-n", "--n", dest="n", type=int, required=True, help="圆的个数")
    parser.add_argument("--samples", type=int, default=None, help="采样次数 (缺省为枚举数的 10 倍)")
    parser.add_argument("--seed", type=int, default=0, help="随机种子")
    parser.add_argument("--labeled", action="store_true", help="统计带标号构型空间")
    parser.set_defaults(handler=cmd_count_components)


def cmd_count_components(args: argparse.Namespace) -> int:
    count = sampler_service.count_components(args.n, args.samples, args.seed, labeled=args.labeled)
    result = ComponentCountResult(
        n=count.n,
        samples=count.samples,
        labeled=count.labeled,
        seed=args.seed,
        enumerated=count.enumerated,
        observed=count.observed,
    )
    emit(result.model_dump_json(exclude_none=True))
    return 0

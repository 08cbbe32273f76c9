"""
retract: 把构型沿形变收缩拉成圆构型, 输出帧序列
"""
import argparse
import logging
from typing import Dict, List

from ..core.config import settings
from ..core.exceptions import ConvergenceError
from ..models.curve import JordanConfiguration
from ..models.geometry import CircleConfiguration
from ..services.conformal_service import conformal_service
from ..services.curve_service import curve_service
from ..services.export_service import export_service
from .common import add_input, emit, load_configuration

logger = logging.getLogger(__name__)

# 末帧圆度容差
FINAL_ROUND_TOL = {"convex": 1e-9, "conformal": 1e-2}


def register(subparsers) -> None:
    parser = subparsers.add_parser("retract", help="圆化构型并输出帧")
    add_input(parser)
    parser.add_argument("--frames", type=int, default=8, help="每阶段帧数")
    parser.add_argument("--format", dest="fmt", choices=["json", "svg"], default="json", help="输出格式")
    parser.add_argument(
        "--pipeline", choices=["auto", "convex", "conformal"], default="auto", help="圆化管线"
    )
    parser.add_argument("--output", default=None, help="输出目录, 缺省写到标准输出")
    parser.add_argument("--diagnostics", default=None, help="写入每阶段诊断信息的路径")
    parser.set_defaults(handler=cmd_retract)


def choose_pipeline(j: JordanConfiguration, requested: str) -> str:
    """auto: 全部曲线为凸或圆时走凸管线, 否则走共形管线"""
    if requested != "auto":
        return requested
    if all(curve_service.is_convex(curve_service.working_curve(c)) for c in j):
        return "convex"
    return "conformal"


def run_pipeline(j: JordanConfiguration, pipeline: str, frames_per_stage: int):
    curve_service.require_valid(j)
    if pipeline == "convex":
        frames = curve_service.convex_retract_frames(j, frames_per_stage)
        diagnostics: List[Dict[str, object]] = []
    else:
        frames, diagnostics = conformal_service.conformal_retract_with_diagnostics(j, frames_per_stage)
    check_final_frame(frames[-1], FINAL_ROUND_TOL[pipeline])
    return frames, diagnostics


def check_final_frame(frame: JordanConfiguration, tol: float) -> None:
    for i, curve in enumerate(frame, start=1):
        if not curve_service.is_round(curve, tol):
            raise ConvergenceError(f"末帧曲线 {i} 未达到圆度容差 {tol}")


def cmd_retract(args: argparse.Namespace) -> int:
    c = load_configuration(args.input)
    if isinstance(c, CircleConfiguration):
        j = curve_service.circles_to_curves(c, settings.CIRCLE_VERTICES)
    else:
        j = c
    pipeline = choose_pipeline(j, args.pipeline)
    logger.info(f"使用 {pipeline} 管线圆化 {len(j)} 条曲线")
    frames, diagnostics = run_pipeline(j, pipeline, args.frames)
    if args.diagnostics:
        export_service.write_diagnostics(args.diagnostics, diagnostics)
    if args.output:
        export_service.write_frames(frames, args.frames, args.output, args.fmt)
    elif args.fmt == "svg":
        emit(export_service.svg(frames[-1]))
    else:
        emit(export_service.frames_jsonl(frames, args.frames))
    return 0

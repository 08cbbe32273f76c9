"""
validate: 校验圆或曲线构型
"""
import argparse

from ..models.geometry import CircleConfiguration
from ..schemas.geometry import ValidationReportDocument
from ..services.curve_service import curve_service
from ..services.geometry_service import geometry_service
from .common import add_input, emit, load_configuration


def register(subparsers) -> None:
    parser = subparsers.add_parser("validate", help="校验构型并输出违规报告")
    add_input(parser)
    parser.set_defaults(handler=cmd_validate)


def cmd_validate(args: argparse.Namespace) -> int:
    c = load_configuration(args.input)
    if isinstance(c, CircleConfiguration):
        report = geometry_service.validate_configuration(c)
    else:
        report = curve_service.validate_curves(c)
    emit(ValidationReportDocument.from_model(report).model_dump_json())
    return 0 if report.ok else 2

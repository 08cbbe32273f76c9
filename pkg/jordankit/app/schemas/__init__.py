"""
JSON 文档模型
"""
from .base import BaseSchema
from .braid import AutomorphismDocument, BraidDocument, ElementDocument, ElementNode
from .geometry import (
    CircleSchema,
    CirclesDocument,
    CurveSchema,
    CurvesDocument,
    FrameDocument,
    StageDiagnosticsDocument,
    ValidationReportDocument,
)
from .results import AutOrderResult, ClassifyResult, ComponentCountResult, SignatureResult, VerdictResult
from .tree import TreeDocument, TreeResult

__all__ = [
    'BaseSchema',
    'AutomorphismDocument', 'BraidDocument', 'ElementDocument', 'ElementNode',
    'CircleSchema', 'CirclesDocument', 'CurveSchema', 'CurvesDocument', 'FrameDocument',
    'StageDiagnosticsDocument', 'ValidationReportDocument',
    'AutOrderResult', 'ClassifyResult', 'ComponentCountResult', 'SignatureResult', 'VerdictResult',
    'TreeDocument', 'TreeResult',
]

"""
领域模型
"""
from .braid import BAutElement, BraidWord, Permutation, TreeAutomorphism
from .conformal import DiskMap, RetractSchedule, ShrinkParameter, StageDescriptor
from .document import Document, DocumentKind
from .curve import Curve, CurveMetrics, JordanConfiguration, PolyCurve, RoundCurve
from .geometry import Circle, CircleConfiguration, PairClass, ValidationReport
from .tree import CanonicalCode, ChildPartition, DepthIndex, RootedTree

__all__ = [
    "BAutElement",
    "BraidWord",
    "CanonicalCode",
    "ChildPartition",
    "Circle",
    "CircleConfiguration",
    "Curve",
    "CurveMetrics",
    "DepthIndex",
    "DiskMap",
    "Document",
    "DocumentKind",
    "JordanConfiguration",
    "PairClass",
    "Permutation",
    "PolyCurve",
    "RetractSchedule",
    "RootedTree",
    "RoundCurve",
    "ShrinkParameter",
    "StageDescriptor",
    "TreeAutomorphism",
    "ValidationReport",
]

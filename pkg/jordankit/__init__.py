"""
JordanKit - 圆与 Jordan 曲线构型工具包
"""

__version__ = "0.1.0"

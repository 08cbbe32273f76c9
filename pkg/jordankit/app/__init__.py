"""
JordanKit 应用包
"""

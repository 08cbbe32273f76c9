"""
基础文档模型
"""
from pydantic import BaseModel, ConfigDict


class BaseSchema(BaseModel):
    """基础模型: 拒绝未知字段"""

    model_config = ConfigDict(extra="forbid")

"""
应用初始化
"""
import logging
import sys
from typing import Optional

from .config import settings

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

logger = logging.getLogger(__name__)


def configure_logging(level: Optional[str] = None) -> None:
    """配置日志

    日志统一写入 stderr, stdout 留给文档与帧输出。
    """
    level_name = (level or ("DEBUG" if settings.DEBUG else settings.LOG_LEVEL)).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.INFO),
        format=LOG_FORMAT,
        handlers=[
            logging.StreamHandler(sys.stderr),
        ],
        force=True,
    )
    logger.debug(f"日志级别: {level_name}")

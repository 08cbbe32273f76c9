"""
阶段任务调度
同一阶段内的独立计算可并行执行, 阶段之间是严格屏障; 结果顺序与输入顺序一致
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from .config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class TaskManager:
    """任务管理器"""

    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = max_workers

    def run_stage(self, name: str, func: Callable[[T], R], items: Sequence[T]) -> List[R]:
        """执行一个阶段的全部任务

        Args:
            name: 阶段名称, 仅用于日志
            func: 对单个任务求值的函数
            items: 任务输入

        Returns:
            与 items 顺序一致的结果列表
        """
        workers = self.max_workers or settings.MAX_WORKERS
        total = len(items)
        logger.info(f"开始阶段 {name}: {total} 个任务, 并发 {workers}")
        if total == 0:
            return []
        try:
            if workers <= 1 or total == 1:
                results = []
                for i, item in enumerate(items):
                    results.append(func(item))
                    logger.debug(f"阶段 {name} 进度: {i + 1}/{total}")
            else:
                with ThreadPoolExecutor(max_workers=workers) as pool:
                    results = list(pool.map(func, items))
        except Exception as e:
            logger.error(f"阶段 {name} 失败: {e}")
            raise
        logger.info(f"阶段 {name} 完成")
        return results


# 全局任务管理器实例
task_manager = TaskManager()

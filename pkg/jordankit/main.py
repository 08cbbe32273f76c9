"""
JordanKit 命令行入口
"""
import logging
import sys
from typing import List, Optional

from .app.commands import build_parser
from .app.core.exceptions import JordanKitError
from .app.core.init_app import configure_logging

logger = logging.getLogger(__name__)


def main(argv: Optional[List[str]] = None) -> int:
    """解析参数并执行子命令, 返回进程退出码"""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except JordanKitError as e:
        logger.debug(f"{type(e).__name__}: {e}", exc_info=True)
        sys.stderr.write(f"错误: {e}\n")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""
Utilities package
"""

from .my_logger import (
    logger,
    get_logger,
    setup_logger
)


__all__ = [
    "logger",
    "get_logger",
    "setup_logger",
]

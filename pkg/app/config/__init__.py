"""
Configuration management
"""

from .my_settings import settings, Settings

__all__ = [
    "settings",
    "Settings",
]
